#pragma once

#include "bipoly.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace cmgate {

namespace detail {

/// Recursive descent over  expr := term (('+'|'-') term)* ;  term := unary ('*' unary)* ;
/// unary := ('-'|'+') unary | power ;  power := atom ('^' digits)? ;  atom := digits | var | '(' expr ')'.
/// Variables map to X (slot 0) and Y (slot 1) of a BiPoly.
class PolyParser {
  public:
    PolyParser(std::string_view text, FieldCtx ctx, std::string_view vars) : s_(text), ctx_(ctx), vars_(vars) {}

    BiPoly parse()
    {
        BiPoly r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string & what) const
    {
        throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_));
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    BiPoly expr()
    {
        BiPoly r = term();
        for (;;) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }
    BiPoly term()
    {
        BiPoly r = unary();
        while (eat('*'))
            r = r * unary();
        return r;
    }
    BiPoly unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }
    BiPoly power()
    {
        BiPoly base = atom();
        if (!eat('^'))
            return base;
        std::string e = digits();
        if (e.size() > 7)
            fail("exponent too large");
        return pow(base, std::stoul(e));
    }
    BiPoly atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            BiPoly r = expr();
            if (!eat(')'))
                fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return BiPoly::constant(ctx_.from_big(BigInt(digits())));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string name;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                name += s_[pos_++];
            auto slot = vars_.find(name);
            if (name.size() != 1 || slot == std::string_view::npos)
                throw Error(ErrorCode::WrongVariables, "unknown variable '" + name + "' at position " +
                                                           std::to_string(at) + "; expected one of " +
                                                           std::string(vars_));
            return slot == 0 ? BiPoly::x(ctx_) : BiPoly::y(ctx_);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    static BiPoly pow(BiPoly b, unsigned long e)
    {
        BiPoly r = BiPoly::constant(b.ctx().one());
        while (e) {
            if (e & 1)
                r = r * b;
            e >>= 1;
            if (e)
                b = b * b;
        }
        return r;
    }

    std::string_view s_;
    FieldCtx ctx_;
    std::string_view vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Plane curve equation in X and Y with integer coefficients reduced into ctx.
inline BiPoly parse_curve(std::string_view text, const FieldCtx & ctx)
{
    return detail::PolyParser(text, ctx, "XY").parse();
}

/// Polynomial in t with integer coefficients.
inline UniPoly parse_ring_element(std::string_view text, const FieldCtx & ctx)
{
    BiPoly f = detail::PolyParser(text, ctx, "t").parse();
    std::vector<FieldElement> c(f.deg_x() < 0 ? 0 : f.deg_x() + 1, ctx.zero());
    for (auto & [k, v] : f.terms())
        c[k.first] = v;
    return {ctx, std::move(c)};
}

} // namespace cmgate
