#pragma once

#include "bipoly.hpp"
#include "config.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace cmgate {

inline const std::array<int, 6> & supported_levels()
{
    static const std::array<int, 6> levels{2, 3, 5, 7, 11, 13};
    return levels;
}

inline bool is_supported_level(int l)
{
    for (int x : supported_levels())
        if (x == l)
            return true;
    return false;
}

/// Classical modular polynomial with integer coefficients.
class ModularPolynomial {
  public:
    struct Term {
        int i, j;
        BigInt c;
    };

    ModularPolynomial(int level, std::vector<Term> terms) : level_(level), terms_(std::move(terms)) {}

    int level() const { return level_; }
    int degree() const { return level_ + 1; }
    const std::vector<Term> & terms() const { return terms_; }

    BigInt coeff(int i, int j) const
    {
        for (auto & t : terms_)
            if (t.i == i && t.j == j)
                return t.c;
        return 0;
    }

    BiPoly reduce(const FieldCtx & ctx) const
    {
        BiPoly f(ctx);
        for (auto & t : terms_)
            f.add_term(t.i, t.j, ctx.from_big(t.c));
        return f;
    }

    /// Phi(x, T) over the field of x.
    UniPoly specialize(const FieldElement & x) const
    {
        const FieldCtx & L = x.ctx();
        const auto & red = reduced(L.characteristic());
        std::vector<FieldElement> xp{L.one()};
        for (int i = 1; i <= degree(); ++i)
            xp.push_back(xp.back() * x);
        std::vector<FieldElement> v(degree() + 1, L.zero());
        for (auto & [i, j, c] : red)
            if (c)
                v[j] += xp[i].scale(c);
        return {L, std::move(v)};
    }

    FieldElement eval(const FieldElement & x, const FieldElement & y) const
    {
        FieldCtx L = common_field(x.ctx(), y.ctx());
        return specialize(embed(x, L))(embed(y, L));
    }

  private:
    const std::vector<std::tuple<int, int, u64>> & reduced(u64 p) const
    {
        std::lock_guard lock(mutex_);
        auto it = reduced_.find(p);
        if (it != reduced_.end())
            return it->second;
        std::vector<std::tuple<int, int, u64>> r;
        for (auto & t : terms_)
            r.emplace_back(t.i, t.j, nt::mod(t.c, p));
        return reduced_.emplace(p, std::move(r)).first->second;
    }

    int level_;
    std::vector<Term> terms_;
    mutable std::mutex mutex_;
    mutable std::map<u64, std::vector<std::tuple<int, int, u64>>> reduced_;
};

/// Parse "i j c" lines ('#' comments) and validate symmetry and degree.
inline std::unique_ptr<ModularPolynomial> parse_modular_polynomial(std::istream & in, int level,
                                                                   const std::string & origin = "input")
{
    std::map<std::pair<int, int>, BigInt> m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        int i, j;
        std::string cs;
        if (!(ls >> i)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw Error(ErrorCode::DataFile, origin + ":" + std::to_string(lineno) + ": expected 'i j c'");
            continue;
        }
        if (!(ls >> j >> cs))
            throw Error(ErrorCode::DataFile, origin + ":" + std::to_string(lineno) + ": expected 'i j c'");
        BigInt c;
        try {
            c = BigInt(cs);
        } catch (const std::exception &) {
            throw Error(ErrorCode::DataFile, origin + ":" + std::to_string(lineno) + ": bad coefficient");
        }
        m[{i, j}] += c;
    }
    std::vector<ModularPolynomial::Term> terms;
    int dx = 0, dy = 0;
    for (auto & [k, c] : m) {
        if (c == 0)
            continue;
        auto it = m.find({k.second, k.first});
        if (it == m.end() || it->second != c)
            throw Error(ErrorCode::DataFile, origin + ": coefficients are not symmetric");
        dx = std::max(dx, k.first);
        dy = std::max(dy, k.second);
        terms.push_back({k.first, k.second, c});
    }
    if (dx != level + 1 || dy != level + 1)
        throw Error(ErrorCode::DataFile, origin + ": degree is not level + 1");
    if (m[{level + 1, 0}] != 1)
        throw Error(ErrorCode::DataFile, origin + ": leading coefficient is not 1");
    return std::make_unique<ModularPolynomial>(level, std::move(terms));
}

/// Cached Phi_l from <data dir>/phi_<l>.txt.
inline const ModularPolynomial & modular_polynomial(int level)
{
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::unique_ptr<ModularPolynomial>> cache;
    if (!is_supported_level(level))
        throw Error(ErrorCode::UnsupportedLevel,
                    "no modular polynomial for level " + std::to_string(level) + "; add phi_" +
                        std::to_string(level) + ".txt to the data directory and extend supported_levels()");
    std::string dir = modular_data_dir();
    std::lock_guard lock(mu);
    auto & slot = cache[{dir, level}];
    if (!slot) {
        std::filesystem::path path = std::filesystem::path(dir) / ("phi_" + std::to_string(level) + ".txt");
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::DataFile, "cannot open " + path.string());
        slot = parse_modular_polynomial(in, level, path.string());
    }
    return *slot;
}

} // namespace cmgate
