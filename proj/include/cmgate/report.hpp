#pragma once

#include "gates.hpp"

#include <string>

namespace cmgate {

inline std::string modulus_string(const FieldCtx & F)
{
    FieldCtx P = make_field(F.characteristic(), 1);
    std::vector<FieldElement> c;
    for (u64 v : F.modulus())
        c.push_back(P.from_int(static_cast<i64>(v)));
    return UniPoly(P, std::move(c)).to_string("T");
}

inline json field_json(const FieldCtx & F)
{
    return {{"p", F.characteristic()}, {"k", F.degree()}, {"modulus", modulus_string(F)}};
}

/// Element with the field it is written in.
inline json element_json(const FieldElement & x)
{
    FieldElement m = to_minimal_field(x);
    return {{"value", m.to_string()}, {"field_degree", m.ctx().degree()}};
}

inline json order_json(const CMOrder & o) { return {{"D", o.D}, {"d_K", o.d_K}, {"f", o.f}}; }

inline json to_json(const PointWitness & w)
{
    json j = {{"kind", w.kind}, {"level", w.level}, {"x", element_json(w.x)}, {"y", element_json(w.y)}};
    if (w.kind == "cm-mismatch") {
        j["d_K_x"] = w.dk_x;
        j["d_K_y"] = w.dk_y;
        if (w.cm_x)
            j["cm_x"] = order_json(*w.cm_x);
        if (w.cm_y)
            j["cm_y"] = order_json(*w.cm_y);
    } else {
        j["order_x"] = w.ord_x;
        j["order_y"] = w.ord_y;
    }
    return j;
}

inline json to_json(const PointException & e)
{
    return {{"reason", e.reason}, {"level", e.level}, {"x", element_json(e.x)}, {"y", element_json(e.y)}};
}

inline json to_json(const SupportWitness & w)
{
    return {{"kind", "support"},     {"index", w.index},           {"method", w.method},
            {"factor", w.factor.to_string("t")}, {"Q", element_json(w.Q)}, {"A(Q)", element_json(w.A_Q)},
            {"B(Q)", element_json(w.B_Q)}};
}

inline json to_json(const FrobeniusPointWitness & w)
{
    json j = {{"kind", "frobenius-point"}, {"n", w.n}, {"x", element_json(w.x)}, {"y", element_json(w.y)},
              {"shared_order", w.order}, {"cm_status", w.cm_status}};
    if (w.cm)
        j["shared_cm"] = order_json(*w.cm);
    j["checks"] = {{"on_curve", w.on_curve}, {"x_is_frobenius_of_y", w.frobenius_ok}, {"orders", w.orders_ok},
                   {"cm", w.cm_ok}};
    return j;
}

/// Everything but the envelope keys: witnesses, exceptions and bounds are returned separately.
inline json result_json(const GateReport & r)
{
    json j = {{"gate", r.gate}};
    j["conclusion"] = r.conclusion ? json(*r.conclusion) : json(nullptr);
    if (!r.conclusion_detail.empty())
        j["conclusion_detail"] = r.conclusion_detail;
    if (!r.levels.empty()) {
        json lv = json::array();
        for (auto & s : r.levels)
            lv.push_back({{"level", s.level}, {"points", s.points}, {"fresh", s.fresh}, {"ok", s.ok},
                          {"exceptional", s.exceptional}, {"skipped", s.skipped}, {"witnesses", s.witnesses}});
        j["levels"] = lv;
    }
    if (!r.checks.empty()) {
        json cs = json::array();
        for (auto & c : r.checks) {
            json e = {{"index", c.index}, {"method", c.method}, {"status", c.status}};
            if (!c.detail.empty())
                e["detail"] = c.detail;
            cs.push_back(e);
        }
        j["checks"] = cs;
    }
    for (auto & [k, v] : r.details.items())
        j[k] = v;
    j["sentinel"] = r.sentinel;
    if (r.sentinel)
        j["sentinel_reason"] = r.sentinel_reason;
    if (!r.notes.empty())
        j["notes"] = r.notes;
    return j;
}

inline json witnesses_json(const GateReport & r)
{
    json w = json::array();
    for (auto & x : r.witnesses)
        w.push_back(to_json(x));
    for (auto & x : r.support_witnesses)
        w.push_back(to_json(x));
    return w;
}

inline json exceptions_json(const GateReport & r)
{
    json e = json::array();
    for (auto & x : r.exceptions)
        e.push_back(to_json(x));
    return e;
}

/// Whole report in one object (used by tests and the determinism check).
inline json to_json(const GateReport & r)
{
    return {{"verdict", verdict_name(r.verdict)}, {"witnesses", witnesses_json(r)},
            {"exceptions", exceptions_json(r)},   {"bounds", r.bounds},
            {"result", result_json(r)}};
}

} // namespace cmgate
