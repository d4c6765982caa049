#pragma once

#include <fdb/bialgebra/classical.hpp>
#include <fdb/bialgebra/fdb.hpp>
#include <fdb/bialgebra/phi.hpp>

#include <json.hpp>

namespace fdb::bialgebra {

inline nlohmann::json to_json(const ClassicalReport& r)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms) {
        terms.push_back({{"left", type_text(t.left)},
                         {"right", "a" + std::to_string(t.k)},
                         {"lhs", fdb::to_string(t.lhs)},
                         {"rhs", fdb::to_string(t.rhs)},
                         {"pass", t.pass}});
    }
    nlohmann::json mult = nlohmann::json::array();
    for (const auto& m : r.multiplicities) {
        mult.push_back({{"type", type_text(m.type)},
                        {"brute_force", m.brute},
                        {"closed_form", fdb::to_string(m.closed)},
                        {"pass", m.pass}});
    }
    return {{"max_degree", r.max_degree},
            {"terms", std::move(terms)},
            {"multiplicities", std::move(mult)},
            {"summary",
             {{"checked", r.terms.size() + r.multiplicities.size()},
              {"grading_violations", r.grading_violations},
              {"failed", r.failed}}}};
}

inline nlohmann::json to_json(const Catalog& cat, const PhiReport& r)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms) {
        terms.push_back({{"n", t.n},
                         {"left", pfunctor::to_text(t.left)},
                         {"right", pfunctor::to_text(t.right)},
                         {"lhs", fdb::to_string(t.lhs)},
                         {"rhs", fdb::to_string(t.rhs)},
                         {"pass", t.pass}});
    }
    return {{"spec", cat.spec().name()},
            {"max_n", r.max_n},
            {"bound", bound_json(cat, r.bound.max_edges, r.bound.max_nodes)},
            {"terms", std::move(terms)},
            {"summary", {{"checked", r.terms.size()}, {"failed", r.failed}}}};
}

} // namespace fdb::bialgebra
