#pragma once

#include <fdb/groupoid/constructions.hpp>
#include <fdb/rational.hpp>

#include <map>
#include <string>

namespace fdb::groupoid {

/// Finitely supported vector over π₀ of a groupoid, keyed by the external id
/// of each class representative (its smallest-index object). Zero entries
/// are never stored.
using RationalVector = std::map<ObjectId, Rational>;

inline void add_to(RationalVector& v, ObjectId key, const Rational& value)
{
    if (value == 0) {
        return;
    }
    auto [it, inserted] = v.emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0) {
            v.erase(it);
        }
    }
}

/// Σ over components of 1/|Aut x|.
inline Rational cardinality(const FiniteGroupoid& g)
{
    const auto comps = pi0(g);
    Rational total = 0;
    for (Index c = 0; c < comps.size(); ++c) {
        total += Rational(1, static_cast<unsigned long>(g.vertex_group_order(comps.representative(c))));
    }
    return total;
}

/// Cardinality of each component, keyed like a RationalVector.
inline RationalVector component_cardinalities(const FiniteGroupoid& g)
{
    const auto comps = pi0(g);
    RationalVector v;
    for (Index c = 0; c < comps.size(); ++c) {
        const Index x = comps.representative(c);
        add_to(v, g.object_id(x), Rational(1, static_cast<unsigned long>(g.vertex_group_order(x))));
    }
    return v;
}

/// ‖X‖_B = Σ_b ‖X_b‖/|Aut b| δ_b, computed from the homotopy fibres.
inline RationalVector relative_cardinality(const GroupoidMap& p)
{
    const auto& B = *p.codomain;
    const auto comps = pi0(B);
    RationalVector v;
    for (Index c = 0; c < comps.size(); ++c) {
        const Index b = comps.representative(c);
        const auto fibre = homotopy_fiber(p, b);
        add_to(v, B.object_id(b), cardinality(*fibre.groupoid) / Rational(static_cast<unsigned long>(B.vertex_group_order(b))));
    }
    return v;
}

/// The same vector computed as Σ_{x∈π₀X} δ_{p x}/|Aut x|, with no fibres built.
inline RationalVector relative_cardinality_by_components(const GroupoidMap& p)
{
    const auto& X = *p.domain;
    const auto& B = *p.codomain;
    const auto cx = pi0(X);
    const auto cb = pi0(B);
    RationalVector v;
    for (Index c = 0; c < cx.size(); ++c) {
        const Index x = cx.representative(c);
        const Index b = cb.representative(cb.class_of[p(x)]);
        add_to(v, B.object_id(b), Rational(1, static_cast<unsigned long>(X.vertex_group_order(x))));
    }
    return v;
}

/// Substitutes δ_{t(b)} for every δ_b.
inline RationalVector pushforward_cardinality(const RationalVector& v, const GroupoidMap& t)
{
    const auto& B = *t.domain;
    const auto& I = *t.codomain;
    const auto ci = pi0(I);
    RationalVector out;
    for (const auto& [id, value] : v) {
        const Index b = B.find_object(id);
        add_to(out, I.object_id(ci.representative(ci.class_of[t(b)])), value);
    }
    return out;
}

/// Σ of the coefficients, i.e. the total cardinality of the domain.
inline Rational total(const RationalVector& v)
{
    Rational s = 0;
    for (const auto& [id, value] : v) {
        s += value;
    }
    return s;
}

inline std::string to_string(const RationalVector& v)
{
    std::string s = "{";
    bool first = true;
    for (const auto& [id, value] : v) {
        s += (first ? "" : ", ") + std::to_string(id) + ": " + fdb::to_string(value);
        first = false;
    }
    return s + "}";
}

} // namespace fdb::groupoid
