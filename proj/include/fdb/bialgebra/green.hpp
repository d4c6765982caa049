#pragma once

#include <fdb/bialgebra/series.hpp>
#include <fdb/enumerate/enumerate.hpp>

#include <map>
#include <optional>

namespace fdb::bialgebra {

/// Which summand of the Green function to take: all trees, a root colour
/// (G_v), a leaf profile (g_n), or both (g_{n,v}).
struct GreenSelector {
    std::optional<Colour> root;
    std::optional<Profile> leaves;
};

/// Σ δ_T / |Aut T| over the selected tree classes within the bound.
inline Series green(const Catalog& cat, const Bound& bound, const GreenSelector& sel = {})
{
    Series g(bound);
    for (const auto& t : enumerate::enumerate_ptrees(cat, bound, {sel.root, sel.leaves})) {
        g.add(PForest::single(t->key), Rational(mpz_class(1), t->aut));
    }
    return g;
}

/// G_v for every colour.
inline std::map<Colour, Series> green_by_colour(const Catalog& cat, const Bound& bound)
{
    std::map<Colour, Series> r;
    for (Colour v = 0; v < cat.spec().colour_count(); ++v) {
        r.emplace(v, green(cat, bound, {v, std::nullopt}));
    }
    return r;
}

/// The trees of a monomial as partial Green functions per root colour. The
/// coefficients agree with the true G_v on these classes, which is all a
/// support-restricted power needs.
inline std::map<Colour, Series> green_on_support(const Catalog& cat, const PForest& support)
{
    const Bound open(pfunctor::forest_key_edges(support) + 1);
    std::map<Colour, Series> r;
    for (const auto& [k, m] : support.parts) {
        const auto info = cat.info(k);
        r.try_emplace(info->root, open).first->second.add(PForest::single(k), Rational(mpz_class(1), info->aut));
    }
    return r;
}

/// Coefficient of δ_F in G^n = ∏_v G_v^{n_v}, computed without truncation.
inline Rational power_coefficient(const Catalog& cat, const PForest& f, const Profile& n)
{
    const auto g = green_on_support(cat, f);
    const Bound open(pfunctor::forest_key_edges(f) + 1);
    return series_pow_profile(g, n, open, &f).coefficient(f);
}

} // namespace fdb::bialgebra
