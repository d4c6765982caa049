#pragma once

#include <fdb/bialgebra/classical.hpp>
#include <fdb/bialgebra/coproduct.hpp>
#include <fdb/bialgebra/green.hpp>

#include <map>

namespace fdb::bialgebra {

inline void require_effective(const Catalog& cat)
{
    if (cat.spec().has_nullary_ops()) {
        throw BialgebraError(BialgebraErrc::nullary_ops_present,
                             "spec '" + cat.spec().name() + "' has nullary operations; the classical map needs effective trees");
    }
}

/// g_n: Σ δ_T/|Aut T| over trees with n leaves (of any colours), truncated.
inline Series g_leaves(const Catalog& cat, std::size_t n, const Bound& b)
{
    Series g(b);
    for (const auto& t : enumerate::enumerate_ptrees(cat, b)) {
        if (t->leaves == n) {
            g.add(PForest::single(t->key), Rational(mpz_class(1), t->aut));
        }
    }
    return g;
}

/// Φ on the polynomial algebra: a_n ↦ g_n, extended multiplicatively and
/// linearly, truncated to the bound.
class Phi {
public:
    Phi(const Catalog& cat, Bound b) : cat_(cat), bound_(b) { require_effective(cat); }

    const Series& g(std::size_t n) const
    {
        auto it = g_.find(n);
        if (it == g_.end()) {
            it = g_.emplace(n, g_leaves(cat_, n, bound_)).first;
        }
        return it->second;
    }

    Series of_monomial(const PartitionType& t) const
    {
        Series acc = series_one(bound_);
        for (const auto& [k, l] : t) {
            for (std::size_t i = 0; i < l; ++i) {
                acc = series_mul(acc, g(k));
            }
        }
        return acc;
    }

    Series operator()(const ClassicalPoly& p) const
    {
        Series r(bound_);
        for (const auto& [t, c] : p) {
            r = r + scale(of_monomial(t), c);
        }
        return r;
    }

    const Bound& bound() const noexcept { return bound_; }

private:
    const Catalog& cat_;
    Bound bound_;
    mutable std::map<std::size_t, Series> g_;
};

struct PhiTerm {
    std::size_t n = 0;
    PForest left;
    PForest right;
    Rational lhs;
    Rational rhs;
    bool pass = false;
};

struct PhiReport {
    std::size_t max_n = 0;
    Bound bound;
    std::vector<PhiTerm> terms;
    std::size_t failed = 0;

    bool ok() const noexcept { return failed == 0; }
};

/// Compares (Φ⊗Φ)Δ(a_n) with Δ(Φ(a_n)) = Δ(g_n) for n = 1..max_n on all
/// terms whose sides both fit the bound. Δ(g_n) is expanded from trees with
/// up to twice the edge bound, enough to reach every such term exactly.
inline PhiReport verify_phi(const Catalog& cat, std::size_t max_n, const Bound& b)
{
    require_effective(cat);
    PhiReport rep;
    rep.max_n = max_n;
    rep.bound = b;
    const Phi phi(cat, b);
    DeltaCache cache(cat);
    const Bound wide(2 * b.max_edges, b.max_nodes ? std::optional<std::size_t>(2 * *b.max_nodes) : std::nullopt);
    const auto trees = enumerate::enumerate_ptrees(cat, wide);
    for (std::size_t n = 1; n <= max_n; ++n) {
        TensorSeries lhs(b);
        for (const auto& [key, c] : delta_a(n)) {
            const auto left = phi.of_monomial(key.first);
            for (const auto& [f, x] : left.terms()) {
                for (const auto& [s, y] : phi.g(key.second).terms()) {
                    lhs.add(f, s, c * x * y);
                }
            }
        }
        TensorSeries rhs(b);
        for (const auto& t : trees) {
            if (t->leaves == n) {
                rhs.add_all(*cache.of(t->key), Rational(mpz_class(1), t->aut));
            }
        }
        std::map<TensorSeries::Key, std::pair<Rational, Rational>> both;
        for (const auto& [k, c] : lhs.terms()) {
            both[k].first = c;
        }
        for (const auto& [k, c] : rhs.terms()) {
            both[k].second = c;
        }
        for (const auto& [k, v] : both) {
            rep.terms.push_back(PhiTerm{n, k.first, k.second, v.first, v.second, v.first == v.second});
            rep.failed += v.first == v.second ? 0 : 1;
        }
    }
    return rep;
}

} // namespace fdb::bialgebra
