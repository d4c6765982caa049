#pragma once

#include <fdb/bialgebra/series.hpp>
#include <fdb/trees/cut.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace fdb::bialgebra {

/// Δ(δ_T) = Σ over cuts c of δ_{P_c} ⊗ δ_{S_c}, with integer multiplicities.
inline TensorSeries delta_tree(const Catalog& cat, const pfunctor::PTree& t)
{
    TensorSeries r;
    const auto& spec = cat.spec();
    for (const auto& c : trees::enumerate_cuts(t)) {
        const auto p = trees::prune(t, c);
        r.add(pfunctor::forest_of_tree(cat, p.crown), PForest::single(pfunctor::canon(spec, p.stump)), 1);
    }
    return r;
}

/// Memo of Δ on tree classes, shareable between workers.
class DeltaCache {
public:
    explicit DeltaCache(const Catalog& cat) : cat_(cat) {}

    std::shared_ptr<const TensorSeries> of(const std::string& key) const
    {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end()) {
                return it->second;
            }
        }
        auto d = std::make_shared<const TensorSeries>(delta_tree(cat_, cat_.info(key)->tree));
        std::lock_guard<std::mutex> lock(mutex_);
        return memo_.emplace(key, std::move(d)).first->second;
    }

    const Catalog& catalog() const noexcept { return cat_; }

private:
    const Catalog& cat_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<const TensorSeries>> memo_;
};

/// Δ is multiplicative: the product of the coproducts of the parts.
inline TensorSeries delta_monomial(const DeltaCache& cache, const PForest& f, std::optional<Bound> side = std::nullopt)
{
    TensorSeries acc(side);
    acc.add(PForest{}, PForest{}, 1);
    for (const auto& k : f.keys()) {
        acc = tensor_mul(acc, *cache.of(k));
    }
    return acc;
}

inline TensorSeries delta_monomial(const Catalog& cat, const PForest& f)
{
    DeltaCache cache(cat);
    return delta_monomial(cache, f);
}

/// ε(δ_F) = 1 when every tree of F is trivial, else 0.
inline Rational counit(const PForest& f) { return pfunctor::forest_key_nodes(f) == 0 ? 1 : 0; }

using TripleTensor = std::map<std::tuple<PForest, PForest, PForest>, Rational>;

inline void add_to(TripleTensor& t, const PForest& a, const PForest& b, const PForest& c, const Rational& x)
{
    if (x == 0) {
        return;
    }
    auto [it, inserted] = t.try_emplace({a, b, c}, x);
    if (!inserted) {
        it->second += x;
        if (it->second == 0) {
            t.erase(it);
        }
    }
}

/// (Δ ⊗ id)Δ(δ_T) and (id ⊗ Δ)Δ(δ_T).
inline std::pair<TripleTensor, TripleTensor> coassociativity_sides(const DeltaCache& cache, const std::string& key)
{
    TripleTensor left;
    TripleTensor right;
    const auto d = cache.of(key);
    for (const auto& [k, c] : d->terms()) {
        const auto dl = delta_monomial(cache, k.first);
        for (const auto& [k2, c2] : dl.terms()) {
            add_to(left, k2.first, k2.second, k.second, c * c2);
        }
        const auto dr = delta_monomial(cache, k.second);
        for (const auto& [k2, c2] : dr.terms()) {
            add_to(right, k.first, k2.first, k2.second, c * c2);
        }
    }
    return {left, right};
}

inline bool is_coassociative_on(const DeltaCache& cache, const std::string& key)
{
    const auto [l, r] = coassociativity_sides(cache, key);
    return l == r;
}

/// (ε ⊗ id)Δ(δ_T) = δ_T = (id ⊗ ε)Δ(δ_T).
inline bool satisfies_counit_on(const DeltaCache& cache, const std::string& key)
{
    std::map<PForest, Rational> left;
    std::map<PForest, Rational> right;
    const auto d = cache.of(key);
    for (const auto& [k, c] : d->terms()) {
        if (auto e = counit(k.first); e != 0) {
            left[k.second] += c * e;
        }
        if (auto e = counit(k.second); e != 0) {
            right[k.first] += c * e;
        }
    }
    const std::map<PForest, Rational> expected = {{PForest::single(key), 1}};
    auto strip = [](std::map<PForest, Rational>& m) { std::erase_if(m, [](const auto& p) { return p.second == 0; }); };
    strip(left);
    strip(right);
    return left == expected && right == expected;
}

} // namespace fdb::bialgebra
