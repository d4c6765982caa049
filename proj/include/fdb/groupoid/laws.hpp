#pragma once

#include <fdb/groupoid/cardinality.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fdb::groupoid {

/// Small groups used by the random generators: Z1..Z4, Z2×Z2, S3, Z6.
inline const std::vector<FiniteGroup>& sample_groups()
{
    static const std::vector<FiniteGroup> groups = {
        FiniteGroup::trivial(),   FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),   FiniteGroup::cyclic(4),
        FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
        FiniteGroup::symmetric(3), FiniteGroup::cyclic(6),
    };
    return groups;
}

/// A disjoint union of connected groupoids connected(k_i, G_i), remembering
/// its block structure so that functors out of it can be generated.
struct BlockGroupoid {
    struct Block {
        std::size_t size;
        std::size_t group;
        Index first_object;
        Index first_arrow;
    };

    GroupoidPtr groupoid;
    std::vector<Block> blocks;
};

inline BlockGroupoid make_block_groupoid(const std::vector<std::pair<std::size_t, std::size_t>>& spec)
{
    BlockGroupoid bg;
    FiniteGroupoid acc = discrete(std::size_t{0});
    for (const auto& [k, gi] : spec) {
        const auto& G = sample_groups().at(gi);
        bg.blocks.push_back({k, gi, acc.object_count(), acc.arrow_count()});
        acc = disjoint_union(acc, connected(k, G, static_cast<ObjectId>(acc.object_count())));
    }
    bg.groupoid = share(std::move(acc));
    return bg;
}

class GroupoidSampler {
public:
    explicit GroupoidSampler(std::uint64_t seed) : rng_(seed) {}

    std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

    /// Random block groupoid with at most `max_objects` objects.
    BlockGroupoid groupoid(std::size_t max_objects)
    {
        std::vector<std::pair<std::size_t, std::size_t>> spec;
        std::size_t left = uniform(1, max_objects);
        while (left > 0) {
            const std::size_t k = uniform(1, std::min<std::size_t>(left, 3));
            spec.emplace_back(k, uniform(0, sample_groups().size() - 1));
            left -= k;
        }
        return make_block_groupoid(spec);
    }

    /// Random functor between block groupoids. On a block it sends
    /// (i, j, g) to (t i, t j, h_j φ(g) h_i⁻¹) for a homomorphism φ and
    /// elements h_i of the target group.
    GroupoidMap functor(const BlockGroupoid& from, const BlockGroupoid& to)
    {
        GroupoidMap m{from.groupoid, to.groupoid, {}, {}};
        m.on_objects.assign(from.groupoid->object_count(), 0);
        m.on_arrows.assign(from.groupoid->arrow_count(), 0);
        for (const auto& b : from.blocks) {
            const auto& c = to.blocks[uniform(0, to.blocks.size() - 1)];
            const auto& G = sample_groups()[b.group];
            const auto& H = sample_groups()[c.group];
            const auto homs = homomorphisms(G, H);
            const auto& phi = homs[uniform(0, homs.size() - 1)];
            std::vector<Index> t(b.size);
            std::vector<FiniteGroup::Element> h(b.size);
            for (Index i = 0; i < b.size; ++i) {
                t[i] = uniform(0, c.size - 1);
                h[i] = uniform(0, H.order() - 1);
                m.on_objects[b.first_object + i] = c.first_object + t[i];
            }
            const std::size_t n = G.order();
            const std::size_t nh = H.order();
            for (Index i = 0; i < b.size; ++i) {
                for (Index j = 0; j < b.size; ++j) {
                    for (FiniteGroup::Element g = 0; g < n; ++g) {
                        const auto img = H.mul(H.mul(h[j], phi[g]), H.inv(h[i]));
                        m.on_arrows[b.first_arrow + (i * b.size + j) * n + g] =
                            c.first_arrow + (t[i] * c.size + t[j]) * nh + img;
                    }
                }
            }
        }
        return m;
    }

    /// Right action of a sample group on (n-element set) × BH, acting on the
    /// set through a random homomorphism into S_n and trivially on BH.
    GroupAction action(std::size_t max_points)
    {
        const std::size_t n = uniform(1, max_points);
        const auto& G = sample_groups()[uniform(0, sample_groups().size() - 1)];
        const auto& H = sample_groups()[uniform(0, 3)];
        const auto Sn = FiniteGroup::symmetric(n);
        const auto homs = homomorphisms(G, Sn);
        const auto& rho = homs[uniform(0, homs.size() - 1)];
        std::vector<std::vector<std::size_t>> perms;
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = i;
        }
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));

        GroupAction act;
        act.group = G;
        act.space = share(product(discrete(n), one_object(H)));
        const std::size_t nh = H.order();
        for (FiniteGroup::Element g = 0; g < G.order(); ++g) {
            // x.g = ρ(g)⁻¹ x
            const auto& moved = perms[Sn.inv(rho[g])];
            act.on_objects.push_back(moved);
            std::vector<Index> arrows(n * nh);
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t a = 0; a < nh; ++a) {
                    arrows[x * nh + a] = moved[x] * nh + a;
                }
            }
            act.on_arrows.push_back(std::move(arrows));
        }
        return act;
    }

private:
    std::mt19937_64 rng_;
};

/// Outcome of a randomized law check.
struct LawReport {
    std::size_t cases = 0;
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

/// π₀(X) as a discrete groupoid, together with the map X -> π₀(X).
inline GroupoidMap components_map(const GroupoidPtr& x)
{
    const auto comps = pi0(*x);
    std::vector<ObjectId> ids;
    for (Index c = 0; c < comps.size(); ++c) {
        ids.push_back(x->object_id(comps.representative(c)));
    }
    auto d = share(discrete(std::move(ids)));
    GroupoidMap m{x, d, {}, {}};
    for (Index o = 0; o < x->object_count(); ++o) {
        m.on_objects.push_back(comps.class_of[o]);
    }
    for (Index a = 0; a < x->arrow_count(); ++a) {
        m.on_arrows.push_back(comps.class_of[x->arrow(a).source]);
    }
    return m;
}

/// ‖X‖_I computed through iterated fibres: for each class i,
/// Σ over classes β = (b, φ) of B_i of ‖X_b‖/|Aut β|, divided by |Aut i|.
inline RationalVector iterated_relative_cardinality(const GroupoidMap& p, const GroupoidMap& t)
{
    const auto& I = *t.codomain;
    const auto ci = pi0(I);
    RationalVector v;
    for (Index c = 0; c < ci.size(); ++c) {
        const Index i = ci.representative(c);
        const auto bi = homotopy_fiber(t, i);
        const auto cb = pi0(*bi.groupoid);
        Rational sum = 0;
        for (Index k = 0; k < cb.size(); ++k) {
            const Index beta = cb.representative(k);
            const Index b = bi.triples[beta].x;
            sum += cardinality(*homotopy_fiber(p, b).groupoid)
                   / Rational(static_cast<unsigned long>(bi.groupoid->vertex_group_order(beta)));
        }
        add_to(v, I.object_id(i), sum / Rational(static_cast<unsigned long>(I.vertex_group_order(i))));
    }
    return v;
}

/// Runs every groupoid law on `count` random instances drawn from `seed`.
inline LawReport run_groupoid_laws(std::uint64_t seed, std::size_t count)
{
    LawReport report;
    GroupoidSampler s(seed);
    auto fail = [&](std::size_t n, const std::string& what) {
        report.failures.push_back("case " + std::to_string(n) + ": " + what);
    };
    for (std::size_t n = 0; n < count; ++n) {
        ++report.cases;
        const auto x = s.groupoid(4);
        const auto y = s.groupoid(4);
        if (cardinality(disjoint_union(*x.groupoid, *y.groupoid)) != cardinality(*x.groupoid) + cardinality(*y.groupoid)) {
            fail(n, "sum law");
        }
        if (cardinality(product(*x.groupoid, *y.groupoid)) != cardinality(*x.groupoid) * cardinality(*y.groupoid)) {
            fail(n, "product law");
        }

        // Total space versus homotopy sum of fibres.
        const auto e = s.groupoid(8);
        const auto b = s.groupoid(4);
        const auto p = s.functor(e, b);
        if (!is_functor(p)) {
            fail(n, "generated map is not a functor");
            continue;
        }
        const auto ff = fiber_family(p);
        const auto hs = homotopy_sum(ff.family);
        if (relative_cardinality_by_components(hs.projection) != relative_cardinality_by_components(p)
            || relative_cardinality(hs.projection) != relative_cardinality(p)) {
            fail(n, "homotopy sum of fibres differs from total space");
        }
        if (!is_equivalence(total_space_comparison(p, ff, hs))) {
            fail(n, "comparison map is not an equivalence");
        }
        if (relative_cardinality(p) != relative_cardinality_by_components(p)) {
            fail(n, "fibre and component routes disagree");
        }

        // Transitivity and iterated fibres over X -> B -> I.
        const auto i = s.groupoid(3);
        const auto t = s.functor(b, i);
        const auto tp = compose(t, p);
        const auto direct = relative_cardinality(tp);
        if (pushforward_cardinality(relative_cardinality(p), t) != direct) {
            fail(n, "pushforward transitivity");
        }
        if (iterated_relative_cardinality(p, t) != direct) {
            fail(n, "iterated fibres");
        }

        // Double counting over a span B <- U -> A.
        const auto a = s.groupoid(4);
        const auto q = s.functor(e, a);
        const Rational cu = cardinality(*e.groupoid);
        if (total(relative_cardinality(p)) != cu || total(relative_cardinality(q)) != cu) {
            fail(n, "double counting");
        }

        // Quotients.
        const auto act = s.action(4);
        const auto quo = homotopy_quotient(act);
        const Rational order(static_cast<unsigned long>(act.group.order()));
        if (cardinality(*quo.groupoid) != cardinality(*act.space) / order) {
            fail(n, "quotient cardinality");
        }
        const auto down = components_map(quo.groupoid);
        const auto to_a = compose(down, quo.projection);
        RationalVector scaled;
        for (const auto& [id, value] : relative_cardinality(to_a)) {
            add_to(scaled, id, value / order);
        }
        if (relative_cardinality(down) != scaled) {
            fail(n, "action formal cardinality");
        }
        const auto summed = homotopy_sum(action_family(act));
        if (summed.groupoid->object_count() != quo.groupoid->object_count()
            || summed.groupoid->arrow_count() != quo.groupoid->arrow_count()
            || cardinality(*summed.groupoid) != cardinality(*quo.groupoid)) {
            fail(n, "homotopy sum over BG differs from quotient");
        }
    }
    return report;
}

} // namespace fdb::groupoid
