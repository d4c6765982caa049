#pragma once

#include <fdb/groupoid/groupoid.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fdb::groupoid {

/// Connected components. Classes are numbered by their smallest object index
/// and `members[c][0]` is that object.
struct Components {
    std::vector<Index> class_of;
    std::vector<std::vector<Index>> members;

    std::size_t size() const noexcept { return members.size(); }
    Index representative(Index c) const { return members.at(c).front(); }
};

inline Components pi0(const FiniteGroupoid& g)
{
    Components c;
    c.class_of.assign(g.object_count(), npos);
    for (Index x = 0; x < g.object_count(); ++x) {
        if (c.class_of[x] != npos) {
            continue;
        }
        const Index id = c.members.size();
        c.members.push_back({});
        std::vector<Index> stack = {x};
        c.class_of[x] = id;
        while (!stack.empty()) {
            const Index y = stack.back();
            stack.pop_back();
            c.members[id].push_back(y);
            for (Index a : g.out_arrows(y)) {
                const Index z = g.arrow(a).target;
                if (c.class_of[z] == npos) {
                    c.class_of[z] = id;
                    stack.push_back(z);
                }
            }
        }
        std::sort(c.members[id].begin(), c.members[id].end());
    }
    return c;
}

/// Vertex group of the object with external id `id`.
inline FiniteGroup aut_group(const FiniteGroupoid& g, ObjectId id) { return g.vertex_group(g.find_object(id)); }

// ---------------------------------------------------------------------------
// Homotopy pullback

/// X ×_S Y for f: X -> S and g: Y -> S. Objects are triples (x, y, φ: f x -> g y);
/// an arrow (α, β): (x, y, φ) -> (x', y', φ') satisfies g(β)∘φ = φ'∘f(α).
/// Every pair (α, β) leaving (x, y) determines its target, so the arrows out of
/// an object are indexed by out(x) × out(y).
struct Pullback {
    struct Triple {
        Index x;
        Index y;
        Index phi;
    };

    GroupoidPtr groupoid;
    GroupoidMap left;
    GroupoidMap right;
    std::vector<Triple> triples;
    /// First arrow index leaving each object.
    std::vector<Index> arrow_base;
    std::map<std::array<Index, 3>, Index> lookup;

    Index find_object(Index x, Index y, Index phi) const
    {
        auto it = lookup.find({x, y, phi});
        return it == lookup.end() ? npos : it->second;
    }

    /// Arrow (α, β) out of object o.
    Index find_arrow(Index o, Index alpha, Index beta) const
    {
        const auto& Y = *right.codomain;
        return arrow_base[o] + left.codomain->out_position(alpha) * Y.out_arrows(triples[o].y).size()
               + Y.out_position(beta);
    }
};

inline Pullback homotopy_pullback(const GroupoidMap& f, const GroupoidMap& g)
{
    if (f.codomain.get() != g.codomain.get()) {
        throw GroupoidError(GroupoidErrc::codomain_mismatch, "pullback legs have different codomains");
    }
    const auto& X = *f.domain;
    const auto& Y = *g.domain;
    const auto& S = *f.codomain;
    Pullback pb;
    pb.left.codomain = f.domain;
    pb.right.codomain = g.domain;

    std::vector<ObjectId> ids;
    for (Index x = 0; x < X.object_count(); ++x) {
        for (Index y = 0; y < Y.object_count(); ++y) {
            for (Index phi : S.hom(f(x), g(y))) {
                pb.lookup[{x, y, phi}] = pb.triples.size();
                ids.push_back(static_cast<ObjectId>(pb.triples.size()));
                pb.triples.push_back({x, y, phi});
            }
        }
    }

    std::vector<Arrow> arrows;
    for (Index o = 0; o < pb.triples.size(); ++o) {
        const auto [x, y, phi] = pb.triples[o];
        pb.arrow_base.push_back(arrows.size());
        for (Index alpha : X.out_arrows(x)) {
            for (Index beta : Y.out_arrows(y)) {
                // φ' = g(β)∘φ∘f(α)⁻¹
                const Index phi2 = S.compose(S.compose(g.arrow(beta), phi), S.inverse(f.arrow(alpha)));
                const Index target = pb.find_object(X.arrow(alpha).target, Y.arrow(beta).target, phi2);
                arrows.push_back({o, target, "(" + X.arrow(alpha).label + "," + Y.arrow(beta).label + ")"});
                pb.left.on_arrows.push_back(alpha);
                pb.right.on_arrows.push_back(beta);
            }
        }
    }
    for (const auto& t : pb.triples) {
        pb.left.on_objects.push_back(t.x);
        pb.right.on_objects.push_back(t.y);
    }

    std::vector<Index> source;
    for (const auto& a : arrows) {
        source.push_back(a.source);
    }
    pb.groupoid = share(FiniteGroupoid::build(std::move(ids), std::move(arrows), [&](Index second, Index first) {
        return pb.find_arrow(source[first], X.compose(pb.left.on_arrows[second], pb.left.on_arrows[first]),
                             Y.compose(pb.right.on_arrows[second], pb.right.on_arrows[first]));
    }, false));
    pb.left.domain = pb.groupoid;
    pb.right.domain = pb.groupoid;
    return pb;
}

/// Homotopy fibre of p: E -> B over b, the pullback of p along the name of b.
/// Objects are pairs (e, φ: p e -> b), stored as triples (e, 0, φ).
inline Pullback homotopy_fiber(const GroupoidMap& p, Index b)
{
    if (b >= p.codomain->object_count()) {
        throw GroupoidError(GroupoidErrc::unknown_object, "fibre over an object not in the base");
    }
    return homotopy_pullback(p, name_of(p.codomain, b));
}

inline Pullback homotopy_fiber_by_id(const GroupoidMap& p, ObjectId b) { return homotopy_fiber(p, p.codomain->find_object(b)); }

/// The functor E_b -> E_b' induced by σ: b -> b', (e, φ) ↦ (e, σ∘φ).
inline GroupoidMap fiber_transport(const GroupoidMap& p, const Pullback& from, const Pullback& to, Index sigma)
{
    const auto& B = *p.codomain;
    GroupoidMap m{from.groupoid, to.groupoid, {}, {}};
    for (const auto& t : from.triples) {
        const Index o = to.find_object(t.x, 0, B.compose(sigma, t.phi));
        if (o == npos) {
            throw GroupoidError(GroupoidErrc::not_functorial, "transport leaves the target fibre");
        }
        m.on_objects.push_back(o);
    }
    const auto& P = *from.groupoid;
    for (Index a = 0; a < P.arrow_count(); ++a) {
        m.on_arrows.push_back(to.find_arrow(m.on_objects[P.arrow(a).source], from.left.on_arrows[a], 0));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Homotopy sum (Grothendieck construction)

/// A strict functor F: base -> Grpd, given by its values and its action on arrows.
struct Family {
    GroupoidPtr base;
    std::vector<GroupoidPtr> fibers;
    std::vector<GroupoidMap> transport;
};

inline void check_family(const Family& fam)
{
    const auto& B = *fam.base;
    if (fam.fibers.size() != B.object_count() || fam.transport.size() != B.arrow_count()) {
        throw GroupoidError(GroupoidErrc::not_functorial, "family does not cover the base");
    }
    for (Index s = 0; s < B.arrow_count(); ++s) {
        const auto& t = fam.transport[s];
        if (t.domain != fam.fibers[B.arrow(s).source] || t.codomain != fam.fibers[B.arrow(s).target]) {
            throw GroupoidError(GroupoidErrc::not_functorial, "transport has the wrong (co)domain");
        }
        require_functor(t, "transport is not a functor");
    }
    for (Index b = 0; b < B.object_count(); ++b) {
        const auto& t = fam.transport[B.identity(b)];
        const auto id = identity_map(fam.fibers[b]);
        if (t.on_objects != id.on_objects || t.on_arrows != id.on_arrows) {
            throw GroupoidError(GroupoidErrc::not_functorial, "identity does not act trivially");
        }
    }
    for (Index s = 0; s < B.arrow_count(); ++s) {
        for (Index s2 : B.out_arrows(B.arrow(s).target)) {
            const auto lhs = compose(fam.transport[s2], fam.transport[s]);
            const auto& rhs = fam.transport[B.compose(s2, s)];
            if (lhs.on_objects != rhs.on_objects || lhs.on_arrows != rhs.on_arrows) {
                throw GroupoidError(GroupoidErrc::not_functorial, "family does not respect composition");
            }
        }
    }
}

/// ∫^{b∈B} F(b): objects (b, x), arrows (σ: b -> b', φ: F(σ)x -> x'),
/// composed as (σ', φ')∘(σ, φ) = (σ'σ, φ'∘F(σ')(φ)).
struct HomotopySum {
    GroupoidPtr groupoid;
    GroupoidMap projection;
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<std::pair<Index, Index>> arrow_pairs;
};

inline HomotopySum homotopy_sum(const Family& fam)
{
    check_family(fam);
    const auto& B = *fam.base;
    HomotopySum hs;
    std::vector<std::vector<Index>> object_of(B.object_count());
    std::vector<ObjectId> ids;
    for (Index b = 0; b < B.object_count(); ++b) {
        object_of[b].resize(fam.fibers[b]->object_count());
        for (Index x = 0; x < fam.fibers[b]->object_count(); ++x) {
            object_of[b][x] = hs.pairs.size();
            ids.push_back(static_cast<ObjectId>(hs.pairs.size()));
            hs.pairs.emplace_back(b, x);
        }
    }
    std::vector<Arrow> arrows;
    std::unordered_map<std::uint64_t, Index> arrow_lookup;
    auto akey = [](Index sigma, Index phi) { return (static_cast<std::uint64_t>(sigma) << 32) | phi; };
    for (Index o = 0; o < hs.pairs.size(); ++o) {
        const auto [b, x] = hs.pairs[o];
        for (Index sigma : B.out_arrows(b)) {
            const Index b2 = B.arrow(sigma).target;
            const auto& Fb2 = *fam.fibers[b2];
            const Index moved = fam.transport[sigma](x);
            for (Index phi : Fb2.out_arrows(moved)) {
                arrow_lookup[akey(sigma, phi)] = arrows.size();
                arrows.push_back({o, object_of[b2][Fb2.arrow(phi).target],
                                  "(" + B.arrow(sigma).label + "," + Fb2.arrow(phi).label + ")"});
                hs.arrow_pairs.emplace_back(sigma, phi);
            }
        }
    }
    auto groupoid = FiniteGroupoid::build(std::move(ids), std::move(arrows), [&](Index second, Index first) {
        const auto [s1, p1] = hs.arrow_pairs[first];
        const auto [s2, p2] = hs.arrow_pairs[second];
        const auto& F = *fam.fibers[B.arrow(s2).target];
        const Index phi = F.compose(p2, fam.transport[s2].arrow(p1));
        return arrow_lookup.at(akey(B.compose(s2, s1), phi));
    }, false);
    hs.groupoid = share(std::move(groupoid));
    hs.projection = GroupoidMap{hs.groupoid, fam.base, {}, {}};
    for (const auto& pr : hs.pairs) {
        hs.projection.on_objects.push_back(pr.first);
    }
    for (const auto& pr : hs.arrow_pairs) {
        hs.projection.on_arrows.push_back(pr.first);
    }
    return hs;
}

struct FiberFamily {
    Family family;
    std::vector<Pullback> fibers;
};

/// The fibre functor b ↦ E_b of a map p: E -> B.
inline FiberFamily fiber_family(const GroupoidMap& p)
{
    FiberFamily ff;
    ff.family.base = p.codomain;
    const auto& B = *p.codomain;
    for (Index b = 0; b < B.object_count(); ++b) {
        ff.fibers.push_back(homotopy_fiber(p, b));
        ff.family.fibers.push_back(ff.fibers.back().groupoid);
    }
    for (Index s = 0; s < B.arrow_count(); ++s) {
        ff.family.transport.push_back(fiber_transport(p, ff.fibers[B.arrow(s).source], ff.fibers[B.arrow(s).target], s));
    }
    return ff;
}

// ---------------------------------------------------------------------------
// Group actions and homotopy quotients

/// A right action of a finite group on a groupoid: `on_objects[g][x]` is x.g,
/// `on_arrows[g][a]` is a.g. Each g acts by a functor, the identity acts
/// trivially, and (x.g).h = x.(g*h).
struct GroupAction {
    FiniteGroup group;
    GroupoidPtr space;
    std::vector<std::vector<Index>> on_objects;
    std::vector<std::vector<Index>> on_arrows;

    GroupoidMap acting(FiniteGroup::Element g) const { return GroupoidMap{space, space, on_objects.at(g), on_arrows.at(g)}; }
};

inline void check_action(const GroupAction& act)
{
    const auto& G = act.group;
    const auto& X = *act.space;
    if (act.on_objects.size() != G.order() || act.on_arrows.size() != G.order()) {
        throw GroupoidError(GroupoidErrc::invalid_action, "action table does not cover the group");
    }
    for (FiniteGroup::Element g = 0; g < G.order(); ++g) {
        if (act.on_objects[g].size() != X.object_count() || act.on_arrows[g].size() != X.arrow_count()
            || !is_functor(act.acting(g))) {
            throw GroupoidError(GroupoidErrc::invalid_action, "a group element does not act by a functor");
        }
    }
    for (Index x = 0; x < X.object_count(); ++x) {
        if (act.on_objects[G.identity()][x] != x) {
            throw GroupoidError(GroupoidErrc::invalid_action, "identity moves an object");
        }
    }
    for (Index a = 0; a < X.arrow_count(); ++a) {
        if (act.on_arrows[G.identity()][a] != a) {
            throw GroupoidError(GroupoidErrc::invalid_action, "identity moves an arrow");
        }
    }
    for (FiniteGroup::Element g = 0; g < G.order(); ++g) {
        for (FiniteGroup::Element h = 0; h < G.order(); ++h) {
            const auto gh = G.mul(g, h);
            for (Index x = 0; x < X.object_count(); ++x) {
                if (act.on_objects[h][act.on_objects[g][x]] != act.on_objects[gh][x]) {
                    throw GroupoidError(GroupoidErrc::invalid_action, "action is not compatible with multiplication");
                }
            }
            for (Index a = 0; a < X.arrow_count(); ++a) {
                if (act.on_arrows[h][act.on_arrows[g][a]] != act.on_arrows[gh][a]) {
                    throw GroupoidError(GroupoidErrc::invalid_action, "action is not compatible with multiplication");
                }
            }
        }
    }
}

/// X/G: objects of X; arrows x -> y are pairs (g, φ: x.g -> y), composed as
/// (h, ψ)∘(g, φ) = (g*h, ψ∘(φ.h)).
struct Quotient {
    GroupoidPtr groupoid;
    std::vector<std::pair<FiniteGroup::Element, Index>> arrow_pairs;
    /// The canonical map X -> X/G, φ ↦ (e, φ).
    GroupoidMap projection;
};

inline Quotient homotopy_quotient(const GroupAction& act)
{
    check_action(act);
    const auto& G = act.group;
    const auto& X = *act.space;
    Quotient q;
    std::vector<Arrow> arrows;
    std::unordered_map<std::uint64_t, Index> lookup;
    auto key = [](FiniteGroup::Element g, Index phi) { return (static_cast<std::uint64_t>(g) << 32) | phi; };
    for (Index x = 0; x < X.object_count(); ++x) {
        for (FiniteGroup::Element g = 0; g < G.order(); ++g) {
            for (Index phi : X.out_arrows(act.on_objects[g][x])) {
                lookup[key(g, phi)] = arrows.size();
                arrows.push_back({x, X.arrow(phi).target, "(" + std::to_string(g) + "," + X.arrow(phi).label + ")"});
                q.arrow_pairs.emplace_back(g, phi);
            }
        }
    }
    auto groupoid = FiniteGroupoid::build(X.object_ids(), std::move(arrows), [&](Index second, Index first) {
        const auto [g, phi] = q.arrow_pairs[first];
        const auto [h, psi] = q.arrow_pairs[second];
        return lookup.at(key(G.mul(g, h), X.compose(psi, act.on_arrows[h][phi])));
    }, false);
    q.groupoid = share(std::move(groupoid));
    q.projection = GroupoidMap{act.space, q.groupoid, {}, {}};
    for (Index x = 0; x < X.object_count(); ++x) {
        q.projection.on_objects.push_back(x);
    }
    for (Index a = 0; a < X.arrow_count(); ++a) {
        q.projection.on_arrows.push_back(lookup.at(key(G.identity(), a)));
    }
    return q;
}

/// The family over BG whose single fibre is X, with g acting by x ↦ x.g⁻¹
/// (converting the right action into a strict functor BG -> Grpd).
inline Family action_family(const GroupAction& act)
{
    check_action(act);
    Family fam;
    fam.base = share(one_object(act.group));
    fam.fibers = {act.space};
    // Arrows of one_object(G) are (0, 0, g) in element order.
    for (FiniteGroup::Element g = 0; g < act.group.order(); ++g) {
        fam.transport.push_back(act.acting(act.group.inv(g)));
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Equivalence

/// A functor is an equivalence iff it is bijective on components and an
/// isomorphism on every vertex group.
inline bool is_equivalence(const GroupoidMap& f)
{
    if (!is_functor(f)) {
        return false;
    }
    const auto& D = *f.domain;
    const auto& C = *f.codomain;
    const auto pd = pi0(D);
    const auto pc = pi0(C);
    if (pd.size() != pc.size()) {
        return false;
    }
    std::vector<bool> hit(pc.size(), false);
    for (Index c = 0; c < pd.size(); ++c) {
        const Index image = pc.class_of[f(pd.representative(c))];
        if (hit[image]) {
            return false;
        }
        hit[image] = true;
    }
    for (Index x = 0; x < D.object_count(); ++x) {
        const auto autos = D.hom(x, x);
        if (autos.size() != C.vertex_group_order(f(x))) {
            return false;
        }
        std::vector<Index> images;
        for (Index a : autos) {
            images.push_back(f.arrow(a));
        }
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
            return false;
        }
    }
    return true;
}

/// Canonical comparison E -> ∫ E_b, e ↦ (p e, (e, id)), for the homotopy sum
/// built from `fiber_family(p)`.
inline GroupoidMap total_space_comparison(const GroupoidMap& p, const FiberFamily& ff, const HomotopySum& hs)
{
    const auto& E = *p.domain;
    const auto& B = *p.codomain;
    std::vector<std::vector<Index>> object_of(B.object_count());
    for (Index o = 0; o < hs.pairs.size(); ++o) {
        const auto [b, x] = hs.pairs[o];
        if (object_of[b].size() <= x) {
            object_of[b].resize(x + 1, npos);
        }
        object_of[b][x] = o;
    }
    GroupoidMap m{p.domain, hs.groupoid, {}, {}};
    for (Index e = 0; e < E.object_count(); ++e) {
        const Index b = p(e);
        const Index fx = ff.fibers[b].find_object(e, 0, B.identity(b));
        m.on_objects.push_back(object_of[b][fx]);
    }
    // a: e -> e' goes to (p a, φ) with φ: (e, p a) -> (e', id), whose first component is a.
    const auto& S = *hs.groupoid;
    for (Index a = 0; a < E.arrow_count(); ++a) {
        const Index src = m.on_objects[E.arrow(a).source];
        const Index dst = m.on_objects[E.arrow(a).target];
        Index found = npos;
        for (Index c : S.out_arrows(src)) {
            if (S.arrow(c).target != dst || hs.arrow_pairs[c].first != p.arrow(a)) {
                continue;
            }
            const Index b2 = B.arrow(p.arrow(a)).target;
            if (ff.fibers[b2].left.on_arrows[hs.arrow_pairs[c].second] == a) {
                found = c;
                break;
            }
        }
        m.on_arrows.push_back(found);
    }
    return m;
}

/// Family groupoid of I-coloured k-element sets for a discrete I with
/// `colours` objects: objects are colourings {0..k-1} -> I (encoded in base
/// `colours`), arrows are colour-preserving bijections.
inline FiniteGroupoid family_groupoid(std::size_t colours, std::size_t k)
{
    std::vector<std::vector<std::size_t>> colourings;
    std::vector<std::size_t> c(k, 0);
    while (colours > 0 || k == 0) {
        colourings.push_back(c);
        std::size_t i = 0;
        while (i < k && ++c[i] == colours) {
            c[i] = 0;
            ++i;
        }
        if (i == k) {
            break;
        }
    }
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) {
        p[i] = i;
    }
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, Index> index;
    std::vector<ObjectId> ids;
    for (Index i = 0; i < colourings.size(); ++i) {
        index[colourings[i]] = i;
        ids.push_back(static_cast<ObjectId>(i));
    }
    // Arrow π: c -> c' is a bijection with c'(π(i)) = c(i).
    std::vector<Arrow> arrows;
    std::vector<std::pair<Index, Index>> data;
    std::map<std::pair<Index, Index>, Index> lookup;
    for (Index o = 0; o < colourings.size(); ++o) {
        for (Index q = 0; q < perms.size(); ++q) {
            std::vector<std::size_t> target(k);
            for (std::size_t i = 0; i < k; ++i) {
                target[perms[q][i]] = colourings[o][i];
            }
            lookup[{o, q}] = arrows.size();
            arrows.push_back({o, index.at(target), std::to_string(o) + ":" + std::to_string(q)});
            data.emplace_back(o, q);
        }
    }
    std::map<std::vector<std::size_t>, Index> perm_index;
    for (Index q = 0; q < perms.size(); ++q) {
        perm_index[perms[q]] = q;
    }
    return FiniteGroupoid::build(std::move(ids), std::move(arrows), [&](Index second, Index first) {
        const auto& p1 = perms[data[first].second];
        const auto& p2 = perms[data[second].second];
        std::vector<std::size_t> comp(k);
        for (std::size_t i = 0; i < k; ++i) {
            comp[i] = p2[p1[i]];
        }
        return lookup.at({data[first].first, perm_index.at(comp)});
    }, false);
}

/// Isomorphism-invariant signature: the sorted list of (component size,
/// vertex group order, out-degree sequence). Objects inside a component are
/// ordered by (out-degree, id).
inline std::vector<std::vector<std::size_t>> adjacency_signature(const FiniteGroupoid& g)
{
    const auto comps = pi0(g);
    std::vector<std::vector<std::size_t>> sig;
    for (Index c = 0; c < comps.size(); ++c) {
        std::vector<std::pair<std::size_t, ObjectId>> order;
        for (Index x : comps.members[c]) {
            order.emplace_back(g.out_arrows(x).size(), g.object_id(x));
        }
        std::sort(order.begin(), order.end());
        std::vector<std::size_t> row = {comps.members[c].size(), g.vertex_group_order(comps.representative(c))};
        for (const auto& o : order) {
            row.push_back(o.first);
        }
        sig.push_back(std::move(row));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

} // namespace fdb::groupoid
