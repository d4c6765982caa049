#pragma once

#include <fdb/groupoid/error.hpp>
#include <fdb/groupoid/finite_group.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fdb::groupoid {

using ObjectId = std::int64_t;
using Index = std::size_t;

inline constexpr Index npos = static_cast<Index>(-1);

struct Arrow {
    Index source;
    Index target;
    std::string label;
};

/// An explicitly finite groupoid: objects, arrows and a total composition
/// table on composable pairs. Objects and arrows are addressed by dense
/// indices; `object_id` gives the opaque external id of an object.
///
/// Composition is stored per arrow f as one slot for every arrow leaving
/// target(f), so the table has exactly one entry per composable pair.
class FiniteGroupoid {
public:
    /// Builds a groupoid from arrows and a composition function
    /// `compose(g, f)` returning the index of g∘f (f first). Identities and
    /// inverses are located, and the groupoid axioms are checked when
    /// `check` is set; associativity is checked on all composable triples.
    template <class ComposeFn>
    static FiniteGroupoid build(std::vector<ObjectId> objects, std::vector<Arrow> arrows, ComposeFn&& compose,
                                bool check = true)
    {
        FiniteGroupoid g;
        g.objects_ = std::move(objects);
        g.arrows_ = std::move(arrows);
        g.index_objects();
        g.out_.assign(g.objects_.size(), {});
        g.in_.assign(g.objects_.size(), {});
        g.out_pos_.assign(g.arrows_.size(), 0);
        for (Index a = 0; a < g.arrows_.size(); ++a) {
            const auto& ar = g.arrows_[a];
            if (ar.source >= g.objects_.size() || ar.target >= g.objects_.size()) {
                throw GroupoidError(GroupoidErrc::invalid_groupoid, "arrow endpoint out of range");
            }
            g.out_pos_[a] = g.out_[ar.source].size();
            g.out_[ar.source].push_back(a);
            g.in_[ar.target].push_back(a);
        }
        g.comp_offset_.assign(g.arrows_.size() + 1, 0);
        for (Index a = 0; a < g.arrows_.size(); ++a) {
            g.comp_offset_[a + 1] = g.comp_offset_[a] + g.out_[g.arrows_[a].target].size();
        }
        g.comp_.assign(g.comp_offset_.back(), npos);
        for (Index f = 0; f < g.arrows_.size(); ++f) {
            for (Index gg : g.out_[g.arrows_[f].target]) {
                const Index h = compose(gg, f);
                if (h >= g.arrows_.size() || g.arrows_[h].source != g.arrows_[f].source
                    || g.arrows_[h].target != g.arrows_[gg].target) {
                    throw GroupoidError(GroupoidErrc::invalid_groupoid, "composite has wrong endpoints");
                }
                g.comp_[g.comp_offset_[f] + g.out_pos_[gg]] = h;
            }
        }
        g.locate_identities_and_inverses();
        if (check) {
            g.check_associativity();
        }
        return g;
    }

    /// Builds from an explicit list of composition triples (g, f, g∘f).
    static FiniteGroupoid from_table(std::vector<ObjectId> objects, std::vector<Arrow> arrows,
                                     const std::vector<std::array<Index, 3>>& table)
    {
        std::unordered_map<std::uint64_t, Index> lookup;
        for (const auto& t : table) {
            lookup[(static_cast<std::uint64_t>(t[0]) << 32) | t[1]] = t[2];
        }
        return build(std::move(objects), std::move(arrows), [&](Index g, Index f) {
            auto it = lookup.find((static_cast<std::uint64_t>(g) << 32) | f);
            if (it == lookup.end()) {
                throw GroupoidError(GroupoidErrc::invalid_groupoid, "composition undefined on a composable pair");
            }
            return it->second;
        });
    }

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t arrow_count() const noexcept { return arrows_.size(); }
    ObjectId object_id(Index x) const { return objects_.at(x); }
    const std::vector<ObjectId>& object_ids() const noexcept { return objects_; }
    const Arrow& arrow(Index a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const noexcept { return arrows_; }

    Index find_object(ObjectId id) const
    {
        auto it = object_index_.find(id);
        if (it == object_index_.end()) {
            throw GroupoidError(GroupoidErrc::unknown_object, "no object with id " + std::to_string(id));
        }
        return it->second;
    }

    bool has_object(ObjectId id) const { return object_index_.count(id) != 0; }

    const std::vector<Index>& out_arrows(Index x) const { return out_.at(x); }
    /// Position of arrow a within out_arrows(source(a)).
    Index out_position(Index a) const { return out_pos_.at(a); }
    const std::vector<Index>& in_arrows(Index x) const { return in_.at(x); }

    /// Arrows x -> y.
    std::vector<Index> hom(Index x, Index y) const
    {
        std::vector<Index> r;
        for (Index a : out_.at(x)) {
            if (arrows_[a].target == y) {
                r.push_back(a);
            }
        }
        return r;
    }

    Index identity(Index x) const { return identity_.at(x); }
    Index inverse(Index a) const { return inverse_.at(a); }

    /// g∘f; requires target(f) == source(g).
    Index compose(Index g, Index f) const
    {
        if (arrows_.at(f).target != arrows_.at(g).source) {
            throw GroupoidError(GroupoidErrc::invalid_groupoid, "composing non-composable arrows");
        }
        return comp_[comp_offset_[f] + out_pos_[g]];
    }

    bool is_identity(Index a) const { return identity_[arrows_[a].source] == a; }

    /// Vertex group at x as a multiplication table over Aut(x).
    FiniteGroup vertex_group(Index x) const
    {
        const auto autos = hom(x, x);
        std::vector<std::vector<FiniteGroup::Element>> table(autos.size(), std::vector<FiniteGroup::Element>(autos.size()));
        for (Index i = 0; i < autos.size(); ++i) {
            for (Index j = 0; j < autos.size(); ++j) {
                const Index c = compose(autos[i], autos[j]);
                table[i][j] = static_cast<FiniteGroup::Element>(std::find(autos.begin(), autos.end(), c) - autos.begin());
            }
        }
        return FiniteGroup(std::move(table));
    }

    std::size_t vertex_group_order(Index x) const { return hom(x, x).size(); }

    /// Exhaustive associativity check; O(composable triples).
    void check_associativity() const
    {
        for (Index f = 0; f < arrows_.size(); ++f) {
            for (Index g : out_[arrows_[f].target]) {
                const Index gf = compose(g, f);
                for (Index h : out_[arrows_[g].target]) {
                    if (compose(h, gf) != compose(compose(h, g), f)) {
                        throw GroupoidError(GroupoidErrc::invalid_groupoid, "composition is not associative");
                    }
                }
            }
        }
    }

private:
    void index_objects()
    {
        object_index_.clear();
        for (Index i = 0; i < objects_.size(); ++i) {
            if (!object_index_.emplace(objects_[i], i).second) {
                throw GroupoidError(GroupoidErrc::invalid_groupoid, "duplicate object id " + std::to_string(objects_[i]));
            }
        }
    }

    void locate_identities_and_inverses()
    {
        identity_.assign(objects_.size(), npos);
        for (Index x = 0; x < objects_.size(); ++x) {
            for (Index a : out_[x]) {
                if (arrows_[a].target == x && compose(a, a) == a) {
                    identity_[x] = a;
                    break;
                }
            }
            if (identity_[x] == npos) {
                throw GroupoidError(GroupoidErrc::invalid_groupoid, "object without identity arrow");
            }
        }
        for (Index a = 0; a < arrows_.size(); ++a) {
            const Index x = arrows_[a].source;
            const Index y = arrows_[a].target;
            if (compose(a, identity_[x]) != a || compose(identity_[y], a) != a) {
                throw GroupoidError(GroupoidErrc::invalid_groupoid, "identity law fails");
            }
        }
        inverse_.assign(arrows_.size(), npos);
        for (Index a = 0; a < arrows_.size(); ++a) {
            const Index x = arrows_[a].source;
            const Index y = arrows_[a].target;
            for (Index b : out_[y]) {
                if (arrows_[b].target == x && compose(b, a) == identity_[x] && compose(a, b) == identity_[y]) {
                    inverse_[a] = b;
                    break;
                }
            }
            if (inverse_[a] == npos) {
                throw GroupoidError(GroupoidErrc::invalid_groupoid, "arrow '" + arrows_[a].label + "' is not invertible");
            }
        }
    }

    std::vector<ObjectId> objects_;
    std::unordered_map<ObjectId, Index> object_index_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<Index>> out_;
    std::vector<std::vector<Index>> in_;
    std::vector<Index> out_pos_;
    std::vector<Index> comp_offset_;
    std::vector<Index> comp_;
    std::vector<Index> identity_;
    std::vector<Index> inverse_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

/// A functor between finite groupoids.
struct GroupoidMap {
    GroupoidPtr domain;
    GroupoidPtr codomain;
    std::vector<Index> on_objects;
    std::vector<Index> on_arrows;

    Index operator()(Index x) const { return on_objects.at(x); }
    Index arrow(Index a) const { return on_arrows.at(a); }
};

/// Sources, targets, identities and composition are preserved.
inline bool is_functor(const GroupoidMap& f)
{
    const auto& d = *f.domain;
    const auto& c = *f.codomain;
    if (f.on_objects.size() != d.object_count() || f.on_arrows.size() != d.arrow_count()) {
        return false;
    }
    for (Index x = 0; x < d.object_count(); ++x) {
        if (f.on_objects[x] >= c.object_count() || f.on_arrows[d.identity(x)] != c.identity(f.on_objects[x])) {
            return false;
        }
    }
    for (Index a = 0; a < d.arrow_count(); ++a) {
        const Index b = f.on_arrows[a];
        if (b >= c.arrow_count() || c.arrow(b).source != f.on_objects[d.arrow(a).source]
            || c.arrow(b).target != f.on_objects[d.arrow(a).target]) {
            return false;
        }
    }
    for (Index a = 0; a < d.arrow_count(); ++a) {
        for (Index b : d.out_arrows(d.arrow(a).target)) {
            if (f.on_arrows[d.compose(b, a)] != c.compose(f.on_arrows[b], f.on_arrows[a])) {
                return false;
            }
        }
    }
    return true;
}

inline void require_functor(const GroupoidMap& f, const char* what)
{
    if (!is_functor(f)) {
        throw GroupoidError(GroupoidErrc::not_functorial, what);
    }
}

inline GroupoidMap identity_map(const GroupoidPtr& g)
{
    GroupoidMap m{g, g, {}, {}};
    m.on_objects.resize(g->object_count());
    m.on_arrows.resize(g->arrow_count());
    for (Index x = 0; x < m.on_objects.size(); ++x) {
        m.on_objects[x] = x;
    }
    for (Index a = 0; a < m.on_arrows.size(); ++a) {
        m.on_arrows[a] = a;
    }
    return m;
}

/// g∘f.
inline GroupoidMap compose(const GroupoidMap& g, const GroupoidMap& f)
{
    if (f.codomain != g.domain) {
        throw GroupoidError(GroupoidErrc::codomain_mismatch, "composing maps with mismatched (co)domains");
    }
    GroupoidMap m{f.domain, g.codomain, {}, {}};
    for (Index y : f.on_objects) {
        m.on_objects.push_back(g.on_objects.at(y));
    }
    for (Index b : f.on_arrows) {
        m.on_arrows.push_back(g.on_arrows.at(b));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Elementary groupoids

/// Discrete groupoid on the given ids.
inline FiniteGroupoid discrete(std::vector<ObjectId> ids)
{
    std::vector<Arrow> arrows;
    for (Index i = 0; i < ids.size(); ++i) {
        arrows.push_back({i, i, "id" + std::to_string(ids[i])});
    }
    return FiniteGroupoid::build(std::move(ids), std::move(arrows), [](Index, Index f) { return f; });
}

inline FiniteGroupoid discrete(std::size_t n)
{
    std::vector<ObjectId> ids(n);
    for (Index i = 0; i < n; ++i) {
        ids[i] = static_cast<ObjectId>(i);
    }
    return discrete(std::move(ids));
}

inline FiniteGroupoid point() { return discrete(1); }

/// Connected groupoid with objects 0..k-1 and hom(i, j) = G; arrow
/// (i, j, g) composed with (j, l, h) is (i, l, h*g). With k = 1 this is BG.
inline FiniteGroupoid connected(std::size_t k, const FiniteGroup& group, ObjectId first_id = 0)
{
    const std::size_t n = group.order();
    std::vector<ObjectId> ids(k);
    for (Index i = 0; i < k; ++i) {
        ids[i] = first_id + static_cast<ObjectId>(i);
    }
    std::vector<Arrow> arrows;
    for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
            for (Index g = 0; g < n; ++g) {
                arrows.push_back({i, j, std::to_string(i) + ">" + std::to_string(j) + ":" + std::to_string(g)});
            }
        }
    }
    auto code = [&](Index i, Index j, Index g) { return (i * k + j) * n + g; };
    return FiniteGroupoid::build(std::move(ids), std::move(arrows), [&](Index second, Index first) {
        const Index i = first / (k * n);
        const Index l = (second / n) % k;
        return code(i, l, group.mul(second % n, first % n));
    });
}

inline FiniteGroupoid one_object(const FiniteGroup& group) { return connected(1, group); }

/// Coproduct X + Y. If any ids collide, all ids of Y are shifted past those of X.
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& x, const FiniteGroupoid& y)
{
    std::vector<ObjectId> ids = x.object_ids();
    ObjectId shift = 0;
    for (ObjectId id : x.object_ids()) {
        shift = std::max(shift, id + 1);
    }
    bool collide = false;
    for (ObjectId id : y.object_ids()) {
        collide = collide || x.has_object(id);
    }
    for (ObjectId id : y.object_ids()) {
        ids.push_back(collide ? id + shift : id);
    }
    std::vector<Arrow> arrows = x.arrows();
    const Index base = x.object_count();
    const Index abase = x.arrow_count();
    for (const auto& a : y.arrows()) {
        arrows.push_back({a.source + base, a.target + base, a.label});
    }
    return FiniteGroupoid::build(std::move(ids), std::move(arrows), [&](Index g, Index f) {
        return f < abase ? x.compose(g, f) : y.compose(g - abase, f - abase) + abase;
    }, false);
}

/// Product X × Y; object (x, y) has index x * |Y| + y.
inline FiniteGroupoid product(const FiniteGroupoid& x, const FiniteGroupoid& y)
{
    std::vector<ObjectId> ids;
    for (Index i = 0; i < x.object_count(); ++i) {
        for (Index j = 0; j < y.object_count(); ++j) {
            ids.push_back(static_cast<ObjectId>(i * y.object_count() + j));
        }
    }
    std::vector<Arrow> arrows;
    const Index ny = y.object_count();
    const Index my = y.arrow_count();
    for (Index a = 0; a < x.arrow_count(); ++a) {
        for (Index b = 0; b < my; ++b) {
            arrows.push_back({x.arrow(a).source * ny + y.arrow(b).source, x.arrow(a).target * ny + y.arrow(b).target,
                              "(" + x.arrow(a).label + "," + y.arrow(b).label + ")"});
        }
    }
    return FiniteGroupoid::build(std::move(ids), std::move(arrows), [&](Index g, Index f) {
        return x.compose(g / my, f / my) * my + y.compose(g % my, f % my);
    }, false);
}

/// The name of an object, 1 -> B.
inline GroupoidMap name_of(const GroupoidPtr& base, Index b)
{
    if (b >= base->object_count()) {
        throw GroupoidError(GroupoidErrc::unknown_object, "object index out of range");
    }
    return GroupoidMap{share(point()), base, {b}, {base->identity(b)}};
}

/// The unique map to the point.
inline GroupoidMap to_point(const GroupoidPtr& g)
{
    GroupoidMap m{g, share(point()), std::vector<Index>(g->object_count(), 0), std::vector<Index>(g->arrow_count(), 0)};
    return m;
}

} // namespace fdb::groupoid
