#pragma once

#include <fdb/pfunctor/pforest.hpp>
#include <fdb/trees/cut.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdb::enumerate {

using pfunctor::Catalog;
using pfunctor::CanonResult;
using pfunctor::Colour;
using pfunctor::OpId;
using pfunctor::PForest;
using pfunctor::Profile;
using pfunctor::PTree;
using pfunctor::TreeInfo;
using trees::Index;
using trees::Matching;

/// Finite truncation: trees or monomials with at most max_edges edges and,
/// when given, at most max_nodes nodes. The arity bound lives in the spec.
struct Bound {
    std::size_t max_edges = 1;
    std::optional<std::size_t> max_nodes;

    Bound() = default;
    Bound(std::size_t edges, std::optional<std::size_t> nodes = std::nullopt) : max_edges(edges), max_nodes(nodes) {}

    bool admits(std::size_t edges, std::size_t nodes) const noexcept
    {
        return edges <= max_edges && (!max_nodes || nodes <= *max_nodes);
    }

    friend bool operator==(const Bound&, const Bound&) = default;
};

struct TreeFilter {
    std::optional<Colour> root;
    std::optional<Profile> leaves;

    bool accepts(const TreeInfo& t) const { return (!root || t.root == *root) && (!leaves || t.leaf_profile == *leaves); }
};

namespace detail {

struct Entry {
    CanonResult canon;
    std::size_t edges;
    std::size_t nodes;
};

} // namespace detail

/// One representative per isomorphism class within the bound, sorted by key.
///
/// Classes are grown by edge count: a node over children whose edge counts
/// sum to e - 1 has e edges. Children come from the classes already found,
/// chosen as multisets when the operation is fully symmetric and as tuples
/// otherwise; canonical keys remove the duplicates. Node counts are additive,
/// so a node bound can also prune children.
inline std::vector<std::shared_ptr<const TreeInfo>> enumerate_ptrees(const Catalog& cat, const Bound& bound, const TreeFilter& filter = {})
{
    if (bound.max_edges < 1) {
        throw std::invalid_argument("max_edges must be at least 1");
    }
    const auto& spec = cat.spec();
    // by_colour[c][e] = classes with root colour c and exactly e edges.
    std::vector<std::vector<std::vector<detail::Entry>>> by_colour(spec.colour_count(),
                                                                   std::vector<std::vector<detail::Entry>>(bound.max_edges + 1));
    std::vector<std::string> found;
    auto node_ok = [&](std::size_t nodes) { return !bound.max_nodes || nodes <= *bound.max_nodes; };

    for (std::size_t e = 1; e <= bound.max_edges; ++e) {
        std::map<std::string, detail::Entry> stratum;
        if (e == 1) {
            for (Colour c = 0; c < spec.colour_count(); ++c) {
                detail::Entry t{{pfunctor::detail::leaf_key(spec, c), 1}, 1, 0};
                stratum.emplace(t.canon.key, t);
            }
        }
        for (OpId o = 0; o < spec.op_count(); ++o) {
            const auto& op = spec.op(o);
            const std::size_t a = op.arity();
            if (!node_ok(1)) {
                continue;
            }
            if (a == 0) {
                if (e == 1) {
                    auto r = pfunctor::detail::combine(spec, o, {});
                    detail::Entry t{r, 1, 1};
                    stratum.emplace(t.canon.key, t);
                }
                continue;
            }
            if (e < a + 1) {
                continue;
            }
            const bool multiset = spec.is_full_symmetric(o);
            std::vector<const detail::Entry*> chosen;
            // Multiset choice walks a flat list of candidates (edge size, index)
            // in a fixed order and only moves forward.
            std::function<void(std::size_t, std::size_t, std::size_t, std::size_t, std::size_t)> pick =
                [&](std::size_t slot, std::size_t left, std::size_t nodes, std::size_t min_size, std::size_t min_index) {
                    if (slot == a) {
                        if (left == 0) {
                            auto r = pfunctor::detail::combine(spec, o, [&] {
                                std::vector<const CanonResult*> v;
                                for (const auto* c : chosen) {
                                    v.push_back(&c->canon);
                                }
                                return v;
                            }());
                            detail::Entry t{std::move(r), e, nodes};
                            stratum.emplace(t.canon.key, std::move(t));
                        }
                        return;
                    }
                    const std::size_t remaining_slots = a - slot - 1;
                    if (left < remaining_slots + 1) {
                        return;
                    }
                    const auto& pool = by_colour[op.in[slot]];
                    for (std::size_t sz = multiset ? min_size : 1; sz + remaining_slots <= left && sz < e; ++sz) {
                        const auto& list = pool[sz];
                        for (std::size_t i = (multiset && sz == min_size) ? min_index : 0; i < list.size(); ++i) {
                            if (!node_ok(nodes + list[i].nodes)) {
                                continue;
                            }
                            chosen.push_back(&list[i]);
                            pick(slot + 1, left - sz, nodes + list[i].nodes, sz, i);
                            chosen.pop_back();
                        }
                    }
                };
            pick(0, e - 1, 1, 1, 0);
        }
        for (auto& [key, entry] : stratum) {
            found.push_back(key);
            by_colour[cat.info(key)->root][e].push_back(std::move(entry));
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<std::shared_ptr<const TreeInfo>> out;
    for (const auto& k : found) {
        auto info = cat.info(k);
        if (bound.admits(info->edges, info->nodes) && filter.accepts(*info)) {
            out.push_back(std::move(info));
        }
    }
    return out;
}

/// Every forest monomial within the bound: multisets of tree classes whose
/// total edges (and nodes) fit. With a root profile, exactly the forests
/// whose roots carry that multiset of colours.
inline std::vector<PForest> enumerate_pforests(const Catalog& cat, const Bound& bound, const std::optional<Profile>& root_profile = std::nullopt)
{
    std::vector<PForest> out;
    std::vector<std::shared_ptr<const TreeInfo>> pool;
    std::size_t max_trees = bound.max_edges;
    std::map<Colour, std::size_t> need;
    if (root_profile) {
        for (const auto& [c, k] : *root_profile) {
            need[c] = k;
        }
        max_trees = pfunctor::profile_size(*root_profile);
        if (max_trees == 0) {
            return {PForest{}};
        }
        if (max_trees > bound.max_edges) {
            return out;
        }
    }
    for (auto& t : enumerate_ptrees(cat, bound)) {
        if (!root_profile || need.count(t->root)) {
            pool.push_back(std::move(t));
        }
    }
    std::vector<std::string> chosen;
    std::map<Colour, std::size_t> have;
    std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t edges, std::size_t nodes) {
        if (!root_profile || have == need) {
            out.push_back(PForest::from_keys(chosen));
        }
        if (chosen.size() == max_trees) {
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            const auto& t = *pool[i];
            if (!bound.admits(edges + t.edges, nodes + t.nodes)) {
                continue;
            }
            if (root_profile && have[t.root] == need[t.root]) {
                continue;
            }
            chosen.push_back(t.key);
            ++have[t.root];
            rec(i, edges + t.edges, nodes + t.nodes);
            --have[t.root];
            if (have[t.root] == 0) {
                have.erase(t.root);
            }
            chosen.pop_back();
        }
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// All colour-respecting bijections from the leaves of S to the roots of a
/// forest diagram, as (leaf of S, root of F) pairs in leaf order.
inline std::vector<Matching> matchings(const PTree& s, const PTree& f)
{
    std::vector<Matching> out;
    const auto leaves = s.leaves();
    const auto& roots = f.roots();
    if (leaves.size() != roots.size()) {
        return out;
    }
    std::vector<bool> used(roots.size(), false);
    Matching m;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == leaves.size()) {
            out.push_back(m);
            return;
        }
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (!used[j] && s.edge_label(leaves[i]) == f.edge_label(roots[j])) {
                used[j] = true;
                m.emplace_back(leaves[i], roots[j]);
                rec(i + 1);
                m.pop_back();
                used[j] = false;
            }
        }
    };
    rec(0);
    return out;
}

inline std::vector<Matching> matchings(const Catalog& cat, const PTree& s, const PForest& f)
{
    return matchings(s, pfunctor::forest_diagram(cat, f));
}

} // namespace fdb::enumerate
