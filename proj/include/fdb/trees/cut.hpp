#pragma once

#include <fdb/trees/diagram.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace fdb::trees {

/// A cut of a tree: a set of kept nodes closed toward the root. The empty set
/// is the root-edge cut, the full node set keeps the whole tree.
struct Cut {
    std::vector<Index> kept;

    friend bool operator==(const Cut&, const Cut&) = default;
};

/// Pairs (leaf of S, root of P) identifying each cut edge from both sides.
using Matching = std::vector<std::pair<Index, Index>>;

template <class F>
struct TreeWithCut {
    F tree;
    Cut cut;

    friend bool operator==(const TreeWithCut&, const TreeWithCut&) = default;
};

template <class F>
struct Pruned {
    F crown;  // P: ideal subtrees above the cut
    F stump;  // S: the kept subtree containing the root
    Matching matching;

    friend bool operator==(const Pruned&, const Pruned&) = default;
};

template <class F>
bool is_cut(const F& t, const std::vector<Index>& kept)
{
    std::vector<bool> in(t.node_count(), false);
    for (Index n : kept) {
        if (n >= t.node_count() || in[n]) {
            return false;
        }
        in[n] = true;
    }
    for (Index n : kept) {
        const Index below = t.parent(n);
        if (below != npos && !in[below]) {
            return false;
        }
    }
    return true;
}

namespace detail {

template <class F>
void ideals_at(const F& t, Index n, std::vector<std::vector<Index>>& out)
{
    // Root-closed subsets of the subtree at n that contain n.
    std::vector<std::vector<Index>> acc = {{n}};
    for (Index e : t.inputs(n)) {
        const Index c = t.producer(e);
        if (c == npos) {
            continue;
        }
        std::vector<std::vector<Index>> child;
        ideals_at(t, c, child);
        std::vector<std::vector<Index>> next;
        next.reserve(acc.size() * (child.size() + 1));
        for (const auto& a : acc) {
            next.push_back(a);
            for (const auto& b : child) {
                auto u = a;
                u.insert(u.end(), b.begin(), b.end());
                next.push_back(std::move(u));
            }
        }
        acc = std::move(next);
    }
    for (auto& a : acc) {
        out.push_back(std::move(a));
    }
}

} // namespace detail

/// Every cut of a tree, ordered by number of kept nodes and then
/// lexicographically on the sorted kept ids.
template <class F>
std::vector<Cut> enumerate_cuts(const F& t)
{
    const Index root = t.root();
    std::vector<std::vector<Index>> sets = {{}};
    if (t.producer(root) != npos) {
        detail::ideals_at(t, t.producer(root), sets);
    }
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
    }
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<Cut> cuts;
    cuts.reserve(sets.size());
    for (auto& s : sets) {
        cuts.push_back(Cut{std::move(s)});
    }
    return cuts;
}

/// Number of cuts without listing them: 1 + f(root node), f(n) = ∏ (1 + f(child)).
template <class F>
std::size_t count_cuts(const F& t)
{
    std::vector<std::size_t> f(t.node_count(), 1);
    // Children have larger preorder positions than parents only after
    // normalization, so evaluate by an explicit post-order walk.
    std::vector<std::pair<Index, bool>> stack;
    const Index root = t.root();
    if (t.producer(root) == npos) {
        return 1;
    }
    stack.emplace_back(t.producer(root), false);
    while (!stack.empty()) {
        auto [n, done] = stack.back();
        stack.pop_back();
        if (!done) {
            stack.emplace_back(n, true);
            for (Index e : t.inputs(n)) {
                if (t.producer(e) != npos) {
                    stack.emplace_back(t.producer(e), false);
                }
            }
        } else {
            for (Index e : t.inputs(n)) {
                if (t.producer(e) != npos) {
                    f[n] *= 1 + f[t.producer(e)];
                }
            }
        }
    }
    return 1 + f[t.producer(root)];
}

/// Splits T along a cut. S keeps the kept nodes and all their edges and is
/// numbered in preorder; its leaves in increasing id order are the cut edges.
/// P is the forest of ideal subtrees generated by those leaves, with roots in
/// the same order. Each cut edge appears in both, with the same label.
template <class F>
Pruned<F> prune(const F& t, const Cut& c)
{
    if (!is_cut(t, c.kept)) {
        throw TreeError(TreeErrc::invalid_cut, "kept set is not closed toward the root");
    }
    std::vector<bool> keep(t.node_count(), false);
    for (Index n : c.kept) {
        keep[n] = true;
    }
    using E = typename F::edge_label_type;
    using N = typename F::node_label_type;

    // Stump, in preorder from the root.
    std::vector<Index> s_edges;
    std::vector<Index> s_nodes;
    std::vector<Index> new_edge(t.edge_count(), npos);
    std::vector<Index> cut_edges;
    std::vector<Index> stack = {t.root()};
    while (!stack.empty()) {
        const Index e = stack.back();
        stack.pop_back();
        new_edge[e] = s_edges.size();
        s_edges.push_back(e);
        const Index n = t.producer(e);
        if (n != npos && keep[n]) {
            s_nodes.push_back(n);
            const auto& in = t.inputs(n);
            for (auto it = in.rbegin(); it != in.rend(); ++it) {
                stack.push_back(*it);
            }
        } else {
            cut_edges.push_back(e);
        }
    }
    std::vector<std::vector<Index>> inputs;
    std::vector<Index> outputs;
    std::vector<E> el;
    std::vector<N> nl;
    for (Index e : s_edges) {
        el.push_back(t.edge_label(e));
    }
    for (Index n : s_nodes) {
        std::vector<Index> in;
        for (Index e : t.inputs(n)) {
            in.push_back(new_edge[e]);
        }
        inputs.push_back(std::move(in));
        outputs.push_back(new_edge[t.output(n)]);
        nl.push_back(t.node_label(n));
    }
    Pruned<F> r;
    r.stump = F::from_nodes(s_edges.size(), std::move(inputs), std::move(outputs), std::move(el), std::move(nl));

    // Cut edges were met in preorder, which is increasing stump id order.
    std::vector<F> parts;
    for (Index e : cut_edges) {
        parts.push_back(ideal_subtree(t, e));
    }
    r.crown = forest_of(parts);
    const auto& roots = r.crown.roots();
    for (Index i = 0; i < cut_edges.size(); ++i) {
        r.matching.emplace_back(new_edge[cut_edges[i]], roots[i]);
    }
    return r;
}

/// Glues P onto the leaves of S along λ. The result keeps S's edge and node
/// ids, appends P's other edges and nodes after them, and identifies each
/// root of P with its matched leaf of S. The returned cut keeps S's nodes.
template <class F>
TreeWithCut<F> graft_raw(const F& crown, const F& stump, const Matching& matching)
{
    const auto leaves = stump.leaves();
    std::vector<Index> root_to_leaf(crown.edge_count(), npos);
    std::vector<bool> leaf_used(stump.edge_count(), false);
    if (matching.size() != leaves.size() || matching.size() != crown.roots().size()) {
        throw TreeError(TreeErrc::matching_not_bijective, "matching size differs from leaves or roots");
    }
    for (const auto& [leaf, root] : matching) {
        if (leaf >= stump.edge_count() || !stump.is_leaf(leaf) || leaf_used[leaf] || root >= crown.edge_count()
            || !crown.is_root(root) || root_to_leaf[root] != npos) {
            throw TreeError(TreeErrc::matching_not_bijective, "matching is not a bijection from leaves to roots");
        }
        if (!(stump.edge_label(leaf) == crown.edge_label(root))) {
            throw TreeError(TreeErrc::label_mismatch, "matched edges carry different labels");
        }
        leaf_used[leaf] = true;
        root_to_leaf[root] = leaf;
    }
    using E = typename F::edge_label_type;
    using N = typename F::node_label_type;
    std::vector<Index> crown_edge(crown.edge_count());
    Index next = stump.edge_count();
    std::vector<E> el = stump.edge_labels();
    for (Index e = 0; e < crown.edge_count(); ++e) {
        if (root_to_leaf[e] != npos) {
            crown_edge[e] = root_to_leaf[e];
        } else {
            crown_edge[e] = next++;
            el.push_back(crown.edge_label(e));
        }
    }
    std::vector<std::vector<Index>> inputs;
    std::vector<Index> outputs;
    std::vector<N> nl = stump.node_labels();
    for (Index n = 0; n < stump.node_count(); ++n) {
        inputs.push_back(stump.inputs(n));
        outputs.push_back(stump.output(n));
    }
    for (Index n = 0; n < crown.node_count(); ++n) {
        std::vector<Index> in;
        for (Index e : crown.inputs(n)) {
            in.push_back(crown_edge[e]);
        }
        inputs.push_back(std::move(in));
        outputs.push_back(crown_edge[crown.output(n)]);
        nl.push_back(crown.node_label(n));
    }
    TreeWithCut<F> r;
    r.tree = require_tree(F::from_nodes(next, std::move(inputs), std::move(outputs), std::move(el), std::move(nl)));
    for (Index n = 0; n < stump.node_count(); ++n) {
        r.cut.kept.push_back(n);
    }
    return r;
}

/// Renumbers a tree with cut in preorder, carrying the kept set along.
template <class F>
TreeWithCut<F> normalize(const TreeWithCut<F>& tc)
{
    auto [tree, map] = tc.tree.normalized_with_map();
    TreeWithCut<F> r{std::move(tree), {}};
    for (Index n : tc.cut.kept) {
        r.cut.kept.push_back(map.node[n]);
    }
    std::sort(r.cut.kept.begin(), r.cut.kept.end());
    return r;
}

/// graft_raw followed by preorder renumbering. On preorder-numbered input,
/// graft(prune(T, c)) == (T, c).
template <class F>
TreeWithCut<F> graft(const F& crown, const F& stump, const Matching& matching)
{
    return normalize(graft_raw(crown, stump, matching));
}

/// Checks that an ideal subtree embedding is cartesian: every node of f
/// whose output lies in the image is itself in the image, with matching inputs.
template <class F>
bool is_ideal_embedding(const F& f, const F& sub, const std::vector<Index>& edge_map, const std::vector<Index>& node_map)
{
    if (edge_map.size() != sub.edge_count() || node_map.size() != sub.node_count()) {
        return false;
    }
    std::vector<Index> image_of(f.edge_count(), npos);
    for (Index e = 0; e < edge_map.size(); ++e) {
        if (image_of[edge_map[e]] != npos) {
            return false;
        }
        image_of[edge_map[e]] = e;
    }
    for (Index n = 0; n < sub.node_count(); ++n) {
        const Index m = node_map[n];
        if (f.output(m) != edge_map[sub.output(n)] || f.arity(m) != sub.arity(n)) {
            return false;
        }
        for (Index i = 0; i < sub.arity(n); ++i) {
            if (f.inputs(m)[i] != edge_map[sub.inputs(n)[i]]) {
                return false;
            }
        }
    }
    // Cartesian on the right square: each image edge produced in f is produced in sub.
    for (Index e = 0; e < sub.edge_count(); ++e) {
        if (f.producer(edge_map[e]) != npos && sub.producer(e) == npos) {
            return false;
        }
    }
    return true;
}

} // namespace fdb::trees
