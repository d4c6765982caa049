#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdb::trees {

using Index = std::size_t;
inline constexpr Index npos = static_cast<Index>(-1);

enum class TreeErrc {
    invalid_reference,
    non_injective_t,
    non_injective_s,
    no_root,
    multiple_roots,
    cycle_detected,
    invalid_cut,
    matching_not_bijective,
    label_mismatch,
};

inline const char* errc_name(TreeErrc c)
{
    switch (c) {
    case TreeErrc::invalid_reference: return "InvalidReference";
    case TreeErrc::non_injective_t: return "NonInjectiveT";
    case TreeErrc::non_injective_s: return "NonInjectiveS";
    case TreeErrc::no_root: return "NoRoot";
    case TreeErrc::multiple_roots: return "MultipleRoots";
    case TreeErrc::cycle_detected: return "CycleDetected";
    case TreeErrc::invalid_cut: return "InvalidCut";
    case TreeErrc::matching_not_bijective: return "MatchingNotBijective";
    case TreeErrc::label_mismatch: return "LabelMismatch";
    }
    return "TreeError";
}

class TreeError : public std::runtime_error {
public:
    TreeError(TreeErrc code, const std::string& what) : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    TreeErrc code() const noexcept { return code_; }

private:
    TreeErrc code_;
};

/// A diagram of finite sets A <-s- M -p-> N -t-> A as supplied by a caller.
/// A = {0..edges-1}, N = {0..nodes-1}; each element of M is a pair
/// (p(m), s(m)), and the order in which a node's pairs appear is its slot order.
struct RawDiagram {
    std::size_t edges = 0;
    std::size_t nodes = 0;
    std::vector<std::pair<Index, Index>> m;
    std::vector<Index> t;
};

/// Placeholder label for undecorated trees.
struct NoLabel {
    friend auto operator<=>(const NoLabel&, const NoLabel&) = default;
};

/// A validated finite rooted forest with labelled edges and nodes. Every
/// node has one output edge and an ordered list of input edges; an edge is
/// the output of at most one node (t injective) and the input of at most one
/// node (s injective). Edges that are inputs of no node are roots; edges that
/// are outputs of no node are leaves.
template <class EdgeLabel, class NodeLabel>
class basic_forest {
public:
    using edge_label_type = EdgeLabel;
    using node_label_type = NodeLabel;

    basic_forest() = default;

    /// Validates a raw diagram. Labels default-construct when omitted.
    static basic_forest from_raw(const RawDiagram& d, std::vector<EdgeLabel> edge_labels = {},
                                 std::vector<NodeLabel> node_labels = {})
    {
        basic_forest f;
        f.inputs_.assign(d.nodes, {});
        for (const auto& [node, edge] : d.m) {
            if (node >= d.nodes || edge >= d.edges) {
                throw TreeError(TreeErrc::invalid_reference, "element of M refers outside N or A");
            }
            f.inputs_[node].push_back(edge);
        }
        if (d.t.size() != d.nodes) {
            throw TreeError(TreeErrc::invalid_reference, "t must be defined on every node");
        }
        f.output_ = d.t;
        f.edge_labels_ = edge_labels.empty() ? std::vector<EdgeLabel>(d.edges) : std::move(edge_labels);
        f.node_labels_ = node_labels.empty() ? std::vector<NodeLabel>(d.nodes) : std::move(node_labels);
        f.finish(d.edges);
        return f;
    }

    /// Builds from per-node input lists and outputs.
    static basic_forest from_nodes(std::size_t edges, std::vector<std::vector<Index>> inputs, std::vector<Index> outputs,
                                   std::vector<EdgeLabel> edge_labels = {}, std::vector<NodeLabel> node_labels = {})
    {
        basic_forest f;
        if (inputs.size() != outputs.size()) {
            throw TreeError(TreeErrc::invalid_reference, "inputs and outputs differ in length");
        }
        f.inputs_ = std::move(inputs);
        f.output_ = std::move(outputs);
        f.edge_labels_ = edge_labels.empty() ? std::vector<EdgeLabel>(edges) : std::move(edge_labels);
        f.node_labels_ = node_labels.empty() ? std::vector<NodeLabel>(f.output_.size()) : std::move(node_labels);
        f.finish(edges);
        return f;
    }

    /// A single edge with no nodes.
    static basic_forest trivial(EdgeLabel label = {}) { return from_nodes(1, {}, {}, {std::move(label)}, {}); }

    std::size_t edge_count() const noexcept { return producer_.size(); }
    std::size_t node_count() const noexcept { return output_.size(); }

    const std::vector<Index>& inputs(Index n) const { return inputs_.at(n); }
    Index output(Index n) const { return output_.at(n); }
    std::size_t arity(Index n) const { return inputs_.at(n).size(); }
    /// Node whose output is e, or npos for a leaf.
    Index producer(Index e) const { return producer_.at(e); }
    /// Node having e as an input, or npos for a root.
    Index consumer(Index e) const { return consumer_.at(e); }
    /// Position of e in the input list of its consumer.
    Index slot(Index e) const { return slot_.at(e); }
    /// The node directly below n, or npos when n's output is a root.
    Index parent(Index n) const { return consumer_[output_.at(n)]; }

    /// Walk-to-the-root map σ; npos on roots.
    Index sigma(Index e) const
    {
        const Index c = consumer_.at(e);
        return c == npos ? npos : output_[c];
    }

    const std::vector<Index>& roots() const noexcept { return roots_; }
    bool is_tree() const noexcept { return roots_.size() == 1; }
    Index root() const
    {
        if (!is_tree()) {
            throw TreeError(roots_.empty() ? TreeErrc::no_root : TreeErrc::multiple_roots, "forest is not a tree");
        }
        return roots_.front();
    }

    bool is_leaf(Index e) const { return producer_.at(e) == npos; }
    bool is_root(Index e) const { return consumer_.at(e) == npos; }

    std::vector<Index> leaves() const
    {
        std::vector<Index> r;
        for (Index e = 0; e < edge_count(); ++e) {
            if (producer_[e] == npos) {
                r.push_back(e);
            }
        }
        return r;
    }

    std::size_t leaf_count() const
    {
        return static_cast<std::size_t>(std::count(producer_.begin(), producer_.end(), npos));
    }

    const EdgeLabel& edge_label(Index e) const { return edge_labels_.at(e); }
    const NodeLabel& node_label(Index n) const { return node_labels_.at(n); }
    const std::vector<EdgeLabel>& edge_labels() const noexcept { return edge_labels_; }
    const std::vector<NodeLabel>& node_labels() const noexcept { return node_labels_; }

    RawDiagram to_raw() const
    {
        RawDiagram d;
        d.edges = edge_count();
        d.nodes = node_count();
        d.t = output_;
        for (Index n = 0; n < node_count(); ++n) {
            for (Index e : inputs_[n]) {
                d.m.emplace_back(n, e);
            }
        }
        return d;
    }

    /// Old-to-new id maps produced by normalization.
    struct Relabelling {
        std::vector<Index> edge;
        std::vector<Index> node;
    };

    /// Renumbers edges and nodes in preorder: roots in order, each edge
    /// before the node producing it, inputs in slot order. Returns the
    /// renumbered forest and the old-to-new maps.
    std::pair<basic_forest, Relabelling> normalized_with_map() const
    {
        Relabelling map{std::vector<Index>(edge_count(), npos), std::vector<Index>(node_count(), npos)};
        std::vector<Index> edge_order;
        std::vector<Index> node_order;
        std::vector<Index> stack;
        for (auto it = roots_.rbegin(); it != roots_.rend(); ++it) {
            stack.push_back(*it);
        }
        while (!stack.empty()) {
            const Index e = stack.back();
            stack.pop_back();
            map.edge[e] = edge_order.size();
            edge_order.push_back(e);
            const Index n = producer_[e];
            if (n != npos) {
                map.node[n] = node_order.size();
                node_order.push_back(n);
                for (auto it = inputs_[n].rbegin(); it != inputs_[n].rend(); ++it) {
                    stack.push_back(*it);
                }
            }
        }
        std::vector<std::vector<Index>> inputs(node_count());
        std::vector<Index> outputs(node_count());
        std::vector<EdgeLabel> el(edge_count());
        std::vector<NodeLabel> nl(node_count());
        for (Index n = 0; n < node_count(); ++n) {
            const Index nn = map.node[n];
            outputs[nn] = map.edge[output_[n]];
            for (Index e : inputs_[n]) {
                inputs[nn].push_back(map.edge[e]);
            }
            nl[nn] = node_labels_[n];
        }
        for (Index e = 0; e < edge_count(); ++e) {
            el[map.edge[e]] = edge_labels_[e];
        }
        return {from_nodes(edge_count(), std::move(inputs), std::move(outputs), std::move(el), std::move(nl)), std::move(map)};
    }

    basic_forest normalized() const { return normalized_with_map().first; }

    bool is_normalized() const
    {
        const auto [n, map] = normalized_with_map();
        for (Index e = 0; e < edge_count(); ++e) {
            if (map.edge[e] != e) {
                return false;
            }
        }
        for (Index v = 0; v < node_count(); ++v) {
            if (map.node[v] != v) {
                return false;
            }
        }
        return true;
    }

    /// Nodes strictly above edge e (the nodes of the ideal subtree at e).
    std::vector<Index> nodes_above(Index e) const
    {
        std::vector<Index> r;
        std::vector<Index> stack = {e};
        while (!stack.empty()) {
            const Index x = stack.back();
            stack.pop_back();
            const Index n = producer_[x];
            if (n != npos) {
                r.push_back(n);
                for (Index i : inputs_[n]) {
                    stack.push_back(i);
                }
            }
        }
        std::sort(r.begin(), r.end());
        return r;
    }

    friend bool operator==(const basic_forest& a, const basic_forest& b)
    {
        return a.inputs_ == b.inputs_ && a.output_ == b.output_ && a.producer_.size() == b.producer_.size()
               && a.roots_ == b.roots_ && a.edge_labels_ == b.edge_labels_ && a.node_labels_ == b.node_labels_;
    }

private:
    void finish(std::size_t edges)
    {
        if (edge_labels_.size() != edges || node_labels_.size() != output_.size()) {
            throw TreeError(TreeErrc::invalid_reference, "label count does not match the diagram");
        }
        producer_.assign(edges, npos);
        consumer_.assign(edges, npos);
        slot_.assign(edges, npos);
        for (Index n = 0; n < output_.size(); ++n) {
            const Index e = output_[n];
            if (e >= edges) {
                throw TreeError(TreeErrc::invalid_reference, "t maps a node outside A");
            }
            if (producer_[e] != npos) {
                throw TreeError(TreeErrc::non_injective_t, "edge " + std::to_string(e) + " is the output of two nodes");
            }
            producer_[e] = n;
        }
        for (Index n = 0; n < inputs_.size(); ++n) {
            for (Index i = 0; i < inputs_[n].size(); ++i) {
                const Index e = inputs_[n][i];
                if (e >= edges) {
                    throw TreeError(TreeErrc::invalid_reference, "s maps outside A");
                }
                if (consumer_[e] != npos) {
                    throw TreeError(TreeErrc::non_injective_s, "edge " + std::to_string(e) + " is an input twice");
                }
                consumer_[e] = n;
                slot_[e] = i;
            }
        }
        roots_.clear();
        for (Index e = 0; e < edges; ++e) {
            if (consumer_[e] == npos) {
                roots_.push_back(e);
            }
        }
        // σ must reach a root from every edge: walk with a step bound.
        for (Index e = 0; e < edges; ++e) {
            Index x = e;
            std::size_t steps = 0;
            while (consumer_[x] != npos) {
                x = output_[consumer_[x]];
                if (++steps > edges) {
                    throw TreeError(TreeErrc::cycle_detected, "walk to the root from edge " + std::to_string(e) + " loops");
                }
            }
        }
    }

    std::vector<std::vector<Index>> inputs_;
    std::vector<Index> output_;
    std::vector<Index> producer_;
    std::vector<Index> consumer_;
    std::vector<Index> slot_;
    std::vector<Index> roots_;
    std::vector<EdgeLabel> edge_labels_;
    std::vector<NodeLabel> node_labels_;
};

using Forest = basic_forest<NoLabel, NoLabel>;

/// Requires exactly one root.
template <class F>
F require_tree(F f)
{
    if (f.roots().empty()) {
        throw TreeError(TreeErrc::no_root, "diagram has no root");
    }
    if (f.roots().size() > 1) {
        throw TreeError(TreeErrc::multiple_roots, "diagram has " + std::to_string(f.roots().size()) + " roots");
    }
    return f;
}

/// Validates a raw diagram as a tree.
inline Forest validate_tree(const RawDiagram& d) { return require_tree(Forest::from_raw(d)); }
inline Forest validate_forest(const RawDiagram& d) { return Forest::from_raw(d); }

/// Disjoint union; the roots of b follow those of a.
template <class E, class N>
basic_forest<E, N> disjoint_union(const basic_forest<E, N>& a, const basic_forest<E, N>& b)
{
    std::vector<std::vector<Index>> inputs;
    std::vector<Index> outputs;
    std::vector<E> el = a.edge_labels();
    std::vector<N> nl = a.node_labels();
    for (Index n = 0; n < a.node_count(); ++n) {
        inputs.push_back(a.inputs(n));
        outputs.push_back(a.output(n));
    }
    const Index shift = a.edge_count();
    for (Index n = 0; n < b.node_count(); ++n) {
        std::vector<Index> in;
        for (Index e : b.inputs(n)) {
            in.push_back(e + shift);
        }
        inputs.push_back(std::move(in));
        outputs.push_back(b.output(n) + shift);
    }
    el.insert(el.end(), b.edge_labels().begin(), b.edge_labels().end());
    nl.insert(nl.end(), b.node_labels().begin(), b.node_labels().end());
    return basic_forest<E, N>::from_nodes(a.edge_count() + b.edge_count(), std::move(inputs), std::move(outputs),
                                          std::move(el), std::move(nl));
}

/// The ideal subtree generated by edge e: e together with everything above
/// it, renumbered in preorder with e as the root. `edge_map` and `node_map`
/// (if given) receive the embedding into f.
template <class E, class N>
basic_forest<E, N> ideal_subtree(const basic_forest<E, N>& f, Index e, std::vector<Index>* edge_map,
                                 std::vector<Index>* node_map)
{
    std::vector<Index> edges;
    std::vector<Index> nodes;
    std::vector<Index> stack = {e};
    std::vector<std::vector<Index>> inputs;
    std::vector<Index> outputs;
    // Preorder: edges numbered as visited.
    std::vector<Index> new_edge(f.edge_count(), npos);
    while (!stack.empty()) {
        const Index x = stack.back();
        stack.pop_back();
        new_edge[x] = edges.size();
        edges.push_back(x);
        const Index n = f.producer(x);
        if (n != npos) {
            nodes.push_back(n);
            const auto& in = f.inputs(n);
            for (auto it = in.rbegin(); it != in.rend(); ++it) {
                stack.push_back(*it);
            }
        }
    }
    std::vector<E> el;
    std::vector<N> nl;
    for (Index x : edges) {
        el.push_back(f.edge_label(x));
    }
    for (Index n : nodes) {
        std::vector<Index> in;
        for (Index x : f.inputs(n)) {
            in.push_back(new_edge[x]);
        }
        inputs.push_back(std::move(in));
        outputs.push_back(new_edge[f.output(n)]);
        nl.push_back(f.node_label(n));
    }
    if (edge_map) {
        *edge_map = edges;
    }
    if (node_map) {
        *node_map = nodes;
    }
    return basic_forest<E, N>::from_nodes(edges.size(), std::move(inputs), std::move(outputs), std::move(el), std::move(nl));
}

template <class E, class N>
basic_forest<E, N> ideal_subtree(const basic_forest<E, N>& f, Index e)
{
    return ideal_subtree(f, e, nullptr, nullptr);
}

/// Splits a forest into its trees, in root order.
template <class E, class N>
std::vector<basic_forest<E, N>> components(const basic_forest<E, N>& f)
{
    std::vector<basic_forest<E, N>> r;
    for (Index root : f.roots()) {
        r.push_back(ideal_subtree(f, root));
    }
    return r;
}

/// Disjoint union of a sequence of forests; the empty sequence gives the empty forest.
template <class E, class N>
basic_forest<E, N> forest_of(const std::vector<basic_forest<E, N>>& parts)
{
    basic_forest<E, N> acc = basic_forest<E, N>::from_nodes(0, {}, {});
    for (const auto& p : parts) {
        acc = disjoint_union(acc, p);
    }
    return acc;
}

} // namespace fdb::trees
