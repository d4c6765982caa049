#pragma once

// Deliberately naive reference computations. Nothing here uses canonical
// keys for the quantity being checked; structure is compared edge by edge.

#include <fdb/pfunctor/pforest.hpp>
#include <fdb/rational.hpp>
#include <fdb/trees/cut.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace fdb::oracle {

using pfunctor::Colour;
using pfunctor::EndofunctorSpec;
using pfunctor::OpId;
using pfunctor::Perm;
using pfunctor::PTree;
using trees::Index;
using trees::npos;

/// True when the edge bijection phi: a -> b is a decorated isomorphism of forests.
inline bool is_isomorphism(const EndofunctorSpec& spec, const PTree& a, const PTree& b, const std::vector<Index>& phi)
{
    for (Index e = 0; e < a.edge_count(); ++e) {
        const Index f = phi[e];
        if (a.edge_label(e) != b.edge_label(f)) {
            return false;
        }
        const Index n = a.producer(e);
        const Index m = b.producer(f);
        if ((n == npos) != (m == npos)) {
            return false;
        }
        if (n == npos) {
            continue;
        }
        const OpId o = a.node_label(n);
        if (o != b.node_label(m) || a.arity(n) != b.arity(m)) {
            return false;
        }
        // Induced permutation of input positions; it must be a symmetry of o.
        Perm pi(a.arity(n));
        for (Index i = 0; i < a.arity(n); ++i) {
            const Index target = phi[a.inputs(n)[i]];
            const auto& in = b.inputs(m);
            auto it = std::find(in.begin(), in.end(), target);
            if (it == in.end()) {
                return false;
            }
            pi[i] = static_cast<std::size_t>(it - in.begin());
        }
        const auto& g = spec.group(o);
        if (std::find(g.begin(), g.end(), pi) == g.end()) {
            return false;
        }
    }
    return true;
}

/// All decorated isomorphisms a -> b, as edge bijections, by trying every
/// permutation of the edge set.
inline std::vector<std::vector<Index>> isomorphisms(const EndofunctorSpec& spec, const PTree& a, const PTree& b)
{
    std::vector<std::vector<Index>> r;
    if (a.edge_count() != b.edge_count() || a.node_count() != b.node_count()) {
        return r;
    }
    std::vector<Index> phi(a.edge_count());
    std::iota(phi.begin(), phi.end(), 0);
    do {
        if (is_isomorphism(spec, a, b, phi)) {
            r.push_back(phi);
        }
    } while (std::next_permutation(phi.begin(), phi.end()));
    return r;
}

inline std::vector<std::vector<Index>> automorphisms(const EndofunctorSpec& spec, const PTree& t) { return isomorphisms(spec, t, t); }

inline std::size_t count_automorphisms(const EndofunctorSpec& spec, const PTree& t) { return automorphisms(spec, t).size(); }

inline bool isomorphic(const EndofunctorSpec& spec, const PTree& a, const PTree& b)
{
    if (a.edge_count() != b.edge_count() || a.node_count() != b.node_count()) {
        return false;
    }
    std::vector<Index> phi(a.edge_count());
    std::iota(phi.begin(), phi.end(), 0);
    do {
        if (is_isomorphism(spec, a, b, phi)) {
            return true;
        }
    } while (std::next_permutation(phi.begin(), phi.end()));
    return false;
}

/// Node map induced by an edge automorphism.
inline std::vector<Index> node_image(const PTree& t, const std::vector<Index>& phi)
{
    std::vector<Index> r(t.node_count());
    for (Index n = 0; n < t.node_count(); ++n) {
        r[n] = t.producer(phi[t.output(n)]);
    }
    return r;
}

/// Every P-tree with exactly `edges` edges, as raw decorated diagrams, up to
/// relabelling of nodes only: node i outputs edge i, operations and input
/// wiring are chosen freely, and whatever passes validation is kept. The
/// result lists one canonical key per class found.
inline std::set<std::string> all_tree_keys_with_edges(const EndofunctorSpec& spec, std::size_t edges)
{
    std::set<std::string> keys;
    if (edges == 0) {
        return keys;
    }
    const std::size_t slots = edges - 1;
    for (Colour c = 0; c < spec.colour_count(); ++c) {
        if (edges == 1) {
            keys.insert(pfunctor::canon(spec, PTree::trivial(c)));
        }
    }
    std::vector<OpId> ops;
    std::function<void(std::size_t)> choose_ops = [&](std::size_t used) {
        if (used == slots && !ops.empty()) {
            // Wire the input slots injectively into the edges.
            std::vector<std::vector<Index>> inputs(ops.size());
            std::vector<Index> outputs(ops.size());
            std::iota(outputs.begin(), outputs.end(), 0);
            std::vector<bool> taken(edges, false);
            std::vector<Index> flat;
            std::function<void()> wire = [&]() {
                if (flat.size() == slots) {
                    std::size_t k = 0;
                    for (std::size_t n = 0; n < ops.size(); ++n) {
                        inputs[n].assign(flat.begin() + static_cast<std::ptrdiff_t>(k),
                                         flat.begin() + static_cast<std::ptrdiff_t>(k + spec.op(ops[n]).arity()));
                        k += spec.op(ops[n]).arity();
                    }
                    // Colour every edge from whichever end fixes it.
                    std::vector<Colour> colour(edges, spec.colour_count());
                    bool ok = true;
                    auto set = [&](Index e, Colour col) {
                        if (colour[e] != spec.colour_count() && colour[e] != col) {
                            ok = false;
                        }
                        colour[e] = col;
                    };
                    for (std::size_t n = 0; n < ops.size(); ++n) {
                        set(outputs[n], spec.op(ops[n]).out);
                        for (std::size_t i = 0; i < inputs[n].size(); ++i) {
                            set(inputs[n][i], spec.op(ops[n]).in[i]);
                        }
                    }
                    if (!ok) {
                        return;
                    }
                    std::vector<Index> free_edges;
                    for (Index e = 0; e < edges; ++e) {
                        if (colour[e] == spec.colour_count()) {
                            free_edges.push_back(e);
                        }
                    }
                    // Edges touched by no node: only possible for the trivial tree.
                    if (!free_edges.empty()) {
                        return;
                    }
                    try {
                        auto t = trees::require_tree(PTree::from_nodes(edges, inputs, outputs, colour, ops));
                        pfunctor::validate_ptree(spec, t);
                        keys.insert(pfunctor::canon(spec, t));
                    } catch (const trees::TreeError&) {
                    }
                    return;
                }
                for (Index e = 0; e < edges; ++e) {
                    if (!taken[e]) {
                        taken[e] = true;
                        flat.push_back(e);
                        wire();
                        flat.pop_back();
                        taken[e] = false;
                    }
                }
            };
            wire();
        }
        if (ops.size() == edges) {
            return;
        }
        for (OpId o = 0; o < spec.op_count(); ++o) {
            const std::size_t a = spec.op(o).arity();
            if (used + a <= slots) {
                ops.push_back(o);
                choose_ops(used + a);
                ops.pop_back();
            }
        }
    };
    choose_ops(0);
    return keys;
}

/// Orbits of colour-respecting labellings of the given edges (closed under
/// automorphisms, e.g. all leaves or all roots) under Aut(t). Returns
/// Σ over orbits of 1/|stabiliser|.
inline Rational labelling_weight(const EndofunctorSpec& spec, const PTree& t, const std::vector<Index>& leaves)
{
    const auto autos = automorphisms(spec, t);
    // A labelling assigns to each leaf a label; labels of colour c are the
    // integers 0..n_c-1. Represent as the vector of labels on `leaves`.
    std::map<Colour, std::size_t> count;
    for (Index e : leaves) {
        ++count[t.edge_label(e)];
    }
    std::vector<std::vector<std::size_t>> labellings;
    std::vector<std::size_t> current(leaves.size());
    std::map<Colour, std::vector<bool>> used;
    for (const auto& [c, n] : count) {
        used[c].assign(n, false);
    }
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == leaves.size()) {
            labellings.push_back(current);
            return;
        }
        auto& u = used[t.edge_label(leaves[i])];
        for (std::size_t l = 0; l < u.size(); ++l) {
            if (!u[l]) {
                u[l] = true;
                current[i] = l;
                rec(i + 1);
                u[l] = false;
            }
        }
    };
    rec(0);
    std::vector<Index> position(t.edge_count(), npos);
    for (Index i = 0; i < leaves.size(); ++i) {
        position[leaves[i]] = i;
    }
    std::set<std::vector<std::size_t>> seen;
    Rational total = 0;
    for (const auto& lab : labellings) {
        if (seen.count(lab)) {
            continue;
        }
        std::size_t stab = 0;
        for (const auto& phi : autos) {
            // Transport the labels along phi: leaf phi(e) gets the label of e.
            std::vector<std::size_t> moved(leaves.size());
            for (Index i = 0; i < leaves.size(); ++i) {
                moved[position[phi[leaves[i]]]] = lab[i];
            }
            stab += moved == lab ? 1 : 0;
            seen.insert(std::move(moved));
        }
        total += Rational(1, static_cast<unsigned long>(stab));
    }
    return total;
}

/// Weight of T in the leaf-labelled Green function G_N.
inline Rational labelled_weight(const EndofunctorSpec& spec, const PTree& t) { return labelling_weight(spec, t, t.leaves()); }

/// Cardinality of the fibre of root-labelled forests over a forest class.
inline Rational root_labelled_weight(const EndofunctorSpec& spec, const PTree& f) { return labelling_weight(spec, f, f.roots()); }

/// Number of isomorphism classes of trees with a cut: for each tree class,
/// the number of Aut(T)-orbits on its cuts.
inline std::size_t count_cut_orbits(const EndofunctorSpec& spec, const PTree& t)
{
    const auto autos = automorphisms(spec, t);
    std::set<std::vector<Index>> seen;
    std::size_t orbits = 0;
    for (const auto& c : trees::enumerate_cuts(t)) {
        if (seen.count(c.kept)) {
            continue;
        }
        ++orbits;
        for (const auto& phi : autos) {
            auto nodes = node_image(t, phi);
            std::vector<Index> image;
            for (Index n : c.kept) {
                image.push_back(nodes[n]);
            }
            std::sort(image.begin(), image.end());
            seen.insert(std::move(image));
        }
    }
    return orbits;
}

/// Number of Aut(S) × Aut(F) orbits on colour-respecting bijections from
/// leaves of S to roots of F.
inline std::size_t count_matching_orbits(const EndofunctorSpec& spec, const PTree& s, const PTree& f)
{
    const auto leaves = s.leaves();
    const auto& roots = f.roots();
    if (leaves.size() != roots.size()) {
        return 0;
    }
    std::vector<Index> root_pos(f.edge_count(), npos);
    for (Index i = 0; i < roots.size(); ++i) {
        root_pos[roots[i]] = i;
    }
    std::vector<Index> leaf_pos(s.edge_count(), npos);
    for (Index i = 0; i < leaves.size(); ++i) {
        leaf_pos[leaves[i]] = i;
    }
    // m[i] = index of the root matched with leaf i.
    std::vector<std::vector<Index>> all;
    std::vector<Index> m(leaves.size());
    std::iota(m.begin(), m.end(), 0);
    do {
        bool ok = true;
        for (Index i = 0; i < leaves.size() && ok; ++i) {
            ok = s.edge_label(leaves[i]) == f.edge_label(roots[m[i]]);
        }
        if (ok) {
            all.push_back(m);
        }
    } while (std::next_permutation(m.begin(), m.end()));
    const auto as = automorphisms(spec, s);
    const auto af = automorphisms(spec, f);
    std::set<std::vector<Index>> seen;
    std::size_t orbits = 0;
    for (const auto& x : all) {
        if (seen.count(x)) {
            continue;
        }
        ++orbits;
        for (const auto& a : as) {
            for (const auto& b : af) {
                // (a, b) sends (leaf i -> root m[i]) to (a(leaf i) -> b(root m[i])).
                std::vector<Index> y(x.size());
                for (Index i = 0; i < x.size(); ++i) {
                    y[leaf_pos[a[leaves[i]]]] = root_pos[b[roots[x[i]]]];
                }
                seen.insert(std::move(y));
            }
        }
    }
    return orbits;
}

} // namespace fdb::oracle
