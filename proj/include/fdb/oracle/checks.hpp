#pragma once

// Exhaustive checks of the tree machinery against the brute-force oracles,
// packaged as reports for the command line and the acceptance suite.

#include <fdb/enumerate/enumerate.hpp>
#include <fdb/oracle/brute_force.hpp>
#include <fdb/trees/cut.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace fdb::oracle {

using pfunctor::Catalog;
using pfunctor::PForest;

struct CutReport {
    std::size_t max_edges = 0;
    std::size_t trees = 0;
    std::size_t roundtrips = 0;
    std::vector<std::string> failures;
    std::size_t cut_classes = 0;    // iso-classes of (T, c)
    std::size_t triple_classes = 0; // iso-classes of (F, S, λ)

    bool ok() const noexcept { return failures.empty() && cut_classes == triple_classes; }
};

/// For every tree T with at most `max_edges` edges and every cut c, checks
/// that grafting the pruned pieces back gives (T, c) on the nose, and that
/// the pieces are valid P-trees. Then counts classes on both sides of the
/// graft/prune correspondence: Aut(T)-orbits of cuts against
/// Aut(S) × Aut(F)-orbits of matchings, for all S, F whose graft fits.
inline CutReport verify_cuts(const Catalog& cat, std::size_t max_edges)
{
    const auto& spec = cat.spec();
    CutReport rep;
    rep.max_edges = max_edges;
    for (const auto& t : enumerate::enumerate_ptrees(cat, enumerate::Bound(max_edges))) {
        ++rep.trees;
        for (const auto& c : trees::enumerate_cuts(t->tree)) {
            ++rep.roundtrips;
            const auto p = trees::prune(t->tree, c);
            const auto back = trees::graft(p.crown, p.stump, p.matching);
            auto kept = c.kept;
            std::sort(kept.begin(), kept.end());
            if (!(back.tree == t->tree) || back.cut.kept != kept) {
                rep.failures.push_back("graft(prune(T, c)) differs from (T, c) for T = " + t->key);
                continue;
            }
            try {
                pfunctor::validate_ptree(spec, p.crown);
                pfunctor::validate_ptree(spec, p.stump);
            } catch (const std::exception& e) {
                rep.failures.push_back("pruned piece of " + t->key + " is invalid: " + e.what());
            }
        }
        rep.cut_classes += count_cut_orbits(spec, t->tree);
    }
    // A graft of S and F has edges(S) + edges(F) - leaves(S) edges.
    for (const auto& s : enumerate::enumerate_ptrees(cat, enumerate::Bound(max_edges))) {
        const std::size_t room = max_edges + s->leaves - s->edges;
        for (const auto& f : enumerate::enumerate_pforests(cat, enumerate::Bound(room), s->leaf_profile)) {
            rep.triple_classes += count_matching_orbits(spec, s->tree, pfunctor::forest_diagram(cat, f));
        }
    }
    return rep;
}

struct AutReport {
    std::size_t max_edges = 0;
    std::size_t checked = 0;
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

/// Compares the canonical-form automorphism order with a brute-force count
/// of decorated self-isomorphisms, and the enumerated classes with the raw
/// diagram enumeration, for every edge count up to `max_edges`.
inline AutReport verify_aut(const Catalog& cat, std::size_t max_edges)
{
    const auto& spec = cat.spec();
    AutReport rep;
    rep.max_edges = max_edges;
    const auto listed = enumerate::enumerate_ptrees(cat, enumerate::Bound(max_edges));
    std::map<std::size_t, std::set<std::string>> by_edges;
    for (const auto& t : listed) {
        ++rep.checked;
        by_edges[t->edges].insert(t->key);
        const auto brute = count_automorphisms(spec, t->tree);
        if (t->aut != brute) {
            rep.failures.push_back("aut(" + t->key + ") = " + t->aut.get_str() + " but brute force finds "
                                   + std::to_string(brute));
        }
    }
    for (std::size_t e = 1; e <= max_edges; ++e) {
        if (all_tree_keys_with_edges(spec, e) != by_edges[e]) {
            rep.failures.push_back("tree classes with " + std::to_string(e) + " edges differ from the raw enumeration");
        }
    }
    return rep;
}

/// Number of tree classes with exactly n leaves, for n = 1..max_leaves.
inline std::vector<std::size_t> counts_by_leaves(const Catalog& cat, std::size_t max_leaves, std::size_t max_edges)
{
    std::vector<std::size_t> counts(max_leaves, 0);
    for (const auto& t : enumerate::enumerate_ptrees(cat, enumerate::Bound(max_edges))) {
        if (t->leaves >= 1 && t->leaves <= max_leaves) {
            ++counts[t->leaves - 1];
        }
    }
    return counts;
}

inline nlohmann::json to_json(const CutReport& r)
{
    return {{"max_edges", r.max_edges},          {"trees", r.trees},
            {"roundtrips", r.roundtrips},        {"failures", r.failures},
            {"cut_classes", r.cut_classes},      {"triple_classes", r.triple_classes},
            {"pass", r.ok()}};
}

inline nlohmann::json to_json(const AutReport& r)
{
    return {{"max_edges", r.max_edges}, {"checked", r.checked}, {"failures", r.failures}, {"pass", r.ok()}};
}

} // namespace fdb::oracle
