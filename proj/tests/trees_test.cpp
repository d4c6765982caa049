#include <fdb/trees/cut.hpp>
#include <fdb/trees/text.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <map>

using namespace fdb::trees;

namespace {

/// Every planar shape with exactly `edges` edges, as text.
std::vector<std::string> planar_shapes(std::size_t edges)
{
    // A tree with e edges is a leaf (e = 1) or a node over a sequence of trees
    // whose edges sum to e - 1.
    static std::map<std::size_t, std::vector<std::string>> memo;
    if (auto it = memo.find(edges); it != memo.end()) {
        return it->second;
    }
    std::vector<std::string> out;
    if (edges == 1) {
        out.push_back("_");
    }
    if (edges >= 1) {
        std::function<void(std::size_t, std::string)> seqs = [&](std::size_t left, std::string acc) {
            if (left == 0) {
                out.push_back("(" + acc + ")");
                return;
            }
            for (std::size_t k = 1; k <= left; ++k) {
                for (const auto& t : planar_shapes(k)) {
                    seqs(left - k, acc + t);
                }
            }
        };
        seqs(edges - 1, "");
    }
    memo[edges] = out;
    return out;
}

std::vector<Forest> trees_up_to(std::size_t edges)
{
    std::vector<Forest> r;
    for (std::size_t e = 1; e <= edges; ++e) {
        for (const auto& s : planar_shapes(e)) {
            r.push_back(parse_tree(s));
        }
    }
    return r;
}

/// Brute-force oracle: all node subsets closed toward the root.
std::size_t brute_force_cut_count(const Forest& t)
{
    std::size_t count = 0;
    const std::size_t n = t.node_count();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        bool ok = true;
        for (Index v = 0; v < n && ok; ++v) {
            if ((mask >> v) & 1) {
                const Index below = t.parent(v);
                ok = below == npos || ((mask >> below) & 1);
            }
        }
        count += ok ? 1 : 0;
    }
    return count;
}

Forest ladder(std::size_t n)
{
    std::string s = "_";
    for (std::size_t i = 0; i < n; ++i) {
        s = "(" + s + ")";
    }
    return parse_tree(s);
}

} // namespace

TEST(Validate, TrivialTree)
{
    RawDiagram d{1, 0, {}, {}};
    auto t = validate_tree(d);
    EXPECT_EQ(t.edge_count(), 1u);
    EXPECT_EQ(t.node_count(), 0u);
    EXPECT_EQ(t.leaves(), std::vector<Index>{0});
    EXPECT_EQ(t.root(), 0u);
}

TEST(Validate, Errors)
{
    // Two nodes sharing their output edge.
    RawDiagram nt{3, 2, {{0, 1}, {1, 2}}, {0, 0}};
    try {
        validate_tree(nt);
        FAIL();
    } catch (const TreeError& e) {
        EXPECT_EQ(e.code(), TreeErrc::non_injective_t);
    }
    // Edges 0 and 1 feed each other; edge 2 is a detached root.
    RawDiagram cyc{3, 2, {{0, 1}, {1, 0}}, {0, 1}};
    try {
        validate_forest(cyc);
        FAIL();
    } catch (const TreeError& e) {
        EXPECT_EQ(e.code(), TreeErrc::cycle_detected);
    }
    RawDiagram two{2, 0, {}, {}};
    try {
        validate_tree(two);
        FAIL();
    } catch (const TreeError& e) {
        EXPECT_EQ(e.code(), TreeErrc::multiple_roots);
    }
    RawDiagram loop{1, 1, {{0, 0}}, {0}};
    try {
        validate_tree(loop);
        FAIL();
    } catch (const TreeError& e) {
        EXPECT_TRUE(e.code() == TreeErrc::no_root || e.code() == TreeErrc::cycle_detected);
    }
    RawDiagram bad_s{3, 1, {{0, 1}, {0, 1}}, {0}};
    EXPECT_THROW(validate_tree(bad_s), TreeError);
}

TEST(Queries, Examples)
{
    auto t = parse_tree("_");
    EXPECT_EQ(t.leaves().size(), 1u);
    EXPECT_EQ(t.node_count(), 0u);
    EXPECT_EQ(t.edge_count(), 1u);

    auto corolla = parse_tree("(___)");
    EXPECT_EQ(corolla.leaf_count(), 3u);
    EXPECT_EQ(corolla.edge_count(), 4u);

    auto two = parse_forest("_\xC2\xB7_");
    EXPECT_EQ(two.roots().size(), 2u);
    EXPECT_EQ(two.leaf_count(), 2u);
}

TEST(Text, RoundTrip)
{
    for (const auto& t : trees_up_to(7)) {
        EXPECT_EQ(parse_tree(to_text(t)), t);
    }
    for (const char* s : {"\xCE\xB5", "_", "()", "(_)\xC2\xB7_\xC2\xB7(()_)"}) {
        EXPECT_EQ(to_text(parse_forest(s)), s);
    }
}

TEST(Text, ErrorsCarryPosition)
{
    try {
        parse_tree("((_)");
        FAIL();
    } catch (const fdb::ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 5u);
    }
    try {
        parse_tree("(_)\n x");
        FAIL();
    } catch (const fdb::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 2u);
    }
}

TEST(Cuts, Examples)
{
    EXPECT_EQ(enumerate_cuts(parse_tree("_")).size(), 1u);
    EXPECT_EQ(enumerate_cuts(parse_tree("(__)")).size(), 2u);
    for (std::size_t n = 0; n <= 8; ++n) {
        EXPECT_EQ(enumerate_cuts(ladder(n)).size(), n + 1);
    }
}

TEST(Cuts, MatchBruteForceSubsetFilter)
{
    // Every shape with at most 12 nodes would be too many; all shapes up to
    // 9 edges plus long and bushy 12-node trees cover the claim.
    for (const auto& t : trees_up_to(9)) {
        const auto cuts = enumerate_cuts(t);
        EXPECT_EQ(cuts.size(), brute_force_cut_count(t));
        EXPECT_EQ(cuts.size(), count_cuts(t));
        for (const auto& c : cuts) {
            EXPECT_TRUE(is_cut(t, c.kept));
        }
    }
    for (const char* s : {"((((((((((((_))))))))))))", "(()()()()()()()()()()())", "((()())(()()())(()()()))",
                          "(((()())(()))((()())()))"}) {
        auto t = parse_tree(s);
        EXPECT_LE(t.node_count(), 12u);
        EXPECT_EQ(enumerate_cuts(t).size(), brute_force_cut_count(t)) << s;
    }
}

TEST(Cuts, OrderIsBySizeThenLex)
{
    auto cuts = enumerate_cuts(parse_tree("((_)(_))"));
    ASSERT_EQ(cuts.size(), 5u);
    EXPECT_TRUE(cuts[0].kept.empty());
    EXPECT_EQ(cuts[1].kept, (std::vector<Index>{0}));
    EXPECT_EQ(cuts[2].kept, (std::vector<Index>{0, 1}));
    EXPECT_EQ(cuts[3].kept, (std::vector<Index>{0, 2}));
    EXPECT_EQ(cuts[4].kept, (std::vector<Index>{0, 1, 2}));
}

TEST(Prune, Examples)
{
    auto t = parse_tree("((_)_)");
    // Full cut: S = T and P is one trivial tree per leaf.
    auto full = prune(t, Cut{{0, 1}});
    EXPECT_EQ(full.stump, t);
    EXPECT_EQ(to_text(full.crown), "_\xC2\xB7_");
    // Root-edge cut: P = {T}, S trivial.
    auto root = prune(t, Cut{{}});
    EXPECT_EQ(root.crown, t);
    EXPECT_EQ(to_text(root.stump), "_");

    auto lad = ladder(2);
    auto mid = prune(lad, Cut{{0}});
    EXPECT_EQ(to_text(mid.crown), "(_)");
    EXPECT_EQ(to_text(mid.stump), "(_)");

    EXPECT_THROW(prune(t, Cut{{1}}), TreeError);
}

TEST(Prune, CountsAreConserved)
{
    for (const auto& t : trees_up_to(7)) {
        for (const auto& c : enumerate_cuts(t)) {
            auto p = prune(t, c);
            EXPECT_EQ(p.crown.node_count() + p.stump.node_count(), t.node_count());
            EXPECT_EQ(p.crown.edge_count() + p.stump.edge_count(), t.edge_count() + p.stump.leaf_count());
            EXPECT_EQ(p.crown.roots().size(), p.stump.leaf_count());
        }
    }
}

TEST(Graft, Examples)
{
    auto s = parse_tree("(_(__))");
    auto trivial3 = parse_forest("_\xC2\xB7_\xC2\xB7_");
    Matching m;
    const auto leaves = s.leaves();
    for (Index i = 0; i < leaves.size(); ++i) {
        m.emplace_back(leaves[i], trivial3.roots()[i]);
    }
    auto g = graft(trivial3, s, m);
    EXPECT_EQ(g.tree, s);
    EXPECT_EQ(g.cut.kept.size(), s.node_count());

    auto t = parse_tree("((_)_)");
    auto g2 = graft(t, parse_tree("_"), Matching{{0, 0}});
    EXPECT_EQ(g2.tree, t);
    EXPECT_TRUE(g2.cut.kept.empty());

    EXPECT_THROW(graft(t, s, Matching{{1, 0}}), TreeError);
    EXPECT_THROW(graft(trivial3, s, Matching{{leaves[0], 0}, {leaves[0], 1}, {leaves[2], 2}}), TreeError);
}

TEST(Graft, InvertsPruneExhaustively)
{
    std::size_t pairs = 0;
    for (const auto& t : trees_up_to(6)) {
        for (const auto& c : enumerate_cuts(t)) {
            auto p = prune(t, c);
            auto back = graft(p.crown, p.stump, p.matching);
            EXPECT_EQ(back.tree, t);
            EXPECT_EQ(back.cut, c);
            ++pairs;
        }
    }
    EXPECT_GT(pairs, 100u);
}

TEST(Graft, PruneInvertsGraftUpToRootOrder)
{
    auto crown = parse_forest("(_)\xC2\xB7_\xC2\xB7(__)");
    auto stump = parse_tree("(_(__))");
    const auto leaves = stump.leaves();
    const auto roots = crown.roots();
    // Send leaf i to root (2 - i).
    Matching m;
    for (Index i = 0; i < 3; ++i) {
        m.emplace_back(leaves[i], roots[2 - i]);
    }
    auto g = graft(crown, stump, m);
    auto p = prune(g.tree, g.cut);
    EXPECT_EQ(p.stump, stump);
    EXPECT_EQ(to_text(p.crown), "(__)\xC2\xB7_\xC2\xB7(_)");
    for (Index i = 0; i < 3; ++i) {
        EXPECT_EQ(p.matching[i].first, leaves[i]);
    }
}

TEST(IdealSubtree, IsCartesian)
{
    for (const auto& t : trees_up_to(6)) {
        for (Index e = 0; e < t.edge_count(); ++e) {
            std::vector<Index> em;
            std::vector<Index> nm;
            auto sub = ideal_subtree(t, e, &em, &nm);
            EXPECT_TRUE(is_ideal_embedding(t, sub, em, nm));
            EXPECT_EQ(sub.node_count(), t.nodes_above(e).size());
        }
    }
}
