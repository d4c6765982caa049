#include <fdb/enumerate/enumerate.hpp>
#include <fdb/oracle/brute_force.hpp>
#include <fdb/pfunctor/pforest.hpp>
#include <fdb/pfunctor/spec_io.hpp>

#include <gtest/gtest.h>

#include <cstdio>

using namespace fdb;
using namespace fdb::pfunctor;

namespace {

std::vector<std::string> all_builtins() { return {"exp", "effective", "stable", "planar", "cyclic", "binary", "identity", "constant", "trivial"}; }

std::vector<EndofunctorSpec> all_specs()
{
    std::vector<EndofunctorSpec> r;
    for (const auto& n : all_builtins()) {
        r.push_back(builtin(n));
    }
    r.push_back(two_colour_binary());
    return r;
}

PfunctorErrc error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const PfunctorError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no PfunctorError thrown";
    return PfunctorErrc::invalid_spec;
}

} // namespace

TEST(Builtin, Shapes)
{
    auto b = builtin("binary");
    EXPECT_EQ(b.colour_count(), 1u);
    ASSERT_EQ(b.op_count(), 1u);
    EXPECT_EQ(b.op(0).arity(), 2u);
    EXPECT_EQ(b.group_order(0), 1u);

    auto id = builtin("identity");
    ASSERT_EQ(id.op_count(), 1u);
    EXPECT_EQ(id.op(0).arity(), 1u);

    auto e = builtin("exp", 3);
    ASSERT_EQ(e.op_count(), 4u);
    for (OpId o = 0; o < 4; ++o) {
        EXPECT_EQ(e.op(o).arity(), o);
        EXPECT_EQ(e.group_order(o), std::vector<std::size_t>({1, 1, 2, 6})[o]);
        EXPECT_TRUE(e.is_full_symmetric(o));
    }
    auto c = builtin("cyclic", 4);
    EXPECT_EQ(c.group_order(4), 4u);
    EXPECT_FALSE(c.is_full_symmetric(4));
    EXPECT_EQ(error_of([] { builtin("nope"); }), PfunctorErrc::unknown_builtin);
}

TEST(Spec, RejectsColourBreakingSymmetry)
{
    EXPECT_EQ(error_of([] { EndofunctorSpec("x", {"a", "b"}, {Op{"f", 0, {0, 1}, {{1, 0}}}}); }), PfunctorErrc::invalid_spec);
    EXPECT_EQ(error_of([] { EndofunctorSpec("x", {"a"}, {Op{"f", 0, {0, 0}, {{0, 0}}}}); }), PfunctorErrc::invalid_spec);
    EXPECT_EQ(error_of([] { EndofunctorSpec("x", {"a", "a"}, {}); }), PfunctorErrc::invalid_spec);
}

TEST(Spec, FileRoundTrip)
{
    const auto spec = two_colour_binary();
    const std::string path = testing::TempDir() + "spec_roundtrip.json";
    write_spec_file(spec, path);
    const auto back = read_spec_file(path);
    EXPECT_EQ(spec_to_json(back), spec_to_json(spec));
    EXPECT_EQ(back.group_order(1), 2u);
    std::remove(path.c_str());
}

TEST(PTreeText, RoundTripAndShorthand)
{
    auto e = builtin("exp", 3);
    for (const char* s : {"_", "(e0)", "(e2:__)", "(e3:(e0)(e2:__)_)"}) {
        EXPECT_EQ(to_text(e, parse_ptree(e, s)), s);
    }
    // Unnamed nodes pick the unique operation of that arity.
    EXPECT_EQ(to_text(e, parse_ptree(e, "(_(__))")), "(e2:_(e2:__))");
    auto two = two_colour_binary();
    EXPECT_EQ(to_text(two, parse_ptree(two, "(_a_b)")), "(f:_a_b)");
    // f and h both output a with a first input of colour a; an uncoloured second leaf fits either.
    EXPECT_EQ(error_of([&] { parse_ptree(two, "(_a_)"); }), PfunctorErrc::ambiguous_op);
    EXPECT_EQ(to_text(two, parse_ptree(two, "(h:__)")), "(h:_a_a)");
}

TEST(PTreeText, Errors)
{
    auto b = builtin("binary");
    EXPECT_EQ(error_of([&] { parse_ptree(b, "(b:___)"); }), PfunctorErrc::arity_mismatch);
    EXPECT_EQ(error_of([&] { parse_ptree(b, "(___)"); }), PfunctorErrc::unknown_op);
    EXPECT_EQ(error_of([&] { parse_ptree(b, "(q:__)"); }), PfunctorErrc::unknown_op);
    auto two = two_colour_binary();
    EXPECT_EQ(error_of([&] { parse_ptree(two, "(g:_a_b)"); }), PfunctorErrc::colour_mismatch);
    EXPECT_EQ(error_of([&] { parse_ptree(two, "_"); }), PfunctorErrc::colour_mismatch);
    EXPECT_THROW(parse_ptree(b, "(b:__"), ParseError);
}

TEST(Validate, DecorationChecks)
{
    auto b = builtin("binary");
    auto three = PTree::from_nodes(4, {{0, 1, 2}}, {3}, {0, 0, 0, 0}, {0});
    EXPECT_EQ(error_of([&] { validate_ptree(b, three); }), PfunctorErrc::arity_mismatch);
    auto bad_op = PTree::from_nodes(3, {{0, 1}}, {2}, {0, 0, 0}, {7});
    EXPECT_EQ(error_of([&] { validate_ptree(b, bad_op); }), PfunctorErrc::unknown_op);
    auto c = builtin("constant");
    validate_ptree(c, PTree::trivial(0));
    validate_ptree(c, parse_ptree(c, "(y)"));
    fdb::pfunctor::Catalog cat(c);
    EXPECT_EQ(enumerate::enumerate_ptrees(cat, {10}).size(), 2u);
}

TEST(Canon, Examples)
{
    auto p = builtin("planar");
    EXPECT_NE(canon(p, parse_ptree(p, "(p2:(p0)_)")), canon(p, parse_ptree(p, "(p2:_(p0))")));
    auto e = builtin("exp");
    EXPECT_EQ(canon(e, parse_ptree(e, "(e2:(e0)_)")), canon(e, parse_ptree(e, "(e2:_(e0))")));
    auto two = two_colour_binary();
    EXPECT_NE(canon(two, PTree::trivial(0)), canon(two, PTree::trivial(1)));
}

TEST(Aut, Examples)
{
    auto e = builtin("exp");
    EXPECT_EQ(aut_order(e, parse_ptree(e, "(e2:__)")), 2);
    EXPECT_EQ(aut_order(e, parse_ptree(e, "(e2:(e2:__)(e2:__))")), 8);
    EXPECT_EQ(oracle::count_automorphisms(e, parse_ptree(e, "(e2:(e2:__)(e2:__))")), 8u);
    auto c = builtin("cyclic");
    EXPECT_EQ(aut_order(c, parse_ptree(c, "(c3:___)")), 3);
    EXPECT_EQ(aut_order(c, parse_ptree(c, "(c3:__(c0))")), 1);
}

TEST(Canon, CompleteInvariantAgainstBruteForce)
{
    for (const auto& spec : all_specs()) {
        Catalog cat(spec);
        const auto classes = enumerate::enumerate_ptrees(cat, {6});
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto& a = classes[i]->tree;
            EXPECT_EQ(classes[i]->aut, oracle::count_automorphisms(spec, a)) << spec.name() << " " << classes[i]->key;
            EXPECT_EQ(canon(spec, a), classes[i]->key);
            for (std::size_t j = i + 1; j < classes.size(); ++j) {
                if (classes[j]->edges == classes[i]->edges && classes[j]->nodes == classes[i]->nodes) {
                    EXPECT_FALSE(oracle::isomorphic(spec, a, classes[j]->tree)) << classes[i]->key << " vs " << classes[j]->key;
                }
            }
            // Every relabelling of a representative yields the same key.
            std::vector<Index> perm(a.edge_count());
            std::iota(perm.begin(), perm.end(), 0);
            std::reverse(perm.begin(), perm.end());
            std::vector<std::vector<Index>> inputs;
            std::vector<Index> outputs;
            std::vector<Colour> el(a.edge_count());
            for (Index x = 0; x < a.edge_count(); ++x) {
                el[perm[x]] = a.edge_label(x);
            }
            std::vector<OpId> nl;
            for (Index n = a.node_count(); n-- > 0;) {
                std::vector<Index> in;
                for (Index x : a.inputs(n)) {
                    in.push_back(perm[x]);
                }
                inputs.push_back(in);
                outputs.push_back(perm[a.output(n)]);
                nl.push_back(a.node_label(n));
            }
            EXPECT_EQ(canon(spec, PTree::from_nodes(a.edge_count(), inputs, outputs, el, nl)), classes[i]->key);
        }
    }
}

TEST(Aut, RigidSpecs)
{
    for (const char* n : {"planar", "binary", "identity"}) {
        Catalog cat(builtin(n));
        for (const auto& t : enumerate::enumerate_ptrees(cat, {8})) {
            EXPECT_EQ(t->aut, 1);
        }
    }
}

TEST(Forest, Operations)
{
    Catalog cat(builtin("exp"));
    const auto leaf = PForest::single("_");
    const auto two = multiply(leaf, leaf);
    EXPECT_EQ(aut_order_forest(cat, two), 2);
    EXPECT_EQ(aut_order_forest(cat, PForest{}), 1);
    const auto mixed = multiply(PForest::single("(e2:__)"), PForest::single("(e0)"));
    EXPECT_EQ(aut_order_forest(cat, mixed), 2);
    const auto big = PForest::from_keys({"(e2:__)", "(e2:__)", "_"});
    EXPECT_EQ(aut_order_forest(cat, big), 8);
    EXPECT_EQ(oracle::count_automorphisms(cat.spec(), forest_diagram(cat, big)), 8u);
    EXPECT_EQ(to_text(big), "(e2:__)\xC2\xB7(e2:__)\xC2\xB7_");
    EXPECT_EQ(parse_pforest(cat, to_text(big)), big);
    EXPECT_EQ(to_text(PForest{}), "\xCE\xB5");
    EXPECT_EQ(leaf_profile(cat, big), (Profile{{0, 5}}));
    EXPECT_EQ(root_profile(cat, big), (Profile{{0, 3}}));
}

TEST(Profile, Text)
{
    auto two = two_colour_binary();
    auto p = parse_profile(two, "b:2,a:1");
    EXPECT_EQ(p, (Profile{{0, 1}, {1, 2}}));
    EXPECT_EQ(profile_to_string(two, p), "a:1,b:2");
    EXPECT_EQ(parse_profile(builtin("exp"), "3"), (Profile{{0, 3}}));
    EXPECT_THROW(parse_profile(two, "c:1"), ParseError);
}

TEST(Enumerate, CatalanByLeaves)
{
    Catalog cat(builtin("binary"));
    const std::vector<std::size_t> expected = {1, 1, 2, 5, 14};
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto ts = enumerate::enumerate_ptrees(cat, {2 * n - 1}, {std::nullopt, Profile{{0, n}}});
        EXPECT_EQ(ts.size(), expected[n - 1]);
    }
}

TEST(Enumerate, LinearAndConstant)
{
    Catalog cat(builtin("identity"));
    for (std::size_t e = 1; e <= 8; ++e) {
        EXPECT_EQ(enumerate::enumerate_ptrees(cat, {e}).size(), e);
    }
    Catalog c(builtin("constant"));
    const auto ts = enumerate::enumerate_ptrees(c, {5});
    ASSERT_EQ(ts.size(), 2u);
    EXPECT_EQ(ts[0]->key, "(y)");
    EXPECT_EQ(ts[1]->key, "_");
}

TEST(Enumerate, CompleteAgainstRawDiagrams)
{
    for (const auto& spec : all_specs()) {
        Catalog cat(spec);
        const auto ts = enumerate::enumerate_ptrees(cat, {5});
        std::set<std::string> keys;
        for (const auto& t : ts) {
            EXPECT_TRUE(keys.insert(t->key).second) << "duplicate " << t->key;
        }
        std::set<std::string> brute;
        for (std::size_t e = 1; e <= 5; ++e) {
            auto k = oracle::all_tree_keys_with_edges(spec, e);
            brute.insert(k.begin(), k.end());
        }
        EXPECT_EQ(keys, brute) << spec.name();
    }
}

TEST(Enumerate, FibreFiltersAgree)
{
    for (const auto& spec : all_specs()) {
        Catalog cat(spec);
        const auto all = enumerate::enumerate_ptrees(cat, {6});
        for (Colour c = 0; c < spec.colour_count(); ++c) {
            std::vector<std::string> manual;
            for (const auto& t : all) {
                if (t->root == c) {
                    manual.push_back(t->key);
                }
            }
            std::vector<std::string> filtered;
            for (const auto& t : enumerate::enumerate_ptrees(cat, {6}, {c, std::nullopt})) {
                filtered.push_back(t->key);
            }
            EXPECT_EQ(filtered, manual);
        }
        for (const auto& probe : all) {
            std::vector<std::string> manual;
            for (const auto& t : all) {
                if (t->leaf_profile == probe->leaf_profile) {
                    manual.push_back(t->key);
                }
            }
            std::vector<std::string> filtered;
            for (const auto& t : enumerate::enumerate_ptrees(cat, {6}, {std::nullopt, probe->leaf_profile})) {
                filtered.push_back(t->key);
            }
            EXPECT_EQ(filtered, manual);
        }
    }
}

TEST(Enumerate, NodeBoundIsPostHocFilter)
{
    Catalog cat(builtin("exp", 3));
    const auto all = enumerate::enumerate_ptrees(cat, {7});
    std::vector<std::string> manual;
    for (const auto& t : all) {
        if (t->nodes <= 2) {
            manual.push_back(t->key);
        }
    }
    std::vector<std::string> bounded;
    for (const auto& t : enumerate::enumerate_ptrees(cat, {7, 2})) {
        bounded.push_back(t->key);
    }
    EXPECT_EQ(bounded, manual);
}

TEST(Enumerate, Forests)
{
    Catalog cat(builtin("identity"));
    const auto fs = enumerate::enumerate_pforests(cat, {4}, Profile{{0, 2}});
    // {x_i, x_j} with (i+1)+(j+1) <= 4: {0,0}, {0,1}, {0,2}, {1,1}.
    EXPECT_EQ(fs.size(), 4u);
    for (const auto& f : fs) {
        EXPECT_EQ(f.tree_count(), 2u);
        EXPECT_LE(forest_edges(cat, f), 4u);
    }
    const auto empty = enumerate::enumerate_pforests(cat, {4}, Profile{});
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_TRUE(empty[0].empty());
    const auto singles = enumerate::enumerate_pforests(cat, {4}, Profile{{0, 1}});
    EXPECT_EQ(singles.size(), 4u);
    // Unfiltered: every multiset of linear trees with total edges <= 4.
    std::size_t brute = 0;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t min, std::size_t left) {
        ++brute;
        for (std::size_t k = min; k <= left; ++k) {
            rec(k, left - k);
        }
    };
    rec(1, 4);
    EXPECT_EQ(enumerate::enumerate_pforests(cat, {4}).size(), brute);
}

TEST(Enumerate, Matchings)
{
    Catalog cat(builtin("exp"));
    auto s = parse_ptree(cat.spec(), "(e2:__)");
    auto f = forest_diagram(cat, PForest::from_keys({"_", "_"}));
    EXPECT_EQ(enumerate::matchings(s, f).size(), 2u);
    EXPECT_TRUE(enumerate::matchings(s, forest_diagram(cat, PForest::single("_"))).empty());

    Catalog two(two_colour_binary());
    auto s2 = parse_ptree(two.spec(), "(f:_a_b)");
    auto f2 = forest_diagram(two, PForest::from_keys({"_a", "_b"}));
    EXPECT_EQ(enumerate::matchings(s2, f2).size(), 1u);

    // |matchings| = ∏ n_v! for distinguishable roots.
    auto s3 = parse_ptree(two.spec(), "(f:(h:_a_a)(g:_b_b))");
    auto f3 = forest_diagram(two, PForest::from_keys({"_a", "(h:_a_a)", "_b", "(g:_b_b)"}));
    EXPECT_EQ(enumerate::matchings(s3, f3).size(), 4u);
}
