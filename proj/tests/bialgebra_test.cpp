#include <fdb/bialgebra/classical.hpp>
#include <fdb/bialgebra/fdb.hpp>
#include <fdb/bialgebra/phi.hpp>
#include <fdb/oracle/brute_force.hpp>

#include <gtest/gtest.h>

using namespace fdb;
using namespace fdb::bialgebra;
using fdb::pfunctor::builtin;
using fdb::pfunctor::PForest;

namespace {

std::vector<std::string> all_builtins() { return {"exp", "effective", "stable", "planar", "cyclic", "binary", "identity", "constant", "trivial"}; }

std::vector<pfunctor::EndofunctorSpec> all_specs()
{
    std::vector<pfunctor::EndofunctorSpec> r;
    for (const auto& n : all_builtins()) {
        r.push_back(builtin(n));
    }
    r.push_back(pfunctor::two_colour_binary());
    return r;
}

std::string ladder(std::size_t n)
{
    std::string s = "_";
    for (std::size_t i = 0; i < n; ++i) {
        s = "(u:" + s + ")";
    }
    return s;
}

PForest mono(std::initializer_list<const char*> keys)
{
    std::vector<std::string> v(keys.begin(), keys.end());
    return PForest::from_keys(v);
}

} // namespace

TEST(Delta, Examples)
{
    Catalog id(builtin("identity"));
    auto d0 = delta_tree(id, pfunctor::parse_ptree(id.spec(), "_"));
    EXPECT_EQ(d0.size(), 1u);
    EXPECT_EQ(d0.coefficient(mono({"_"}), mono({"_"})), 1);

    auto d2 = delta_tree(id, pfunctor::parse_ptree(id.spec(), ladder(2)));
    EXPECT_EQ(d2.size(), 3u);
    for (std::size_t i = 0; i <= 2; ++i) {
        EXPECT_EQ(d2.coefficient(mono({ladder(i).c_str()}), mono({ladder(2 - i).c_str()})), 1);
    }

    Catalog c(builtin("constant"));
    auto dy = delta_tree(c, pfunctor::parse_ptree(c.spec(), "(y)"));
    EXPECT_EQ(to_string(dy), "1 \xE2\x8A\x97 \xCE\xB4[(y)] + \xCE\xB4[(y)] \xE2\x8A\x97 \xCE\xB4[_]");
}

TEST(Delta, MonomialOfInjections)
{
    Catalog c(builtin("constant"));
    auto d = delta_monomial(c, mono({"(y)", "(y)"}));
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(d.coefficient(PForest{}, mono({"(y)", "(y)"})), 1);
    EXPECT_EQ(d.coefficient(mono({"(y)"}), mono({"(y)", "_"})), 2);
    EXPECT_EQ(d.coefficient(mono({"(y)", "(y)"}), mono({"_", "_"})), 1);
    auto unit = delta_monomial(c, PForest{});
    EXPECT_EQ(unit.coefficient(PForest{}, PForest{}), 1);
    EXPECT_EQ(counit(PForest{}), 1);
    EXPECT_EQ(counit(mono({"_", "_"})), 1);
    EXPECT_EQ(counit(mono({"_", "(y)"})), 0);
}

TEST(Delta, BialgebraLawsOnAllSmallTrees)
{
    for (const auto& spec : all_specs()) {
        Catalog cat(spec);
        DeltaCache cache(cat);
        for (const auto& t : enumerate::enumerate_ptrees(cat, {6})) {
            EXPECT_TRUE(is_coassociative_on(cache, t->key)) << spec.name() << " " << t->key;
            EXPECT_TRUE(satisfies_counit_on(cache, t->key)) << spec.name() << " " << t->key;
            const auto d = cache.of(t->key);
            for (const auto& [k, c] : d->terms()) {
                EXPECT_EQ(pfunctor::forest_key_nodes(k.first) + pfunctor::forest_key_nodes(k.second), t->nodes);
                EXPECT_GT(c, 0);
            }
        }
    }
}

TEST(Delta, Multiplicative)
{
    Catalog cat(builtin("exp"));
    DeltaCache cache(cat);
    const auto a = mono({"(e2:__)", "_"});
    const auto b = mono({"(e1:(e0))"});
    // Δ of the forest diagram, cut tree by tree, against the product formula.
    const auto f = pfunctor::forest_diagram(cat, multiply(a, b));
    TensorSeries direct;
    const auto parts = trees::components(f);
    std::vector<std::vector<trees::Cut>> cuts;
    for (const auto& p : parts) {
        cuts.push_back(trees::enumerate_cuts(p));
    }
    std::vector<std::size_t> idx(parts.size(), 0);
    while (true) {
        PForest left;
        PForest right;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto pr = trees::prune(parts[i], cuts[i][idx[i]]);
            left = multiply(left, pfunctor::forest_of_tree(cat, pr.crown));
            right = multiply(right, PForest::single(pfunctor::canon(cat.spec(), pr.stump)));
        }
        direct.add(left, right, 1);
        std::size_t i = 0;
        while (i < parts.size() && ++idx[i] == cuts[i].size()) {
            idx[i++] = 0;
        }
        if (i == parts.size()) {
            break;
        }
    }
    EXPECT_EQ(direct, delta_monomial(cache, multiply(a, b)));
    EXPECT_EQ(tensor_mul(delta_monomial(cache, a), delta_monomial(cache, b)), delta_monomial(cache, multiply(a, b)));
}

TEST(Green, Examples)
{
    Catalog c(builtin("constant"));
    EXPECT_EQ(to_string(green(c, {6})), "\xCE\xB4[(y)] + \xCE\xB4[_]");
    EXPECT_EQ(to_string(green(c, {6}, {std::nullopt, pfunctor::Profile{}})), "\xCE\xB4[(y)]");
    EXPECT_EQ(to_string(green(c, {6}, {std::nullopt, pfunctor::Profile{{0, 1}}})), "\xCE\xB4[_]");
    Catalog e(builtin("exp"));
    EXPECT_EQ(green(e, {3}).coefficient(mono({"(e2:__)"})), Rational(1, 2));
    Catalog t(builtin("trivial"));
    EXPECT_EQ(to_string(green(t, {9})), "\xCE\xB4[_]");
}

TEST(Series, Powers)
{
    Catalog e(builtin("exp"));
    const Bound b(6);
    const auto g = green_by_colour(e, b);
    EXPECT_EQ(to_string(series_pow_profile(g, {}, b)), "1");
    const auto g2 = series_pow_profile(g, {{0, 2}}, b);
    const auto cherry2 = mono({"(e2:__)", "(e2:__)"});
    EXPECT_EQ(g2.coefficient(cherry2), Rational(1, 4));
    EXPECT_EQ(power_coefficient(e, cherry2, {{0, 2}}), Rational(1, 4));
    EXPECT_EQ(oracle::root_labelled_weight(e.spec(), pfunctor::forest_diagram(e, cherry2)), Rational(1, 4));
    const auto mixed = mono({"(e2:__)", "_"});
    EXPECT_EQ(g2.coefficient(mixed), 1);

    Catalog c(builtin("constant"));
    const auto gc = green_by_colour(c, b);
    EXPECT_EQ(series_pow_profile(gc, {{0, 1}}, b).coefficient(mono({"_"})), 1);
    EXPECT_THROW(series_mul(green(c, {3}), green(c, {4})), BialgebraError);
}

TEST(Series, PowerCoefficientMatchesFibreCardinality)
{
    for (const char* n : {"exp", "cyclic", "binary"}) {
        Catalog cat(builtin(n));
        for (const auto& f : enumerate::enumerate_pforests(cat, {6})) {
            const auto diagram = pfunctor::forest_diagram(cat, f);
            const auto prof = pfunctor::root_profile(cat, f);
            EXPECT_EQ(power_coefficient(cat, f, prof), oracle::root_labelled_weight(cat.spec(), diagram)) << pfunctor::to_text(f);
        }
    }
}

TEST(Green, LabelledGreenFunctionDividesByAutN)
{
    for (const auto& spec : all_specs()) {
        Catalog cat(spec);
        for (const auto& t : enumerate::enumerate_ptrees(cat, {6})) {
            const auto weight = oracle::labelled_weight(spec, t->tree);
            EXPECT_EQ(weight / Rational(pfunctor::profile_aut(t->leaf_profile)), Rational(mpz_class(1), t->aut)) << t->key;
        }
    }
}

TEST(Fdb, CoefficientExamples)
{
    Catalog e(builtin("exp"));
    DeltaCache ce(e);
    const std::string t = "(e2:(e1:_)_)";
    EXPECT_EQ(fdb_lhs_coefficient(ce, mono({t.c_str()}), "_"), Rational(mpz_class(1), e.info(t)->aut));
    EXPECT_EQ(fdb_lhs_coefficient(ce, mono({"_", "_"}), "(e2:__)"), Rational(1, 2));
    EXPECT_EQ(fdb_rhs_coefficient(e, mono({"_", "_"}), "(e2:__)"), Rational(1, 2));
    Catalog id(builtin("identity"));
    DeltaCache ci(id);
    EXPECT_EQ(fdb_lhs_coefficient(ci, mono({"(u:_)"}), "(u:_)"), 1);
    EXPECT_EQ(fdb_rhs_coefficient(id, mono({"(u:_)"}), "(u:_)"), 1);
}

TEST(Fdb, ClosedFormAgreesWithPowerExpansion)
{
    Catalog cat(pfunctor::two_colour_binary());
    for (const auto& s : enumerate::enumerate_ptrees(cat, {5})) {
        for (const auto& f : enumerate::enumerate_pforests(cat, {5}, s->leaf_profile)) {
            EXPECT_EQ(fdb_rhs_coefficient(cat, f, s->key), fdb_closed_form(cat, f, s->key));
        }
    }
}

TEST(Fdb, VerifySmallBudgets)
{
    for (const char* n : {"constant", "identity", "binary", "exp", "cyclic"}) {
        Catalog cat(builtin(n));
        const auto r = verify_fdb(cat, {5, 4, std::nullopt, 1});
        EXPECT_TRUE(r.ok()) << n << " failed " << r.failed << " cross_failed " << r.cross_failed;
        EXPECT_GT(r.pairs.size(), 0u);
    }
    Catalog two(pfunctor::two_colour_binary());
    for (Colour v = 0; v < 2; ++v) {
        const auto r = verify_fdb(two, {5, 4, v, 2});
        EXPECT_TRUE(r.ok());
    }
}

TEST(Fdb, ParallelReportIsIdentical)
{
    Catalog cat(builtin("exp"));
    const auto one = to_json(cat, verify_fdb(cat, {5, 4, std::nullopt, 1})).dump();
    Catalog cat2(builtin("exp"));
    const auto four = to_json(cat2, verify_fdb(cat2, {5, 4, std::nullopt, 4})).dump();
    EXPECT_EQ(one, four);
}

TEST(Fdb, DetectsWrongCoefficient)
{
    // Dropping the 1/|Aut S| factor must be caught on the exp spec.
    Catalog e(builtin("exp"));
    DeltaCache ce(e);
    const auto f = mono({"_", "_"});
    EXPECT_NE(fdb_lhs_coefficient(ce, f, "(e2:__)"), power_coefficient(e, f, {{0, 2}}));
}

TEST(Classical, SurjectionDelta)
{
    const auto d1 = surjection_delta(1);
    ASSERT_EQ(d1.size(), 1u);
    EXPECT_EQ(d1.at(PartitionType{{1, 1}}), 1u);
    const auto d3 = surjection_delta(3);
    EXPECT_EQ(d3.at(PartitionType{{1, 3}}), 1u);
    EXPECT_EQ(d3.at(PartitionType{{1, 1}, {2, 1}}), 3u);
    EXPECT_EQ(d3.at(PartitionType{{3, 1}}), 1u);
    std::size_t bell = 0;
    for (const auto& [t, c] : surjection_delta(5)) {
        bell += c;
        EXPECT_EQ(partition_count_closed_form(t), Rational(static_cast<unsigned long>(c)));
    }
    EXPECT_EQ(bell, 52u);
    EXPECT_EQ(type_text(PartitionType{{1, 3}, {2, 1}}), "a1^3\xC2\xB7" "a2");
}

TEST(Classical, VerifyDegreeSeven)
{
    const auto r = classical_verify(7);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.terms.size(), 20u);
    for (const auto& t : r.terms) {
        EXPECT_LE(type_degree(t.left) + t.k - 1, 7u);
    }
}

TEST(Phi, RequiresEffectiveSpec)
{
    Catalog e(builtin("exp"));
    try {
        verify_phi(e, 2, {6});
        FAIL();
    } catch (const BialgebraError& err) {
        EXPECT_EQ(err.code(), BialgebraErrc::nullary_ops_present);
    }
}

TEST(Phi, ValuesAndHomomorphism)
{
    Catalog eff(builtin("effective"));
    const Phi phi(eff, {5});
    // g_1 in the effective spec: the unary chains.
    const auto& g1 = phi.g(1);
    EXPECT_EQ(g1.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
        std::string chain = "_";
        for (std::size_t i = 0; i < k; ++i) {
            chain = "(e1:" + chain + ")";
        }
        EXPECT_EQ(g1.coefficient(mono({chain.c_str()})), 1);
    }
    // Φ(A) = G.
    ClassicalPoly a;
    for (std::size_t n = 1; n <= 5; ++n) {
        a[{{n, 1}}] = 1;
    }
    EXPECT_EQ(phi(a), green(eff, {5}));

    Catalog st(builtin("stable"));
    const auto r = verify_phi(st, 4, {8});
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.terms.size(), 10u);
    const auto r2 = verify_phi(eff, 3, {5});
    EXPECT_TRUE(r2.ok());
}
