// Acceptance suite: one PASS/FAIL line per criterion. Each criterion also
// produces a structured report; the last criterion reruns everything with
// four workers and compares the reports byte for byte.

#include <fdb/bialgebra/report_json.hpp>
#include <fdb/groupoid/laws.hpp>
#include <fdb/oracle/checks.hpp>

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace fdb;
using bialgebra::Bound;
using nlohmann::json;
using pfunctor::Catalog;
using pfunctor::PForest;

struct Outcome {
    bool pass = false;
    std::string detail;
    json report;
};

/// One spec per distinct builtin; aliases are skipped.
std::vector<pfunctor::EndofunctorSpec> all_builtins()
{
    std::vector<pfunctor::EndofunctorSpec> specs;
    std::set<std::string> seen;
    for (const auto& name : pfunctor::builtin_names()) {
        auto spec = pfunctor::builtin(name);
        if (seen.insert(spec.name()).second) {
            specs.push_back(std::move(spec));
        }
    }
    specs.push_back(pfunctor::two_colour_binary());
    return specs;
}

Outcome fdb_over(const std::vector<pfunctor::EndofunctorSpec>& specs, const std::vector<std::optional<std::string>>& roots,
                 std::size_t jobs)
{
    Outcome out{true, "", json::array()};
    std::size_t checked = 0;
    std::size_t failed = 0;
    for (const auto& spec : specs) {
        const Catalog cat(spec);
        for (const auto& root : roots) {
            bialgebra::FdbOptions opt;
            opt.max_edges = 8;
            opt.max_nodes = 5;
            opt.jobs = jobs;
            if (root) {
                opt.root = spec.colour(*root);
            }
            const auto rep = bialgebra::verify_fdb(cat, opt);
            checked += rep.pairs.size();
            failed += rep.failed + rep.cross_failed;
            out.pass = out.pass && rep.ok() && !rep.pairs.empty();
            out.report.push_back(bialgebra::to_json(cat, rep));
        }
    }
    out.detail = std::to_string(checked) + " pairs, " + std::to_string(failed) + " failed";
    return out;
}

Outcome criterion_1(std::size_t jobs)
{
    std::vector<pfunctor::EndofunctorSpec> specs;
    for (const char* name : {"identity", "constant", "binary", "planar", "exp", "stable"}) {
        specs.push_back(pfunctor::builtin(name, 3));
    }
    const auto start = std::chrono::steady_clock::now();
    auto out = fdb_over(specs, {std::nullopt}, jobs);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (jobs == 1) {
        out.pass = out.pass && secs < 120.0;
        out.detail += ", " + std::to_string(static_cast<long>(secs * 1000)) + " ms single-worker (limit 120 s)";
    }
    return out;
}

Outcome criterion_2(std::size_t jobs)
{
    return fdb_over({pfunctor::two_colour_binary()}, {std::string("a"), std::string("b")}, jobs);
}

std::string ladder_text(std::size_t n)
{
    std::string s = "_";
    for (std::size_t i = 0; i < n; ++i) {
        s = "(u:" + s + ")";
    }
    return s;
}

Outcome criterion_3(std::size_t)
{
    const Catalog cat(pfunctor::builtin("identity"));
    Outcome out{true, "", json::array()};
    for (std::size_t n = 0; n <= 10; ++n) {
        const auto d = bialgebra::delta_tree(cat, pfunctor::parse_ptree(cat.spec(), ladder_text(n)));
        bialgebra::TensorSeries expected;
        for (std::size_t i = 0; i <= n; ++i) {
            expected.add(PForest::single(ladder_text(i)), PForest::single(ladder_text(n - i)), 1);
        }
        out.pass = out.pass && d == expected;
        out.report.push_back({{"n", n}, {"delta", bialgebra::to_string(d)}, {"pass", d == expected}});
    }
    out.detail = "x_0 .. x_10";
    return out;
}

Outcome criterion_4(std::size_t)
{
    const Catalog cat(pfunctor::builtin("constant"));
    Outcome out{true, "", json::object()};
    const std::string x = "_";
    const std::string y = "(y)";
    auto power = [](const std::string& k, std::size_t n) { return PForest::from_keys(std::vector<std::string>(n, k)); };
    json deltas = json::array();
    for (std::size_t n = 0; n <= 8; ++n) {
        const auto d = bialgebra::delta_monomial(cat, power(y, n));
        bialgebra::TensorSeries expected;
        for (std::size_t k = 0; k <= n; ++k) {
            expected.add(power(y, k), pfunctor::multiply(power(y, n - k), power(x, k)), binomial(n, k));
        }
        out.pass = out.pass && d == expected;
        deltas.push_back({{"n", n}, {"delta", bialgebra::to_string(d)}, {"pass", d == expected}});
    }
    const Bound b(8);
    const auto g = bialgebra::green(cat, b);
    const auto g0 = bialgebra::green(cat, b, {std::nullopt, pfunctor::Profile{}});
    const auto g1 = bialgebra::green(cat, b, {std::nullopt, pfunctor::parse_profile(cat.spec(), "v:1")});
    auto expect = [&](std::initializer_list<std::string> keys) {
        bialgebra::Series s(b);
        for (const auto& k : keys) {
            s.add(PForest::single(k), 1);
        }
        return s;
    };
    const bool green_ok = g == expect({x, y}) && g0 == expect({y}) && g1 == expect({x});
    out.pass = out.pass && green_ok;
    out.report = {{"deltas", std::move(deltas)},
                  {"G", bialgebra::to_string(g)},
                  {"g0", bialgebra::to_string(g0)},
                  {"g1", bialgebra::to_string(g1)},
                  {"green_pass", green_ok}};
    out.detail = "n <= 8, G = " + bialgebra::to_string(g) + ", g0 = " + bialgebra::to_string(g0) + ", g1 = " + bialgebra::to_string(g1);
    return out;
}

Outcome criterion_5(std::size_t)
{
    const auto rep = bialgebra::classical_verify(7);
    const bool pass = rep.ok() && !rep.terms.empty() && !rep.multiplicities.empty();
    return {pass,
            std::to_string(rep.terms.size()) + " coefficients, " + std::to_string(rep.multiplicities.size()) + " multiplicities, "
                + std::to_string(rep.failed) + " failed",
            bialgebra::to_json(rep)};
}

Outcome criterion_6(std::size_t)
{
    const Catalog cat(pfunctor::builtin("stable", 3));
    const auto rep = bialgebra::verify_phi(cat, 4, Bound(8));
    return {rep.ok() && !rep.terms.empty(), std::to_string(rep.terms.size()) + " terms, " + std::to_string(rep.failed) + " failed",
            bialgebra::to_json(cat, rep)};
}

Outcome criterion_7(std::size_t)
{
    Outcome out{true, "", json::array()};
    std::size_t roundtrips = 0;
    std::size_t classes = 0;
    for (const auto& spec : all_builtins()) {
        const Catalog cat(spec);
        const auto rep = oracle::verify_cuts(cat, 6);
        roundtrips += rep.roundtrips;
        classes += rep.cut_classes;
        out.pass = out.pass && rep.ok();
        auto doc = oracle::to_json(rep);
        doc["spec"] = spec.name();
        out.report.push_back(std::move(doc));
    }
    out.detail = std::to_string(roundtrips) + " (T, cut) roundtrips, " + std::to_string(classes) + " classes on each side";
    return out;
}

Outcome criterion_8(std::size_t)
{
    Outcome out{true, "", json::object()};
    json per_spec = json::array();
    std::size_t checked = 0;
    for (const auto& spec : all_builtins()) {
        const Catalog cat(spec);
        const auto rep = oracle::verify_aut(cat, 6);
        checked += rep.checked;
        out.pass = out.pass && rep.ok();
        auto doc = oracle::to_json(rep);
        doc["spec"] = spec.name();
        per_spec.push_back(std::move(doc));
    }
    const Catalog binary(pfunctor::builtin("binary"));
    const auto catalan = oracle::counts_by_leaves(binary, 5, 9);
    const bool catalan_ok = catalan == std::vector<std::size_t>{1, 1, 2, 5, 14};
    out.pass = out.pass && catalan_ok;
    out.report = {{"aut", std::move(per_spec)}, {"binary_by_leaves", catalan}, {"catalan_pass", catalan_ok}};
    std::string counts;
    for (auto c : catalan) {
        counts += (counts.empty() ? "" : ",") + std::to_string(c);
    }
    out.detail = std::to_string(checked) + " trees against brute force, binary classes by leaves " + counts;
    return out;
}

Outcome criterion_9(std::size_t)
{
    const auto rep = groupoid::run_groupoid_laws(2024, 200);
    return {rep.ok() && rep.cases >= 200, std::to_string(rep.cases) + " sampled cases, " + std::to_string(rep.failures.size()) + " failures",
            {{"cases", rep.cases}, {"failures", rep.failures}}};
}

struct Criterion {
    const char* title;
    std::function<Outcome(std::size_t)> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {"Faa di Bruno identity on six specs", criterion_1},
        {"rooted refinement, two colours", criterion_2},
        {"ladder coproduct", criterion_3},
        {"injections bialgebra", criterion_4},
        {"classical identity via set partitions", criterion_5},
        {"Phi is a homomorphism", criterion_6},
        {"graft/prune bijection", criterion_7},
        {"automorphism oracle and Catalan counts", criterion_8},
        {"groupoid calculus laws", criterion_9},
    };
    bool all = true;
    std::vector<std::string> reports;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run(1);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), nullptr};
        }
        all = all && o.pass;
        reports.push_back(o.report.dump());
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].title << ": " << o.detail << std::endl;
    }

    std::size_t differing = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string again;
        try {
            again = criteria[i].run(4).report.dump();
        } catch (const std::exception& e) {
            again = e.what();
        }
        differing += again == reports[i] ? 0 : 1;
    }
    const bool deterministic = differing == 0;
    all = all && deterministic;
    std::cout << (deterministic ? "PASS" : "FAIL") << "  10. determinism with 4 workers: " << criteria.size() - differing << " of "
              << criteria.size() << " reports byte-identical" << std::endl;
    return all ? 0 : 1;
}
