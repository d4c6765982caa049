#pragma once

#include <fdb/bialgebra/coproduct.hpp>
#include <fdb/bialgebra/green.hpp>
#include <fdb/enumerate/enumerate.hpp>
#include <fdb/trees/cut.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <set>
#include <thread>
#include <vector>

namespace fdb::bialgebra {

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index is
/// handled exactly once; callers write results into slot i.
inline void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body)
{
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Coefficient of δ_F ⊗ δ_S in Δ(G), computed from the tree side: graft F
/// onto S along every matching, keep one representative per tree class T,
/// and add (number of cuts of T pruning to (F, S)) / |Aut T|.
inline Rational fdb_lhs_coefficient(const DeltaCache& cache, const PForest& f, const std::string& s)
{
    const auto& cat = cache.catalog();
    const auto stump = cat.info(s)->tree;
    const auto crown = pfunctor::forest_diagram(cat, f);
    std::set<std::string> grafts;
    for (const auto& m : enumerate::matchings(stump, crown)) {
        const auto t = trees::graft(crown, stump, m).tree;
        grafts.insert(pfunctor::canon(cat.spec(), t));
    }
    Rational total = 0;
    const auto target = PForest::single(s);
    for (const auto& k : grafts) {
        const auto cuts = cache.of(k)->coefficient(f, target);
        total += cuts / Rational(cat.info(k)->aut);
    }
    return total;
}

/// The same coefficient read off Σ_n G^n ⊗ g_n: the coefficient of δ_F in
/// G^{n} for n the leaf profile of S, divided by |Aut S|.
inline Rational fdb_rhs_coefficient(const Catalog& cat, const PForest& f, const std::string& s)
{
    const auto info = cat.info(s);
    return power_coefficient(cat, f, info->leaf_profile) / Rational(info->aut);
}

/// Closed form of the right side: ∏ n_v! / (|Aut F| |Aut S|) when the root
/// profile of F is the leaf profile of S, else 0.
inline Rational fdb_closed_form(const Catalog& cat, const PForest& f, const std::string& s)
{
    const auto info = cat.info(s);
    if (pfunctor::root_profile(cat, f) != info->leaf_profile) {
        return 0;
    }
    return Rational(pfunctor::profile_aut(info->leaf_profile)) / Rational(pfunctor::aut_order_forest(cat, f) * info->aut);
}

struct FdbOptions {
    std::size_t max_edges = 8;  // per side
    std::size_t max_nodes = 5;  // total over F and S
    std::optional<Colour> root; // rooted refinement: S (hence T) has this root colour
    std::size_t jobs = 1;
};

struct FdbPair {
    PForest f;
    std::string s;
    Rational lhs;
    Rational rhs;
    bool pass = false;
};

struct FdbReport {
    FdbOptions options;
    std::vector<FdbPair> pairs;
    std::size_t failed = 0;
    std::size_t cross_checked = 0;
    std::size_t cross_failed = 0;

    bool ok() const noexcept { return failed == 0 && cross_failed == 0; }
};

/// Checks Δ(G) = Σ G^n ⊗ g_n (or Δ(G_v) = Σ G^n ⊗ g_{n,v}) on every pair
/// (F, S) with each side within max_edges, nodes(F) + nodes(S) within
/// max_nodes, and root profile of F equal to the leaf profile of S. Other
/// pairs have coefficient zero on both sides by construction.
///
/// Independently, Σ_T Δ(δ_T)/|Aut T| is accumulated over all trees that can
/// contribute (at most max_nodes nodes and 2·max_edges edges) and compared
/// with the left side on the whole budget.
inline FdbReport verify_fdb(const Catalog& cat, const FdbOptions& opt)
{
    DeltaCache cache(cat);
    FdbReport report;
    report.options = opt;
    const Bound side(opt.max_edges, opt.max_nodes);
    for (const auto& s : enumerate::enumerate_ptrees(cat, side, {opt.root, std::nullopt})) {
        const Bound rest(opt.max_edges, opt.max_nodes - s->nodes);
        for (auto& f : enumerate::enumerate_pforests(cat, rest, s->leaf_profile)) {
            report.pairs.push_back(FdbPair{std::move(f), s->key, 0, 0, false});
        }
    }
    parallel_for(report.pairs.size(), opt.jobs, [&](std::size_t i) {
        auto& p = report.pairs[i];
        p.lhs = fdb_lhs_coefficient(cache, p.f, p.s);
        p.rhs = fdb_rhs_coefficient(cat, p.f, p.s);
        p.pass = p.lhs == p.rhs;
    });
    report.failed = static_cast<std::size_t>(std::count_if(report.pairs.begin(), report.pairs.end(), [](const auto& p) { return !p.pass; }));

    // Direct expansion of Δ(G) over the trees that can reach the budget.
    const auto contributing = enumerate::enumerate_ptrees(cat, Bound(2 * opt.max_edges, opt.max_nodes), {opt.root, std::nullopt});
    std::vector<std::shared_ptr<const TensorSeries>> deltas(contributing.size());
    parallel_for(contributing.size(), opt.jobs, [&](std::size_t i) { deltas[i] = cache.of(contributing[i]->key); });
    TensorSeries direct(side);
    for (std::size_t i = 0; i < contributing.size(); ++i) {
        direct.add_all(*deltas[i], Rational(mpz_class(1), contributing[i]->aut));
    }
    std::set<std::pair<PForest, PForest>> seen;
    for (const auto& p : report.pairs) {
        const auto key = std::make_pair(p.f, PForest::single(p.s));
        seen.insert(key);
        ++report.cross_checked;
        if (direct.coefficient(key.first, key.second) != p.lhs) {
            ++report.cross_failed;
        }
    }
    for (const auto& [k, c] : direct.terms()) {
        if (pfunctor::forest_key_nodes(k.first) + pfunctor::forest_key_nodes(k.second) <= opt.max_nodes && !seen.count(k)) {
            // A nonzero term the pair list missed.
            ++report.cross_checked;
            ++report.cross_failed;
        }
    }
    return report;
}

inline nlohmann::json bound_json(const Catalog& cat, std::size_t max_edges, std::optional<std::size_t> max_nodes)
{
    nlohmann::json b = {{"max_edges", max_edges}};
    b["max_nodes"] = max_nodes ? nlohmann::json(*max_nodes) : nlohmann::json(nullptr);
    b["max_arity"] = cat.spec().max_arity() ? nlohmann::json(*cat.spec().max_arity()) : nlohmann::json(nullptr);
    return b;
}

inline nlohmann::json to_json(const Catalog& cat, const FdbReport& r)
{
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : r.pairs) {
        pairs.push_back({{"F", pfunctor::to_text(p.f)}, {"S", p.s}, {"lhs", fdb::to_string(p.lhs)}, {"rhs", fdb::to_string(p.rhs)}, {"pass", p.pass}});
    }
    nlohmann::json j;
    j["spec"] = cat.spec().name();
    j["bound"] = bound_json(cat, r.options.max_edges, r.options.max_nodes);
    j["rooted"] = r.options.root ? nlohmann::json(cat.spec().colour_name(*r.options.root)) : nlohmann::json(nullptr);
    j["pairs"] = std::move(pairs);
    j["summary"] = {{"checked", r.pairs.size()},
                    {"failed", r.failed},
                    {"cross_checked", r.cross_checked},
                    {"cross_failed", r.cross_failed}};
    return j;
}

} // namespace fdb::bialgebra
