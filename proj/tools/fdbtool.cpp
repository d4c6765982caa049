// fdbtool: enumeration, coproducts, Green functions and the verification
// suites from the command line.
//
// Exit status: 0 on success, 1 when a verification fails, 2 on bad usage or
// malformed input. Results go to standard output, diagnostics to standard
// error.

#include <fdb/bialgebra/report_json.hpp>
#include <fdb/groupoid/io.hpp>
#include <fdb/groupoid/laws.hpp>
#include <fdb/oracle/checks.hpp>
#include <fdb/pfunctor/spec_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace fdb;
using nlohmann::json;

constexpr int schema_version = 1;

enum class Format { table, structured };

struct Options {
    std::string functor;
    std::string spec_file;
    std::size_t max_arity = pfunctor::default_max_arity;
    std::optional<std::size_t> max_edges;
    std::optional<std::size_t> max_nodes;
    std::string root_colour;
    std::string leaf_profile;
    Format format = Format::table;
    std::size_t jobs = 1;
    std::uint64_t seed = 2024;
    std::size_t cases = 200;
    std::size_t max_n = 4;
    std::size_t max_degree = 7;
    std::string tree;
    std::string input;
    std::string output;
    std::size_t max_objects = 4;
    bool timing = false;
};

/// Bad flags or input that the option parser cannot see.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

pfunctor::EndofunctorSpec load_spec(const Options& o)
{
    if (o.functor.empty() == o.spec_file.empty()) {
        throw UsageError("give exactly one of --functor and --spec-file");
    }
    if (!o.spec_file.empty()) {
        return pfunctor::read_spec_file(o.spec_file);
    }
    if (o.functor == "bicoloured") {
        return pfunctor::two_colour_binary();
    }
    return pfunctor::builtin(o.functor, o.max_arity);
}

std::optional<pfunctor::Colour> root_colour(const pfunctor::EndofunctorSpec& spec, const Options& o)
{
    if (o.root_colour.empty()) {
        return std::nullopt;
    }
    return spec.colour(o.root_colour);
}

std::optional<pfunctor::Profile> leaf_profile(const pfunctor::EndofunctorSpec& spec, const Options& o)
{
    if (o.leaf_profile.empty()) {
        return std::nullopt;
    }
    return pfunctor::parse_profile(spec, o.leaf_profile);
}

enumerate::Bound bound_of(const Options& o, std::size_t default_edges, std::optional<std::size_t> default_nodes = std::nullopt)
{
    return enumerate::Bound(o.max_edges.value_or(default_edges), o.max_nodes ? o.max_nodes : default_nodes);
}

std::string profile_text(const pfunctor::EndofunctorSpec& spec, const pfunctor::Profile& p)
{
    return pfunctor::profile_to_string(spec, p);
}

/// Prints a structured document or a table, and handles --timing.
class Emitter {
public:
    explicit Emitter(const Options& o) : o_(o), start_(std::chrono::steady_clock::now()) {}

    void structured(json doc) const
    {
        doc["schema_version"] = schema_version;
        if (o_.timing) {
            doc["elapsed_ms"] = elapsed_ms();
        }
        std::cout << doc.dump(2) << '\n';
    }

    void table_done() const
    {
        if (o_.timing) {
            std::cerr << "elapsed: " << elapsed_ms() << " ms\n";
        }
    }

    bool table() const { return o_.format == Format::table; }

private:
    long long elapsed_ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }

    const Options& o_;
    std::chrono::steady_clock::time_point start_;
};

json series_json(const bialgebra::Series& s)
{
    json terms = json::array();
    for (const auto& [f, c] : s.terms()) {
        terms.push_back({{"forest", pfunctor::to_text(f)}, {"coefficient", fdb::to_string(c)}});
    }
    return terms;
}

json tensor_json(const bialgebra::TensorSeries& t)
{
    json terms = json::array();
    for (const auto& [k, c] : t.terms()) {
        terms.push_back({{"left", pfunctor::to_text(k.first)}, {"right", pfunctor::to_text(k.second)}, {"coefficient", fdb::to_string(c)}});
    }
    return terms;
}

void print_summary(const std::string& what, std::size_t checked, std::size_t failed)
{
    std::cout << what << ": checked=" << checked << " failed=" << failed << (failed == 0 ? " PASS" : " FAIL") << '\n';
}

// ---------------------------------------------------------------------------
// Commands

int cmd_enumerate(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const auto& spec = cat.spec();
    const Emitter out(o);
    const auto listed = enumerate::enumerate_ptrees(cat, bound_of(o, 6), {root_colour(spec, o), leaf_profile(spec, o)});
    if (out.table()) {
        for (const auto& t : listed) {
            std::cout << t->key << '\n';
        }
        out.table_done();
        return 0;
    }
    json trees = json::array();
    for (const auto& t : listed) {
        trees.push_back({{"key", t->key},
                         {"tree", pfunctor::to_text(spec, t->tree)},
                         {"aut_order", t->aut.get_str()},
                         {"root", spec.colour_name(t->root)},
                         {"leaf_profile", profile_text(spec, t->leaf_profile)},
                         {"edges", t->edges},
                         {"nodes", t->nodes}});
    }
    const auto b = bound_of(o, 6);
    out.structured({{"spec", spec.name()}, {"bound", bialgebra::bound_json(cat, b.max_edges, b.max_nodes)}, {"trees", std::move(trees)}});
    return 0;
}

pfunctor::PTree tree_argument(const pfunctor::EndofunctorSpec& spec, const Options& o)
{
    if (o.tree.empty()) {
        throw UsageError("--tree is required");
    }
    return pfunctor::parse_ptree(spec, o.tree);
}

int cmd_aut(const Options& o)
{
    const auto spec = load_spec(o);
    const Emitter out(o);
    const auto t = tree_argument(spec, o);
    const auto aut = pfunctor::aut_order(spec, t);
    if (out.table()) {
        std::cout << aut.get_str() << '\n';
        out.table_done();
        return 0;
    }
    out.structured({{"spec", spec.name()}, {"tree", pfunctor::to_text(spec, t)}, {"key", pfunctor::canon(spec, t)}, {"aut_order", aut.get_str()}});
    return 0;
}

int cmd_delta(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const Emitter out(o);
    const auto t = tree_argument(cat.spec(), o);
    const auto d = bialgebra::delta_tree(cat, t);
    if (out.table()) {
        std::cout << bialgebra::to_string(d) << '\n';
        out.table_done();
        return 0;
    }
    out.structured({{"spec", cat.spec().name()}, {"tree", pfunctor::canon(cat.spec(), t)}, {"terms", tensor_json(d)}, {"text", bialgebra::to_string(d)}});
    return 0;
}

int cmd_green(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const Emitter out(o);
    const auto b = bound_of(o, 6);
    const auto g = bialgebra::green(cat, b, {root_colour(cat.spec(), o), leaf_profile(cat.spec(), o)});
    if (out.table()) {
        std::cout << bialgebra::to_string(g) << '\n';
        out.table_done();
        return 0;
    }
    out.structured({{"spec", cat.spec().name()},
                    {"bound", bialgebra::bound_json(cat, b.max_edges, b.max_nodes)},
                    {"terms", series_json(g)},
                    {"text", bialgebra::to_string(g)}});
    return 0;
}

int cmd_verify_fdb(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const Emitter out(o);
    bialgebra::FdbOptions opt;
    opt.max_edges = o.max_edges.value_or(opt.max_edges);
    opt.max_nodes = o.max_nodes.value_or(opt.max_nodes);
    opt.root = root_colour(cat.spec(), o);
    opt.jobs = o.jobs;
    const auto rep = bialgebra::verify_fdb(cat, opt);
    if (out.table()) {
        for (const auto& p : rep.pairs) {
            if (!p.pass) {
                std::cout << "FAIL F=" << pfunctor::to_text(p.f) << " S=" << p.s << " lhs=" << fdb::to_string(p.lhs)
                          << " rhs=" << fdb::to_string(p.rhs) << '\n';
            }
        }
        print_summary("fdb " + cat.spec().name(), rep.pairs.size(), rep.failed);
        print_summary("fdb cross-check", rep.cross_checked, rep.cross_failed);
        out.table_done();
    } else {
        out.structured(bialgebra::to_json(cat, rep));
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_classical(const Options& o)
{
    const Emitter out(o);
    const auto rep = bialgebra::classical_verify(o.max_degree);
    if (out.table()) {
        for (const auto& t : rep.terms) {
            if (!t.pass) {
                std::cout << "FAIL " << bialgebra::type_text(t.left) << " (x) a" << t.k << " lhs=" << fdb::to_string(t.lhs)
                          << " rhs=" << fdb::to_string(t.rhs) << '\n';
            }
        }
        print_summary("classical degree<=" + std::to_string(rep.max_degree), rep.terms.size() + rep.multiplicities.size(), rep.failed);
        out.table_done();
    } else {
        out.structured(bialgebra::to_json(rep));
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_phi(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const Emitter out(o);
    const auto rep = bialgebra::verify_phi(cat, o.max_n, bound_of(o, 8));
    if (out.table()) {
        for (const auto& t : rep.terms) {
            if (!t.pass) {
                std::cout << "FAIL n=" << t.n << ' ' << pfunctor::to_text(t.left) << " (x) " << pfunctor::to_text(t.right)
                          << " lhs=" << fdb::to_string(t.lhs) << " rhs=" << fdb::to_string(t.rhs) << '\n';
            }
        }
        print_summary("phi " + cat.spec().name(), rep.terms.size(), rep.failed);
        out.table_done();
    } else {
        out.structured(bialgebra::to_json(cat, rep));
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_cuts(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const Emitter out(o);
    const auto rep = oracle::verify_cuts(cat, o.max_edges.value_or(6));
    if (out.table()) {
        for (const auto& f : rep.failures) {
            std::cout << "FAIL " << f << '\n';
        }
        std::cout << "cut classes=" << rep.cut_classes << " triple classes=" << rep.triple_classes << '\n';
        print_summary("cuts " + cat.spec().name(), rep.roundtrips, rep.failures.size() + (rep.cut_classes == rep.triple_classes ? 0 : 1));
        out.table_done();
    } else {
        auto doc = oracle::to_json(rep);
        doc["spec"] = cat.spec().name();
        out.structured(std::move(doc));
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_aut(const Options& o)
{
    const pfunctor::Catalog cat(load_spec(o));
    const Emitter out(o);
    const auto rep = oracle::verify_aut(cat, o.max_edges.value_or(6));
    if (out.table()) {
        for (const auto& f : rep.failures) {
            std::cout << "FAIL " << f << '\n';
        }
        print_summary("aut " + cat.spec().name(), rep.checked, rep.failures.size());
        out.table_done();
    } else {
        auto doc = oracle::to_json(rep);
        doc["spec"] = cat.spec().name();
        out.structured(std::move(doc));
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_groupoid(const Options& o)
{
    const Emitter out(o);
    const auto rep = groupoid::run_groupoid_laws(o.seed, o.cases);
    if (out.table()) {
        for (const auto& f : rep.failures) {
            std::cout << "FAIL " << f << '\n';
        }
        print_summary("groupoid laws seed=" + std::to_string(o.seed), rep.cases, rep.failures.size());
        out.table_done();
    } else {
        out.structured({{"seed", o.seed}, {"cases", rep.cases}, {"failures", rep.failures}, {"summary", {{"checked", rep.cases}, {"failed", rep.failures.size()}}}});
    }
    return rep.ok() ? 0 : 1;
}

/// Reads an interchange file and reports its components and cardinality,
/// or writes a random sample groupoid when no input is given.
int cmd_groupoid(const Options& o)
{
    const Emitter out(o);
    if (o.input.empty()) {
        groupoid::GroupoidSampler sampler(o.seed);
        const auto g = sampler.groupoid(o.max_objects);
        const auto doc = groupoid::to_json(*g.groupoid);
        if (o.output.empty()) {
            std::cout << doc.dump(2) << '\n';
        } else {
            groupoid::write_groupoid(*g.groupoid, o.output);
        }
        return 0;
    }
    const auto g = groupoid::read_groupoid(o.input);
    const auto summary = groupoid::summary_json(g);
    if (!o.output.empty()) {
        groupoid::write_groupoid(g, o.output);
    }
    if (out.table()) {
        std::cout << "objects=" << g.object_count() << " arrows=" << g.arrow_count() << " components=" << summary["components"].size()
                  << " cardinality=" << summary["cardinality"].get<std::string>() << '\n';
        for (const auto& c : summary["components"]) {
            std::cout << "  " << c["objects"].dump() << " |Aut|=" << c["vertex_group_order"].get<std::size_t>() << '\n';
        }
        out.table_done();
    } else {
        out.structured(summary);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Option wiring

void add_spec_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--functor", o.functor, "builtin endofunctor (exp, planar, binary, identity, constant, stable, ...)");
    cmd->add_option("--spec-file", o.spec_file, "endofunctor spec as a JSON file");
    cmd->add_option("--max-arity", o.max_arity, "arity cap for the unbounded builtin families")->capture_default_str();
}

void add_bound_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--max-edges", o.max_edges, "edge bound (per side for verification)");
    cmd->add_option("--max-nodes", o.max_nodes, "node bound");
}

void add_filter_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--root-colour", o.root_colour, "keep trees with this root colour");
    cmd->add_option("--leaf-profile", o.leaf_profile, "keep trees with this leaf profile, as c:n,...");
}

void add_output_options(CLI::App* cmd, Options& o)
{
    const std::map<std::string, Format> formats = {{"table", Format::table}, {"structured", Format::structured}};
    cmd->add_option("--format", o.format, "table or structured")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_flag("--timing", o.timing, "report elapsed time");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Trees, Green functions and the Faa di Bruno identity for polynomial endofunctors"};
    app.require_subcommand(1);
    Options o;
    int (*run)(const Options&) = nullptr;
    auto bind = [&](CLI::App* cmd, int (*fn)(const Options&)) { cmd->callback([&run, fn] { run = fn; }); };

    auto* en = app.add_subcommand("enumerate", "list P-tree classes within a bound");
    add_spec_options(en, o);
    add_bound_options(en, o);
    add_filter_options(en, o);
    add_output_options(en, o);
    bind(en, cmd_enumerate);

    auto* au = app.add_subcommand("aut", "automorphism order of a tree");
    add_spec_options(au, o);
    au->add_option("--tree", o.tree, "tree in the canonical grammar")->required();
    add_output_options(au, o);
    bind(au, cmd_aut);

    auto* de = app.add_subcommand("delta", "coproduct of a tree");
    add_spec_options(de, o);
    de->add_option("--tree", o.tree, "tree in the canonical grammar")->required();
    add_output_options(de, o);
    bind(de, cmd_delta);

    auto* gr = app.add_subcommand("green", "truncated Green function");
    add_spec_options(gr, o);
    add_bound_options(gr, o);
    add_filter_options(gr, o);
    add_output_options(gr, o);
    bind(gr, cmd_green);

    auto* ve = app.add_subcommand("verify", "run a verification suite");
    ve->require_subcommand(1);
    auto* vf = ve->add_subcommand("fdb", "the Faa di Bruno identity on all pairs within a budget");
    add_spec_options(vf, o);
    add_bound_options(vf, o);
    vf->add_option("--root-colour", o.root_colour, "check the rooted refinement for this colour");
    vf->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    add_output_options(vf, o);
    bind(vf, cmd_verify_fdb);

    auto* vc = ve->add_subcommand("classical", "the classical identity via set partitions");
    vc->add_option("--max-degree", o.max_degree, "largest degree checked")->capture_default_str();
    add_output_options(vc, o);
    bind(vc, cmd_verify_classical);

    auto* vp = ve->add_subcommand("phi", "the map from the classical bialgebra is a homomorphism");
    add_spec_options(vp, o);
    add_bound_options(vp, o);
    vp->add_option("--max-n", o.max_n, "largest n for a_n")->capture_default_str();
    add_output_options(vp, o);
    bind(vp, cmd_verify_phi);

    auto* vk = ve->add_subcommand("cuts", "graft/prune roundtrip and class counts");
    add_spec_options(vk, o);
    vk->add_option("--max-edges", o.max_edges, "edge bound for T");
    add_output_options(vk, o);
    bind(vk, cmd_verify_cuts);

    auto* va = ve->add_subcommand("aut", "automorphism orders against brute force");
    add_spec_options(va, o);
    va->add_option("--max-edges", o.max_edges, "edge bound");
    add_output_options(va, o);
    bind(va, cmd_verify_aut);

    auto* vg = ve->add_subcommand("groupoid", "randomized groupoid cardinality laws");
    vg->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
    vg->add_option("--cases", o.cases, "number of sampled instances")->capture_default_str();
    add_output_options(vg, o);
    bind(vg, cmd_verify_groupoid);

    auto* gd = app.add_subcommand("groupoid", "read, summarize or write a groupoid interchange file");
    gd->add_option("--input", o.input, "interchange file to read");
    gd->add_option("--output", o.output, "interchange file to write");
    gd->add_option("--seed", o.seed, "seed for a sampled groupoid when no input is given")->capture_default_str();
    gd->add_option("--max-objects", o.max_objects, "object bound for a sampled groupoid")->capture_default_str();
    add_output_options(gd, o);
    bind(gd, cmd_groupoid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }
    try {
        return run(o);
    } catch (const std::exception& e) {
        std::cerr << "fdbtool: " << e.what() << '\n';
        return 2;
    }
}
