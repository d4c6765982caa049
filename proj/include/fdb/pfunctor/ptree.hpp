#pragma once

#include <fdb/parse.hpp>
#include <fdb/pfunctor/spec.hpp>
#include <fdb/trees/diagram.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fdb::pfunctor {

using trees::Index;
using trees::npos;

/// A P-tree (or P-forest): edges coloured by I, nodes decorated by B. The
/// input list of each node, in slot order, is the bijection onto the input
/// positions of its operation.
using PTree = trees::basic_forest<Colour, OpId>;

/// Sparse multi-index over the colours: sorted (colour, count) pairs, counts > 0.
using Profile = std::vector<std::pair<Colour, std::size_t>>;

inline Profile profile_of(std::vector<Colour> colours)
{
    std::sort(colours.begin(), colours.end());
    Profile p;
    for (Colour c : colours) {
        if (!p.empty() && p.back().first == c) {
            ++p.back().second;
        } else {
            p.emplace_back(c, 1);
        }
    }
    return p;
}

inline std::size_t profile_size(const Profile& p)
{
    std::size_t n = 0;
    for (const auto& [c, k] : p) {
        n += k;
    }
    return n;
}

/// ∏ n_v!, the order of Aut N for a profile N.
inline mpz_class profile_aut(const Profile& p)
{
    mpz_class r = 1;
    for (const auto& [c, k] : p) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), k);
        r *= f;
    }
    return r;
}

/// "c:n,c:n" in colour order; "" for the empty profile.
inline std::string profile_to_string(const EndofunctorSpec& spec, const Profile& p)
{
    std::string s;
    for (const auto& [c, k] : p) {
        if (!s.empty()) {
            s += ',';
        }
        s += spec.colour_name(c) + ":" + std::to_string(k);
    }
    return s;
}

/// Parses "c:n,…". A bare count "n" is accepted for one-colour specs.
inline Profile parse_profile(const EndofunctorSpec& spec, std::string_view text)
{
    Cursor cur(text);
    std::vector<Colour> colours;
    auto read_ident = [&]() {
        std::string s;
        while (!cur.at_end() && std::isalnum(static_cast<unsigned char>(cur.peek()))) {
            s += cur.peek();
            cur.advance();
        }
        return s;
    };
    cur.skip_space();
    while (!cur.at_end()) {
        const std::string first = read_ident();
        if (first.empty()) {
            cur.fail("expected colour or count");
        }
        std::string colour;
        std::string count;
        if (cur.accept(":")) {
            colour = first;
            count = read_ident();
        } else if (spec.colour_count() == 1) {
            colour = spec.colour_name(0);
            count = first;
        } else {
            cur.fail("expected ':' after colour");
        }
        if (count.empty() || !std::all_of(count.begin(), count.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
            cur.fail_here("leaf count must be a non-negative integer");
        }
        const auto c = spec.find_colour(colour);
        if (!c) {
            cur.fail_here("unknown colour '" + colour + "'");
        }
        colours.insert(colours.end(), std::stoul(count), *c);
        cur.skip_space();
        if (!cur.accept(",")) {
            break;
        }
        cur.skip_space();
    }
    if (!cur.at_end()) {
        cur.fail("trailing input in profile");
    }
    return profile_of(std::move(colours));
}

/// Checks decorations against the spec: operations exist, arities match, and
/// each node's output and input edges have the colours its operation demands.
inline void validate_ptree(const EndofunctorSpec& spec, const PTree& t)
{
    for (Index e = 0; e < t.edge_count(); ++e) {
        if (t.edge_label(e) >= spec.colour_count()) {
            throw PfunctorError(PfunctorErrc::colour_mismatch, "edge " + std::to_string(e) + " has an unknown colour");
        }
    }
    for (Index n = 0; n < t.node_count(); ++n) {
        const OpId o = t.node_label(n);
        if (o >= spec.op_count()) {
            throw PfunctorError(PfunctorErrc::unknown_op, "node " + std::to_string(n) + " has an unknown operation");
        }
        const Op& op = spec.op(o);
        if (t.arity(n) != op.arity()) {
            throw PfunctorError(PfunctorErrc::arity_mismatch, "node " + std::to_string(n) + " has " + std::to_string(t.arity(n))
                                                                  + " inputs but '" + op.name + "' takes " + std::to_string(op.arity()));
        }
        if (t.edge_label(t.output(n)) != op.out) {
            throw PfunctorError(PfunctorErrc::colour_mismatch, "output of node " + std::to_string(n) + " has the wrong colour");
        }
        for (Index i = 0; i < op.arity(); ++i) {
            if (t.edge_label(t.inputs(n)[i]) != op.in[i]) {
                throw PfunctorError(PfunctorErrc::colour_mismatch, "input " + std::to_string(i) + " of node " + std::to_string(n)
                                                                       + " has the wrong colour");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline void print_edge(const EndofunctorSpec& spec, const PTree& t, Index e, std::string& out)
{
    const Index n = t.producer(e);
    if (n == npos) {
        out += '_';
        if (spec.colour_count() > 1) {
            out += spec.colour_name(t.edge_label(e));
        }
        return;
    }
    const Op& op = spec.op(t.node_label(n));
    out += '(';
    out += op.name;
    if (op.arity() > 0) {
        out += ':';
        for (Index i : t.inputs(n)) {
            print_edge(spec, t, i, out);
        }
    }
    out += ')';
}

struct Ast {
    bool leaf = true;
    std::string name;  // colour of a leaf or operation of a node; empty when omitted
    std::vector<Ast> children;
    std::size_t line = 1;
    std::size_t column = 1;
};

inline std::string read_identifier(Cursor& c)
{
    std::string s;
    while (!c.at_end() && std::isalnum(static_cast<unsigned char>(c.peek()))) {
        s += c.peek();
        c.advance();
    }
    return s;
}

inline Ast parse_ast(Cursor& c)
{
    c.skip_space();
    Ast a;
    a.line = c.line();
    a.column = c.column();
    if (c.accept("_")) {
        a.name = read_identifier(c);
        return a;
    }
    if (!c.accept("(")) {
        c.fail("expected '_' or '('");
    }
    a.leaf = false;
    c.skip_space();
    a.name = read_identifier(c);
    c.skip_space();
    const bool has_children = a.name.empty() || c.accept(":");
    if (has_children) {
        for (c.skip_space(); c.peek() != ')'; c.skip_space()) {
            if (c.at_end()) {
                c.fail("unterminated node");
            }
            a.children.push_back(parse_ast(c));
        }
    }
    c.skip_space();
    c.expect(")");
    return a;
}

class Resolver {
public:
    explicit Resolver(const EndofunctorSpec& spec) : spec_(spec) {}

    Index resolve(const Ast& a, std::optional<Colour> expected)
    {
        if (a.leaf) {
            Colour c = 0;
            if (!a.name.empty()) {
                const auto found = spec_.find_colour(a.name);
                if (!found) {
                    fail(PfunctorErrc::unknown_colour, a, "unknown colour '" + a.name + "'");
                }
                c = *found;
                if (expected && *expected != c) {
                    fail(PfunctorErrc::colour_mismatch, a, "leaf colour '" + a.name + "' does not fit its slot");
                }
            } else if (expected) {
                c = *expected;
            } else if (spec_.colour_count() == 1) {
                c = 0;
            } else {
                fail(PfunctorErrc::colour_mismatch, a, "root leaf needs an explicit colour");
            }
            return new_edge(c);
        }
        const OpId o = choose_op(a, expected);
        const Op& op = spec_.op(o);
        if (a.children.size() != op.arity()) {
            fail(PfunctorErrc::arity_mismatch, a, "'" + op.name + "' takes " + std::to_string(op.arity()) + " inputs, got "
                                                      + std::to_string(a.children.size()));
        }
        if (expected && *expected != op.out) {
            fail(PfunctorErrc::colour_mismatch, a, "'" + op.name + "' does not output the colour required here");
        }
        std::vector<Index> in;
        for (Index i = 0; i < a.children.size(); ++i) {
            in.push_back(resolve(a.children[i], op.in[i]));
        }
        const Index out = new_edge(op.out);
        inputs_.push_back(std::move(in));
        outputs_.push_back(out);
        nodes_.push_back(o);
        return out;
    }

    PTree build() const { return PTree::from_nodes(colours_.size(), inputs_, outputs_, colours_, nodes_).normalized(); }

private:
    Index new_edge(Colour c)
    {
        colours_.push_back(c);
        return colours_.size() - 1;
    }

    /// Colour a subtree must have regardless of context, when the text fixes it.
    std::optional<Colour> intrinsic(const Ast& a) const
    {
        if (a.name.empty()) {
            return std::nullopt;
        }
        if (a.leaf) {
            return spec_.find_colour(a.name);
        }
        const auto o = spec_.find_op(a.name);
        return o ? std::optional<Colour>(spec_.op(*o).out) : std::nullopt;
    }

    OpId choose_op(const Ast& a, std::optional<Colour> expected) const
    {
        if (!a.name.empty()) {
            const auto o = spec_.find_op(a.name);
            if (!o) {
                fail(PfunctorErrc::unknown_op, a, "unknown operation '" + a.name + "'");
            }
            return *o;
        }
        std::vector<OpId> candidates;
        for (OpId o = 0; o < spec_.op_count(); ++o) {
            const Op& op = spec_.op(o);
            if (op.arity() != a.children.size() || (expected && op.out != *expected)) {
                continue;
            }
            bool fits = true;
            for (Index i = 0; i < op.arity() && fits; ++i) {
                const auto c = intrinsic(a.children[i]);
                fits = !c || *c == op.in[i];
            }
            if (fits) {
                candidates.push_back(o);
            }
        }
        if (candidates.empty()) {
            fail(PfunctorErrc::unknown_op, a, "no operation of arity " + std::to_string(a.children.size()) + " fits here");
        }
        if (candidates.size() > 1) {
            fail(PfunctorErrc::ambiguous_op, a, "several operations of arity " + std::to_string(a.children.size())
                                                    + " fit here; name one explicitly");
        }
        return candidates.front();
    }

    [[noreturn]] static void fail(PfunctorErrc code, const Ast& a, const std::string& what)
    {
        throw PfunctorError(code, what + " at " + std::to_string(a.line) + ":" + std::to_string(a.column));
    }

    const EndofunctorSpec& spec_;
    std::vector<Colour> colours_;
    std::vector<std::vector<Index>> inputs_;
    std::vector<Index> outputs_;
    std::vector<OpId> nodes_;
};

} // namespace detail

inline constexpr std::string_view forest_separator = "\xC2\xB7";
inline constexpr std::string_view empty_forest = "\xCE\xB5";

/// `_colour?` for a leaf, `(op)` or `(op:children)` for a node. The leaf
/// colour is printed exactly when the spec has more than one colour.
inline std::string to_text(const EndofunctorSpec& spec, const PTree& t)
{
    if (t.roots().empty()) {
        return std::string(empty_forest);
    }
    std::string out;
    for (Index i = 0; i < t.roots().size(); ++i) {
        if (i > 0) {
            out += forest_separator;
        }
        detail::print_edge(spec, t, t.roots()[i], out);
    }
    return out;
}

/// Parses one P-tree. Besides the full grammar, an unnamed node `( … )` is
/// accepted when exactly one operation of that arity fits its position.
inline PTree parse_ptree(const EndofunctorSpec& spec, std::string_view text)
{
    Cursor c(text);
    const auto ast = detail::parse_ast(c);
    c.skip_space();
    if (!c.at_end()) {
        c.fail("trailing input after tree");
    }
    detail::Resolver r(spec);
    r.resolve(ast, std::nullopt);
    auto t = r.build();
    validate_ptree(spec, t);
    return t;
}

/// Parses trees joined by "·", or "ε" for the empty forest.
inline PTree parse_pforest_text(const EndofunctorSpec& spec, std::string_view text)
{
    Cursor c(text);
    detail::Resolver r(spec);
    c.skip_space();
    if (c.accept(empty_forest)) {
        c.skip_space();
        if (!c.at_end()) {
            c.fail("trailing input after empty forest");
        }
        return r.build();
    }
    do {
        r.resolve(detail::parse_ast(c), std::nullopt);
        c.skip_space();
    } while (c.accept(forest_separator));
    if (!c.at_end()) {
        c.fail("trailing input");
    }
    auto t = r.build();
    validate_ptree(spec, t);
    return t;
}

// ---------------------------------------------------------------------------
// Canonical keys and automorphisms

struct CanonResult {
    std::string key;
    mpz_class aut;
};

namespace detail {

/// Key and automorphism order of a node over children with known classes.
inline CanonResult combine(const EndofunctorSpec& spec, OpId o, const std::vector<const CanonResult*>& child)
{
    const Op& op = spec.op(o);
    mpz_class aut = 1;
    for (const auto* c : child) {
        aut *= c->aut;
    }
    std::vector<const std::string*> best;
    std::size_t stabiliser = 0;
    if (spec.is_full_symmetric(o)) {
        for (const auto* c : child) {
            best.push_back(&c->key);
        }
        std::sort(best.begin(), best.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
        stabiliser = 1;
        for (std::size_t i = 0, run = 1; i < best.size(); ++i) {
            run = (i > 0 && *best[i] == *best[i - 1]) ? run + 1 : 1;
            stabiliser *= run;
        }
    } else {
        auto less = [](const std::vector<const std::string*>& a, const std::vector<const std::string*>& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                [](const std::string* x, const std::string* y) { return *x < *y; });
        };
        std::vector<const std::string*> seq(child.size());
        for (const Perm& g : spec.group(o)) {
            bool fixes = true;
            for (std::size_t i = 0; i < child.size(); ++i) {
                seq[i] = &child[g[i]]->key;
                fixes = fixes && *seq[i] == child[i]->key;
            }
            stabiliser += fixes ? 1 : 0;
            if (best.empty() || less(seq, best)) {
                best = seq;
            }
        }
    }
    aut *= static_cast<unsigned long>(stabiliser);
    std::string k = "(" + op.name;
    if (op.arity() > 0) {
        k += ':';
        for (const auto* s : best) {
            k += *s;
        }
    }
    k += ')';
    return {std::move(k), aut};
}

inline std::string leaf_key(const EndofunctorSpec& spec, Colour c)
{
    return spec.colour_count() > 1 ? "_" + spec.colour_name(c) : std::string("_");
}

inline CanonResult canon_edge(const EndofunctorSpec& spec, const PTree& t, Index e)
{
    const Index n = t.producer(e);
    if (n == npos) {
        return {leaf_key(spec, t.edge_label(e)), 1};
    }
    std::vector<CanonResult> child;
    child.reserve(t.arity(n));
    for (Index i : t.inputs(n)) {
        child.push_back(canon_edge(spec, t, i));
    }
    std::vector<const CanonResult*> ptrs;
    for (const auto& c : child) {
        ptrs.push_back(&c);
    }
    return combine(spec, t.node_label(n), ptrs);
}

} // namespace detail

/// Canonical key and automorphism order of the tree rooted at edge e. The key
/// is the text of the representative whose children at every node form the
/// least key sequence over the operation's symmetry group. |Aut| is the
/// product over nodes of the number of symmetries fixing the child classes.
inline CanonResult canon_at(const EndofunctorSpec& spec, const PTree& t, Index e) { return detail::canon_edge(spec, t, e); }

inline std::string canon(const EndofunctorSpec& spec, const PTree& t) { return canon_at(spec, t, t.root()).key; }
inline mpz_class aut_order(const EndofunctorSpec& spec, const PTree& t) { return canon_at(spec, t, t.root()).aut; }
inline bool isomorphic(const EndofunctorSpec& spec, const PTree& a, const PTree& b) { return canon(spec, a) == canon(spec, b); }

inline Profile leaf_profile(const PTree& t)
{
    std::vector<Colour> cs;
    for (Index e : t.leaves()) {
        cs.push_back(t.edge_label(e));
    }
    return profile_of(std::move(cs));
}

inline Profile root_profile(const PTree& t)
{
    std::vector<Colour> cs;
    for (Index e : t.roots()) {
        cs.push_back(t.edge_label(e));
    }
    return profile_of(std::move(cs));
}

inline Colour root_colour(const PTree& t) { return t.edge_label(t.root()); }

/// Everything the algebra needs to know about one isomorphism class.
struct TreeInfo {
    std::string key;
    PTree tree;  // the canonical representative, parsed back from the key
    std::size_t edges = 0;
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    Colour root = 0;
    Profile leaf_profile;
    mpz_class aut;

    bool trivial() const noexcept { return nodes == 0; }
};

inline TreeInfo make_info(const EndofunctorSpec& spec, const PTree& t)
{
    auto c = canon_at(spec, t, t.root());
    TreeInfo info;
    info.tree = parse_ptree(spec, c.key);
    info.key = std::move(c.key);
    info.aut = std::move(c.aut);
    info.edges = t.edge_count();
    info.nodes = t.node_count();
    info.leaves = t.leaf_count();
    info.root = root_colour(t);
    info.leaf_profile = leaf_profile(t);
    return info;
}

/// Memo from canonical keys to class data for one spec. Lookups are guarded
/// by a mutex so that parallel workers can share one catalogue.
class Catalog {
public:
    explicit Catalog(EndofunctorSpec spec) : spec_(std::make_shared<const EndofunctorSpec>(std::move(spec))) {}

    const EndofunctorSpec& spec() const noexcept { return *spec_; }

    /// Class data of a tree in any representation.
    std::shared_ptr<const TreeInfo> classify(const PTree& t) const
    {
        auto c = canon_at(*spec_, t, t.root());
        if (auto hit = find(c.key)) {
            return hit;
        }
        return insert(std::make_shared<const TreeInfo>(make_info(*spec_, t)));
    }

    /// Class data from a canonical key (or any parseable tree text).
    std::shared_ptr<const TreeInfo> info(const std::string& key) const
    {
        if (auto hit = find(key)) {
            return hit;
        }
        auto t = parse_ptree(*spec_, key);
        auto made = std::make_shared<const TreeInfo>(make_info(*spec_, t));
        if (made->key != key) {
            // Non-canonical text: index under the canonical key only.
            return classify(t);
        }
        return insert(std::move(made));
    }

    std::shared_ptr<const TreeInfo> trivial(Colour c) const
    {
        return classify(PTree::trivial(c));
    }

private:
    std::shared_ptr<const TreeInfo> find(const std::string& key) const
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        return it == memo_.end() ? nullptr : it->second;
    }

    std::shared_ptr<const TreeInfo> insert(std::shared_ptr<const TreeInfo> info) const
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = memo_.emplace(info->key, info);
        return it->second;
    }

    std::shared_ptr<const EndofunctorSpec> spec_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, std::shared_ptr<const TreeInfo>> memo_;
};

} // namespace fdb::pfunctor
