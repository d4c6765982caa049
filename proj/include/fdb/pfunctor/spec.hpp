#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdb::pfunctor {

enum class PfunctorErrc {
    unknown_builtin,
    invalid_spec,
    unknown_colour,
    unknown_op,
    ambiguous_op,
    arity_mismatch,
    colour_mismatch,
};

inline const char* errc_name(PfunctorErrc c)
{
    switch (c) {
    case PfunctorErrc::unknown_builtin: return "UnknownBuiltin";
    case PfunctorErrc::invalid_spec: return "InvalidSpec";
    case PfunctorErrc::unknown_colour: return "UnknownColour";
    case PfunctorErrc::unknown_op: return "UnknownOp";
    case PfunctorErrc::ambiguous_op: return "AmbiguousOp";
    case PfunctorErrc::arity_mismatch: return "ArityMismatch";
    case PfunctorErrc::colour_mismatch: return "ColourMismatch";
    }
    return "PfunctorError";
}

class PfunctorError : public std::runtime_error {
public:
    PfunctorError(PfunctorErrc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }
    PfunctorErrc code() const noexcept { return code_; }

private:
    PfunctorErrc code_;
};

using Colour = std::size_t;
using OpId = std::size_t;

/// perm[i] is the image of input position i.
using Perm = std::vector<std::size_t>;

inline Perm identity_perm(std::size_t n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// (a∘b)(i) = a(b(i)).
inline Perm compose(const Perm& a, const Perm& b)
{
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        c[i] = a[b[i]];
    }
    return c;
}

inline bool is_permutation_of(const Perm& p, std::size_t n)
{
    if (p.size() != n) {
        return false;
    }
    std::vector<bool> seen(n, false);
    for (std::size_t x : p) {
        if (x >= n || seen[x]) {
            return false;
        }
        seen[x] = true;
    }
    return true;
}

/// All elements of the subgroup generated by `gens`, in sorted order.
inline std::vector<Perm> closure(const std::vector<Perm>& gens, std::size_t n)
{
    std::set<Perm> seen = {identity_perm(n)};
    std::vector<Perm> frontier = {identity_perm(n)};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& p : frontier) {
            for (const auto& g : gens) {
                auto q = compose(g, p);
                if (seen.insert(q).second) {
                    next.push_back(std::move(q));
                }
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// One operation type b ∈ B: its output colour t(b), its ordered input colours
/// (the fibre E_b), and its symmetry group Aut(b) acting on input positions.
struct Op {
    std::string name;
    Colour out = 0;
    std::vector<Colour> in;
    std::vector<Perm> sym;

    std::size_t arity() const noexcept { return in.size(); }
};

/// A polynomial endofunctor I <- E -> B -> I with discrete I, given by a list
/// of colours and a list of operations. Symmetry closures are computed once.
class EndofunctorSpec {
public:
    EndofunctorSpec() = default;

    EndofunctorSpec(std::string name, std::vector<std::string> colours, std::vector<Op> ops,
                    std::optional<std::size_t> max_arity = std::nullopt)
        : name_(std::move(name)), colours_(std::move(colours)), ops_(std::move(ops)), max_arity_(max_arity)
    {
        if (colours_.empty()) {
            throw PfunctorError(PfunctorErrc::invalid_spec, "a spec needs at least one colour");
        }
        for (std::size_t c = 0; c < colours_.size(); ++c) {
            check_identifier(colours_[c], "colour");
            if (!colour_index_.emplace(colours_[c], c).second) {
                throw PfunctorError(PfunctorErrc::invalid_spec, "duplicate colour '" + colours_[c] + "'");
            }
        }
        for (OpId o = 0; o < ops_.size(); ++o) {
            const auto& op = ops_[o];
            check_identifier(op.name, "operation");
            if (!op_index_.emplace(op.name, o).second) {
                throw PfunctorError(PfunctorErrc::invalid_spec, "duplicate operation '" + op.name + "'");
            }
            if (op.out >= colours_.size()) {
                throw PfunctorError(PfunctorErrc::invalid_spec, "operation '" + op.name + "' has an unknown output colour");
            }
            for (Colour c : op.in) {
                if (c >= colours_.size()) {
                    throw PfunctorError(PfunctorErrc::invalid_spec, "operation '" + op.name + "' has an unknown input colour");
                }
            }
            for (const auto& g : op.sym) {
                if (!is_permutation_of(g, op.arity())) {
                    throw PfunctorError(PfunctorErrc::invalid_spec, "symmetry of '" + op.name + "' is not a permutation of its inputs");
                }
                for (std::size_t i = 0; i < op.arity(); ++i) {
                    if (op.in[g[i]] != op.in[i]) {
                        throw PfunctorError(PfunctorErrc::invalid_spec, "symmetry of '" + op.name + "' does not preserve input colours");
                    }
                }
            }
            groups_.push_back(closure(op.sym, op.arity()));
            std::size_t fact = 1;
            for (std::size_t k = 2; k <= op.arity(); ++k) {
                fact *= k;
            }
            full_symmetric_.push_back(groups_.back().size() == fact);
        }
    }

    const std::string& name() const noexcept { return name_; }
    std::optional<std::size_t> max_arity() const noexcept { return max_arity_; }
    const std::vector<std::string>& colours() const noexcept { return colours_; }
    std::size_t colour_count() const noexcept { return colours_.size(); }
    const std::string& colour_name(Colour c) const { return colours_.at(c); }
    const std::vector<Op>& ops() const noexcept { return ops_; }
    const Op& op(OpId o) const { return ops_.at(o); }
    std::size_t op_count() const noexcept { return ops_.size(); }

    /// Elements of Aut(b), sorted, identity first.
    const std::vector<Perm>& group(OpId o) const { return groups_.at(o); }
    std::size_t group_order(OpId o) const { return groups_.at(o).size(); }
    /// True when Aut(b) is all of S_arity (then all inputs share a colour).
    bool is_full_symmetric(OpId o) const { return full_symmetric_.at(o); }

    std::optional<Colour> find_colour(const std::string& name) const
    {
        auto it = colour_index_.find(name);
        return it == colour_index_.end() ? std::nullopt : std::optional<Colour>(it->second);
    }

    Colour colour(const std::string& name) const
    {
        auto c = find_colour(name);
        if (!c) {
            throw PfunctorError(PfunctorErrc::unknown_colour, "unknown colour '" + name + "'");
        }
        return *c;
    }

    std::optional<OpId> find_op(const std::string& name) const
    {
        auto it = op_index_.find(name);
        return it == op_index_.end() ? std::nullopt : std::optional<OpId>(it->second);
    }

    bool has_nullary_ops() const
    {
        return std::any_of(ops_.begin(), ops_.end(), [](const Op& op) { return op.arity() == 0; });
    }

    std::size_t largest_arity() const
    {
        std::size_t m = 0;
        for (const auto& op : ops_) {
            m = std::max(m, op.arity());
        }
        return m;
    }

private:
    static void check_identifier(const std::string& s, const char* what)
    {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) != 0; })) {
            throw PfunctorError(PfunctorErrc::invalid_spec, std::string(what) + " names must be non-empty and alphanumeric: '" + s + "'");
        }
    }

    std::string name_;
    std::vector<std::string> colours_;
    std::vector<Op> ops_;
    std::optional<std::size_t> max_arity_;
    std::map<std::string, Colour> colour_index_;
    std::map<std::string, OpId> op_index_;
    std::vector<std::vector<Perm>> groups_;
    std::vector<bool> full_symmetric_;
};

// ---------------------------------------------------------------------------
// Builtins

inline std::vector<Perm> symmetric_generators(std::size_t n)
{
    if (n < 2) {
        return {};
    }
    Perm swap = identity_perm(n);
    std::swap(swap[0], swap[1]);
    Perm cycle(n);
    for (std::size_t i = 0; i < n; ++i) {
        cycle[i] = (i + 1) % n;
    }
    return n == 2 ? std::vector<Perm>{swap} : std::vector<Perm>{swap, cycle};
}

inline std::vector<Perm> cyclic_generators(std::size_t n)
{
    if (n < 2) {
        return {};
    }
    Perm cycle(n);
    for (std::size_t i = 0; i < n; ++i) {
        cycle[i] = (i + 1) % n;
    }
    return {cycle};
}

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names = {"exp",    "naked",    "effective", "stable",   "planar", "cyclic",
                                                   "binary", "identity", "linear",    "constant", "injections", "trivial"};
    return names;
}

inline bool builtin_takes_arity(const std::string& name)
{
    return name == "exp" || name == "naked" || name == "effective" || name == "stable" || name == "planar" || name == "cyclic";
}

inline constexpr std::size_t default_max_arity = 3;

/// The example endofunctors, on the single colour "v". Unbounded families
/// keep operations of arity up to `max_arity`.
inline EndofunctorSpec builtin(const std::string& name, std::size_t max_arity = default_max_arity)
{
    const std::vector<std::string> v = {"v"};
    auto family = [&](const std::string& prefix, std::size_t from, auto gens) {
        std::vector<Op> ops;
        for (std::size_t k = from; k <= max_arity; ++k) {
            ops.push_back(Op{prefix + std::to_string(k), 0, std::vector<Colour>(k, 0), gens(k)});
        }
        return ops;
    };
    auto none = [](std::size_t) { return std::vector<Perm>{}; };
    const std::string bounded = "(" + std::to_string(max_arity) + ")";
    if (name == "exp" || name == "naked") {
        return {"exp" + bounded, v, family("e", 0, symmetric_generators), max_arity};
    }
    if (name == "effective") {
        return {"effective" + bounded, v, family("e", 1, symmetric_generators), max_arity};
    }
    if (name == "stable") {
        return {"stable" + bounded, v, family("e", 2, symmetric_generators), max_arity};
    }
    if (name == "planar") {
        return {"planar" + bounded, v, family("p", 0, none), max_arity};
    }
    if (name == "cyclic") {
        return {"cyclic" + bounded, v, family("c", 0, cyclic_generators), max_arity};
    }
    if (name == "binary") {
        return {"binary", v, {Op{"b", 0, {0, 0}, {}}}};
    }
    if (name == "identity" || name == "linear") {
        return {"identity", v, {Op{"u", 0, {0}, {}}}};
    }
    if (name == "constant" || name == "injections") {
        return {"constant", v, {Op{"y", 0, {}, {}}}};
    }
    if (name == "trivial") {
        return {"trivial", v, {}};
    }
    throw PfunctorError(PfunctorErrc::unknown_builtin, "unknown builtin endofunctor '" + name + "'");
}

/// Two colours a and b with binary operations of each output colour:
/// f: a <- (a, b) rigid, g: b <- (b, b) symmetric, h: a <- (a, a) symmetric.
inline EndofunctorSpec two_colour_binary()
{
    return {"bicoloured", {"a", "b"},
            {Op{"f", 0, {0, 1}, {}}, Op{"g", 1, {1, 1}, {{1, 0}}}, Op{"h", 0, {0, 0}, {{1, 0}}}}};
}

} // namespace fdb::pfunctor
