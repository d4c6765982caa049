#pragma once

#include <fdb/enumerate/enumerate.hpp>
#include <fdb/pfunctor/pforest.hpp>
#include <fdb/rational.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace fdb::bialgebra {

using enumerate::Bound;
using pfunctor::Catalog;
using pfunctor::Colour;
using pfunctor::PForest;
using pfunctor::Profile;

enum class BialgebraErrc {
    bound_mismatch,
    nullary_ops_present,
};

inline const char* errc_name(BialgebraErrc c)
{
    switch (c) {
    case BialgebraErrc::bound_mismatch: return "BoundMismatch";
    case BialgebraErrc::nullary_ops_present: return "NullaryOpsPresent";
    }
    return "BialgebraError";
}

class BialgebraError : public std::runtime_error {
public:
    BialgebraError(BialgebraErrc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }
    BialgebraErrc code() const noexcept { return code_; }

private:
    BialgebraErrc code_;
};

inline bool within(const Bound& b, const PForest& f) { return b.admits(pfunctor::forest_key_edges(f), pfunctor::forest_key_nodes(f)); }

/// Finitely supported Σ c_F δ_F over forest monomials, truncated to a bound.
/// Zero coefficients are never stored.
class Series {
public:
    using Terms = std::map<PForest, Rational>;

    explicit Series(Bound bound) : bound_(bound) {}

    const Bound& bound() const noexcept { return bound_; }
    const Terms& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Adds c·δ_F; monomials outside the bound are dropped.
    void add(const PForest& f, const Rational& c)
    {
        if (c == 0 || !within(bound_, f)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Rational coefficient(const PForest& f) const
    {
        auto it = terms_.find(f);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    friend bool operator==(const Series& a, const Series& b) { return a.bound_ == b.bound_ && a.terms_ == b.terms_; }

private:
    Bound bound_;
    Terms terms_;
};

inline void require_same_bound(const Series& a, const Series& b)
{
    if (!(a.bound() == b.bound())) {
        throw BialgebraError(BialgebraErrc::bound_mismatch, "series have different truncation bounds");
    }
}

inline Series operator+(const Series& a, const Series& b)
{
    require_same_bound(a, b);
    Series r = a;
    for (const auto& [f, c] : b.terms()) {
        r.add(f, c);
    }
    return r;
}

inline Series scale(const Series& a, const Rational& c)
{
    Series r(a.bound());
    for (const auto& [f, x] : a.terms()) {
        r.add(f, x * c);
    }
    return r;
}

/// Truncated convolution on forest monomials.
inline Series series_mul(const Series& a, const Series& b)
{
    require_same_bound(a, b);
    Series r(a.bound());
    for (const auto& [f, x] : a.terms()) {
        for (const auto& [g, y] : b.terms()) {
            r.add(multiply(f, g), x * y);
        }
    }
    return r;
}

inline Series series_one(const Bound& b)
{
    Series r(b);
    r.add(PForest{}, 1);
    return r;
}

/// True when every part of `sub` occurs in `whole` at least as often.
inline bool divides(const PForest& sub, const PForest& whole)
{
    for (const auto& [k, m] : sub.parts) {
        if (whole.multiplicity(k) < m) {
            return false;
        }
    }
    return true;
}

/// Product of two series keeping only monomials that divide `support`;
/// the global truncation is bypassed, so the coefficient of `support`
/// itself is exact.
inline Series series_mul_within(const Series& a, const Series& b, const PForest& support)
{
    Series r(a.bound());
    for (const auto& [f, x] : a.terms()) {
        for (const auto& [g, y] : b.terms()) {
            auto fg = multiply(f, g);
            if (divides(fg, support)) {
                r.add(fg, x * y);
            }
        }
    }
    return r;
}

/// G^n = ∏_v G_v^{n_v}. With a support monomial, only its divisors are kept;
/// the result then carries the bound of the inputs but is exact on `support`.
inline Series series_pow_profile(const std::map<Colour, Series>& green_by_colour, const Profile& n, const Bound& bound,
                                 const PForest* support = nullptr)
{
    Series acc = series_one(bound);
    for (const auto& [v, k] : n) {
        auto it = green_by_colour.find(v);
        if (it == green_by_colour.end()) {
            return Series(bound);
        }
        if (!support) {
            require_same_bound(acc, it->second);
        }
        for (std::size_t i = 0; i < k; ++i) {
            acc = support ? series_mul_within(acc, it->second, *support) : series_mul(acc, it->second);
        }
    }
    return acc;
}

/// Σ c δ_P ⊗ δ_S. An optional per-side bound truncates both factors.
class TensorSeries {
public:
    using Key = std::pair<PForest, PForest>;
    using Terms = std::map<Key, Rational>;

    TensorSeries() = default;
    explicit TensorSeries(std::optional<Bound> side_bound) : side_(side_bound) {}

    const Terms& terms() const noexcept { return terms_; }
    const std::optional<Bound>& side_bound() const noexcept { return side_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add(const PForest& left, const PForest& right, const Rational& c)
    {
        if (c == 0 || (side_ && (!within(*side_, left) || !within(*side_, right)))) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    void add_all(const TensorSeries& t, const Rational& scale = 1)
    {
        for (const auto& [k, c] : t.terms()) {
            add(k.first, k.second, c * scale);
        }
    }

    Rational coefficient(const PForest& left, const PForest& right) const
    {
        auto it = terms_.find(Key{left, right});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    friend bool operator==(const TensorSeries& a, const TensorSeries& b) { return a.terms_ == b.terms_; }

private:
    std::optional<Bound> side_;
    Terms terms_;
};

/// (a ⊗ b)(c ⊗ d) = ac ⊗ bd, extended bilinearly.
inline TensorSeries tensor_mul(const TensorSeries& x, const TensorSeries& y)
{
    TensorSeries r(x.side_bound());
    for (const auto& [k1, c1] : x.terms()) {
        for (const auto& [k2, c2] : y.terms()) {
            r.add(multiply(k1.first, k2.first), multiply(k1.second, k2.second), c1 * c2);
        }
    }
    return r;
}

inline std::string coefficient_prefix(const Rational& c)
{
    if (c == 1) {
        return "";
    }
    return (c.get_den() == 1 ? c.get_num().get_str() : fdb::to_string(c)) + " ";
}

/// "δ[F]" for a monomial and "1" for the empty forest.
inline std::string monomial_text(const PForest& f) { return f.empty() ? std::string("1") : "\xCE\xB4[" + pfunctor::to_text(f) + "]"; }

inline std::string to_string(const Series& s)
{
    if (s.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [f, c] : s.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += coefficient_prefix(c) + monomial_text(f);
    }
    return out;
}

inline std::string to_string(const TensorSeries& t)
{
    if (t.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [k, c] : t.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += coefficient_prefix(c) + monomial_text(k.first) + " \xE2\x8A\x97 " + monomial_text(k.second);
    }
    return out;
}

} // namespace fdb::bialgebra
