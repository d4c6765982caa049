#pragma once

#include <fdb/rational.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fdb::bialgebra {

/// A partition type {k: λ_k}: λ_k blocks of size k. Read as a monomial it is
/// ∏ X_k^{λ_k} in whichever generators X is in use.
using PartitionType = std::map<std::size_t, std::size_t>;

inline std::size_t type_size(const PartitionType& t)
{
    std::size_t n = 0;
    for (const auto& [k, l] : t) {
        n += k * l;
    }
    return n;
}

inline std::size_t type_blocks(const PartitionType& t)
{
    std::size_t b = 0;
    for (const auto& [k, l] : t) {
        b += l;
    }
    return b;
}

/// deg(∏ a_k^{λ_k}) = Σ λ_k (k - 1).
inline std::size_t type_degree(const PartitionType& t) { return type_size(t) - type_blocks(t); }

/// "a1^3·a2" style text over a generator name; "1" for the empty monomial.
inline std::string type_text(const PartitionType& t, const std::string& gen = "a")
{
    if (t.empty()) {
        return "1";
    }
    std::string s;
    for (const auto& [k, l] : t) {
        if (!s.empty()) {
            s += "\xC2\xB7";
        }
        s += gen + std::to_string(k);
        if (l > 1) {
            s += "^" + std::to_string(l);
        }
    }
    return s;
}

/// Every set partition of {0..n-1}, as restricted growth strings.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> rg(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
        if (i == n) {
            out.push_back(rg);
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            rg[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0) {
        out.push_back({});
        return out;
    }
    rec(rec, 0, 0);
    return out;
}

inline PartitionType type_of(const std::vector<std::size_t>& rg)
{
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t b : rg) {
        ++sizes[b];
    }
    PartitionType t;
    for (const auto& [b, k] : sizes) {
        ++t[k];
    }
    return t;
}

/// Δ(A_n) for the class A_n of the connected surjection n ↠ 1: the sum over
/// set partitions of the n-set, grouped by type λ, of ∏ A_k^{λ_k} ⊗ A_{|λ|}.
/// Returns the multiplicity of each type, counted by brute force.
inline std::map<PartitionType, std::size_t> surjection_delta(std::size_t n)
{
    std::map<PartitionType, std::size_t> r;
    for (const auto& rg : set_partitions(n)) {
        ++r[type_of(rg)];
    }
    return r;
}

/// n! / ∏ ((k!)^{λ_k} λ_k!).
inline Rational partition_count_closed_form(const PartitionType& t)
{
    Rational r = factorial(static_cast<unsigned>(type_size(t)));
    for (const auto& [k, l] : t) {
        Rational d = factorial(static_cast<unsigned>(l));
        for (std::size_t i = 0; i < l; ++i) {
            d *= factorial(static_cast<unsigned>(k));
        }
        r /= d;
    }
    return r;
}

/// Polynomials in the generators a_k, truncated by total size Σ k λ_k.
using ClassicalPoly = std::map<PartitionType, Rational>;

inline void add_to(ClassicalPoly& p, const PartitionType& t, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = p.try_emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            p.erase(it);
        }
    }
}

inline PartitionType type_mul(PartitionType a, const PartitionType& b)
{
    for (const auto& [k, l] : b) {
        a[k] += l;
    }
    return a;
}

inline ClassicalPoly poly_mul(const ClassicalPoly& a, const ClassicalPoly& b, std::size_t max_size)
{
    ClassicalPoly r;
    for (const auto& [s, x] : a) {
        for (const auto& [t, y] : b) {
            if (type_size(s) + type_size(t) <= max_size) {
                add_to(r, type_mul(s, t), x * y);
            }
        }
    }
    return r;
}

/// Δ in the a-basis: keys are (monomial of the left factor, index k of a_k).
using ClassicalTensor = std::map<std::pair<PartitionType, std::size_t>, Rational>;

/// Δ(a_n) with a_n = A_n / n!: each A-term λ ⊗ A_b becomes
/// (count(λ) ∏ (k!)^{λ_k} · b! / n!) ∏ a_k^{λ_k} ⊗ a_b.
inline ClassicalTensor delta_a(std::size_t n)
{
    ClassicalTensor r;
    for (const auto& [t, count] : surjection_delta(n)) {
        Rational c(static_cast<unsigned long>(count));
        for (const auto& [k, l] : t) {
            for (std::size_t i = 0; i < l; ++i) {
                c *= factorial(static_cast<unsigned>(k));
            }
        }
        const std::size_t b = type_blocks(t);
        c *= factorial(static_cast<unsigned>(b));
        c /= factorial(static_cast<unsigned>(n));
        r[{t, b}] += c;
    }
    return r;
}

struct ClassicalTerm {
    PartitionType left;
    std::size_t k = 0;
    Rational lhs;
    Rational rhs;
    bool pass = false;
};

struct MultiplicityCheck {
    PartitionType type;
    std::size_t brute = 0;
    Rational closed;
    bool pass = false;
};

struct ClassicalReport {
    std::size_t max_degree = 0;
    std::vector<ClassicalTerm> terms;
    std::vector<MultiplicityCheck> multiplicities;
    std::size_t grading_violations = 0;
    std::size_t failed = 0;

    bool ok() const noexcept { return failed == 0; }
};

/// Checks Δ(A) = Σ_k A^k ⊗ a_k for A = Σ a_n on every term of degree at most
/// max_degree. Terms of Δ(a_n) all have degree n - 1, so n runs to
/// max_degree + 1. The left side comes from set partitions; the right side
/// from expanding powers of A. Partition multiplicities are also compared
/// with their closed form.
inline ClassicalReport classical_verify(std::size_t max_degree)
{
    ClassicalReport rep;
    rep.max_degree = max_degree;
    const std::size_t max_n = max_degree + 1;
    ClassicalTensor lhs;
    for (std::size_t n = 1; n <= max_n; ++n) {
        for (const auto& [t, count] : surjection_delta(n)) {
            MultiplicityCheck m{t, count, partition_count_closed_form(t), false};
            m.pass = m.closed == Rational(static_cast<unsigned long>(count));
            rep.multiplicities.push_back(m);
            if (type_degree(t) + (type_blocks(t) - 1) != n - 1) {
                ++rep.grading_violations;
            }
        }
        for (const auto& [key, c] : delta_a(n)) {
            lhs[key] += c;
        }
    }
    ClassicalPoly a;
    for (std::size_t n = 1; n <= max_n; ++n) {
        a[{{n, 1}}] = 1;
    }
    ClassicalTensor rhs;
    ClassicalPoly power = {{PartitionType{}, 1}};
    for (std::size_t k = 1; k <= max_n; ++k) {
        power = poly_mul(power, a, max_n);
        for (const auto& [t, c] : power) {
            if (type_degree(t) + (k - 1) <= max_degree) {
                rhs[{t, k}] += c;
            }
        }
    }
    std::map<std::pair<PartitionType, std::size_t>, std::pair<Rational, Rational>> both;
    for (const auto& [key, c] : lhs) {
        both[key].first = c;
    }
    for (const auto& [key, c] : rhs) {
        both[key].second = c;
    }
    for (const auto& [key, v] : both) {
        ClassicalTerm t{key.first, key.second, v.first, v.second, v.first == v.second};
        rep.terms.push_back(t);
    }
    rep.failed = static_cast<std::size_t>(std::count_if(rep.terms.begin(), rep.terms.end(), [](const auto& t) { return !t.pass; }))
                 + static_cast<std::size_t>(std::count_if(rep.multiplicities.begin(), rep.multiplicities.end(),
                                                          [](const auto& m) { return !m.pass; }))
                 + rep.grading_violations;
    return rep;
}

} // namespace fdb::bialgebra
