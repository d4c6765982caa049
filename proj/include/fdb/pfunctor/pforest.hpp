#pragma once

#include <fdb/pfunctor/ptree.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace fdb::pfunctor {

/// A forest monomial: a multiset of tree classes, kept as canonical keys in
/// increasing order with positive multiplicities.
struct PForest {
    std::vector<std::pair<std::string, std::size_t>> parts;

    PForest() = default;

    static PForest single(std::string key) { return from_keys({std::move(key)}); }

    static PForest from_keys(std::vector<std::string> keys)
    {
        std::sort(keys.begin(), keys.end());
        PForest f;
        for (auto& k : keys) {
            if (!f.parts.empty() && f.parts.back().first == k) {
                ++f.parts.back().second;
            } else {
                f.parts.emplace_back(std::move(k), 1);
            }
        }
        return f;
    }

    bool empty() const noexcept { return parts.empty(); }

    std::size_t tree_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto& [k, m] : parts) {
            n += m;
        }
        return n;
    }

    /// Keys with repetition, in order.
    std::vector<std::string> keys() const
    {
        std::vector<std::string> r;
        for (const auto& [k, m] : parts) {
            r.insert(r.end(), m, k);
        }
        return r;
    }

    std::size_t multiplicity(const std::string& key) const
    {
        auto it = std::lower_bound(parts.begin(), parts.end(), key, [](const auto& p, const std::string& k) { return p.first < k; });
        return it != parts.end() && it->first == key ? it->second : 0;
    }

    friend bool operator==(const PForest&, const PForest&) = default;
    friend auto operator<=>(const PForest&, const PForest&) = default;
};

/// Multiset union: the product of monomials.
inline PForest multiply(const PForest& a, const PForest& b)
{
    PForest r;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.parts.size() || j < b.parts.size()) {
        if (j == b.parts.size() || (i < a.parts.size() && a.parts[i].first < b.parts[j].first)) {
            r.parts.push_back(a.parts[i++]);
        } else if (i == a.parts.size() || b.parts[j].first < a.parts[i].first) {
            r.parts.push_back(b.parts[j++]);
        } else {
            r.parts.emplace_back(a.parts[i].first, a.parts[i].second + b.parts[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

inline PForest forest_of_tree(const Catalog& cat, const PTree& f)
{
    std::vector<std::string> keys;
    for (Index r : f.roots()) {
        keys.push_back(canon_at(cat.spec(), f, r).key);
    }
    return PForest::from_keys(std::move(keys));
}

/// |Aut F| = ∏ m_j! · ∏ |Aut T_j|^{m_j}.
inline mpz_class aut_order_forest(const Catalog& cat, const PForest& f)
{
    mpz_class r = 1;
    for (const auto& [k, m] : f.parts) {
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), m);
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), cat.info(k)->aut.get_mpz_t(), m);
        r *= fact * p;
    }
    return r;
}

inline Profile root_profile(const Catalog& cat, const PForest& f)
{
    std::vector<Colour> cs;
    for (const auto& [k, m] : f.parts) {
        cs.insert(cs.end(), m, cat.info(k)->root);
    }
    return profile_of(std::move(cs));
}

inline Profile leaf_profile(const Catalog& cat, const PForest& f)
{
    std::vector<Colour> cs;
    for (const auto& [k, m] : f.parts) {
        for (const auto& [c, n] : cat.info(k)->leaf_profile) {
            cs.insert(cs.end(), n * m, c);
        }
    }
    return profile_of(std::move(cs));
}

inline std::size_t forest_edges(const Catalog& cat, const PForest& f)
{
    std::size_t n = 0;
    for (const auto& [k, m] : f.parts) {
        n += m * cat.info(k)->edges;
    }
    return n;
}

inline std::size_t forest_nodes(const Catalog& cat, const PForest& f)
{
    std::size_t n = 0;
    for (const auto& [k, m] : f.parts) {
        n += m * cat.info(k)->nodes;
    }
    return n;
}

/// The key alone determines the size: one '(' per node, one '_' per leaf.
inline std::size_t key_nodes(const std::string& key) { return static_cast<std::size_t>(std::count(key.begin(), key.end(), '(')); }
inline std::size_t key_edges(const std::string& key)
{
    return key_nodes(key) + static_cast<std::size_t>(std::count(key.begin(), key.end(), '_'));
}

inline std::size_t forest_key_edges(const PForest& f)
{
    std::size_t n = 0;
    for (const auto& [k, m] : f.parts) {
        n += m * key_edges(k);
    }
    return n;
}

inline std::size_t forest_key_nodes(const PForest& f)
{
    std::size_t n = 0;
    for (const auto& [k, m] : f.parts) {
        n += m * key_nodes(k);
    }
    return n;
}

/// Trees joined by "·" in key order, "ε" when empty.
inline std::string to_text(const PForest& f)
{
    if (f.empty()) {
        return std::string(empty_forest);
    }
    std::string s;
    for (const auto& k : f.keys()) {
        if (!s.empty()) {
            s += forest_separator;
        }
        s += k;
    }
    return s;
}

inline PForest parse_pforest(const Catalog& cat, std::string_view text)
{
    return forest_of_tree(cat, parse_pforest_text(cat.spec(), text));
}

/// A concrete forest diagram realising the monomial: the canonical trees in
/// key order, numbered so that roots appear in that order.
inline PTree forest_diagram(const Catalog& cat, const PForest& f)
{
    std::vector<PTree> parts;
    for (const auto& k : f.keys()) {
        parts.push_back(cat.info(k)->tree);
    }
    return trees::forest_of(parts);
}

} // namespace fdb::pfunctor
