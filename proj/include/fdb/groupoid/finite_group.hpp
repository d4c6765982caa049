#pragma once

#include <fdb/groupoid/error.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace fdb::groupoid {

/// A finite group given extensionally by its multiplication table on the
/// elements 0..order()-1. Element 0 need not be the identity.
class FiniteGroup {
public:
    using Element = std::size_t;

    FiniteGroup() : FiniteGroup(std::vector<std::vector<Element>>{{0}}) {}

    /// `table[a][b]` is the product a*b. Throws on anything that is not a group.
    explicit FiniteGroup(std::vector<std::vector<Element>> table) : table_(std::move(table))
    {
        const std::size_t n = table_.size();
        if (n == 0) {
            throw GroupoidError(GroupoidErrc::invalid_group, "empty multiplication table");
        }
        for (const auto& row : table_) {
            if (row.size() != n) {
                throw GroupoidError(GroupoidErrc::invalid_group, "multiplication table is not square");
            }
            for (Element x : row) {
                if (x >= n) {
                    throw GroupoidError(GroupoidErrc::invalid_group, "product out of range");
                }
            }
        }
        bool found = false;
        for (Element e = 0; e < n && !found; ++e) {
            bool is_unit = true;
            for (Element a = 0; a < n && is_unit; ++a) {
                is_unit = table_[e][a] == a && table_[a][e] == a;
            }
            if (is_unit) {
                identity_ = e;
                found = true;
            }
        }
        if (!found) {
            throw GroupoidError(GroupoidErrc::invalid_group, "no identity element");
        }
        inverse_.assign(n, n);
        for (Element a = 0; a < n; ++a) {
            for (Element b = 0; b < n; ++b) {
                if (table_[a][b] == identity_ && table_[b][a] == identity_) {
                    inverse_[a] = b;
                }
            }
            if (inverse_[a] == n) {
                throw GroupoidError(GroupoidErrc::invalid_group, "element without inverse");
            }
        }
        for (Element a = 0; a < n; ++a) {
            for (Element b = 0; b < n; ++b) {
                for (Element c = 0; c < n; ++c) {
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                        throw GroupoidError(GroupoidErrc::invalid_group, "multiplication is not associative");
                    }
                }
            }
        }
    }

    static FiniteGroup trivial() { return FiniteGroup(); }

    static FiniteGroup cyclic(std::size_t n)
    {
        std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
        for (Element a = 0; a < n; ++a) {
            for (Element b = 0; b < n; ++b) {
                t[a][b] = (a + b) % n;
            }
        }
        return FiniteGroup(std::move(t));
    }

    /// Symmetric group on n letters; elements are permutations in
    /// lexicographic order, product is composition (a*b)(i) = a(b(i)).
    static FiniteGroup symmetric(std::size_t n)
    {
        std::vector<std::vector<std::size_t>> perms;
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        std::map<std::vector<std::size_t>, Element> index;
        for (Element i = 0; i < perms.size(); ++i) {
            index[perms[i]] = i;
        }
        std::vector<std::vector<Element>> t(perms.size(), std::vector<Element>(perms.size()));
        for (Element a = 0; a < perms.size(); ++a) {
            for (Element b = 0; b < perms.size(); ++b) {
                std::vector<std::size_t> c(n);
                for (std::size_t i = 0; i < n; ++i) {
                    c[i] = perms[a][perms[b][i]];
                }
                t[a][b] = index.at(c);
            }
        }
        return FiniteGroup(std::move(t));
    }

    static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h)
    {
        const std::size_t n = g.order() * h.order();
        std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
        for (Element a = 0; a < n; ++a) {
            for (Element b = 0; b < n; ++b) {
                t[a][b] = g.mul(a / h.order(), b / h.order()) * h.order() + h.mul(a % h.order(), b % h.order());
            }
        }
        return FiniteGroup(std::move(t));
    }

    std::size_t order() const noexcept { return table_.size(); }
    Element identity() const noexcept { return identity_; }
    Element mul(Element a, Element b) const { return table_[a][b]; }
    Element inv(Element a) const { return inverse_[a]; }
    const std::vector<std::vector<Element>>& table() const noexcept { return table_; }

    /// Smallest generating set found greedily in element order.
    std::vector<Element> generators() const
    {
        std::vector<Element> gens;
        std::vector<bool> in_span(order(), false);
        in_span[identity_] = true;
        for (Element a = 0; a < order(); ++a) {
            if (in_span[a]) {
                continue;
            }
            gens.push_back(a);
            std::vector<Element> span = {identity_};
            std::fill(in_span.begin(), in_span.end(), false);
            in_span[identity_] = true;
            for (std::size_t i = 0; i < span.size(); ++i) {
                for (Element g : gens) {
                    const Element x = mul(span[i], g);
                    if (!in_span[x]) {
                        in_span[x] = true;
                        span.push_back(x);
                    }
                }
            }
        }
        return gens;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

private:
    std::vector<std::vector<Element>> table_;
    Element identity_ = 0;
    std::vector<Element> inverse_;
};

/// All homomorphisms g -> h, found by brute force over images of a generating set.
inline std::vector<std::vector<FiniteGroup::Element>> homomorphisms(const FiniteGroup& g, const FiniteGroup& h)
{
    using Element = FiniteGroup::Element;
    const auto gens = g.generators();
    std::vector<std::vector<Element>> result;
    std::vector<Element> images(gens.size(), 0);
    while (true) {
        // Extend the generator assignment along a BFS of words; reject on conflict.
        std::vector<Element> phi(g.order(), h.order());
        phi[g.identity()] = h.identity();
        std::vector<Element> queue = {g.identity()};
        bool ok = true;
        for (std::size_t i = 0; i < queue.size() && ok; ++i) {
            for (std::size_t k = 0; k < gens.size() && ok; ++k) {
                const Element x = g.mul(queue[i], gens[k]);
                const Element img = h.mul(phi[queue[i]], images[k]);
                if (phi[x] == h.order()) {
                    phi[x] = img;
                    queue.push_back(x);
                } else if (phi[x] != img) {
                    ok = false;
                }
            }
        }
        for (Element a = 0; a < g.order() && ok; ++a) {
            for (Element b = 0; b < g.order() && ok; ++b) {
                ok = phi[g.mul(a, b)] == h.mul(phi[a], phi[b]);
            }
        }
        if (ok) {
            result.push_back(phi);
        }
        std::size_t k = 0;
        while (k < images.size() && ++images[k] == h.order()) {
            images[k] = 0;
            ++k;
        }
        if (k == images.size()) {
            break;
        }
    }
    return result;
}

} // namespace fdb::groupoid
