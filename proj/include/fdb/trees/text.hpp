#pragma once

#include <fdb/parse.hpp>
#include <fdb/trees/diagram.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fdb::trees {

/// Separator between trees of a forest (U+00B7) and the empty forest (U+03B5).
inline constexpr std::string_view forest_separator = "\xC2\xB7";
inline constexpr std::string_view empty_forest = "\xCE\xB5";

namespace detail {

template <class F>
void print_edge(const F& f, Index e, std::string& out)
{
    const Index n = f.producer(e);
    if (n == npos) {
        out += '_';
        return;
    }
    out += '(';
    for (Index i : f.inputs(n)) {
        print_edge(f, i, out);
    }
    out += ')';
}

struct ShapeBuilder {
    std::size_t edges = 0;
    std::vector<std::vector<Index>> inputs;
    std::vector<Index> outputs;

    Index parse(Cursor& c)
    {
        c.skip_space();
        if (c.accept("_")) {
            return edges++;
        }
        if (!c.accept("(")) {
            c.fail("expected '_' or '('");
        }
        std::vector<Index> in;
        c.skip_space();
        while (c.peek() != ')') {
            if (c.at_end()) {
                c.fail("unterminated node");
            }
            in.push_back(parse(c));
            c.skip_space();
        }
        c.expect(")");
        const Index out = edges++;
        inputs.push_back(std::move(in));
        outputs.push_back(out);
        return out;
    }

    Forest build() const { return Forest::from_nodes(edges, inputs, outputs).normalized(); }
};

} // namespace detail

/// Text form `_` for a leaf and `( children )` for a node; a forest joins its
/// trees with "·" and the empty forest is "ε".
template <class F>
std::string to_text(const F& f)
{
    if (f.roots().empty()) {
        return std::string(empty_forest);
    }
    std::string out;
    bool first = true;
    for (Index r : f.roots()) {
        if (!first) {
            out += forest_separator;
        }
        first = false;
        detail::print_edge(f, r, out);
    }
    return out;
}

inline Forest parse_forest(std::string_view text)
{
    Cursor c(text);
    detail::ShapeBuilder b;
    c.skip_space();
    if (c.accept(empty_forest)) {
        c.skip_space();
        if (!c.at_end()) {
            c.fail("trailing input after empty forest");
        }
        return b.build();
    }
    b.parse(c);
    c.skip_space();
    while (c.accept(forest_separator)) {
        b.parse(c);
        c.skip_space();
    }
    if (!c.at_end()) {
        c.fail("trailing input");
    }
    return b.build();
}

inline Forest parse_tree(std::string_view text)
{
    Cursor c(text);
    detail::ShapeBuilder b;
    b.parse(c);
    c.skip_space();
    if (!c.at_end()) {
        c.fail("trailing input after tree");
    }
    return b.build();
}

} // namespace fdb::trees
