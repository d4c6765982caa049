#pragma once

#include <fdb/groupoid/cardinality.hpp>
#include <fdb/groupoid/constructions.hpp>
#include <fdb/groupoid/groupoid.hpp>

#include <json.hpp>

#include <array>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fdb::groupoid {

// Interchange document:
//   {"objects": [id, ...],
//    "arrows":  [{"src": id, "dst": id, "label": "..."}, ...],
//    "compose": [["g", "f", "g∘f"], ...]}
// Labels name arrows and must be distinct. Composition triples list the
// second arrow first, matching FiniteGroupoid::compose(g, f).

/// Labels used when writing: the stored labels when they are non-empty and
/// distinct, otherwise "a0", "a1", ... by arrow index.
inline std::vector<std::string> interchange_labels(const FiniteGroupoid& g)
{
    std::vector<std::string> labels;
    std::set<std::string> seen;
    bool usable = true;
    for (const auto& a : g.arrows()) {
        usable = usable && !a.label.empty() && seen.insert(a.label).second;
        labels.push_back(a.label);
    }
    if (!usable) {
        for (Index a = 0; a < labels.size(); ++a) {
            labels[a] = "a" + std::to_string(a);
        }
    }
    return labels;
}

inline nlohmann::json to_json(const FiniteGroupoid& g)
{
    const auto labels = interchange_labels(g);
    nlohmann::json objects = g.object_ids();
    nlohmann::json arrows = nlohmann::json::array();
    for (Index a = 0; a < g.arrow_count(); ++a) {
        const auto& ar = g.arrow(a);
        arrows.push_back({{"src", g.object_id(ar.source)}, {"dst", g.object_id(ar.target)}, {"label", labels[a]}});
    }
    nlohmann::json compose = nlohmann::json::array();
    for (Index f = 0; f < g.arrow_count(); ++f) {
        for (Index h : g.out_arrows(g.arrow(f).target)) {
            compose.push_back({labels[h], labels[f], labels[g.compose(h, f)]});
        }
    }
    return {{"objects", std::move(objects)}, {"arrows", std::move(arrows)}, {"compose", std::move(compose)}};
}

inline FiniteGroupoid groupoid_from_json(const nlohmann::json& j)
{
    auto bad = [](const std::string& what) { return GroupoidError(GroupoidErrc::invalid_groupoid, what); };
    if (!j.is_object() || !j.contains("objects") || !j.contains("arrows") || !j.contains("compose")) {
        throw bad("interchange document needs 'objects', 'arrows' and 'compose'");
    }
    std::vector<ObjectId> objects;
    std::map<ObjectId, Index> object_index;
    for (const auto& o : j.at("objects")) {
        if (!o.is_number_integer()) {
            throw bad("object ids must be integers");
        }
        const auto id = o.get<ObjectId>();
        if (!object_index.emplace(id, objects.size()).second) {
            throw bad("duplicate object id " + std::to_string(id));
        }
        objects.push_back(id);
    }
    auto object = [&](const nlohmann::json& v) {
        if (!v.is_number_integer()) {
            throw bad("arrow endpoints must be integers");
        }
        auto it = object_index.find(v.get<ObjectId>());
        if (it == object_index.end()) {
            throw GroupoidError(GroupoidErrc::unknown_object, "arrow endpoint " + v.dump() + " is not an object");
        }
        return it->second;
    };
    std::vector<Arrow> arrows;
    std::map<std::string, Index> arrow_index;
    for (const auto& a : j.at("arrows")) {
        if (!a.is_object() || !a.contains("src") || !a.contains("dst") || !a.contains("label") || !a.at("label").is_string()) {
            throw bad("each arrow needs 'src', 'dst' and a string 'label'");
        }
        const auto label = a.at("label").get<std::string>();
        if (!arrow_index.emplace(label, arrows.size()).second) {
            throw bad("duplicate arrow label '" + label + "'");
        }
        arrows.push_back(Arrow{object(a.at("src")), object(a.at("dst")), label});
    }
    auto arrow = [&](const nlohmann::json& v) {
        if (!v.is_string() || !arrow_index.count(v.get<std::string>())) {
            throw bad("composition entry " + v.dump() + " is not an arrow label");
        }
        return arrow_index.at(v.get<std::string>());
    };
    std::vector<std::array<Index, 3>> table;
    for (const auto& t : j.at("compose")) {
        if (!t.is_array() || t.size() != 3) {
            throw bad("composition entries are [g, f, g∘f] triples");
        }
        table.push_back({arrow(t[0]), arrow(t[1]), arrow(t[2])});
    }
    return FiniteGroupoid::from_table(std::move(objects), std::move(arrows), table);
}

inline FiniteGroupoid read_groupoid(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw GroupoidError(GroupoidErrc::invalid_groupoid, "cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw GroupoidError(GroupoidErrc::invalid_groupoid, "'" + path + "': " + e.what());
    }
    return groupoid_from_json(j);
}

inline void write_groupoid(const FiniteGroupoid& g, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw GroupoidError(GroupoidErrc::invalid_groupoid, "cannot write '" + path + "'");
    }
    out << to_json(g).dump(2) << '\n';
}

/// Components, vertex-group orders and the cardinality, as one document.
inline nlohmann::json summary_json(const FiniteGroupoid& g)
{
    const auto comps = pi0(g);
    nlohmann::json cs = nlohmann::json::array();
    for (Index c = 0; c < comps.size(); ++c) {
        nlohmann::json members = nlohmann::json::array();
        for (Index x : comps.members[c]) {
            members.push_back(g.object_id(x));
        }
        const Index rep = comps.representative(c);
        cs.push_back({{"objects", std::move(members)},
                      {"vertex_group_order", g.vertex_group_order(rep)},
                      {"cardinality", fdb::to_string(make_rational(1, static_cast<std::int64_t>(g.vertex_group_order(rep))))}});
    }
    return {{"objects", g.object_count()},
            {"arrows", g.arrow_count()},
            {"components", std::move(cs)},
            {"cardinality", fdb::to_string(cardinality(g))}};
}

} // namespace fdb::groupoid
