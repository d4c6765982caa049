#pragma once

#include <fdb/pfunctor/spec.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace fdb::pfunctor {

/// Spec documents: {"name": s, "colours": [..], "ops": [{"name", "out", "in": [..],
/// "sym": [[perm]..]}], "max_arity": n}. Colours are referred to by name;
/// "name", "sym" and "max_arity" are optional.
inline EndofunctorSpec spec_from_json(const nlohmann::json& j)
{
    try {
        const auto colours = j.at("colours").get<std::vector<std::string>>();
        auto colour_of = [&](const std::string& name) -> Colour {
            for (Colour c = 0; c < colours.size(); ++c) {
                if (colours[c] == name) {
                    return c;
                }
            }
            throw PfunctorError(PfunctorErrc::unknown_colour, "unknown colour '" + name + "' in spec file");
        };
        std::vector<Op> ops;
        for (const auto& o : j.at("ops")) {
            Op op;
            op.name = o.at("name").get<std::string>();
            op.out = colour_of(o.at("out").get<std::string>());
            for (const auto& c : o.at("in")) {
                op.in.push_back(colour_of(c.get<std::string>()));
            }
            if (o.contains("sym")) {
                op.sym = o.at("sym").get<std::vector<Perm>>();
            }
            ops.push_back(std::move(op));
        }
        std::optional<std::size_t> max_arity;
        if (j.contains("max_arity")) {
            max_arity = j.at("max_arity").get<std::size_t>();
        }
        return {j.value("name", std::string("custom")), colours, std::move(ops), max_arity};
    } catch (const nlohmann::json::exception& e) {
        throw PfunctorError(PfunctorErrc::invalid_spec, std::string("malformed spec document: ") + e.what());
    }
}

inline nlohmann::json spec_to_json(const EndofunctorSpec& spec)
{
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : spec.ops()) {
        nlohmann::json in = nlohmann::json::array();
        for (Colour c : op.in) {
            in.push_back(spec.colour_name(c));
        }
        ops.push_back({{"name", op.name}, {"out", spec.colour_name(op.out)}, {"in", in}, {"sym", op.sym}});
    }
    nlohmann::json j = {{"name", spec.name()}, {"colours", spec.colours()}, {"ops", ops}};
    if (spec.max_arity()) {
        j["max_arity"] = *spec.max_arity();
    }
    return j;
}

inline EndofunctorSpec read_spec_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw PfunctorError(PfunctorErrc::invalid_spec, "cannot open spec file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw PfunctorError(PfunctorErrc::invalid_spec, "spec file '" + path + "' is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

inline void write_spec_file(const EndofunctorSpec& spec, const std::string& path)
{
    std::ofstream out(path);
    out << spec_to_json(spec).dump(2) << '\n';
}

} // namespace fdb::pfunctor
