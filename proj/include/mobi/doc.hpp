#pragma once

#include <functional>

#include <nlohmann/json.hpp>

#include "sample.hpp"
#include "structure.hpp"

namespace mobi {

using json = nlohmann::json;

// Interchange documents.  Version 1:
//   {"version": 1, "kind": ..., "carrier": ..., "constants": ..., "ops": ...}
// Finite carriers name elements by label; rational carriers by "p/q" strings
// ("1/0" is the projective point), pairs as two-element arrays.  Tables are
// nested row-major arrays of labels.  Serialization is canonical: labels in
// declaration order, tables row-major, keys sorted.

inline json elem_to_json(const Carrier& c, const Elem& e) {
    if (c.is_finite()) return c.labels().at(e.pos());
    if (e.is_pair()) return json::array({e.pair()[0].str(), e.pair()[1].str()});
    return e.rat().str();
}

inline Elem elem_from_json(const Carrier& c, const json& j) {
    if (c.is_finite()) {
        if (!j.is_string()) throw parse_error("finite element must be a label");
        auto idx = c.index_of(j.get<std::string>());
        if (!idx) throw parse_error("unknown label '" + j.get<std::string>() + "'");
        return Elem::pos(*idx);
    }
    if (c.dim() == 2) {
        if (!j.is_array() || j.size() != 2)
            throw parse_error("planar element must be a two-element array");
        return Elem::pair(Rat::parse(j[0].get<std::string>()),
                          Rat::parse(j[1].get<std::string>()));
    }
    if (!j.is_string()) throw parse_error("rational element must be a string");
    return Elem::rat(Rat::parse(j.get<std::string>()));
}

namespace detail {

inline json table_to_json(const Carrier& c, const OpImpl& op) {
    const auto& entries = op.table().entries;
    std::size_t n = c.size();
    // Build nested arrays from the flat row-major table.
    std::function<json(int, std::size_t&)> build = [&](int depth, std::size_t& cursor) {
        json arr = json::array();
        if (depth == op.arity - 1) {
            for (std::size_t i = 0; i < n; ++i)
                arr.push_back(c.labels()[entries[cursor++]]);
            return arr;
        }
        for (std::size_t i = 0; i < n; ++i) arr.push_back(build(depth + 1, cursor));
        return arr;
    };
    std::size_t cursor = 0;
    return build(0, cursor);
}

inline void table_from_json(const Carrier& c, const json& j, int depth, int arity,
                            std::vector<std::uint32_t>& out) {
    if (!j.is_array() || j.size() != c.size())
        throw parse_error("table row has wrong length");
    for (const auto& cell : j) {
        if (depth == arity - 1) {
            if (!cell.is_string()) throw parse_error("table cell must be a label");
            auto idx = c.index_of(cell.get<std::string>());
            if (!idx) throw parse_error("unknown label in table: '" +
                                        cell.get<std::string>() + "'");
            out.push_back(*idx);
        } else {
            table_from_json(c, cell, depth + 1, arity, out);
        }
    }
}

inline int op_arity(Kind k, const std::string& name) {
    if (name == "p" || name == "p_base") return 3;
    if (name == "inv" || name == "neg") return 1;
    return 2; // oplus, dot, add, mul, circ and friends
}

} // namespace detail

inline json serialize_structure(const Structure& s) {
    json j;
    j["version"] = 1;
    j["kind"] = kind_name(s.kind);
    if (s.carrier.is_finite()) {
        j["carrier"] = {{"finite", s.carrier.labels()}};
    } else {
        json params = json::object();
        for (const auto& [k, v] : s.carrier.params()) params[k] = v.str();
        j["carrier"] = {{"rational", {{"domain", domain_name(s.carrier.domain())},
                                      {"params", params}}}};
    }
    json consts = json::object();
    for (const auto& [role, e] : s.constants) consts[role] = elem_to_json(s.carrier, e);
    j["constants"] = consts;
    json ops = json::object();
    for (const auto& [name, op] : s.ops) {
        if (op.is_table()) {
            ops[name] = {{"table", detail::table_to_json(s.carrier, op)}};
        } else {
            json params = json::object();
            for (const auto& [k, v] : op.formula().params) params[k] = v.str();
            ops[name] = {{"formula", op.formula().name}, {"params", params}};
        }
    }
    j["ops"] = ops;
    return j;
}

struct ParsedDoc {
    Structure structure;
    std::optional<SampleSpec> sampling;
};

inline ParsedDoc parse_structure(const json& j) {
    if (!j.is_object()) throw parse_error("document must be a JSON object");
    if (!j.contains("version") || j["version"] != 1)
        throw parse_error("unsupported document version");
    ParsedDoc doc;
    Structure& s = doc.structure;

    auto kind = kind_from_name(j.value("kind", std::string{}));
    if (!kind) throw parse_error("unknown kind");
    s.kind = *kind;

    const json& cj = j.at("carrier");
    if (cj.contains("finite")) {
        std::vector<std::string> labels = cj["finite"].get<std::vector<std::string>>();
        if (labels.empty()) throw parse_error("finite carrier is empty");
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t k = i + 1; k < labels.size(); ++k)
                if (labels[i] == labels[k])
                    throw parse_error("duplicate label '" + labels[i] + "'");
        s.carrier = Carrier::finite(std::move(labels));
    } else if (cj.contains("rational")) {
        const json& rj = cj["rational"];
        auto dom = domain_from_name(rj.value("domain", std::string{}));
        if (!dom) throw parse_error("unknown rational domain");
        std::map<std::string, Rat> params;
        if (rj.contains("params"))
            for (const auto& [k, v] : rj["params"].items())
                params[k] = Rat::parse(v.get<std::string>());
        s.carrier = Carrier::rational(*dom, std::move(params));
    } else {
        throw parse_error("carrier must be finite or rational");
    }

    for (const auto& [role, v] : j.at("constants").items())
        s.constants[role] = elem_from_json(s.carrier, v);

    for (const auto& [name, oj] : j.at("ops").items()) {
        int arity = detail::op_arity(s.kind, name);
        if (oj.contains("table")) {
            std::vector<std::uint32_t> entries;
            detail::table_from_json(s.carrier, oj["table"], 0, arity, entries);
            s.ops[name] = OpImpl::make_table(arity, std::move(entries));
        } else if (oj.contains("formula")) {
            std::string fname = oj["formula"].get<std::string>();
            if (!formulas::known(fname))
                throw parse_error("unknown formula '" + fname + "'");
            std::map<std::string, Rat> params;
            if (oj.contains("params"))
                for (const auto& [k, v] : oj["params"].items())
                    params[k] = Rat::parse(v.get<std::string>());
            if (formulas::registry().at(fname).arity != arity)
                throw parse_error("formula '" + fname + "' arity does not fit op '" +
                                  name + "'");
            s.ops[name] = OpImpl::make_formula(arity, std::move(fname), std::move(params));
        } else {
            throw parse_error("operation '" + name + "' needs a table or formula");
        }
    }

    if (j.contains("sampling")) {
        SampleSpec spec;
        spec.seed = j["sampling"].value("seed", kDefaultSeed);
        spec.count = j["sampling"].value("count", 1000);
        if (j["sampling"].contains("den_limit"))
            spec.den_limit = j["sampling"]["den_limit"].get<std::int64_t>();
        doc.sampling = spec;
    }

    validate_shape(s);
    return doc;
}

inline std::string canonical_bytes(const Structure& s) {
    return serialize_structure(s).dump();
}

} // namespace mobi
