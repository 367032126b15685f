#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cendalg/extension.hpp"
#include "cendalg/splitter.hpp"

namespace cendalg {

using Json = nlohmann::json;

// Rationals travel as strings ("p" or "p/q") to keep exactness; polynomials
// as [degree, rational] pairs in ascending degree.

inline Json to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (!j.is_string()) throw ParseError("rational must be a string: " + j.dump());
    return Rat::parse(j.get<std::string>());
}

inline Json to_json(const DPoly& p) {
    Json arr = Json::array();
    for (const auto& [d, c] : p.coeffs()) arr.push_back(Json::array({d, to_json(c)}));
    return arr;
}

inline DPoly dpoly_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be an array: " + j.dump());
    DPoly p;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2)
            throw ParseError("polynomial term must be [degree, coeff]: " + item.dump());
        int deg = item[0].get<int>();
        if (deg < 0) throw ParseError("polynomial degree must be >= 0");
        p.add(deg, rat_from_json(item[1]));
    }
    return p;
}

inline Json to_json(const AlgElem& a) {
    Json arr = Json::array();
    for (const auto& [k, p] : a.terms())
        arr.push_back(Json{{"k", k}, {"poly", to_json(p)}});
    return arr;
}

inline AlgElem alg_elem_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("algebra element must be an array: " + j.dump());
    AlgElem a;
    for (const auto& item : j)
        a += AlgElem::monomial(dpoly_from_json(item.at("poly")), item.at("k").get<long>());
    return a;
}

inline Json to_json(const ModElem& v) {
    Json arr = Json::array();
    for (const auto& [e, p] : v.terms())
        arr.push_back(Json{{"key", e}, {"poly", to_json(p)}});
    return arr;
}

inline ModElem mod_elem_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("module element must be an array: " + j.dump());
    ModElem v;
    for (const auto& item : j)
        v.add_term(item.at("key").get<std::string>(), dpoly_from_json(item.at("poly")));
    return v;
}

inline Json to_json(const Cochain1& tau) {
    Json arr = Json::array();
    for (const auto& [l, v] : tau.values())
        arr.push_back(Json{{"l", l}, {"value", to_json(v)}});
    return arr;
}

inline Cochain1 cochain1_from_json(const Json& j, BimodulePtr module) {
    if (!j.is_array()) throw ParseError("1-cochain must be an array: " + j.dump());
    Cochain1 tau(std::move(module));
    for (const auto& item : j)
        tau.set(item.at("l").get<long>(), mod_elem_from_json(item.at("value")));
    return tau;
}

inline Json to_json(const SeedData& s) {
    Json diag = Json::array(), row0 = Json::array();
    for (const auto& [t, v] : s.diag) diag.push_back(Json::array({t, to_json(v)}));
    for (const auto& [l, v] : s.row0) row0.push_back(Json::array({l, to_json(v)}));
    return Json{{"diag", diag}, {"row0", row0}};
}

inline SeedData seed_data_from_json(const Json& j) {
    SeedData s;
    for (const auto& item : j.value("diag", Json::array())) {
        if (!item.is_array() || item.size() != 2)
            throw ParseError("diag entry must be [t, value]: " + item.dump());
        long t = item[0].get<long>();
        if (t < 1) throw ParseError("diag index must be >= 1");
        s.diag[t] = mod_elem_from_json(item[1]);
    }
    for (const auto& item : j.value("row0", Json::array())) {
        if (!item.is_array() || item.size() != 2)
            throw ParseError("row0 entry must be [l, value]: " + item.dump());
        long l = item[0].get<long>();
        if (l < 1) throw ParseError("row0 index must be >= 1");
        s.row0[l] = mod_elem_from_json(item[1]);
    }
    s.canonicalize();
    return s;
}

inline Json to_json(const BimoduleTables& t) {
    Json left = Json::array(), right = Json::array();
    for (const auto& [key, v] : t.left)
        left.push_back(Json{{"key", key.first}, {"n", key.second}, {"value", to_json(v)}});
    for (const auto& [key, v] : t.right)
        right.push_back(Json{{"key", key.first}, {"n", key.second}, {"value", to_json(v)}});
    Json lb = Json::object(), rb = Json::object();
    for (const auto& [e, b] : t.left_bounds) lb[e] = b;
    for (const auto& [e, b] : t.right_bounds) rb[e] = b;
    return Json{{"name", t.name},   {"basis", t.basis}, {"left_bounds", lb},
                {"right_bounds", rb}, {"left", left},     {"right", right}};
}

inline BimoduleTables bimodule_tables_from_json(const Json& j) {
    BimoduleTables t;
    t.name = j.value("name", std::string("table"));
    for (const auto& e : j.at("basis")) t.basis.push_back(e.get<std::string>());
    const Json lb = j.value("left_bounds", Json::object());
    for (const auto& [e, b] : lb.items()) t.left_bounds[e] = b.get<int>();
    const Json rb = j.value("right_bounds", Json::object());
    for (const auto& [e, b] : rb.items()) t.right_bounds[e] = b.get<int>();
    for (const auto& item : j.value("left", Json::array()))
        t.left[{item.at("key").get<std::string>(), item.at("n").get<int>()}] =
            mod_elem_from_json(item.at("value"));
    for (const auto& item : j.value("right", Json::array()))
        t.right[{item.at("key").get<std::string>(), item.at("n").get<int>()}] =
            mod_elem_from_json(item.at("value"));
    return t;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("cannot parse '" + path + "': " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

// A builtin name ("regular", "zero", sums with '+') or a path to a table file.
inline BimodulePtr load_bimodule(const std::string& name_or_path) {
    if (name_or_path.find('/') != std::string::npos ||
        name_or_path.find(".json") != std::string::npos ||
        std::filesystem::exists(name_or_path)) {
        auto tables = bimodule_tables_from_json(load_json_file(name_or_path));
        return std::make_shared<TableBimodule>(std::move(tables));
    }
    return builtin_bimodule(name_or_path);
}

// ---- reports -----------------------------------------------------------------

inline Json to_json(const AlgebraCheckReport& r) {
    Json vio = Json::array();
    for (const auto& v : r.violations)
        vio.push_back(Json{{"identity", v.identity}, {"args", v.args}});
    return Json{{"checked", r.checked}, {"violations", vio}, {"pass", r.pass()}};
}

inline Json to_json(const BimoduleAxiomReport& r) {
    Json vio = Json::array();
    for (const auto& v : r.violations)
        vio.push_back(Json{{"axiom", v.axiom}, {"key", v.key}, {"args", v.args}});
    return Json{{"kmax", r.kmax},       {"nmax", r.nmax}, {"checked", r.checked},
                {"violations", vio}, {"pass", r.pass()}};
}

inline Json to_json(const CocycleReport& r) {
    Json vio = Json::array();
    for (const auto& v : r.violations)
        vio.push_back(Json{{"m", v.m}, {"n", v.n}, {"k", v.k}, {"l", v.l}, {"q", v.q}});
    return Json{{"kmax", r.kmax},       {"nmax", r.nmax}, {"checked", r.checked},
                {"violations", vio}, {"pass", r.pass()}};
}

inline Json to_json(const ExtAssocReport& r) {
    Json vio = Json::array();
    for (const auto& v : r.violations)
        vio.push_back(Json{{"a", v.a},
                           {"b", v.b},
                           {"c", v.c},
                           {"n", v.n},
                           {"m", v.m},
                           {"form", v.form}});
    return Json{{"kmax", r.kmax},       {"nmax", r.nmax}, {"checked", r.checked},
                {"violations", vio}, {"pass", r.pass()}};
}

inline Json to_json(const EmbeddingClosureReport& r) {
    Json vio = Json::array();
    for (const auto& v : r.violations)
        vio.push_back(Json{{"k", v.k}, {"l", v.l}, {"n", v.n}});
    return Json{{"kmax", r.kmax},       {"nmax", r.nmax}, {"checked", r.checked},
                {"violations", vio}, {"pass", r.pass()}};
}

inline Json to_json(const SplitCertificate& c) {
    Json transcript = Json::array();
    for (const auto& rec : c.transcript)
        transcript.push_back(
            Json{{"identity", rec.identity}, {"indices", rec.indices}, {"pass", rec.pass}});
    Json components = Json::object();
    for (const auto& [ev, v] : c.phi1_components)
        components[std::to_string(ev)] = to_json(v);
    return Json{{"module", c.module_name},
                {"bounds", Json{{"kmax", c.bounds.kmax},
                                {"nmax", c.bounds.nmax},
                                {"l_check", c.bounds.l_check}}},
                {"input_seeds", to_json(c.input_seeds)},
                {"xi", to_json(c.xi)},
                {"psi", to_json(c.psi)},
                {"psi_total", to_json(c.psi_total)},
                {"z", to_json(c.z)},
                {"psi1", to_json(c.psi1)},
                {"psi1_kernel_part", to_json(c.psi0_part)},
                {"psi1_fixed_part", to_json(c.psi1_part)},
                {"phi1_components", components},
                {"transcript", transcript},
                {"rationale", c.rationale},
                {"pass", c.pass}};
}

}  // namespace cendalg
