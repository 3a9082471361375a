#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqctx/boolfn.hpp"
#include "seqctx/empirical.hpp"
#include "seqctx/errors.hpp"
#include "seqctx/fraction.hpp"
#include "seqctx/gf2ont.hpp"
#include "seqctx/parity.hpp"
#include "seqctx/qsim.hpp"
#include "seqctx/rational.hpp"
#include "seqctx/tbqc.hpp"

namespace seqctx::io {

// Insertion-ordered JSON keeps field order fixed, so identical inputs yield
// byte-identical reports.
using Json = nlohmann::ordered_json;

inline const Json& field(const Json& j, const std::string& name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError("missing field '" + name + "'");
    return j.at(name);
}

inline int parse_bit(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || (j.get<int>() != 0 && j.get<int>() != 1))
        throw ParseError("field '" + where + "': expected bit 0 or 1");
    return j.get<int>();
}

inline int parse_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError("field '" + where + "': expected integer");
    return j.get<int>();
}

inline Rational parse_rat(const Json& j, const std::string& where) {
    if (!j.is_string())
        throw ParseError("field '" + where + "': expected rational string \"num/den\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError&) {
        throw ParseError("field '" + where + "': expected rational string \"num/den\"");
    }
}

inline std::vector<int> parse_int_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError("field '" + where + "': expected array of integers");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(parse_int(v, where));
    return out;
}

inline BitVec parse_bits(const Json& j, const std::string& where, int expect_len = -1) {
    if (!j.is_array()) throw ParseError("field '" + where + "': expected bit array");
    if (expect_len >= 0 && static_cast<int>(j.size()) != expect_len)
        throw ParseError("field '" + where + "': expected " + std::to_string(expect_len) +
                         " bits, got " + std::to_string(j.size()));
    check_gf2_dim(static_cast<int>(j.size()));
    BitVec v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v.set(static_cast<int>(i), parse_bit(j[i], where));
    return v;
}

inline Json bits_json(const BitVec& v) {
    Json out = Json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v.get(i));
    return out;
}

inline std::string rat_str(const Rational& q) { return to_string(q); }

// --- BoolFn: {"r": 2, "table": [0,1,1,1]} ---

inline BoolFn parse_boolfn(const Json& j) {
    int r = parse_int(field(j, "r"), "r");
    const Json& table = field(j, "table");
    if (!table.is_array()) throw ParseError("field 'table': expected array of bits");
    std::vector<int> bits;
    for (size_t i = 0; i < table.size(); ++i) bits.push_back(parse_bit(table[i], "table"));
    BoolFn::check_arity(r, 28);
    if (bits.size() != (size_t(1) << r))
        throw ParseError("field 'table': length " + std::to_string(bits.size()) +
                         " does not equal 2^r");
    return BoolFn::from_table(r, bits);
}

inline Json boolfn_json(const BoolFn& f) {
    Json out;
    out["r"] = f.arity();
    out["table"] = f.table();
    return out;
}

// --- ResourceSpec: {"gate_angles_over_pi": [0.5,0.5,0.5], "noise_q": "1/4"} ---

inline ResourceSpec parse_resource_spec(const Json& j) {
    ResourceSpec spec;
    const Json& angles = field(j, "gate_angles_over_pi");
    if (!angles.is_array() || angles.empty())
        throw ParseError("field 'gate_angles_over_pi': expected nonempty array");
    for (const auto& a : angles) {
        if (!a.is_number()) throw ParseError("field 'gate_angles_over_pi': expected numbers");
        spec.gate_angles_over_pi.push_back(a.get<double>());
    }
    spec.noise_q = j.contains("noise_q") ? parse_rat(j.at("noise_q"), "noise_q") : Rational(0);
    spec.validate();
    return spec;
}

inline Json resource_spec_json(const ResourceSpec& spec) {
    Json out;
    out["gate_angles_over_pi"] = spec.gate_angles_over_pi;
    out["noise_q"] = rat_str(spec.noise_q);
    return out;
}

// --- GF2AffineMap: {"s":2, "A":[[0,0],[1,0]], "u":[0,1]}
//     or gate list  {"s":2, "gates":[["CNOT",0,1],["NOT",1]]} ---

inline GF2AffineMap parse_map(const Json& j, int expect_s = -1) {
    int s = expect_s;
    if (j.contains("s")) {
        s = parse_int(j.at("s"), "s");
        if (expect_s >= 0 && s != expect_s)
            throw ParseError("field 's': expected " + std::to_string(expect_s));
    }
    if (s < 0) throw ParseError("missing field 's'");
    check_gf2_dim(s);
    if (j.contains("gates")) {
        const Json& gates = j.at("gates");
        if (!gates.is_array()) throw ParseError("field 'gates': expected array");
        GF2AffineMap acc = GF2AffineMap::identity(s);
        for (const auto& g : gates) {
            if (!g.is_array() || g.empty() || !g[0].is_string())
                throw ParseError("field 'gates': expected [\"CNOT\",i,j] or [\"NOT\",i]");
            std::string kind = g[0].get<std::string>();
            if (kind == "CNOT" && g.size() == 3) {
                acc = compose(acc, cnot_gate(parse_int(g[1], "gates"), parse_int(g[2], "gates"), s));
            } else if (kind == "NOT" && g.size() == 2) {
                acc = compose(acc, not_gate(parse_int(g[1], "gates"), s));
            } else {
                throw ParseError("field 'gates': unknown gate '" + kind + "'");
            }
        }
        return acc;
    }
    const Json& a = field(j, "A");
    if (!a.is_array() || static_cast<int>(a.size()) != s)
        throw ParseError("field 'A': expected " + std::to_string(s) + " rows");
    GF2AffineMap f = GF2AffineMap::identity(s);
    for (int r = 0; r < s; ++r) {
        if (!a[static_cast<size_t>(r)].is_array() ||
            static_cast<int>(a[static_cast<size_t>(r)].size()) != s)
            throw ParseError("field 'A': row " + std::to_string(r) + " must have " +
                             std::to_string(s) + " entries");
        for (int c = 0; c < s; ++c)
            f.A.set(r, c, parse_bit(a[static_cast<size_t>(r)][static_cast<size_t>(c)], "A"));
    }
    f.u = parse_bits(field(j, "u"), "u", s);
    return f;
}

inline Json map_json(const GF2AffineMap& f) {
    Json out;
    out["s"] = f.dim();
    Json rows = Json::array();
    for (int r = 0; r < f.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < f.dim(); ++c) row.push_back(f.A.get(r, c));
        rows.push_back(row);
    }
    out["A"] = rows;
    out["u"] = bits_json(f.u);
    return out;
}

// Gate-list form, valid exactly when the map is a commuting product of its
// CNOT entries and NOT offsets; falls back to the A/u form otherwise.
inline Json map_gatelist_json(const GF2AffineMap& f) {
    Json gates = Json::array();
    GF2AffineMap acc = GF2AffineMap::identity(f.dim());
    for (int r = 0; r < f.dim(); ++r)
        for (int c = 0; c < f.dim(); ++c)
            if (f.A.get(r, c)) {
                gates.push_back(Json::array({"CNOT", c, r}));
                acc = compose(acc, cnot_gate(c, r, f.dim()));
            }
    for (int i = 0; i < f.dim(); ++i)
        if (f.u.get(i)) {
            gates.push_back(Json::array({"NOT", i}));
            acc = compose(acc, not_gate(i, f.dim()));
        }
    if (!(acc == f)) return map_json(f);
    Json out;
    out["s"] = f.dim();
    out["gates"] = gates;
    return out;
}

// --- EmpiricalModel: {"t":3, "contexts":[{"k":[0,0,0],"p0":"1/1","p1":"0/1"},...]} ---

inline EmpiricalModel parse_model(const Json& j) {
    EmpiricalModel model;
    model.t = parse_int(field(j, "t"), "t");
    const Json& ctx = field(j, "contexts");
    if (!ctx.is_array()) throw ParseError("field 'contexts': expected array");
    for (const auto& row : ctx) {
        ContextRow cr;
        cr.k = parse_bits(field(row, "k"), "contexts.k", model.t);
        cr.dist.p0 = parse_rat(field(row, "p0"), "contexts.p0");
        cr.dist.p1 = parse_rat(field(row, "p1"), "contexts.p1");
        model.contexts.push_back(std::move(cr));
    }
    try {
        model.validate();
    } catch (const InvalidModel& e) {
        throw ParseError(std::string("field 'contexts': ") + e.what());
    }
    return model;
}

inline Json model_json(const EmpiricalModel& model) {
    Json out;
    out["t"] = model.t;
    Json ctx = Json::array();
    for (const auto& row : model.contexts) {
        Json r;
        r["k"] = bits_json(row.k);
        r["p0"] = rat_str(row.dist.p0);
        r["p1"] = rat_str(row.dist.p1);
        ctx.push_back(std::move(r));
    }
    out["contexts"] = ctx;
    return out;
}

// --- OntologyAssignment ---
// {"s":2, "controls":[0], "targets":[1],
//  "slots":[[map0,map1], ...], "measurement":{"pre":map, "j":0},
//  "initial":[0,0] or [{"state":[0,0],"w":"1/2"}, ...]}

inline OntologyAssignment parse_assignment(const Json& j, bool relax_measurement = false) {
    OntologyAssignment ont;
    ont.s = parse_int(field(j, "s"), "s");
    check_gf2_dim(ont.s);
    std::vector<int> controls;
    std::vector<int> targets;
    for (const auto& v : field(j, "controls")) controls.push_back(parse_int(v, "controls"));
    for (const auto& v : field(j, "targets")) targets.push_back(parse_int(v, "targets"));
    try {
        ont.part = Partition(ont.s, controls, targets);
    } catch (const InvalidPartition& e) {
        throw ParseError(std::string("fields 'controls'/'targets': ") + e.what());
    }
    const Json& slots = field(j, "slots");
    if (!slots.is_array() || slots.empty()) throw ParseError("field 'slots': expected nonempty array");
    for (const auto& pair : slots) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError("field 'slots': each slot is a [map_for_0, map_for_1] pair");
        ont.slots.push_back(SlotMaps{parse_map(pair[0], ont.s), parse_map(pair[1], ont.s)});
    }
    const Json& meas = field(j, "measurement");
    ont.meas.pre = parse_map(field(meas, "pre"), ont.s);
    ont.meas.readout = parse_int(field(meas, "j"), "measurement.j");
    const Json& init = field(j, "initial");
    if (!init.is_array()) throw ParseError("field 'initial': expected array");
    if (init.empty() || init[0].is_number_integer()) {
        ont.initial = OnticDistribution::deterministic(parse_bits(init, "initial", ont.s));
    } else {
        for (const auto& point : init)
            ont.initial.points.emplace_back(parse_bits(field(point, "state"), "initial.state", ont.s),
                                            parse_rat(field(point, "w"), "initial.w"));
    }
    try {
        ont.validate(relax_measurement);
    } catch (const Error& e) {
        throw ParseError(std::string("ontology assignment invalid: ") + e.what());
    }
    return ont;
}

inline Json assignment_json(const OntologyAssignment& ont, bool gatelist = true) {
    Json out;
    out["s"] = ont.s;
    out["controls"] = ont.part.controls();
    out["targets"] = ont.part.targets();
    Json slots = Json::array();
    for (const auto& slot : ont.slots) {
        Json pair = Json::array();
        pair.push_back(gatelist ? map_gatelist_json(slot.off) : map_json(slot.off));
        pair.push_back(gatelist ? map_gatelist_json(slot.on) : map_json(slot.on));
        slots.push_back(std::move(pair));
    }
    out["slots"] = slots;
    Json meas;
    meas["pre"] = gatelist ? map_gatelist_json(ont.meas.pre) : map_json(ont.meas.pre);
    meas["j"] = ont.meas.readout;
    out["measurement"] = meas;
    if (ont.initial.points.size() == 1 && ont.initial.points[0].second == 1) {
        out["initial"] = bits_json(ont.initial.points[0].first);
    } else {
        Json init = Json::array();
        for (const auto& [state, w] : ont.initial.points) {
            Json point;
            point["state"] = bits_json(state);
            point["w"] = rat_str(w);
            init.push_back(std::move(point));
        }
        out["initial"] = init;
    }
    return out;
}

// --- Protocol ---
// {"r":2,"t":3,"B":[[1,0],[0,1],[1,1]],"c":[0,0,0],"resource":{...},"target":{...}}

inline Protocol parse_protocol(const Json& j) {
    Protocol p;
    p.r = parse_int(field(j, "r"), "r");
    p.t = parse_int(field(j, "t"), "t");
    const Json& b = field(j, "B");
    if (!b.is_array() || static_cast<int>(b.size()) != p.t)
        throw ParseError("field 'B': expected t = " + std::to_string(p.t) + " rows");
    for (const auto& row : b) p.b_rows.push_back(parse_bits(row, "B", p.r));
    p.c = parse_bits(field(j, "c"), "c", p.t);
    const Json& res = field(j, "resource");
    if (res.contains("gate_angles_over_pi"))
        p.resource = parse_resource_spec(res);
    else if (res.contains("contexts"))
        p.resource = parse_model(res);
    else if (res.contains("slots"))
        p.resource = parse_assignment(res);
    else
        throw ParseError("field 'resource': expected a gate spec, empirical model, or ontology");
    p.target = parse_boolfn(field(j, "target"));
    try {
        p.validate();
    } catch (const Error& e) {
        throw ParseError(std::string("protocol invalid: ") + e.what());
    }
    return p;
}

inline Json protocol_json(const Protocol& p) {
    Json out;
    out["r"] = p.r;
    out["t"] = p.t;
    Json b = Json::array();
    for (const auto& row : p.b_rows) b.push_back(bits_json(row));
    out["B"] = b;
    out["c"] = bits_json(p.c);
    if (const auto* spec = std::get_if<ResourceSpec>(&p.resource))
        out["resource"] = resource_spec_json(*spec);
    else if (const auto* model = std::get_if<EmpiricalModel>(&p.resource))
        out["resource"] = model_json(*model);
    else
        out["resource"] = assignment_json(std::get<OntologyAssignment>(p.resource));
    out["target"] = boolfn_json(p.target);
    return out;
}

// --- Reports ---

inline Json run_report_json(const RunReport& report) {
    Json out;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r;
        r["i"] = bits_json(row.input);
        r["k"] = bits_json(row.k);
        r["p0"] = rat_str(row.dist.p0);
        r["p1"] = rat_str(row.dist.p1);
        r["fail"] = rat_str(row.fail);
        rows.push_back(std::move(r));
    }
    out["rows"] = rows;
    out["epsilon"] = rat_str(report.epsilon);
    return out;
}

inline Json bound_report_json(const BoundReport& b) {
    Json out;
    out["epsilon"] = rat_str(b.epsilon);
    out["ncf"] = rat_str(b.ncf_value);
    out["nu"] = rat_str(b.nu_value);
    out["rhs"] = rat_str(b.rhs);
    out["holds"] = b.holds;
    out["tight"] = b.tight;
    return out;
}

inline Json sweep_json(const std::vector<SweepRow>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["q"] = rat_str(row.q);
        r["epsilon"] = rat_str(row.epsilon);
        r["ncf"] = rat_str(row.ncf_value);
        r["rhs"] = rat_str(row.rhs);
        r["slack"] = rat_str(row.slack);
        arr.push_back(std::move(r));
    }
    Json out;
    out["rows"] = arr;
    return out;
}

inline Json ncf_result_json(const NCFResult& r) {
    Json out;
    out["ncf"] = rat_str(r.ncf);
    Json weights = Json::array();
    for (const auto& [h, w] : r.weights) {
        Json entry;
        entry["c0"] = h.constant;
        entry["b"] = bits_json(h.coeffs);
        entry["w"] = rat_str(w);
        weights.push_back(std::move(entry));
    }
    out["weights"] = weights;
    if (r.residual) out["residual"] = model_json(*r.residual);
    return out;
}

inline Json search_result_json(int s, const Partition& part, const std::array<int, 4>& target,
                               const SearchResult& result) {
    Json out;
    out["s"] = s;
    out["controls"] = part.controls();
    out["targets"] = part.targets();
    Json tgt = Json::array();
    for (int bit : target) tgt.push_back(bit);
    out["target"] = tgt;
    out["max_satisfied"] = result.max_satisfied;
    out["witness"] = assignment_json(result.witness);
    return out;
}

}  // namespace seqctx::io
