#pragma once

#include <variant>
#include <vector>

#include "seqctx/boolfn.hpp"
#include "seqctx/empirical.hpp"
#include "seqctx/errors.hpp"
#include "seqctx/fraction.hpp"
#include "seqctx/gf2ont.hpp"
#include "seqctx/qsim.hpp"
#include "seqctx/rational.hpp"

namespace seqctx {

using Resource = std::variant<ResourceSpec, EmpiricalModel, OntologyAssignment>;

struct SnapOpts {
    double tol = kAmplitudeTol;
    uint64_t max_den = kDefaultMaxDen;
};

// An l2-TBQC: the control computer turns input i into control bits
// k = B i (+) c, drives the resource through context k, and returns the
// resource's measurement outcome as the value of the computation.
struct Protocol {
    int r = 0;  // input arity
    int t = 0;  // transformation count
    std::vector<BitVec> b_rows;
    BitVec c;
    Resource resource;
    BoolFn target;

    void validate() const {
        if (r < 0 || r > 20) throw InvalidModel("input arity r out of range");
        if (t < 1) throw InvalidModel("transformation count t must be at least 1");
        if (static_cast<int>(b_rows.size()) != t)
            throw InvalidModel("B has " + std::to_string(b_rows.size()) + " rows, expected t = " +
                               std::to_string(t));
        for (const auto& row : b_rows)
            if (row.size() != r)
                throw InvalidModel("B row length " + std::to_string(row.size()) +
                                   " does not match r = " + std::to_string(r));
        if (c.size() != t) throw InvalidModel("c length does not match t");
        if (target.arity() != r)
            throw InvalidModel("target.r = " + std::to_string(target.arity()) +
                               " does not match protocol r = " + std::to_string(r));
        if (const auto* spec = std::get_if<ResourceSpec>(&resource)) {
            spec->validate();
            if (spec->t() != t) throw InvalidModel("resource gate count does not match t");
        } else if (const auto* model = std::get_if<EmpiricalModel>(&resource)) {
            model->validate();
            if (model->t != t) throw InvalidModel("resource model t does not match protocol t");
        } else {
            const auto& ont = std::get<OntologyAssignment>(resource);
            ont.validate();
            if (ont.t() != t) throw InvalidModel("resource slot count does not match t");
        }
    }
};

// k = B i (+) c over Z2.
inline BitVec controls(const Protocol& p, const BitVec& i) {
    if (i.size() != p.r)
        throw ArityMismatch("input length " + std::to_string(i.size()) + " does not match r = " +
                            std::to_string(p.r));
    BitVec k(p.t);
    for (int row = 0; row < p.t; ++row)
        k.set(row, p.b_rows[static_cast<size_t>(row)].dot(i) ^ p.c.get(row));
    return k;
}

// Distinct realizable contexts {B i (+) c}, in order of first appearance as
// the input index ascends.
inline std::vector<BitVec> realizable_contexts(const Protocol& p) {
    std::vector<BitVec> out;
    for (uint64_t enc = 0; enc < (uint64_t(1) << p.r); ++enc) {
        BitVec k = controls(p, BitVec(p.r, enc));
        bool seen = false;
        for (const auto& prev : out) seen = seen || prev == k;
        if (!seen) out.push_back(k);
    }
    return out;
}

// The resource's empirical model over the realizable contexts. An
// EmpiricalModel resource is returned as supplied after checking coverage.
inline EmpiricalModel resource_model(const Protocol& p, const SnapOpts& opts = {}) {
    p.validate();
    auto contexts = realizable_contexts(p);
    if (const auto* spec = std::get_if<ResourceSpec>(&p.resource))
        return resource_empirical_model(*spec, contexts, opts.tol, opts.max_den);
    if (const auto* model = std::get_if<EmpiricalModel>(&p.resource)) {
        for (const auto& k : contexts)
            if (!model->find(k)) throw MissingContext("resource model lacks context " + k.to_string());
        return *model;
    }
    const auto& ont = std::get<OntologyAssignment>(p.resource);
    EmpiricalModel model;
    model.t = p.t;
    for (const auto& k : contexts) model.contexts.push_back(ContextRow{k, ont.distribution_for(k)});
    model.validate();
    return model;
}

struct RunRow {
    BitVec input;
    BitVec k;
    OutcomeDist dist;
    Rational fail;  // probability the outcome differs from target(input)
};

struct RunReport {
    std::vector<RunRow> rows;  // in ascending input-index order
    Rational epsilon;          // 2^{-r} sum of per-input failure probabilities
};

inline RunReport run(const Protocol& p, const SnapOpts& opts = {}) {
    EmpiricalModel model = resource_model(p, opts);
    RunReport report;
    Rational total = 0;
    for (uint64_t enc = 0; enc < (uint64_t(1) << p.r); ++enc) {
        BitVec i(p.r, enc);
        BitVec k = controls(p, i);
        const OutcomeDist* dist = model.find(k);
        if (!dist) throw MissingContext("no distribution for context " + k.to_string());
        Rational fail = dist->p(1 - p.target.eval(i));
        total += fail;
        report.rows.push_back(RunRow{i, k, *dist, fail});
    }
    report.epsilon = total / Rational(BigInt(1) << p.r);
    return report;
}

struct BoundReport {
    Rational epsilon;
    Rational ncf_value;
    Rational nu_value;
    Rational rhs;  // ncf * nu
    bool holds = false;
    bool tight = false;
};

// Checks epsilon >= NCF(e) * nu(g) in exact arithmetic.
inline BoundReport verify_bound(const Protocol& p, const SnapOpts& opts = {}) {
    BoundReport out;
    out.epsilon = run(p, opts).epsilon;
    out.ncf_value = ncf(resource_model(p, opts)).ncf;
    out.nu_value = nu_fwht(p.target);
    out.rhs = out.ncf_value * out.nu_value;
    out.holds = out.epsilon >= out.rhs;
    out.tight = out.epsilon == out.rhs;
    return out;
}

struct SweepRow {
    Rational q;
    Rational epsilon;
    Rational ncf_value;
    Rational rhs;
    Rational slack;  // epsilon - rhs
};

// One bound verification per noise level; the resource must be a gate spec.
inline std::vector<SweepRow> sweep_noise(const Protocol& p, const std::vector<Rational>& qs,
                                         const SnapOpts& opts = {}) {
    const auto* spec = std::get_if<ResourceSpec>(&p.resource);
    if (!spec) throw InvalidModel("noise sweep requires a gate-spec resource");
    std::vector<SweepRow> rows;
    for (const Rational& q : qs) {
        Protocol noisy = p;
        ResourceSpec s = *spec;
        s.noise_q = q;
        noisy.resource = s;
        BoundReport bound = verify_bound(noisy, opts);
        rows.push_back(SweepRow{q, bound.epsilon, bound.ncf_value, bound.rhs,
                                bound.epsilon - bound.rhs});
    }
    return rows;
}

}  // namespace seqctx
