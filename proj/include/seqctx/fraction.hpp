#pragma once

#include <optional>
#include <vector>

#include "seqctx/boolfn.hpp"
#include "seqctx/empirical.hpp"
#include "seqctx/errors.hpp"
#include "seqctx/rational.hpp"
#include "seqctx/simplex.hpp"

namespace seqctx {

// In a commutative (+)L ontology every deterministic non-contextual behaviour
// produces an outcome that is an affine function of the control vector k, so
// the non-contextual polytope is the convex hull of the 2^{t+1} affine
// behaviour vectors over the realizable contexts. Duplicates (affine
// functions agreeing on every realizable context) are retained.
inline std::vector<std::vector<int>> deterministic_behaviours(int t,
                                                              const std::vector<BitVec>& contexts) {
    BoolFn::check_arity(t, 16);
    std::vector<std::vector<int>> out;
    for (const auto& h : enumerate_affine_fns(t)) {
        std::vector<int> row;
        row.reserve(contexts.size());
        for (const auto& k : contexts) row.push_back(h.eval(k));
        out.push_back(std::move(row));
    }
    return out;
}

struct NCFResult {
    Rational ncf;
    // Positive optimal weights, in affine enumeration order (constant-term
    // major, coefficients as integer minor). Their sum equals ncf.
    std::vector<std::pair<AffineFn, Rational>> weights;
    std::optional<EmpiricalModel> residual;  // absent when ncf = 1
};

// Non-contextual fraction by exact rational LP:
//   maximize sum_h w_h
//   subject to, for every context k and outcome o,
//     sum_{h : h(k) = o} w_h <= e_k(o),   w >= 0.
inline NCFResult ncf(const EmpiricalModel& e) {
    e.validate();
    BoolFn::check_arity(e.t, 16);

    std::vector<BitVec> contexts;
    for (const auto& row : e.contexts) contexts.push_back(row.k);
    auto fns = enumerate_affine_fns(e.t);
    auto behaviours = deterministic_behaviours(e.t, contexts);

    size_t n = behaviours.size();
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (size_t ci = 0; ci < contexts.size(); ++ci) {
        for (int o = 0; o < 2; ++o) {
            std::vector<Rational> row(n, Rational(0));
            for (size_t h = 0; h < n; ++h)
                if (behaviours[h][ci] == o) row[h] = 1;
            A.push_back(std::move(row));
            b.push_back(e.contexts[ci].dist.p(o));
        }
    }
    std::vector<Rational> c(n, Rational(1));
    LPResult lp = simplex_maximize(A, b, c);

    NCFResult out;
    out.ncf = lp.objective;
    for (size_t h = 0; h < n; ++h)
        if (lp.x[h] > 0) out.weights.emplace_back(fns[h], lp.x[h]);

    if (out.ncf < 1) {
        EmpiricalModel residual;
        residual.t = e.t;
        Rational rest = 1 - out.ncf;
        for (size_t ci = 0; ci < contexts.size(); ++ci) {
            OutcomeDist matched{Rational(0), Rational(0)};
            for (size_t h = 0; h < n; ++h) {
                if (lp.x[h] == 0) continue;
                (behaviours[h][ci] ? matched.p1 : matched.p0) += lp.x[h];
            }
            residual.contexts.push_back(
                ContextRow{contexts[ci], OutcomeDist{(e.contexts[ci].dist.p0 - matched.p0) / rest,
                                                     (e.contexts[ci].dist.p1 - matched.p1) / rest}});
        }
        residual.validate();
        out.residual = std::move(residual);
    }
    return out;
}

inline Rational cf(const EmpiricalModel& e) { return 1 - ncf(e).ncf; }

inline bool is_strongly_contextual(const EmpiricalModel& e) { return ncf(e).ncf == 0; }

struct Decomposition {
    Rational omega;
    std::optional<EmpiricalModel> nc_part;   // absent when omega = 0
    std::optional<EmpiricalModel> residual;  // absent when omega = 1
};

// Maximal convex split e = omega * e_NC + (1 - omega) * e_residual, exact;
// both parts are valid empirical models over the same contexts.
inline Decomposition decompose(const EmpiricalModel& e) {
    NCFResult r = ncf(e);
    Decomposition out;
    out.omega = r.ncf;
    if (r.ncf > 0) {
        EmpiricalModel nc;
        nc.t = e.t;
        for (size_t ci = 0; ci < e.contexts.size(); ++ci) {
            OutcomeDist d{Rational(0), Rational(0)};
            for (const auto& [h, w] : r.weights) (h.eval(e.contexts[ci].k) ? d.p1 : d.p0) += w;
            d.p0 /= r.ncf;
            d.p1 /= r.ncf;
            nc.contexts.push_back(ContextRow{e.contexts[ci].k, d});
        }
        nc.validate();
        out.nc_part = std::move(nc);
    }
    out.residual = std::move(r.residual);
    return out;
}

}  // namespace seqctx
