#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "seqctx/empirical.hpp"
#include "seqctx/errors.hpp"
#include "seqctx/gf2.hpp"
#include "seqctx/rational.hpp"

namespace seqctx {

inline constexpr double kAmplitudeTol = 1e-9;
inline constexpr uint64_t kDefaultMaxDen = uint64_t(1) << 20;

using Complex = std::complex<double>;

struct QubitState {
    Complex amp0;
    Complex amp1;

    double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }

    void check_normalized() const {
        if (std::abs(norm_sq() - 1.0) > kAmplitudeTol)
            throw Error("qubit state is not normalized");
    }
};

struct Unitary2 {
    Complex m00, m01, m10, m11;

    void check_unitary() const {
        // U U^dagger = I entrywise
        Complex a = m00 * std::conj(m00) + m01 * std::conj(m01);
        Complex b = m00 * std::conj(m10) + m01 * std::conj(m11);
        Complex c = m10 * std::conj(m00) + m11 * std::conj(m01);
        Complex d = m10 * std::conj(m10) + m11 * std::conj(m11);
        if (std::abs(a - 1.0) > kAmplitudeTol || std::abs(b) > kAmplitudeTol ||
            std::abs(c) > kAmplitudeTol || std::abs(d - 1.0) > kAmplitudeTol)
            throw Error("matrix is not unitary");
    }
};

inline QubitState prepare_plus() {
    double h = 1.0 / std::numbers::sqrt2;
    return QubitState{Complex(h, 0), Complex(h, 0)};
}

// diag(1, e^{i theta})
inline Unitary2 phase_gate(double theta) {
    if (!std::isfinite(theta)) throw Error("phase angle must be finite");
    return Unitary2{Complex(1, 0), Complex(0, 0), Complex(0, 0), std::polar(1.0, theta)};
}

inline QubitState apply(const Unitary2& u, const QubitState& psi) {
    u.check_unitary();
    psi.check_normalized();
    QubitState out{u.m00 * psi.amp0 + u.m01 * psi.amp1, u.m10 * psi.amp0 + u.m11 * psi.amp1};
    out.check_normalized();
    return out;
}

struct XDistribution {
    double p0;  // P(+1 eigenvalue, outcome 0)
    double p1;  // P(-1 eigenvalue, outcome 1)
};

// P(0) = |<+|psi>|^2, P(1) = |<-|psi>|^2.
inline XDistribution measure_x(const QubitState& psi) {
    psi.check_normalized();
    double p0 = 0.5 * std::norm(psi.amp0 + psi.amp1);
    double p1 = 0.5 * std::norm(psi.amp0 - psi.amp1);
    return XDistribution{p0, p1};
}

// Controlled phase-gate resource: transformation i applies
// phase_gate(pi * gate_angles_over_pi[i]) when its control bit is 1. With
// probability noise_q the measurement outcome is replaced by a uniform bit.
struct ResourceSpec {
    std::vector<double> gate_angles_over_pi;
    Rational noise_q = 0;

    int t() const { return static_cast<int>(gate_angles_over_pi.size()); }

    void validate() const {
        if (gate_angles_over_pi.empty()) throw InvalidModel("resource needs at least one gate");
        if (noise_q < 0 || noise_q > 1) throw InvalidModel("noise_q outside [0,1]");
        for (double a : gate_angles_over_pi)
            if (!std::isfinite(a)) throw InvalidModel("gate angle must be finite");
    }
};

// Simulates each context, snaps the noiseless probabilities to exact
// rationals, then applies the outcome-noise channel in rational arithmetic so
// the q-noisy model is exactly (1-q) * noiseless + q * uniform.
inline EmpiricalModel resource_empirical_model(const ResourceSpec& spec,
                                               const std::vector<BitVec>& contexts,
                                               double tol = kAmplitudeTol,
                                               uint64_t max_den = kDefaultMaxDen) {
    spec.validate();
    EmpiricalModel model;
    model.t = spec.t();
    for (const BitVec& k : contexts) {
        if (k.size() != spec.t())
            throw DimensionMismatch("context length " + std::to_string(k.size()) +
                                    " does not match t = " + std::to_string(spec.t()));
        QubitState psi = prepare_plus();
        for (int i = 0; i < spec.t(); ++i)
            if (k.get(i))
                psi = apply(phase_gate(std::numbers::pi * spec.gate_angles_over_pi[i]), psi);
        XDistribution d = measure_x(psi);
        Rational p0 = rationalize(d.p0, tol, max_den);
        Rational p1 = rationalize(d.p1, tol, max_den);
        if (p0 + p1 != 1)
            throw RationalizationFailure("context " + k.to_string() +
                                         ": probabilities do not rationalize to a distribution");
        const Rational& q = spec.noise_q;
        Rational half(1, 2);
        model.contexts.push_back(
            ContextRow{k, OutcomeDist{(1 - q) * p0 + q * half, (1 - q) * p1 + q * half}});
    }
    model.validate();
    return model;
}

}  // namespace seqctx
