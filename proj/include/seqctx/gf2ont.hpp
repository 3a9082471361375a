#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqctx/empirical.hpp"
#include "seqctx/errors.hpp"
#include "seqctx/gf2.hpp"
#include "seqctx/rational.hpp"

namespace seqctx {

using OnticState = BitVec;

// Ontic transformation lambda -> (I (+) A) lambda (+) u. General affine maps
// (diagonal A entries included) are representable because composition
// products can create them; the off-diagonal restriction of single
// transformations is a class membership question, checked by
// validate_commutative_class.
struct GF2AffineMap {
    BitMat A;
    BitVec u;

    int dim() const { return u.size(); }

    static GF2AffineMap identity(int s) { return GF2AffineMap{BitMat(s), BitVec(s)}; }

    void check_consistent() const {
        if (A.dim() != u.size())
            throw DimensionMismatch("matrix dim " + std::to_string(A.dim()) +
                                    " vs offset length " + std::to_string(u.size()));
    }

    bool operator==(const GF2AffineMap& o) const = default;
};

inline void check_same_dim(const GF2AffineMap& f, const GF2AffineMap& g) {
    f.check_consistent();
    g.check_consistent();
    if (f.dim() != g.dim())
        throw DimensionMismatch("map dims " + std::to_string(f.dim()) + " vs " +
                                std::to_string(g.dim()));
}

// NOT(i): lambda (+) delta(i).
inline GF2AffineMap not_gate(int i, int s) {
    return GF2AffineMap{BitMat(s), BitVec::unit(s, i)};
}

// CNOT with control i, target j: A has its only entry at (j, i).
inline GF2AffineMap cnot_gate(int i, int j, int s) {
    if (i == j) throw ControlEqualsTarget("CNOT control and target both " + std::to_string(i));
    return GF2AffineMap{BitMat::single_entry(s, j, i), BitVec(s)};
}

inline OnticState apply_map(const GF2AffineMap& f, const OnticState& lam) {
    f.check_consistent();
    if (lam.size() != f.dim())
        throw DimensionMismatch("state length " + std::to_string(lam.size()) + " vs map dim " +
                                std::to_string(f.dim()));
    return lam ^ f.A.mul(lam) ^ f.u;
}

// Sequential composition, f applied first:
//   apply_map(compose(f, g), lam) == apply_map(g, apply_map(f, lam)).
inline GF2AffineMap compose(const GF2AffineMap& f, const GF2AffineMap& g) {
    check_same_dim(f, g);
    // (I+A_g)(I+A_f) = I + A_f + A_g + A_g A_f
    BitMat a = f.A ^ g.A ^ g.A.mul(f.A);
    BitVec u = f.u ^ g.A.mul(f.u) ^ g.u;
    return GF2AffineMap{a, u};
}

// Affine representations are unique, so equal action on all of Z2^s is
// componentwise equality of the composites.
inline bool commutes(const GF2AffineMap& f, const GF2AffineMap& g) {
    return compose(f, g) == compose(g, f);
}

// Disjoint control/target split covering all s bit positions.
class Partition {
  public:
    Partition() = default;
    Partition(int s, const std::vector<int>& controls, const std::vector<int>& targets) : s_(s) {
        check_gf2_dim(s);
        for (int i : controls) add(controls_, i);
        for (int i : targets) add(targets_, i);
        if (controls_ & targets_) throw InvalidPartition("control and target sets overlap");
        uint64_t all = s == 64 ? ~uint64_t(0) : (uint64_t(1) << s) - 1;
        if ((controls_ | targets_) != all)
            throw InvalidPartition("control and target sets do not cover all bit positions");
    }

    int dim() const { return s_; }
    bool is_control(int i) const { return (controls_ >> i) & 1u; }
    bool is_target(int i) const { return (targets_ >> i) & 1u; }
    uint64_t control_mask() const { return controls_; }
    uint64_t target_mask() const { return targets_; }

    std::vector<int> controls() const { return indices(controls_); }
    std::vector<int> targets() const { return indices(targets_); }

  private:
    void add(uint64_t& mask, int i) {
        if (i < 0 || i >= s_)
            throw InvalidPartition("bit index " + std::to_string(i) + " out of range for s = " +
                                   std::to_string(s_));
        if ((mask >> i) & 1u) throw InvalidPartition("duplicate bit index " + std::to_string(i));
        mask |= uint64_t(1) << i;
    }
    std::vector<int> indices(uint64_t mask) const {
        std::vector<int> out;
        for (int i = 0; i < s_; ++i)
            if ((mask >> i) & 1u) out.push_back(i);
        return out;
    }

    int s_ = 0;
    uint64_t controls_ = 0;
    uint64_t targets_ = 0;
};

// Class membership: A entries only on (target row, control column) positions,
// u supported on target bits. Members pairwise commute and their matrix
// products vanish, so sequence composition collapses to a sum.
inline bool in_commutative_class(const GF2AffineMap& f, const Partition& part) {
    f.check_consistent();
    if (f.dim() != part.dim())
        throw DimensionMismatch("map dim " + std::to_string(f.dim()) + " vs partition dim " +
                                std::to_string(part.dim()));
    if (f.u.word() & ~part.target_mask()) return false;
    for (int r = 0; r < f.dim(); ++r) {
        uint64_t row = f.A.row(r).word();
        if (!row) continue;
        if (!part.is_target(r)) return false;
        if (row & ~part.control_mask()) return false;
    }
    return true;
}

inline bool validate_commutative_class(std::span<const GF2AffineMap> maps, const Partition& part) {
    for (const auto& f : maps)
        if (!in_commutative_class(f, part)) return false;
    return true;
}

// Partition-free membership test: bits touched by any u or any A row must be
// targets, bits read by any A column must be controls; a valid partition
// exists iff those requirements do not clash.
inline std::optional<Partition> infer_class_partition(std::span<const GF2AffineMap> maps, int s) {
    uint64_t need_target = 0;
    uint64_t need_control = 0;
    for (const auto& f : maps) {
        f.check_consistent();
        if (f.dim() != s)
            throw DimensionMismatch("map dim " + std::to_string(f.dim()) +
                                    " vs ambient dim " + std::to_string(s));
        need_target |= f.u.word();
        for (int r = 0; r < s; ++r) {
            uint64_t row = f.A.row(r).word();
            if (!row) continue;
            need_target |= uint64_t(1) << r;
            need_control |= row;
        }
    }
    if (need_target & need_control) return std::nullopt;
    std::vector<int> controls;
    std::vector<int> targets;
    for (int i = 0; i < s; ++i) {
        if ((need_target >> i) & 1u)
            targets.push_back(i);
        else
            controls.push_back(i);  // free bits default to controls
    }
    return Partition(s, controls, targets);
}

// lambda (+) sum A_i lambda (+) sum u_i; equals the left-fold of compose for
// any list admitting a commutative-class partition.
inline OnticState compose_sequence_commutative(std::span<const GF2AffineMap> maps,
                                               const OnticState& lam) {
    if (maps.empty()) return lam;
    if (!infer_class_partition(maps, lam.size()))
        throw NotInCommutativeClass("map list admits no control/target partition");
    OnticState out = lam;
    for (const auto& f : maps) out ^= f.A.mul(lam) ^ f.u;
    return out;
}

// Dichotomic measurement: an ontic transformation followed by readout of one
// fixed entry of the final state vector.
struct OntMeasurement {
    GF2AffineMap pre;
    int readout = 0;

    void check(int s) const {
        pre.check_consistent();
        if (pre.dim() != s)
            throw DimensionMismatch("measurement map dim " + std::to_string(pre.dim()) +
                                    " vs ambient dim " + std::to_string(s));
        if (readout < 0 || readout >= s)
            throw IndexOutOfRange("readout index " + std::to_string(readout) +
                                  " out of range for s = " + std::to_string(s));
    }
};

inline int measure_ont(const OntMeasurement& m, const OnticState& lam) {
    m.check(lam.size());
    return apply_map(m.pre, lam).get(m.readout);
}

// Rational-weighted preparation distribution over ontic states.
struct OnticDistribution {
    std::vector<std::pair<OnticState, Rational>> points;

    static OnticDistribution deterministic(const OnticState& lam) {
        return OnticDistribution{{{lam, Rational(1)}}};
    }

    void validate(int s) const {
        Rational total = 0;
        for (const auto& [state, w] : points) {
            if (state.size() != s)
                throw DimensionMismatch("ontic state length " + std::to_string(state.size()) +
                                        " vs ambient dim " + std::to_string(s));
            if (w < 0) throw InvalidModel("negative preparation weight");
            total += w;
        }
        if (total != 1) throw InvalidModel("preparation weights do not sum to 1");
    }
};

// One controlled transformation slot: the pair of ontic maps selected by the
// control bit.
struct SlotMaps {
    GF2AffineMap off;  // control bit 0
    GF2AffineMap on;   // control bit 1

    const GF2AffineMap& at(int bit) const { return bit ? on : off; }
    GF2AffineMap& at_mut(int bit) { return bit ? on : off; }
};

// A sequential-transformation non-contextual candidate: one fixed map per
// (slot, control value), one measurement, one preparation.
struct OntologyAssignment {
    int s = 0;
    Partition part;
    std::vector<SlotMaps> slots;
    OntMeasurement meas;
    OnticDistribution initial;

    int t() const { return static_cast<int>(slots.size()); }

    void validate(bool relax_measurement = false) const {
        if (part.dim() != s) throw InvalidPartition("partition dim does not match s");
        meas.check(s);
        initial.validate(s);
        for (const auto& slot : slots)
            if (!in_commutative_class(slot.off, part) || !in_commutative_class(slot.on, part))
                throw NotInCommutativeClass("slot map outside the commutative class");
        if (!relax_measurement && !in_commutative_class(meas.pre, part))
            throw NotInCommutativeClass("measurement map outside the commutative class");
    }

    int outcome_for(const BitVec& k, const OnticState& lam) const {
        if (k.size() != t())
            throw DimensionMismatch("context length " + std::to_string(k.size()) +
                                    " does not match slot count " + std::to_string(t()));
        std::vector<GF2AffineMap> seq;
        seq.reserve(slots.size());
        for (int i = 0; i < t(); ++i) seq.push_back(slots[static_cast<size_t>(i)].at(k.get(i)));
        return measure_ont(meas, compose_sequence_commutative(seq, lam));
    }

    OutcomeDist distribution_for(const BitVec& k) const {
        OutcomeDist d{Rational(0), Rational(0)};
        for (const auto& [state, w] : initial.points) {
            if (outcome_for(k, state))
                d.p1 += w;
            else
                d.p0 += w;
        }
        return d;
    }
};

}  // namespace seqctx
