#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "seqctx/errors.hpp"
#include "seqctx/gf2.hpp"
#include "seqctx/gf2ont.hpp"

namespace seqctx {

// The four sequential contexts of the single-qubit AND protocol, indexed by
// (a, b) as 2a+b: transformations U(a), V(b), W(a xor b).
inline std::array<BitVec, 4> and_protocol_contexts() {
    std::array<BitVec, 4> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            BitVec k(3);
            k.set(0, a);
            k.set(1, b);
            k.set(2, a ^ b);
            out[static_cast<size_t>(2 * a + b)] = k;
        }
    return out;
}

// Left-hand sides of the four context equations for a candidate
// non-contextual assignment (slots U, V, W in order).
inline std::array<int, 4> evaluate_contexts(const OntologyAssignment& assignment,
                                            bool relax_measurement = false) {
    if (assignment.t() != 3)
        throw DimensionMismatch("context evaluation needs exactly 3 transformation slots, got " +
                                std::to_string(assignment.t()));
    assignment.validate(relax_measurement);
    if (assignment.initial.points.size() != 1 || assignment.initial.points[0].second != 1)
        throw InvalidModel("context evaluation needs a deterministic preparation");
    const OnticState& lam = assignment.initial.points[0].first;
    std::array<int, 4> out{};
    auto contexts = and_protocol_contexts();
    for (size_t c = 0; c < 4; ++c) out[c] = assignment.outcome_for(contexts[c], lam);
    return out;
}

// XOR of the four context outcomes; zero for every class-valid assignment
// because each ontic vector enters the sum an even number of times.
inline int parity_check(const OntologyAssignment& assignment, bool relax_measurement = false) {
    auto outs = evaluate_contexts(assignment, relax_measurement);
    return outs[0] ^ outs[1] ^ outs[2] ^ outs[3];
}

// Enumeration order contract for assignments, shared with the search below:
// lexicographic over (lambda, j, U(0), U(1), V(0), V(1), W(0), W(1), M),
// where lambda enumerates bit tuples (lambda_0, ..., lambda_{s-1})
// lexicographically, and each class map enumerates its free bits (A support
// cells in row-major order, then u bits by ascending position)
// lexicographically. bitvec_from_lex_rank realizes that order as an integer.
inline BitVec bitvec_from_lex_rank(int len, uint64_t rank) {
    BitVec v(len);
    for (int i = 0; i < len; ++i) v.set(i, static_cast<int>((rank >> (len - 1 - i)) & 1u));
    return v;
}

// Free coordinates of the commutative class for one partition: A cells on
// (target row, control column) in row-major order, then u positions.
class ClassMapSpace {
  public:
    explicit ClassMapSpace(const Partition& part) : s_(part.dim()) {
        for (int r = 0; r < s_; ++r) {
            if (!part.is_target(r)) continue;
            for (int c = 0; c < s_; ++c)
                if (part.is_control(c)) cells_.push_back({r, c});
        }
        for (int i = 0; i < s_; ++i)
            if (part.is_target(i)) u_positions_.push_back(i);
    }

    int free_bits() const { return static_cast<int>(cells_.size() + u_positions_.size()); }
    uint64_t size() const { return uint64_t(1) << free_bits(); }

    GF2AffineMap map_at(uint64_t index) const {
        GF2AffineMap f = GF2AffineMap::identity(s_);
        int nbits = free_bits();
        int pos = 0;
        for (const auto& [r, c] : cells_)
            f.A.set(r, c, static_cast<int>((index >> (nbits - 1 - pos++)) & 1u));
        for (int i : u_positions_)
            f.u.set(i, static_cast<int>((index >> (nbits - 1 - pos++)) & 1u));
        return f;
    }

  private:
    int s_;
    std::vector<std::pair<int, int>> cells_;
    std::vector<int> u_positions_;
};

struct SearchResult {
    int max_satisfied = 0;
    OntologyAssignment witness;
};

namespace detail {

// Outcome of context (a,b) given the per-slot scalars alpha_T(k) and the
// measurement/preparation base bit. All dependence of the context equations
// on a class-valid assignment factors through these seven bits.
inline int scalar_outcome(int a, int b, const std::array<int, 6>& alpha, int base) {
    return alpha[static_cast<size_t>(a)] ^ alpha[static_cast<size_t>(2 + b)] ^
           alpha[static_cast<size_t>(4 + (a ^ b))] ^ base;
}

inline int scalar_match_count(const std::array<int, 4>& target, const std::array<int, 6>& alpha,
                              int base) {
    int n = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            n += scalar_outcome(a, b, alpha, base) == target[static_cast<size_t>(2 * a + b)];
    return n;
}

// Best match count over completions where alpha[i] = -1 marks a slot still
// free to take any realizable value.
inline int best_completion(const std::array<int, 4>& target, std::array<int, 6> alpha,
                           int slots_can_one, int base_lo, int base_hi) {
    std::vector<size_t> free_slots;
    for (size_t i = 0; i < 6; ++i)
        if (alpha[i] < 0) free_slots.push_back(i);
    int best = 0;
    uint32_t combos = uint32_t(1) << free_slots.size();
    for (uint32_t m = 0; m < combos; ++m) {
        for (size_t i = 0; i < free_slots.size(); ++i) {
            int bit = static_cast<int>((m >> i) & 1u);
            if (bit && !slots_can_one) goto next;
            alpha[free_slots[i]] = bit;
        }
        for (int base = base_lo; base <= base_hi; ++base)
            best = std::max(best, scalar_match_count(target, alpha, base));
    next:;
    }
    return best;
}

}  // namespace detail

// Exhaustively searches every class-valid assignment for the partition and
// reports the most contexts any of them matches, with the first maximizing
// witness in enumeration order. The context outcomes depend on an assignment
// only through one scalar per slot, (A lambda (+) u) . delta_j, so the scan
// enumerates scalar patterns per (lambda, j) and reconstructs the
// lexicographically first witness slot by slot; results coincide with literal
// enumeration of all assignments.
inline SearchResult exhaustive_search(int s, const Partition& part,
                                      const std::array<int, 4>& target,
                                      bool relax_measurement = false) {
    if (s < 1 || s > 4)
        throw DimensionTooLarge("exhaustive search supports 1 <= s <= 4, got " + std::to_string(s));
    if (part.dim() != s) throw InvalidPartition("partition dim does not match s");

    ClassMapSpace space(part);
    uint64_t states = uint64_t(1) << s;

    // Realizable scalar values: a class map can contribute 1 at readout j only
    // if j is a target bit (via its u entry); otherwise row j of A and bit j
    // of u are both forced to zero. Under the relaxed measurement the base
    // bit is free regardless of j.
    auto scan_best = [&](const BitVec& lam, int j) {
        int can_one = part.is_target(j) ? 1 : 0;
        std::array<int, 6> all_free;
        all_free.fill(-1);
        int lam_j = lam.get(j);
        if (!relax_measurement) {
            int base_lo = can_one ? 0 : lam_j;
            int base_hi = can_one ? 1 : lam_j;
            return detail::best_completion(target, all_free, can_one, base_lo, base_hi);
        }
        // Relaxed: the measurement reads covector d = delta_j (+) row_j(A_M);
        // slot scalars become (A lambda (+) u) . d and the base bit is free.
        int best = 0;
        for (uint64_t d = 0; d < states; ++d) {
            int slots_can_one = (d & part.target_mask()) ? 1 : 0;
            best = std::max(best, detail::best_completion(target, all_free, slots_can_one, 0, 1));
        }
        return best;
    };

    int overall = 0;
    for (uint64_t lam_rank = 0; lam_rank < states; ++lam_rank) {
        BitVec lam = bitvec_from_lex_rank(s, lam_rank);
        for (int j = 0; j < s; ++j) overall = std::max(overall, scan_best(lam, j));
    }

    // Witness: first (lambda, j) block attaining the overall max, then greedy
    // lexicographic choice per slot with completion feasibility checks.
    for (uint64_t lam_rank = 0; lam_rank < states; ++lam_rank) {
        BitVec lam = bitvec_from_lex_rank(s, lam_rank);
        for (int j = 0; j < s; ++j) {
            if (scan_best(lam, j) != overall) continue;

            OntologyAssignment witness;
            witness.s = s;
            witness.part = part;
            witness.initial = OnticDistribution::deterministic(lam);
            witness.meas.readout = j;
            witness.slots.resize(3);

            if (!relax_measurement) {
                int can_one = part.is_target(j) ? 1 : 0;
                int lam_j = lam.get(j);
                std::array<int, 6> fixed;
                fixed.fill(-1);
                auto feasible = [&](const std::array<int, 6>& partial) {
                    return detail::best_completion(target, partial, can_one,
                                                   can_one ? 0 : lam_j, can_one ? 1 : lam_j) ==
                           overall;
                };
                for (size_t slot = 0; slot < 6; ++slot) {
                    bool found = false;
                    for (uint64_t m = 0; m < space.size() && !found; ++m) {
                        GF2AffineMap f = space.map_at(m);
                        std::array<int, 6> trial = fixed;
                        trial[slot] = f.A.row(j).dot(lam) ^ f.u.get(j);
                        if (feasible(trial)) {
                            fixed = trial;
                            witness.slots[slot / 2].at_mut(static_cast<int>(slot % 2)) = f;
                            found = true;
                        }
                    }
                    if (!found) throw Error("witness reconstruction lost feasibility");
                }
                for (uint64_t m = 0; m < space.size(); ++m) {
                    GF2AffineMap f = space.map_at(m);
                    int base = lam_j ^ (f.A.row(j).dot(lam) ^ f.u.get(j));
                    if (detail::scalar_match_count(target, fixed, base) == overall) {
                        witness.meas.pre = f;
                        return SearchResult{overall, witness};
                    }
                }
            } else {
                // Slot maps first (M is last in enumeration order), checking
                // feasibility over all measurement covectors d and base bits.
                std::vector<GF2AffineMap> chosen;
                auto feasible = [&](const std::vector<GF2AffineMap>& maps_so_far) {
                    for (uint64_t d_word = 0; d_word < states; ++d_word) {
                        BitVec d(s, d_word);
                        int can_one = (d_word & part.target_mask()) ? 1 : 0;
                        std::array<int, 6> partial;
                        partial.fill(-1);
                        for (size_t i = 0; i < maps_so_far.size(); ++i)
                            partial[i] = (maps_so_far[i].A.mul(lam) ^ maps_so_far[i].u).dot(d);
                        if (detail::best_completion(target, partial, can_one, 0, 1) == overall)
                            return true;
                    }
                    return false;
                };
                for (size_t slot = 0; slot < 6; ++slot) {
                    bool found = false;
                    for (uint64_t m = 0; m < space.size() && !found; ++m) {
                        chosen.push_back(space.map_at(m));
                        if (feasible(chosen))
                            found = true;
                        else
                            chosen.pop_back();
                    }
                    if (!found) throw Error("witness reconstruction lost feasibility");
                    witness.slots[slot / 2].at_mut(static_cast<int>(slot % 2)) = chosen[slot];
                }
                // Literal scan over all (A_M, u_M), lexicographic.
                uint64_t m_bits = uint64_t(s) * uint64_t(s) + uint64_t(s);
                for (uint64_t m = 0; m < (uint64_t(1) << m_bits); ++m) {
                    GF2AffineMap f = GF2AffineMap::identity(s);
                    int pos = 0;
                    for (int r = 0; r < s; ++r)
                        for (int c = 0; c < s; ++c)
                            f.A.set(r, c,
                                    static_cast<int>((m >> (m_bits - 1 - pos++)) & 1u));
                    for (int i = 0; i < s; ++i)
                        f.u.set(i, static_cast<int>((m >> (m_bits - 1 - pos++)) & 1u));
                    witness.meas.pre = f;
                    auto outs = evaluate_contexts(witness, true);
                    int matched = 0;
                    for (size_t c = 0; c < 4; ++c) matched += outs[c] == target[c];
                    if (matched == overall) return SearchResult{overall, witness};
                }
            }
        }
    }
    throw Error("exhaustive search failed to reconstruct a witness");  // unreachable
}

// All 2^s control/target splits of {0,...,s-1}, in ascending order of the
// control-set bitmask.
inline std::vector<Partition> all_partitions(int s) {
    check_gf2_dim(s);
    std::vector<Partition> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << s); ++mask) {
        std::vector<int> controls;
        std::vector<int> targets;
        for (int i = 0; i < s; ++i)
            ((mask >> i) & 1u ? controls : targets).push_back(i);
        out.emplace_back(s, controls, targets);
    }
    return out;
}

}  // namespace seqctx
