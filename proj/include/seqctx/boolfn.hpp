#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "seqctx/errors.hpp"
#include "seqctx/gf2.hpp"
#include "seqctx/rational.hpp"

namespace seqctx {

// Shared bit-order contract: input vector i maps to table index
// enc(i) = sum_j i_j * 2^j, so input bit j is bit j of the index.
inline uint64_t enc_index(const BitVec& i) { return i.word(); }

// Truth table of a function Z2^r -> Z2, bit-packed, entry at enc(i).
class BoolFn {
  public:
    BoolFn() = default;
    explicit BoolFn(int arity) : r_(arity) {
        check_arity(arity, 28);
        words_.assign(word_count(), 0);
    }

    static BoolFn from_table(int arity, const std::vector<int>& bits) {
        BoolFn f(arity);
        if (bits.size() != (uint64_t(1) << arity))
            throw ArityMismatch("table length " + std::to_string(bits.size()) +
                                " does not equal 2^" + std::to_string(arity));
        for (uint64_t i = 0; i < bits.size(); ++i) f.set(i, bits[i]);
        return f;
    }

    int arity() const { return r_; }
    uint64_t table_size() const { return uint64_t(1) << r_; }

    int at(uint64_t idx) const {
        if (idx >= table_size())
            throw IndexOutOfRange("table index " + std::to_string(idx) + " out of range");
        return static_cast<int>((words_[idx >> 6] >> (idx & 63)) & 1u);
    }
    void set(uint64_t idx, int bit) {
        if (idx >= table_size())
            throw IndexOutOfRange("table index " + std::to_string(idx) + " out of range");
        if (bit)
            words_[idx >> 6] |= uint64_t(1) << (idx & 63);
        else
            words_[idx >> 6] &= ~(uint64_t(1) << (idx & 63));
    }

    int eval(const BitVec& i) const {
        if (i.size() != r_)
            throw ArityMismatch("input length " + std::to_string(i.size()) +
                                " does not match arity " + std::to_string(r_));
        return at(enc_index(i));
    }

    std::vector<int> table() const {
        std::vector<int> t(table_size());
        for (uint64_t i = 0; i < table_size(); ++i) t[i] = at(i);
        return t;
    }

    // Hamming distance between packed tables; arities must already match.
    uint64_t hamming(const BoolFn& o) const {
        uint64_t d = 0;
        for (size_t w = 0; w < words_.size(); ++w)
            d += static_cast<uint64_t>(std::popcount(words_[w] ^ o.words_[w]));
        return d;
    }

    bool operator==(const BoolFn& o) const = default;

    static void check_arity(int r, int max_r) {
        if (r < 0) throw ArityMismatch("negative arity");
        if (r > max_r)
            throw ArityTooLarge("arity " + std::to_string(r) + " exceeds limit " +
                                std::to_string(max_r));
    }

  private:
    size_t word_count() const { return static_cast<size_t>((table_size() + 63) >> 6); }

    int r_ = 0;
    std::vector<uint64_t> words_;
};

// h(i) = coeffs . i (+) constant, over Z2.
struct AffineFn {
    BitVec coeffs;
    int constant = 0;

    int arity() const { return coeffs.size(); }

    int eval_enc(uint64_t idx) const {
        return (std::popcount(idx & coeffs.word()) & 1) ^ constant;
    }
    int eval(const BitVec& i) const {
        if (i.size() != arity())
            throw ArityMismatch("input length " + std::to_string(i.size()) +
                                " does not match arity " + std::to_string(arity()));
        return coeffs.dot(i) ^ constant;
    }

    BoolFn to_boolfn() const {
        BoolFn f(arity());
        for (uint64_t idx = 0; idx < f.table_size(); ++idx) f.set(idx, eval_enc(idx));
        return f;
    }

    bool operator==(const AffineFn& o) const = default;
};

// Normalized average distance 2^{-r} |{i : g(i) != h(i)}|.
inline Rational distance(const BoolFn& g, const BoolFn& h) {
    if (g.arity() != h.arity())
        throw ArityMismatch("arities " + std::to_string(g.arity()) + " vs " +
                            std::to_string(h.arity()));
    return Rational(BigInt(g.hamming(h)), BigInt(1) << g.arity());
}

enum class AffineFamily {
    affine,  // constant term allowed (the default throughout)
    linear,  // strictly linear, constant forced to 0
};

// All candidate functions, deterministic order: constant-term major, coeffs as
// integer minor. The affine family has 2^{r+1} members, the linear one 2^r.
inline std::vector<AffineFn> enumerate_affine_fns(int r, AffineFamily family = AffineFamily::affine) {
    BoolFn::check_arity(r, 20);
    std::vector<AffineFn> out;
    int c_max = family == AffineFamily::affine ? 2 : 1;
    out.reserve(static_cast<size_t>(c_max) << r);
    for (int c0 = 0; c0 < c_max; ++c0)
        for (uint64_t b = 0; b < (uint64_t(1) << r); ++b)
            out.push_back(AffineFn{BitVec(r, b), c0});
    return out;
}

inline std::vector<BoolFn> enumerate_affine(int r, AffineFamily family = AffineFamily::affine) {
    std::vector<BoolFn> out;
    for (const auto& h : enumerate_affine_fns(r, family)) out.push_back(h.to_boolfn());
    return out;
}

// Nonlinearity by direct minimization over the candidate family.
inline Rational nu_bruteforce(const BoolFn& g, AffineFamily family = AffineFamily::affine) {
    int r = g.arity();
    BoolFn::check_arity(r, 20);
    uint64_t n = g.table_size();
    uint64_t best = n;
    for (uint64_t b = 0; b < n; ++b) {
        BoolFn lin = AffineFn{BitVec(r, b), 0}.to_boolfn();
        uint64_t d0 = g.hamming(lin);
        best = std::min(best, d0);
        if (family == AffineFamily::affine) best = std::min(best, n - d0);
    }
    return Rational(BigInt(best), BigInt(n));
}

// Walsh-Hadamard spectrum of (-1)^g: W(w) = sum_i (-1)^{g(i) xor w.i}.
inline std::vector<int32_t> walsh_spectrum(const BoolFn& g) {
    uint64_t n = g.table_size();
    std::vector<int32_t> v(n);
    for (uint64_t i = 0; i < n; ++i) v[i] = g.at(i) ? -1 : 1;
    for (uint64_t len = 1; len < n; len <<= 1) {
        for (uint64_t block = 0; block < n; block += len << 1) {
            for (uint64_t j = block; j < block + len; ++j) {
                int32_t a = v[j];
                int32_t b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
    return v;
}

// Fast equivalent of nu_bruteforce: nu = (2^r - max_w |W(w)|) / 2^{r+1} for
// the affine family; the strict-linear family drops the absolute value.
inline Rational nu_fwht(const BoolFn& g, AffineFamily family = AffineFamily::affine) {
    BoolFn::check_arity(g.arity(), 28);
    auto spectrum = walsh_spectrum(g);
    int64_t best = INT64_MIN;
    for (int32_t w : spectrum) {
        int64_t v = family == AffineFamily::affine ? std::abs(int64_t(w)) : int64_t(w);
        best = std::max(best, v);
    }
    int64_t n = int64_t(g.table_size());
    return Rational(BigInt(n - best), BigInt(2) * n);
}

}  // namespace seqctx
