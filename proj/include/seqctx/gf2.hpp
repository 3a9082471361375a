#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "seqctx/errors.hpp"

namespace seqctx {

// Vectors and matrices over Z2, bit-packed one dimension per bit of a machine
// word. Dimensions are capped at 64; every search and protocol in this
// library lives far below that.
inline constexpr int kMaxGF2Dim = 64;

inline void check_gf2_dim(int n) {
    if (n < 0 || n > kMaxGF2Dim)
        throw DimensionTooLarge("GF(2) dimension " + std::to_string(n) + " not in [0, 64]");
}

class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int len, uint64_t bits = 0) : len_(len), bits_(bits) {
        check_gf2_dim(len);
        bits_ &= mask();
    }

    static BitVec unit(int len, int i) {
        BitVec v(len);
        v.set(i, 1);
        return v;
    }

    int size() const { return len_; }
    uint64_t word() const { return bits_; }

    int get(int i) const {
        check_index(i);
        return static_cast<int>((bits_ >> i) & 1u);
    }
    void set(int i, int bit) {
        check_index(i);
        if (bit)
            bits_ |= uint64_t(1) << i;
        else
            bits_ &= ~(uint64_t(1) << i);
    }

    bool is_zero() const { return bits_ == 0; }
    int popcount() const { return std::popcount(bits_); }

    BitVec operator^(const BitVec& o) const {
        check_same(o);
        return BitVec(len_, bits_ ^ o.bits_);
    }
    BitVec& operator^=(const BitVec& o) {
        check_same(o);
        bits_ ^= o.bits_;
        return *this;
    }
    BitVec operator&(const BitVec& o) const {
        check_same(o);
        return BitVec(len_, bits_ & o.bits_);
    }

    // Inner product over Z2.
    int dot(const BitVec& o) const {
        check_same(o);
        return std::popcount(bits_ & o.bits_) & 1;
    }

    bool operator==(const BitVec& o) const = default;

    // Index 0 is the leftmost character.
    std::string to_string() const {
        std::string s(static_cast<size_t>(len_), '0');
        for (int i = 0; i < len_; ++i)
            if (get(i)) s[static_cast<size_t>(i)] = '1';
        return s;
    }

  private:
    uint64_t mask() const {
        return len_ == 64 ? ~uint64_t(0) : (uint64_t(1) << len_) - 1;
    }
    void check_index(int i) const {
        if (i < 0 || i >= len_)
            throw IndexOutOfRange("bit index " + std::to_string(i) + " out of range for length " +
                                  std::to_string(len_));
    }
    void check_same(const BitVec& o) const {
        if (len_ != o.len_)
            throw DimensionMismatch("vector lengths " + std::to_string(len_) + " vs " +
                                    std::to_string(o.len_));
    }

    int len_ = 0;
    uint64_t bits_ = 0;
};

// Square matrix over Z2, one word per row.
class BitMat {
  public:
    BitMat() = default;
    explicit BitMat(int n) : n_(n), rows_(static_cast<size_t>(n), 0) { check_gf2_dim(n); }

    static BitMat single_entry(int n, int row, int col) {
        BitMat m(n);
        m.set(row, col, 1);
        return m;
    }

    int dim() const { return n_; }

    int get(int r, int c) const {
        check_index(r);
        check_index(c);
        return static_cast<int>((rows_[static_cast<size_t>(r)] >> c) & 1u);
    }
    void set(int r, int c, int bit) {
        check_index(r);
        check_index(c);
        if (bit)
            rows_[static_cast<size_t>(r)] |= uint64_t(1) << c;
        else
            rows_[static_cast<size_t>(r)] &= ~(uint64_t(1) << c);
    }

    BitVec row(int r) const {
        check_index(r);
        return BitVec(n_, rows_[static_cast<size_t>(r)]);
    }
    BitVec col(int c) const {
        check_index(c);
        BitVec v(n_);
        for (int r = 0; r < n_; ++r) v.set(r, get(r, c));
        return v;
    }

    bool is_zero() const {
        for (auto w : rows_)
            if (w) return false;
        return true;
    }

    BitVec mul(const BitVec& v) const {
        if (v.size() != n_)
            throw DimensionMismatch("matrix dim " + std::to_string(n_) + " vs vector length " +
                                    std::to_string(v.size()));
        BitVec out(n_);
        for (int r = 0; r < n_; ++r)
            out.set(r, std::popcount(rows_[static_cast<size_t>(r)] & v.word()) & 1);
        return out;
    }

    BitMat mul(const BitMat& o) const {
        check_same(o);
        BitMat out(n_);
        for (int r = 0; r < n_; ++r) {
            uint64_t acc = 0;
            uint64_t lhs_row = rows_[static_cast<size_t>(r)];
            while (lhs_row) {
                int j = std::countr_zero(lhs_row);
                lhs_row &= lhs_row - 1;
                acc ^= o.rows_[static_cast<size_t>(j)];
            }
            out.rows_[static_cast<size_t>(r)] = acc;
        }
        return out;
    }

    BitMat operator^(const BitMat& o) const {
        check_same(o);
        BitMat out(n_);
        for (int r = 0; r < n_; ++r)
            out.rows_[static_cast<size_t>(r)] =
                rows_[static_cast<size_t>(r)] ^ o.rows_[static_cast<size_t>(r)];
        return out;
    }

    bool operator==(const BitMat& o) const = default;

  private:
    void check_index(int i) const {
        if (i < 0 || i >= n_)
            throw IndexOutOfRange("matrix index " + std::to_string(i) + " out of range for dim " +
                                  std::to_string(n_));
    }
    void check_same(const BitMat& o) const {
        if (n_ != o.n_)
            throw DimensionMismatch("matrix dims " + std::to_string(n_) + " vs " +
                                    std::to_string(o.n_));
    }

    int n_ = 0;
    std::vector<uint64_t> rows_;
};

}  // namespace seqctx
