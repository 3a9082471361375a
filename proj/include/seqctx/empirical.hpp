#pragma once

#include <vector>

#include "seqctx/errors.hpp"
#include "seqctx/gf2.hpp"
#include "seqctx/rational.hpp"

namespace seqctx {

// Exact-rational distribution over the binary outcome.
struct OutcomeDist {
    Rational p0;
    Rational p1;

    const Rational& p(int outcome) const { return outcome ? p1 : p0; }
    bool operator==(const OutcomeDist& o) const = default;
};

struct ContextRow {
    BitVec k;  // control vector, length t
    OutcomeDist dist;
};

// Per-context outcome distributions of a resource, over exactly the contexts
// the control computer can realize.
struct EmpiricalModel {
    int t = 0;
    std::vector<ContextRow> contexts;

    void validate() const {
        for (size_t a = 0; a < contexts.size(); ++a) {
            const auto& row = contexts[a];
            if (row.k.size() != t)
                throw InvalidModel("context vector length " + std::to_string(row.k.size()) +
                                   " does not match t = " + std::to_string(t));
            if (row.dist.p0 < 0 || row.dist.p1 < 0 || row.dist.p0 > 1 || row.dist.p1 > 1)
                throw InvalidModel("probability outside [0,1] in context " + row.k.to_string());
            if (row.dist.p0 + row.dist.p1 != 1)
                throw InvalidModel("probabilities do not sum to 1 in context " + row.k.to_string());
            for (size_t b = a + 1; b < contexts.size(); ++b)
                if (contexts[b].k == row.k)
                    throw InvalidModel("duplicate context " + row.k.to_string());
        }
    }

    const OutcomeDist* find(const BitVec& k) const {
        for (const auto& row : contexts)
            if (row.k == k) return &row.dist;
        return nullptr;
    }
};

}  // namespace seqctx
