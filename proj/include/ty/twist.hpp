#pragma once

#include "ty/tensor.hpp"

namespace ty {

// exp(x) = exp(xNeg) exp(xPos) across the splitting; unique.
struct Factorization {
  AlgElem xNeg;  // linear in the split basis of neg, coefficients in hbar
  std::map<Mode, HPoly> xPos;
};

// x: ambient-linear element of positive deformation valuation; the split
// must carry its basis (loop splits).
Factorization factorize(const SplitPair& sp, ModeAlg& ambient, const std::map<Mode, HPoly>& x);

// F = E_{r2}^{-1} E_{r1}; cells with S-side indices <= N are exact. The
// result lands in S (x) U(g[t]) for rational input pairs (checked).
TT2 twistMatrix(const LieAlgebra& g, const RMatrixInput& r1, const RMatrixInput& r2,
                ModeAlg& ambient, int N, int K);

// verification of the quantum-twist identities at the given window
SuiteReport verifyTwist(const SmashCtx& ctx1, const SmashCtx& ctx2, const TT2& f,
                        const RMatrixInput& r1, const RMatrixInput& r2,
                        const std::vector<Mode>& uGens, const std::vector<Mode>& sGens);

}  // namespace ty
