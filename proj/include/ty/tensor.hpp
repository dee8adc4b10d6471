#pragma once

#include "ty/smash.hpp"

namespace ty {

// Ambient straightening context: all loop modes of g (the local field).
std::shared_ptr<ModeAlg> makeAmbient(const LieAlgebra& g, Window win);

// Legwise product of S (x) U-typed two-leg tensors: leg 1 must be pure-S,
// leg 2 pure-U with words multiplied in the ambient algebra. (No smash
// crossing: the legs are genuine tensor factors.)
TT2 extMul(ModeAlg& ambient, const TT2& a, const TT2& b, int K);
// geometric inverse of a tensor with unit leading term 1 (x) 1
TT2 extInverse(ModeAlg& ambient, const TT2& a, int K);

// E_r = exp(hbar sum_{a, n<=N} s_{a,n} (x) r_{a,n}) with the splitting
// vectors realized in the ambient algebra. Exact on cells whose S-side
// indices are <= N.
TT2 eMatrix(const LieAlgebra& g, const RMatrixInput& r, ModeAlg& ambient, int N, int K);

// the canonical-embedding evaluation: first leg must be pure-S
// (LegTypeMismatch otherwise); A lives in U(neg) of the split.
AlgElem tensorAsMap(const SplitPair& sp, const TT2& t, const AlgElem& a);

// U(g(K)) in splitting-adapted coordinates: letters with n < 0 encode the
// splitting basis (r_{a,-n-1}), letters with n >= 0 are regular modes. The
// normal form puts the complementary side on the left, realizing the
// factorization U(g(K)) = U(g(r)) (x) U(g(O)).
std::shared_ptr<ModeAlg> makeAdaptedAlg(const LieAlgebra& g,
                                        std::shared_ptr<const SplittingBasis> sb, Window win);
// rewrite an ambient element in adapted coordinates
AlgElem adaptedFromAmbient(const LieAlgebra& g, ModeAlg& adapted, const SplittingBasis& sb,
                           const AlgElem& a);
// (counit (x) 1) of the factorization: keep the regular component
AlgElem projectRegular(const AlgElem& a);

// inverse of tensorAsMap: values on neg PBW monomials -> S (x) U tensor.
// Throws UnderdeterminedWindow if the value set is not deletion-closed.
TT2 reconstructTensor(const SplitPair& sp, const std::map<Word, AlgElem>& values);

// plain-pairing roundtrip of the two coproduct definitions and S-side
// multiplicativity live in the test suite.

}  // namespace ty
