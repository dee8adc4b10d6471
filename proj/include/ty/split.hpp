#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ty/classical.hpp"
#include "ty/pbw.hpp"

namespace ty {

// A Lie algebra splitting p = pos (+) neg realized computationally:
//  - pos: straightening context of the regular side (concrete loop modes of
//    g(O), or the acting summand of a finite matched pair);
//  - neg: straightening context of the complementary side in its own basis
//    {r_{a,n}}, encoded as modes (a, n) with n >= 0 the depth index;
//  - cross: [posMode, negGen] decomposed into the two sides;
//  - the S-side symbols s_{a,n} (GStar modes) pair diagonally with the neg
//    basis: <s_{a,n}, r_{b,m}> = delta_ab delta_nm.
enum class SplitKind { Loop, Finite };

class SplitPair {
 public:
  using CrossFn = std::function<void(Mode, Mode, std::vector<std::pair<Mode, Rat>>& posPart,
                                     std::vector<std::pair<Mode, Rat>>& negPart)>;

  SplitPair(const LieAlgebra& g, Window win, std::shared_ptr<ModeAlg> pos,
            std::shared_ptr<ModeAlg> neg, CrossFn cross, int posLabels, int negLabels,
            int tailDegree, SplitKind kind)
      : g_(&g),
        win_(win),
        pos_(std::move(pos)),
        neg_(std::move(neg)),
        cross_(std::move(cross)),
        posLabels_(posLabels),
        negLabels_(negLabels),
        tailDeg_(tailDegree),
        kind_(kind) {}

  SplitKind kind() const { return kind_; }
  // splitting basis of the neg side (loop splits only; null for finite pairs)
  std::shared_ptr<const SplittingBasis> basis() const { return basis_; }
  void setBasis(std::shared_ptr<const SplittingBasis> b) { basis_ = std::move(b); }

  const LieAlgebra& alg() const { return *g_; }
  const Window& window() const { return win_; }
  ModeAlg& pos() const { return *pos_; }
  ModeAlg& neg() const { return *neg_; }
  int posLabelCount() const { return posLabels_; }
  int negLabelCount() const { return negLabels_; }
  int tailDegree() const { return tailDeg_; }
  bool loopGraded() const { return tailDeg_ == 0; }

  void cross(Mode posMode, Mode negGen, std::vector<std::pair<Mode, Rat>>& posPart,
             std::vector<std::pair<Mode, Rat>>& negPart) const {
    cross_(posMode, negGen, posPart, negPart);
  }

 private:
  const LieAlgebra* g_;
  Window win_;
  std::shared_ptr<ModeAlg> pos_;
  std::shared_ptr<ModeAlg> neg_;
  CrossFn cross_;
  int posLabels_, negLabels_;
  int tailDeg_;
  SplitKind kind_;
  std::shared_ptr<const SplittingBasis> basis_;
};

// The loop splitting g(K) = g(O) (+) g(r) for Yang's r-matrix (r_{a,n} =
// b^a t^{-n-1}) or a validated rational tail.
SplitPair makeLoopSplit(const LieAlgebra& g, const RMatrixInput& r, Window win);

// Finite-dimensional matched pair p = pPlus (+) pMinus; quantizes
// pMinus x| pPlus^*. Throws NotSubalgebra / NotDirectSum.
struct MatchedPairSpec {
  LieSpec p;
  std::vector<int> plus;   // basis indices of p_+
  std::vector<int> minus;  // basis indices of p_-
};
SplitPair makeMatchedPairSplit(const LieAlgebra& p, const MatchedPairSpec& spec, Window win);

// ----- matched-pair actions -----

// x <| mu for a pos mode and a neg word: iterated pos-projected brackets.
std::map<Mode, Rat> rightActionPrim(const SplitPair& sp, Mode x, const Word& mu);
// linear extension to pos elements
std::map<Mode, Rat> rightActionPrim(const SplitPair& sp, const std::map<Mode, Rat>& x,
                                    const Word& mu);

// x |> mu in U(neg): h |> (a b) = (h_(1) |> a_(1)) ((h_(2) <| a_(2)) |> b).
AlgElem leftAction(const SplitPair& sp, Mode x, const Word& mu);

// ----- divided-power duality -----

// Plain sigma-pairing of an S-monomial (sorted GStar word, labels (a,n))
// with an element of U(neg): permanent convention through the
// symmetrization isomorphism; degree mismatch pairs through the lower
// components of sigma^{-1}.
HPoly pairPlain(const SplitPair& sp, const Word& sMono, const AlgElem& a);
// The glued functional: hbar^{-deg} * pairPlain.
HPoly pairPhi(const SplitPair& sp, const Word& sMono, const AlgElem& a);

// Enumeration of neg PBW monomials: all sorted words with the given maximal
// length, per-letter depth index and total weight sum(n_i + 1).
std::vector<Word> enumNegWords(const SplitPair& sp, int maxLen, int maxIdx, int maxWeight);

}  // namespace ty
