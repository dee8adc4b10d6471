#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ty/modes.hpp"

namespace ty {

// A PBW word: modes in nondecreasing context order for normal-formed
// monomials. The empty word is the unit.
using Word = std::vector<Mode>;

std::string wordKey(const Word& w);                 // stable serialization key
Word wordFromKey(const std::string& s);

// Sparse element of a (truncated) enveloping or symmetric algebra.
class AlgElem {
 public:
  AlgElem() = default;
  static AlgElem unit() { return scalar(HPoly::one()); }
  static AlgElem scalar(HPoly c);
  static AlgElem monomial(Word w, HPoly c = HPoly::one());

  bool isZero() const { return t_.empty(); }
  const std::map<Word, HPoly>& terms() const { return t_; }
  HPoly coeff(const Word& w) const;

  void addTerm(const Word& w, const HPoly& c);
  void add(const AlgElem& o);
  void sub(const AlgElem& o);
  AlgElem neg() const;
  AlgElem scaled(const Rat& c) const;
  AlgElem scaledH(const HPoly& c, int K) const;
  AlgElem shiftedH(int dk) const;  // multiply by hbar^dk
  AlgElem truncated(int K) const;

  int maxWordLen() const;
  // Largest loop degree bound check etc. left to contexts.

  friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.t_ == b.t_; }

  std::string str(const LieAlgebra& g) const;

 private:
  std::map<Word, HPoly> t_;
};

// Straightening context: a mode algebra given by a bracket on modes.
// Memoizes normal forms; safe for concurrent readers with exclusive insert.
class ModeAlg {
 public:
  using BracketFn = std::function<std::vector<std::pair<Mode, Rat>>(Mode, Mode)>;

  ModeAlg(Window win, BracketFn bracket, bool commutative = false)
      : win_(win), bracket_(std::move(bracket)), commutative_(commutative) {}

  const Window& window() const { return win_; }
  bool commutative() const { return commutative_; }

  std::vector<std::pair<Mode, Rat>> bracket(Mode a, Mode b) const;

  // Normal order of an arbitrary word; equals the product of its letters.
  AlgElem normalOrder(const Word& w) const;
  AlgElem multiply(const AlgElem& a, const AlgElem& b) const;
  AlgElem power(const AlgElem& a, int n) const;

  // exp of an element of positive deformation valuation.
  AlgElem expTrunc(const AlgElem& x) const;
  // log of 1 + (positive valuation).
  AlgElem logTrunc(const AlgElem& a) const;
  // Baker-Campbell-Hausdorff via log(exp x exp y); inputs primitive.
  AlgElem bch(const AlgElem& x, const AlgElem& y) const;

  // Inverse of the symmetrization coalgebra isomorphism: decomposition of a
  // normal-formed word as a polynomial (sorted words = commutative
  // monomials) in the symmetric algebra. Coefficients are rational.
  std::map<Word, Rat> symInv(const Word& w) const;
  // The symmetrization map S -> U on a commutative monomial.
  AlgElem symApply(const Word& w) const;

  // Straightening cache access (persistence across runs).
  size_t cacheSize() const;
  void cacheDump(std::map<std::string, std::map<std::string, std::string>>& out) const;
  void cacheLoad(const std::map<std::string, std::map<std::string, std::string>>& in);

 private:
  AlgElem normalOrderUncached(const Word& w) const;

  Window win_;
  BracketFn bracket_;
  bool commutative_;
  mutable std::map<Word, AlgElem> cache_;
  mutable std::map<Word, std::map<Word, Rat>> symCache_;
  mutable std::mutex mtx_;
};

// Cocommutative coproduct of a PBW monomial algebra: Delta(w) as a sum of
// split pairs with multinomial coefficients.
std::map<std::pair<Word, Word>, Rat> coproductWord(const Word& w);
std::map<std::pair<Word, Word>, HPoly> coproductU(const AlgElem& a);

}  // namespace ty
