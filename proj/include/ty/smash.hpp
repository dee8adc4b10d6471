#pragma once

#include <array>
#include <map>
#include <optional>

#include "ty/split.hpp"

namespace ty {

// Normal form of the smash product: commutative S-part (GStar symbols)
// on the left, U-part PBW word (pos modes) on the right.
struct SmashMono {
  Word s;
  Word u;
  friend auto operator<=>(const SmashMono&, const SmashMono&) = default;
  bool isUnit() const { return s.empty() && u.empty(); }
};

class Smash {
 public:
  Smash() = default;
  static Smash unit() { return scalar(HPoly::one()); }
  static Smash scalar(HPoly c);
  static Smash mono(SmashMono m, HPoly c = HPoly::one());
  static Smash sGen(Mode sym, HPoly c = HPoly::one());
  static Smash uGen(Mode m, HPoly c = HPoly::one());

  bool isZero() const { return t_.empty(); }
  const std::map<SmashMono, HPoly>& terms() const { return t_; }
  HPoly coeff(const SmashMono& m) const;
  void addTerm(const SmashMono& m, const HPoly& c);
  void add(const Smash& o);
  void sub(const Smash& o);
  Smash neg() const;
  Smash scaled(const Rat& c) const;
  Smash scaledH(const HPoly& c, int K) const;
  Smash truncated(int K) const;
  void checkPoly(const char* where) const;

  friend bool operator==(const Smash& a, const Smash& b) { return a.t_ == b.t_; }

  std::string str(const LieAlgebra& g) const;

 private:
  std::map<SmashMono, HPoly> t_;
};

template <size_t N>
using TKey = std::array<SmashMono, N>;
template <size_t N>
using TT = std::map<TKey<N>, HPoly>;  // N-leg tensor over the smash algebra

using TT1 = TT<1>;
using TT2 = TT<2>;
using TT3 = TT<3>;

template <size_t N>
void ttAdd(TT<N>& dst, const TKey<N>& k, const HPoly& c) {
  if (c.isZero()) return;
  auto [it, fresh] = dst.try_emplace(k, c);
  if (!fresh) {
    it->second.add(c);
    if (it->second.isZero()) dst.erase(it);
  }
}

template <size_t N>
void ttMerge(TT<N>& dst, const TT<N>& src, const Rat& scale = Rat(1)) {
  for (const auto& [k, c] : src) ttAdd(dst, k, c.scaled(scale));
}

// The quantized smash-product algebra attached to a splitting, with its
// Hopf structure. Holds the mixed-commutator and coproduct caches.
class SmashCtx {
 public:
  explicit SmashCtx(SplitPair sp) : sp_(std::move(sp)) {}

  const SplitPair& split() const { return sp_; }
  const LieAlgebra& alg() const { return sp_.alg(); }
  int K() const { return sp_.window().K; }

  // [u-mode, S-generator]: a pure S-side element with polynomial
  // deformation coefficients (finiteness by the loop grading).
  Smash mixedComm(Mode um, Mode sym) const;

  Smash mul(const Smash& a, const Smash& b) const;
  Smash power(const Smash& a, int n) const;
  HPoly counit(const Smash& a) const;

  // derivation T and its exponential (finite on generators)
  Smash applyT(const Smash& a) const;
  std::map<int, Smash> tauZ(const Smash& a) const;

  // coproducts of generators (cached) and algebra-map extension
  TT2 deltaU(Mode um) const;
  TT2 deltaS(Mode sym) const;
  TT2 delta(const Smash& a) const;
  TT2 deltaMono(const SmashMono& m) const;

  // antipode: S(f) = -f, S(x) = -mult((S (x) 1) Delta(x) minus x-leg term)
  Smash antipode(const Smash& a) const;

  // z-shifted coproduct (tau_z (x) 1) Delta
  std::map<int, TT2> deltaZShifted(const Smash& a) const;

  // evaluation at hbar = xi
  static Smash evalXi(const Smash& a, const Rat& xi);

  // tensor leg arithmetic
  template <size_t N>
  TT<N> ttMul(const TT<N>& a, const TT<N>& b) const {
    TT<N> out;
    for (const auto& [k1, c1] : a)
      for (const auto& [k2, c2] : b) {
        HPoly c = c1.mulTrunc(c2, K());
        if (c.isZero()) continue;
        // legwise smash products; distribute
        std::vector<std::pair<TKey<N>, HPoly>> acc;
        acc.push_back({TKey<N>{}, c});
        for (size_t l = 0; l < N; ++l) {
          Smash prod = mul(Smash::mono(k1[l]), Smash::mono(k2[l]));
          std::vector<std::pair<TKey<N>, HPoly>> next;
          for (const auto& [key, cc] : acc)
            for (const auto& [m, mc] : prod.terms()) {
              TKey<N> nk = key;
              nk[l] = m;
              HPoly nc = cc.mulTrunc(mc, K());
              if (!nc.isZero()) next.push_back({nk, nc});
            }
          acc = std::move(next);
        }
        for (const auto& [key, cc] : acc) ttAdd(out, key, cc);
      }
    return out;
  }

  // apply Delta to one leg of a 2-leg tensor: legs (0 -> legs 0,1 | 1 -> legs 1,2)
  TT3 deltaOnLeg(const TT2& t, int leg) const;

  // enumeration bounds for duality reconstructions involving a generator of
  // loop degree n against S-degree/loop budgets
  int idxBound(int n) const { return n + K() * sp_.tailDegree() + sp_.tailDegree(); }
  int weightBound(int n) const { return n + 1 + K() * (sp_.tailDegree() + 1); }

 private:
  SplitPair sp_;
  mutable std::map<std::pair<Mode, Mode>, Smash> commCache_;
  mutable std::map<std::pair<Word, Word>, Smash> movePastCache_;
  mutable std::map<Mode, TT2> deltaUCache_;
  mutable std::map<Mode, TT2> deltaSCache_;
  mutable std::map<SmashMono, TT2> deltaMonoCache_;
  mutable std::mutex mtx_;

  Smash movePast(const Word& u, const Word& s) const;
};

// pos-linear element as Smash
Smash posLinear(const std::map<Mode, Rat>& x);

// --- reports ---
struct CheckLine {
  std::string identity;
  bool pass = true;
  std::string witness;
};
struct SuiteReport {
  std::string suite;
  std::string domain;
  std::string window;
  std::vector<CheckLine> lines;
  bool pass() const {
    for (auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

// Hopf axioms on the generator set: coassociativity, counit, antipode,
// and the homomorphism property [Delta x, Delta f] = Delta [x, f].
SuiteReport verifyHopf(const SmashCtx& ctx, const std::vector<Mode>& uGens,
                       const std::vector<Mode>& sGens);

// Delta - Delta^op = hbar delta_rho + O(hbar^2) against the classical module.
SuiteReport verifyQuantization(const SmashCtx& ctx, const RhoMatrix& rho,
                               const std::vector<Mode>& gens);
// the z-shifted variant against delta_{rho,z}, z-coefficientwise
SuiteReport verifyQuantizationZ(const SmashCtx& ctx, const RhoMatrix& rho,
                                const std::vector<Mode>& gens);

}  // namespace ty
