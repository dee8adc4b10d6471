#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ty/hpoly.hpp"
#include "ty/lie.hpp"
#include "ty/window.hpp"

namespace ty {

enum class Sector : uint8_t { G = 0, GStar = 1 };

// A bigraded mode symbol: basis label a, loop degree n, sector. The global
// order (n, a, sector) realizes "negative loop degrees first, then loop
// ascending, then label, then g before g-star".
struct Mode {
  int n = 0;
  int a = 0;
  Sector s = Sector::G;

  friend auto operator<=>(const Mode&, const Mode&) = default;

  int epsDeg() const { return s == Sector::GStar ? 2 : 0; }
  std::string str(const LieAlgebra& g) const;
};

// A label of the finite-dimensional algebra d = g + eps g (no loop degree).
struct DLabel {
  int a = 0;
  Sector s = Sector::G;
  friend auto operator<=>(const DLabel&, const DLabel&) = default;
};

// Sparse element of (a truncation of) d(K): finitely many modes with exact
// coefficient polynomials.
class DElement {
 public:
  DElement() = default;
  static DElement mode(Mode m, Rat c = Rat(1));

  bool isZero() const { return t_.empty(); }
  const std::map<Mode, HPoly>& terms() const { return t_; }
  void addTerm(Mode m, const HPoly& c);
  void add(const DElement& o);
  DElement neg() const;
  DElement scaled(const Rat& c) const;

  friend bool operator==(const DElement& a, const DElement& b) { return a.t_ == b.t_; }

  std::string str(const LieAlgebra& g) const;

 private:
  std::map<Mode, HPoly> t_;
};

// [m1, m2] in d(K); loop degrees add, the g-star sector is an abelian ideal.
std::vector<std::pair<Mode, Rat>> bracketModes(const LieAlgebra& g, Mode m1, Mode m2);

// Bilinear extension; throws WindowOverflow when a resulting loop degree
// leaves the window.
DElement cotangentBracket(const LieAlgebra& g, const DElement& x, const DElement& y,
                          const Window& win);

// Split Casimir of d: sum (kappa0^{-1})^{ab} (b_a (x) eps b_b + eps b_b (x) b_a).
std::vector<std::tuple<DLabel, DLabel, Rat>> casimirD(const LieAlgebra& g);

// Residue-type pairing on d: kappa(x, eps y) = kappa0(x, y), kappa(x,y)=0=kappa(eps x, eps y).
Rat kappaD(const LieAlgebra& g, DLabel x, DLabel y);

// T = d/dt on modes: T(J t^n) = n J t^{n-1}.
DElement derivationT(const DElement& x);

// tau_z = e^{zT} as an exact polynomial in z (input must have nonnegative
// loop degrees). Key = power of z.
std::map<int, DElement> translate(const DElement& x);

}  // namespace ty
