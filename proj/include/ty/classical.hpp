#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ty/modes.hpp"
#include "ty/window.hpp"

namespace ty {

// Polynomial tail of a generalized r-matrix in normal form r = gamma_g + g,
// g = sum c * b_a t1^i (x) b_b t2^j with i, j >= 0.
struct RMatrixInput {
  std::map<std::tuple<int, int, int, int>, Rat> tail;  // (a,i,b,j) -> c
  bool differenceOnly = false;
  int depthBound = 8;

  int maxTailDegree() const;  // largest t-exponent in the tail, -1 if empty
};

// (T (x) 1 + 1 (x) T) g == 0, i.e. g depends on t1 - t2 only.
bool tailIsDifferenceOnly(const RMatrixInput& r);

enum class Domain { T1GtT2, T2GtT1, ZInf, Z0 };
std::string domainName(Domain d);

// Sparse Laurent tensors over g and over d with explicit exponents.
struct G2Key {
  int e1, e2;
  int a1, a2;
  friend auto operator<=>(const G2Key&, const G2Key&) = default;
};
struct G3Key {
  int e1, e2, e3;
  int a1, a2, a3;
  friend auto operator<=>(const G3Key&, const G3Key&) = default;
};
struct D2Key {
  int e1, e2;
  DLabel x1, x2;
  friend auto operator<=>(const D2Key&, const D2Key&) = default;
};
struct D3Key {
  int e1, e2, e3;
  DLabel x1, x2, x3;
  friend auto operator<=>(const D3Key&, const D3Key&) = default;
};
using GLau2 = std::map<G2Key, Rat>;
using GLau3 = std::map<G3Key, Rat>;
using DLau2 = std::map<D2Key, Rat>;
using DLau3 = std::map<D3Key, Rat>;

// Yang kernel C_d/(t1-t2) expanded in the tagged domain up to the given
// order of the nonnegative-exponent leg.
DLau2 expandYang(const LieAlgebra& g, Domain dom, int order);

// The generalized r-matrix r = gamma_g + tail expanded over g in a domain.
GLau2 expandR(const LieAlgebra& g, const RMatrixInput& r, Domain dom, int order);

struct GcybeReport {
  bool pass = true;
  int order = 0;
  std::string domain;
  std::vector<std::string> witnesses;  // nonzero cells, pretty-printed
};

// Evaluates [r12,r13]+[r12,r23]+[r32,r13] to the given order in the domain
// |t1|>|t2|>|t3|. Failure is a report, not an exception.
GcybeReport validateGcybe(const LieAlgebra& g, const RMatrixInput& r, int order);

// CYBE for a skew r-matrix with coefficients in d:
// [rho12,rho13]+[rho12,rho23]+[rho13,rho23] in |t1|>|t2|>|t3|.
GcybeReport validateCybeRho(const LieAlgebra& g, const struct RhoMatrix& rho, int order);

// eps-graded lift with coefficients in d: rho = gamma_d + polynomial tail.
struct RhoMatrix {
  Rat gammaCoeff;  // multiple of C_d/(t1-t2)
  DLau2 tail;      // polynomial part, exponents >= 0
  bool differenceOnly = false;
};

RhoMatrix liftRho(const LieAlgebra& g, const RMatrixInput& r);
// rho as a pure Laurent expansion (kernel materialized) for oracle checks.
DLau2 expandRho(const LieAlgebra& g, const RhoMatrix& rho, Domain dom, int order);

// Splitting basis of g(r): r_{a,n} = b^a t^{-n-1} + tail columns, n <= depth.
struct SplittingBasis {
  // (a, n) -> sparse Laurent vector over g: (exp, label) -> coeff
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, Rat>> vecs;
  int depth = 0;
  // bounds: t^{-lower} g[t^-1] subseteq g(r) subseteq t^{upper} g[t^-1]
  int boundLower = 0, boundUpper = 0;
};

// Throws NotClosed / NotComplementary with a witness; verifies the Lagrangian
// property of g(r) + eps g(r)^perp under the residue pairing.
SplittingBasis splittingBasis(const LieAlgebra& g, const RMatrixInput& r, int depth);

// Structure constants of g(r) in the splitting basis: [r_{a,n}, r_{b,m}] =
// sum lambda r_{c,k}. Exact for k within depth.
std::vector<std::tuple<int, int, Rat>> splitBracket(const LieAlgebra& g, const SplittingBasis& sb,
                                                    int a, int n, int b, int m);

// delta_rho(x) = [rho(t1,t2), x(t1) (x) 1 + 1 (x) x(t2)], exact polynomial
// output for x in d[t] and rational rho.
DLau2 cobracket(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x, const Window& win);

// delta_{rho,z} = (tau_z (x) 1) delta_rho; key = z power. Requires a
// difference-only rho.
std::map<int, DLau2> cobracketZ(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x,
                                const Window& win);

// ad-action helpers for the classical identity checks
DLau2 adActionLeg2(const LieAlgebra& g, const DLau2& t, const DElement& x, int leg);
DLau3 deltaOnLeg(const LieAlgebra& g, const RhoMatrix& rho, const DLau2& t, int leg,
                 const Window& win);

// 1-cocycle identity: delta([x,y]) - [x.., delta(y)] + [y.., delta(x)] = 0.
bool checkCocycle(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x, const DElement& y,
                  const Window& win);
// co-Jacobi: (delta (x) 1)delta - (1 (x) delta)delta + (tau (x) 1)(1 (x) delta)delta = 0.
bool checkCoJacobi(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x, const Window& win);

}  // namespace ty
