#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ty/rational.hpp"

namespace ty {

// Raw structure data of a finite-dimensional Lie algebra with an invariant
// bilinear form. Indices are 0-based internally.
struct LieSpec {
  int dim = 0;
  std::vector<std::string> labels;
  // (a,b,c) -> coefficient of basis c in [b_a, b_b]; sparse, antisymmetry is
  // completed (storing one orientation is enough, both may be given).
  std::map<std::tuple<int, int, int>, Rat> f;
  std::map<std::pair<int, int>, Rat> kappa0;  // symmetric, sparse

  static LieSpec sl2();  // e,f,h with trace form
  static LieSpec sl3();  // Chevalley basis with trace form
};

// Validated algebra handle. Caches the full bracket table, kappa0, its
// inverse and the split Casimir.
class LieAlgebra {
 public:
  // Throws JacobiViolation / FormDegenerate / FormNotInvariant with the
  // failing triple named.
  explicit LieAlgebra(const LieSpec& spec);

  int dim() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_[a]; }
  int labelIndex(const std::string& s) const;  // -1 if unknown

  const Rat& f(int a, int b, int c) const { return f_[a][b][c]; }
  // [b_a, b_b] as sparse list of (c, coeff)
  const std::vector<std::pair<int, Rat>>& bracket(int a, int b) const { return br_[a][b]; }

  const Rat& kappa0(int a, int b) const { return k0_[a][b]; }
  const Rat& kappa0inv(int a, int b) const { return k0inv_[a][b]; }
  // coordinates of the dual vector b^a = sum_b (kappa0^{-1})^{ab} b_b
  const std::vector<Rat>& dualVector(int a) const { return dual_[a]; }

  // C_g = sum_{a,b} (kappa0^{-1})^{ab} b_a (x) b_b as sparse pairs
  const std::vector<std::tuple<int, int, Rat>>& casimirG() const { return casG_; }

  // kappa0(x, y) for coordinate vectors
  Rat form(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  std::string specHash() const { return hash_; }  // stable content fingerprint

 private:
  int d_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::vector<Rat>>> f_;
  std::vector<std::vector<std::vector<std::pair<int, Rat>>>> br_;
  std::vector<std::vector<Rat>> k0_, k0inv_;
  std::vector<std::vector<Rat>> dual_;
  std::vector<std::tuple<int, int, Rat>> casG_;
  std::string hash_;
};

}  // namespace ty
