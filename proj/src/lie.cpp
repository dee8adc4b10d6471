#include "ty/lie.hpp"

#include <functional>
#include <sstream>

#include "ty/error.hpp"

namespace ty {

LieSpec LieSpec::sl2() {
  LieSpec s;
  s.dim = 3;
  s.labels = {"e", "f", "h"};
  const int e = 0, f = 1, h = 2;
  s.f[{e, f, h}] = Rat(1);
  s.f[{h, e, e}] = Rat(2);
  s.f[{h, f, f}] = Rat(-2);
  s.kappa0[{e, f}] = Rat(1);
  s.kappa0[{h, h}] = Rat(2);
  return s;
}

LieSpec LieSpec::sl3() {
  // Chevalley-type basis from the fundamental representation, trace form.
  // e1=E12,e2=E23,e3=E13, f1=E21,f2=E32,f3=E31, h1=E11-E22, h2=E22-E33.
  LieSpec s;
  s.dim = 8;
  s.labels = {"e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2"};
  // 3x3 matrix model of each basis vector
  auto unit = [](int i, int j) {
    std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3, Rat(0)));
    m[i][j] = Rat(1);
    return m;
  };
  std::vector<std::vector<std::vector<Rat>>> B;
  B.push_back(unit(0, 1));
  B.push_back(unit(1, 2));
  B.push_back(unit(0, 2));
  B.push_back(unit(1, 0));
  B.push_back(unit(2, 1));
  B.push_back(unit(2, 0));
  {
    auto h1 = unit(0, 0);
    h1[1][1] = Rat(-1);
    B.push_back(h1);
    auto h2 = unit(1, 1);
    h2[2][2] = Rat(-1);
    B.push_back(h2);
  }
  auto mul = [](const auto& x, const auto& y) {
    std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3, Rat(0)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m[i][j] += x[i][k] * y[k][j];
    return m;
  };
  auto tr = [](const auto& x) {
    Rat t(0);
    for (int i = 0; i < 3; ++i) t += x[i][i];
    return t;
  };
  // Dual-basis expansion of commutators via the trace form.
  std::vector<std::vector<Rat>> gram(8, std::vector<Rat>(8, Rat(0)));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) gram[a][b] = tr(mul(B[a], B[b]));
  // invert gram (small, exact Gauss-Jordan)
  std::vector<std::vector<Rat>> inv(8, std::vector<Rat>(8, Rat(0)));
  {
    auto m = gram;
    for (int i = 0; i < 8; ++i) inv[i][i] = Rat(1);
    for (int col = 0; col < 8; ++col) {
      int piv = -1;
      for (int r = col; r < 8; ++r)
        if (!m[r][col].isZero()) {
          piv = r;
          break;
        }
      std::swap(m[col], m[piv]);
      std::swap(inv[col], inv[piv]);
      Rat p = m[col][col];
      for (int j = 0; j < 8; ++j) {
        m[col][j] /= p;
        inv[col][j] /= p;
      }
      for (int r = 0; r < 8; ++r) {
        if (r == col || m[r][col].isZero()) continue;
        Rat q = m[r][col];
        for (int j = 0; j < 8; ++j) {
          m[r][j] -= q * m[col][j];
          inv[r][j] -= q * inv[col][j];
        }
      }
    }
  }
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      auto comm = mul(B[a], B[b]);
      auto ba = mul(B[b], B[a]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) comm[i][j] -= ba[i][j];
      // coefficient of basis c: sum_d inv[c][d] tr(B[d] * comm)
      for (int c = 0; c < 8; ++c) {
        Rat coef(0);
        for (int d = 0; d < 8; ++d) coef += inv[c][d] * tr(mul(B[d], comm));
        if (!coef.isZero()) s.f[{a, b, c}] = coef;
      }
      Rat k = gram[a][b];
      if (!k.isZero() && a <= b) s.kappa0[{a, b}] = k;
    }
  return s;
}

LieAlgebra::LieAlgebra(const LieSpec& spec) {
  d_ = spec.dim;
  if (d_ <= 0) fail(Err::Usage, "algebra dimension must be positive");
  labels_ = spec.labels;
  if ((int)labels_.size() != d_) {
    labels_.resize(d_);
    for (int a = 0; a < d_; ++a)
      if (labels_[a].empty()) labels_[a] = "x" + std::to_string(a + 1);
  }
  auto name = [&](int a) { return labels_[a]; };

  f_.assign(d_, std::vector<std::vector<Rat>>(d_, std::vector<Rat>(d_, Rat(0))));
  for (const auto& [key, c] : spec.f) {
    auto [a, b, cc] = key;
    if (a < 0 || a >= d_ || b < 0 || b >= d_ || cc < 0 || cc >= d_)
      fail(Err::Usage, "structure constant index out of range");
    f_[a][b][cc] += c;
  }
  // complete/verify antisymmetry
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c < d_; ++c) {
        if (a == b) {
          if (!f_[a][a][c].isZero())
            fail(Err::JacobiViolation, "f is not antisymmetric: [" + name(a) + "," + name(a) +
                                           "] has nonzero coefficient of " + name(c));
          continue;
        }
        Rat& up = f_[b][a][c];
        Rat& dn = f_[a][b][c];
        if (up.isZero() && !dn.isZero())
          up = -dn;
        else if (dn.isZero() && !up.isZero())
          dn = -up;
        else if (!(up + dn).isZero())
          fail(Err::JacobiViolation, "f is not antisymmetric on ([" + name(b) + "," + name(a) +
                                         "], " + name(c) + ")");
      }
  // Jacobi by exhaustive loop
  for (int a = 0; a < d_; ++a)
    for (int b = a + 1; b < d_; ++b)
      for (int c = b + 1; c < d_; ++c)
        for (int e = 0; e < d_; ++e) {
          Rat s(0);
          for (int dd = 0; dd < d_; ++dd)
            s += f_[a][b][dd] * f_[dd][c][e] + f_[b][c][dd] * f_[dd][a][e] +
                 f_[c][a][dd] * f_[dd][b][e];
          if (!s.isZero())
            fail(Err::JacobiViolation, "Jacobi fails on (" + name(a) + "," + name(b) + "," +
                                           name(c) + ") at component " + name(e));
        }

  br_.assign(d_, std::vector<std::vector<std::pair<int, Rat>>>(d_));
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b)
      for (int c = 0; c < d_; ++c)
        if (!f_[a][b][c].isZero()) br_[a][b].push_back({c, f_[a][b][c]});

  k0_.assign(d_, std::vector<Rat>(d_, Rat(0)));
  for (const auto& [key, c] : spec.kappa0) {
    auto [a, b] = key;
    if (a < 0 || a >= d_ || b < 0 || b >= d_) fail(Err::Usage, "kappa0 index out of range");
    k0_[a][b] = c;
    k0_[b][a] = c;
  }
  // invariance: kappa0([x,y],w) + kappa0(y,[x,w]) = 0 on basis triples
  for (int x = 0; x < d_; ++x)
    for (int y = 0; y < d_; ++y)
      for (int w = 0; w < d_; ++w) {
        Rat s(0);
        for (const auto& [c, v] : br_[x][y]) s += v * k0_[c][w];
        for (const auto& [c, v] : br_[x][w]) s += v * k0_[y][c];
        if (!s.isZero())
          fail(Err::FormNotInvariant,
               "kappa0 not invariant on (" + name(x) + "," + name(y) + "," + name(w) + ")");
      }
  // inverse by exact Gauss-Jordan; degeneracy reported with the pivot column
  {
    auto m = k0_;
    k0inv_.assign(d_, std::vector<Rat>(d_, Rat(0)));
    for (int i = 0; i < d_; ++i) k0inv_[i][i] = Rat(1);
    for (int col = 0; col < d_; ++col) {
      int piv = -1;
      for (int r = col; r < d_; ++r)
        if (!m[r][col].isZero()) {
          piv = r;
          break;
        }
      if (piv < 0)
        fail(Err::FormDegenerate, "kappa0 is degenerate (no pivot in column " + name(col) + ")");
      std::swap(m[col], m[piv]);
      std::swap(k0inv_[col], k0inv_[piv]);
      Rat p = m[col][col];
      for (int j = 0; j < d_; ++j) {
        m[col][j] /= p;
        k0inv_[col][j] /= p;
      }
      for (int r = 0; r < d_; ++r) {
        if (r == col || m[r][col].isZero()) continue;
        Rat q = m[r][col];
        for (int j = 0; j < d_; ++j) {
          m[r][j] -= q * m[col][j];
          k0inv_[r][j] -= q * k0inv_[col][j];
        }
      }
    }
  }

  dual_.assign(d_, std::vector<Rat>(d_, Rat(0)));
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b) dual_[a][b] = k0inv_[a][b];

  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b)
      if (!k0inv_[a][b].isZero()) casG_.push_back({a, b, k0inv_[a][b]});

  // content fingerprint for cache versioning
  std::ostringstream os;
  os << d_;
  for (const auto& l : labels_) os << ":" << l;
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b)
      for (int c = 0; c < d_; ++c)
        if (!f_[a][b][c].isZero()) os << "|" << a << "," << b << "," << c << "=" << f_[a][b][c].str();
  for (int a = 0; a < d_; ++a)
    for (int b = a; b < d_; ++b)
      if (!k0_[a][b].isZero()) os << "|k" << a << "," << b << "=" << k0_[a][b].str();
  hash_ = std::to_string(std::hash<std::string>{}(os.str()));
}

int LieAlgebra::labelIndex(const std::string& s) const {
  for (int a = 0; a < d_; ++a)
    if (labels_[a] == s) return a;
  return -1;
}

Rat LieAlgebra::form(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  Rat r(0);
  for (int a = 0; a < d_; ++a) {
    if (x[a].isZero()) continue;
    for (int b = 0; b < d_; ++b) r += x[a] * k0_[a][b] * y[b];
  }
  return r;
}

}  // namespace ty
