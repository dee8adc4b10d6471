#include "ty/classical.hpp"

#include <algorithm>
#include <sstream>

#include "ty/error.hpp"

namespace ty {

namespace {

void addTo(GLau3& m, const G3Key& k, const Rat& c) {
  if (c.isZero()) return;
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.isZero()) m.erase(it);
  }
}

template <class M, class K>
void accum(M& m, const K& k, const Rat& c) {
  if (c.isZero()) return;
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.isZero()) m.erase(it);
  }
}

std::vector<std::pair<DLabel, Rat>> bracketD(const LieAlgebra& g, DLabel x, DLabel y) {
  std::vector<std::pair<DLabel, Rat>> out;
  if (x.s == Sector::GStar && y.s == Sector::GStar) return out;
  Sector s = (x.s == Sector::GStar || y.s == Sector::GStar) ? Sector::GStar : Sector::G;
  for (const auto& [c, v] : g.bracket(x.a, y.a)) out.push_back({DLabel{c, s}, v});
  return out;
}

}  // namespace

int RMatrixInput::maxTailDegree() const {
  int d = -1;
  for (const auto& [k, c] : tail) {
    auto [a, i, b, j] = k;
    d = std::max({d, i, j});
  }
  return d;
}

bool tailIsDifferenceOnly(const RMatrixInput& r) {
  // (T (x) 1 + 1 (x) T) applied to the tail must vanish
  std::map<std::tuple<int, int, int, int>, Rat> img;
  for (const auto& [k, c] : r.tail) {
    auto [a, i, b, j] = k;
    if (i > 0) accum(img, std::make_tuple(a, i - 1, b, j), c * Rat(i));
    if (j > 0) accum(img, std::make_tuple(a, i, b, j - 1), c * Rat(j));
  }
  return img.empty();
}

std::string domainName(Domain d) {
  switch (d) {
    case Domain::T1GtT2: return "|t1|>|t2|";
    case Domain::T2GtT1: return "|t2|>|t1|";
    case Domain::ZInf: return "z=inf";
    case Domain::Z0: return "z=0";
  }
  return "?";
}

DLau2 expandYang(const LieAlgebra& g, Domain dom, int order) {
  DLau2 out;
  auto C = casimirD(g);
  for (int n = 0; n <= order; ++n)
    for (const auto& [x, y, c] : C) {
      if (dom == Domain::T1GtT2)
        accum(out, D2Key{-n - 1, n, x, y}, c);
      else if (dom == Domain::T2GtT1)
        accum(out, D2Key{n, -n - 1, x, y}, -c);
      else
        fail(Err::Usage, "expandYang expects a t-domain");
    }
  return out;
}

GLau2 expandR(const LieAlgebra& g, const RMatrixInput& r, Domain dom, int order) {
  GLau2 out;
  for (const auto& [a, b, c] : g.casimirG())
    for (int n = 0; n <= order; ++n) {
      if (dom == Domain::T1GtT2)
        accum(out, G2Key{-n - 1, n, a, b}, c);
      else
        accum(out, G2Key{n, -n - 1, a, b}, -c);
    }
  for (const auto& [k, c] : r.tail) {
    auto [a, i, b, j] = k;
    if (i < 0 || j < 0) fail(Err::NotComplementary, "tail exponents must be nonnegative");
    accum(out, G2Key{i, j, a, b}, c);
  }
  return out;
}

GcybeReport validateGcybe(const LieAlgebra& g, const RMatrixInput& r, int order) {
  GcybeReport rep;
  rep.order = order;
  rep.domain = "|t1|>|t2|>|t3|";
  int gen = 2 * order + std::max(r.maxTailDegree(), 0) + 2;
  GLau2 r12 = expandR(g, r, Domain::T1GtT2, gen);  // (t1,t2), |t1|>|t2|
  GLau2 r13 = r12;                                 // (t1,t3), |t1|>|t3|
  GLau2 r23 = r12;                                 // (t2,t3), |t2|>|t3|
  GLau2 r32 = expandR(g, r, Domain::T2GtT1, gen);  // slots (t3,t2), |t2|>|t3|

  GLau3 sum;
  // [r12, r13]: leg 1 collides
  for (const auto& [k1, c1] : r12)
    for (const auto& [k2, c2] : r13)
      for (const auto& [m, v] : g.bracket(k1.a1, k2.a1))
        addTo(sum, G3Key{k1.e1 + k2.e1, k1.e2, k2.e2, m, k1.a2, k2.a2}, c1 * c2 * v);
  // [r12, r23]: leg 2 collides
  for (const auto& [k1, c1] : r12)
    for (const auto& [k2, c2] : r23)
      for (const auto& [m, v] : g.bracket(k1.a2, k2.a1))
        addTo(sum, G3Key{k1.e1, k1.e2 + k2.e1, k2.e2, k1.a1, m, k2.a2}, c1 * c2 * v);
  // [r32, r13]: leg 3 collides; r32 places slot1 -> leg 3, slot2 -> leg 2
  for (const auto& [k1, c1] : r32)
    for (const auto& [k2, c2] : r13)
      for (const auto& [m, v] : g.bracket(k1.a1, k2.a2))
        addTo(sum, G3Key{k2.e1, k1.e2, k1.e1 + k2.e2, k2.a1, k1.a2, m}, c1 * c2 * v);

  for (const auto& [k, c] : sum) {
    if (std::max({std::abs(k.e1), std::abs(k.e2), std::abs(k.e3)}) > order) continue;
    rep.pass = false;
    if (rep.witnesses.size() < 8) {
      std::ostringstream os;
      os << c.str() << " * " << g.label(k.a1) << "(x)" << g.label(k.a2) << "(x)" << g.label(k.a3)
         << " @ t1^" << k.e1 << " t2^" << k.e2 << " t3^" << k.e3;
      rep.witnesses.push_back(os.str());
    }
  }
  return rep;
}

GcybeReport validateCybeRho(const LieAlgebra& g, const RhoMatrix& rho, int order) {
  GcybeReport rep;
  rep.order = order;
  rep.domain = "|t1|>|t2|>|t3|";
  int tailDeg = 0;
  for (const auto& [k, c] : rho.tail) tailDeg = std::max({tailDeg, k.e1, k.e2});
  int gen = 2 * order + tailDeg + 2;
  DLau2 r12 = expandRho(g, rho, Domain::T1GtT2, gen);
  const DLau2& r13 = r12;
  const DLau2& r23 = r12;

  auto brD = [&g](DLabel x, DLabel y) { return bracketD(g, x, y); };
  DLau3 sum;
  auto addCell = [&sum](const D3Key& k, const Rat& c) { accum(sum, k, c); };
  // [r12, r13]
  for (const auto& [k1, c1] : r12)
    for (const auto& [k2, c2] : r13)
      for (const auto& [m, v] : brD(k1.x1, k2.x1))
        addCell(D3Key{k1.e1 + k2.e1, k1.e2, k2.e2, m, k1.x2, k2.x2}, c1 * c2 * v);
  // [r12, r23]
  for (const auto& [k1, c1] : r12)
    for (const auto& [k2, c2] : r23)
      for (const auto& [m, v] : brD(k1.x2, k2.x1))
        addCell(D3Key{k1.e1, k1.e2 + k2.e1, k2.e2, k1.x1, m, k2.x2}, c1 * c2 * v);
  // [r13, r23]
  for (const auto& [k1, c1] : r13)
    for (const auto& [k2, c2] : r23)
      for (const auto& [m, v] : brD(k1.x2, k2.x2))
        addCell(D3Key{k1.e1, k2.e1, k1.e2 + k2.e2, k1.x1, k2.x1, m}, c1 * c2 * v);

  for (const auto& [k, c] : sum) {
    if (std::max({std::abs(k.e1), std::abs(k.e2), std::abs(k.e3)}) > order) continue;
    rep.pass = false;
    if (rep.witnesses.size() < 8) {
      std::ostringstream os;
      os << c.str() << " @ t1^" << k.e1 << " t2^" << k.e2 << " t3^" << k.e3;
      rep.witnesses.push_back(os.str());
    }
  }
  return rep;
}

RhoMatrix liftRho(const LieAlgebra& g, const RMatrixInput& r) {
  RhoMatrix rho;
  rho.gammaCoeff = Rat(1);
  rho.differenceOnly = tailIsDifferenceOnly(r);
  for (const auto& [k, c] : r.tail) {
    auto [a, i, b, j] = k;
    // (1 (x) eps) g
    accum(rho.tail, D2Key{i, j, DLabel{a, Sector::G}, DLabel{b, Sector::GStar}}, c);
    // -(eps (x) 1) tau(g(t2,t1))
    accum(rho.tail, D2Key{j, i, DLabel{b, Sector::GStar}, DLabel{a, Sector::G}}, -c);
  }
  return rho;
}

DLau2 expandRho(const LieAlgebra& g, const RhoMatrix& rho, Domain dom, int order) {
  DLau2 out;
  if (!rho.gammaCoeff.isZero())
    for (auto& [k, c] : expandYang(g, dom, order)) accum(out, k, c * rho.gammaCoeff);
  for (const auto& [k, c] : rho.tail) accum(out, k, c);
  return out;
}

SplittingBasis splittingBasis(const LieAlgebra& g, const RMatrixInput& r, int depth) {
  SplittingBasis sb;
  sb.depth = depth;
  int d = g.dim();
  for (const auto& [k, c] : r.tail) {
    auto [a, i, b, j] = k;
    if (i < 0 || j < 0)
      fail(Err::NotComplementary, "tail exponents negative: r is not in normal form");
  }
  for (int n = 0; n <= depth; ++n)
    for (int a = 0; a < d; ++a) {
      auto& vec = sb.vecs[{a, n}];
      for (int b = 0; b < d; ++b) {
        const Rat& c = g.kappa0inv(a, b);
        if (!c.isZero()) accum(vec, std::make_pair(-n - 1, b), c);
      }
      for (const auto& [k, c] : r.tail) {
        auto [ta, ti, tb, tj] = k;
        if (tb == a && tj == n) accum(vec, std::make_pair(ti, ta), c);
      }
    }
  sb.boundUpper = std::max(r.maxTailDegree(), 0);
  sb.boundLower = r.maxTailDegree() + 2;  // pure dual modes from this depth on

  // closure under bracket up to depth
  for (int n = 0; n <= depth; ++n)
    for (int m = n; m <= depth; ++m) {
      if (n + m + 1 > depth) continue;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          // bracket of the two Laurent vectors
          std::map<std::pair<int, int>, Rat> br;
          const auto& va = sb.vecs.at({a, n});
          const auto& vb = sb.vecs.at({b, m});
          for (const auto& [k1, c1] : va)
            for (const auto& [k2, c2] : vb)
              for (const auto& [cc, v] : g.bracket(k1.second, k2.second))
                accum(br, std::make_pair(k1.first + k2.first, cc), c1 * c2 * v);
          // read off candidate coordinates from the negative part
          std::map<std::pair<int, int>, Rat> rec;
          for (const auto& [k, c] : br) {
            auto [exp, lab] = k;
            if (exp >= 0) continue;
            int kk = -exp - 1;
            // coefficient of r_{c,kk} is kappa0(v, b_c)
            for (int cc = 0; cc < d; ++cc) {
              Rat coef = c * g.kappa0(lab, cc);
              if (coef.isZero()) continue;
              if (kk > depth)
                fail(Err::NotClosed, "bracket [r_{" + g.label(a) + "," + std::to_string(n) +
                                         "}, r_{" + g.label(b) + "," + std::to_string(m) +
                                         "}] needs depth " + std::to_string(kk));
              accum(rec, std::make_pair(cc, kk), coef);
            }
          }
          // verify the reconstruction matches exactly
          std::map<std::pair<int, int>, Rat> resid = br;
          for (const auto& [ck, coef] : rec)
            for (const auto& [k2, c2] : sb.vecs.at(ck)) accum(resid, k2, -(coef * c2));
          if (!resid.empty()) {
            auto& [k0, c0] = *resid.begin();
            fail(Err::NotClosed, "splitting not closed: [r_{" + g.label(a) + "," +
                                     std::to_string(n) + "}, r_{" + g.label(b) + "," +
                                     std::to_string(m) + "}] leaves residue " + c0.str() + "*" +
                                     g.label(k0.second) + " t^" + std::to_string(k0.first));
          }
        }
    }

  // Lagrangian check: residue kappa-pairing of splitting vectors of d(rho).
  // g-sector vectors are r_{a,n}; eps-sector vectors are
  // eps(b^a t^{-n-1} - sum_{b,j} tail[(a,i,b,j)]-row expansion).
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, Rat>> evecs;
  for (int n = 0; n <= depth; ++n)
    for (int a = 0; a < d; ++a) {
      auto& vec = evecs[{a, n}];
      for (int b = 0; b < d; ++b) {
        const Rat& c = g.kappa0inv(a, b);
        if (!c.isZero()) accum(vec, std::make_pair(-n - 1, b), c);
      }
      for (const auto& [k, c] : r.tail) {
        auto [ta, ti, tb, tj] = k;
        if (ta == a && ti == n) accum(vec, std::make_pair(tj, tb), -c);
      }
    }
  for (const auto& [k1, v1] : sb.vecs)
    for (const auto& [k2, v2] : evecs) {
      Rat res(0);
      for (const auto& [t1, c1] : v1)
        for (const auto& [t2, c2] : v2)
          if (t1.first + t2.first == -1) res += c1 * c2 * g.kappa0(t1.second, t2.second);
      if (!res.isZero())
        fail(Err::NotComplementary,
             "splitting is not Lagrangian: residue pairing of r_{" + g.label(k1.first) + "," +
                 std::to_string(k1.second) + "} with eps-vector (" + g.label(k2.first) + "," +
                 std::to_string(k2.second) + ") is " + res.str());
    }
  return sb;
}

std::vector<std::tuple<int, int, Rat>> splitBracket(const LieAlgebra& g, const SplittingBasis& sb,
                                                    int a, int n, int b, int m) {
  std::map<std::pair<int, int>, Rat> br;
  const auto& va = sb.vecs.at({a, n});
  const auto& vb = sb.vecs.at({b, m});
  for (const auto& [k1, c1] : va)
    for (const auto& [k2, c2] : vb)
      for (const auto& [cc, v] : g.bracket(k1.second, k2.second))
        accum(br, std::make_pair(k1.first + k2.first, cc), c1 * c2 * v);
  std::vector<std::tuple<int, int, Rat>> out;  // (c, k, coeff)
  for (const auto& [k, c] : br) {
    auto [exp, lab] = k;
    if (exp >= 0) continue;
    int kk = -exp - 1;
    for (int cc = 0; cc < g.dim(); ++cc) {
      Rat coef = c * g.kappa0(lab, cc);
      if (!coef.isZero()) out.push_back({cc, kk, coef});
    }
  }
  // merge duplicates
  std::map<std::pair<int, int>, Rat> merged;
  for (auto& [c, k, v] : out) accum(merged, std::make_pair(c, k), v);
  out.clear();
  for (auto& [key, v] : merged) out.push_back({key.first, key.second, v});
  return out;
}

DLau2 cobracket(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x, const Window& win) {
  DLau2 out;
  auto C = casimirD(g);
  for (const auto& [mo, hc] : x.terms()) {
    if (mo.n < 0) fail(Err::Usage, "cobracket input must lie in d[t]");
    Rat xc = hc.coeff(0);
    DLabel J{mo.a, mo.s};
    // gamma part: -sum_{i+j=n-1} C' t1^i (x) [C'', J] t2^j
    if (!rho.gammaCoeff.isZero()) {
      for (int i = 0; i + 1 <= mo.n; ++i) {
        int j = mo.n - 1 - i;
        for (const auto& [u, v, c] : C)
          for (const auto& [w, bv] : bracketD(g, v, J))
            accum(out, D2Key{i, j, u, w}, -(rho.gammaCoeff * c * bv * xc));
      }
    }
    // tail part: [X t1^i (x) Y t2^j, J t1^n (x) 1 + 1 (x) J t2^n]
    for (const auto& [k, c] : rho.tail) {
      for (const auto& [w, bv] : bracketD(g, k.x1, J))
        accum(out, D2Key{k.e1 + mo.n, k.e2, w, k.x2}, c * bv * xc);
      for (const auto& [w, bv] : bracketD(g, k.x2, J))
        accum(out, D2Key{k.e1, k.e2 + mo.n, k.x1, w}, c * bv * xc);
    }
  }
  for (const auto& [k, c] : out)
    if (k.e1 < 0 || k.e2 < 0) fail(Err::Internal, "cobracket output left d(O)");
  (void)win;
  return out;
}

std::map<int, DLau2> cobracketZ(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x,
                                const Window& win) {
  if (!rho.differenceOnly)
    fail(Err::RequiresDifferenceDependence, "cobracket_z needs rho = rho(t1 - t2)");
  DLau2 base = cobracket(g, rho, x, win);
  std::map<int, DLau2> out;
  for (const auto& [k, c] : base)
    for (int j = 0; j <= k.e1; ++j)
      accum(out[j], D2Key{k.e1 - j, k.e2, k.x1, k.x2}, c * Rat::binom(k.e1, j));
  for (auto it = out.begin(); it != out.end();)
    it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

DLau2 adActionLeg2(const LieAlgebra& g, const DLau2& t, const DElement& x, int leg) {
  DLau2 out;
  for (const auto& [mo, hc] : x.terms()) {
    Rat xc = hc.coeff(0);
    DLabel J{mo.a, mo.s};
    for (const auto& [k, c] : t) {
      if (leg == 1) {
        for (const auto& [w, bv] : bracketD(g, J, k.x1))
          accum(out, D2Key{k.e1 + mo.n, k.e2, w, k.x2}, c * bv * xc);
      } else {
        for (const auto& [w, bv] : bracketD(g, J, k.x2))
          accum(out, D2Key{k.e1, k.e2 + mo.n, k.x1, w}, c * bv * xc);
      }
    }
  }
  return out;
}

DLau3 deltaOnLeg(const LieAlgebra& g, const RhoMatrix& rho, const DLau2& t, int leg,
                 const Window& win) {
  DLau3 out;
  for (const auto& [k, c] : t) {
    DLabel J = (leg == 1) ? k.x1 : k.x2;
    int n = (leg == 1) ? k.e1 : k.e2;
    DLau2 dl = cobracket(g, rho, DElement::mode(Mode{n, J.a, J.s}), win);
    for (const auto& [dk, dc] : dl) {
      if (leg == 1)
        accum(out, D3Key{dk.e1, dk.e2, k.e2, dk.x1, dk.x2, k.x2}, c * dc);
      else
        accum(out, D3Key{k.e1, dk.e1, dk.e2, k.x1, dk.x1, dk.x2}, c * dc);
    }
  }
  return out;
}

bool checkCocycle(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x, const DElement& y,
                  const Window& win) {
  DLau2 lhs = cobracket(g, rho, cotangentBracket(g, x, y, win), win);
  DLau2 rhs = adActionLeg2(g, cobracket(g, rho, y, win), x, 1);
  for (auto& [k, c] : adActionLeg2(g, cobracket(g, rho, y, win), x, 2)) accum(rhs, k, c);
  for (auto& [k, c] : adActionLeg2(g, cobracket(g, rho, x, win), y, 1)) accum(rhs, k, -c);
  for (auto& [k, c] : adActionLeg2(g, cobracket(g, rho, x, win), y, 2)) accum(rhs, k, -c);
  return lhs == rhs;
}

bool checkCoJacobi(const LieAlgebra& g, const RhoMatrix& rho, const DElement& x,
                   const Window& win) {
  DLau2 dx = cobracket(g, rho, x, win);
  DLau3 a = deltaOnLeg(g, rho, dx, 1, win);  // (delta (x) 1) delta
  DLau3 b = deltaOnLeg(g, rho, dx, 2, win);  // (1 (x) delta) delta
  DLau3 sum;
  for (auto& [k, c] : a) accum(sum, k, c);
  for (auto& [k, c] : b) accum(sum, k, -c);
  // (tau (x) 1)(1 (x) delta) delta: swap legs 1,2 of b
  for (auto& [k, c] : b) accum(sum, D3Key{k.e2, k.e1, k.e3, k.x2, k.x1, k.x3}, c);
  return sum.empty();
}

}  // namespace ty
