#include "ty/twist.hpp"

#include <algorithm>

#include "ty/error.hpp"

namespace ty {

namespace {

// split an ambient-linear element into (neg coordinates, pos part)
void splitLinear(const SplitPair& sp, const LieAlgebra& g, const SplittingBasis& sb,
                 const std::map<Mode, HPoly>& x, std::map<Mode, HPoly>& negCoord,
                 std::map<Mode, HPoly>& posPart) {
  negCoord.clear();
  posPart.clear();
  std::map<Mode, HPoly> rest = x;
  for (const auto& [m, c] : x) {
    if (m.n >= 0) continue;
    int k = -m.n - 1;
    for (int a = 0; a < g.dim(); ++a) {
      Rat coef = g.kappa0(m.a, a);
      if (coef.isZero()) continue;
      HPoly cc = c.scaled(coef);
      auto [it, fresh] = negCoord.try_emplace(Mode{k, a, Sector::G}, cc);
      if (!fresh) {
        it->second.add(cc);
        if (it->second.isZero()) negCoord.erase(it);
      }
      // subtract coef * r_{a,k} realized in the ambient algebra
      for (const auto& [t, v] : sb.vecs.at({a, k})) {
        Mode am{t.first, t.second, Sector::G};
        auto [jt, fr] = rest.try_emplace(am, HPoly());
        jt->second.sub(cc.scaled(v));
        if (jt->second.isZero()) rest.erase(am);
      }
    }
  }
  for (const auto& [m, c] : rest) {
    if (m.n < 0) fail(Err::Internal, "linear splitting left a negative residual");
    if (!c.isZero()) posPart[m] = c;
  }
}

AlgElem linearToElem(const std::map<Mode, HPoly>& x) {
  AlgElem out;
  for (const auto& [m, c] : x) out.addTerm({m}, c);
  return out;
}

}  // namespace

Factorization factorize(const SplitPair& sp, ModeAlg& ambient, const std::map<Mode, HPoly>& x) {
  if (!sp.basis()) fail(Err::Usage, "factorize requires a loop splitting");
  const SplittingBasis& sb = *sp.basis();
  const LieAlgebra& g = sp.alg();
  int K = sp.window().K;
  for (const auto& [m, c] : x)
    if (!c.isZero() && c.minExp() < 1)
      fail(Err::NotTopologicallyNilpotent, "factorize requires positive deformation valuation");

  AlgElem ex = ambient.expTrunc(linearToElem(x));
  std::map<Mode, HPoly> negC, posP;
  // iterate: peel the negative part order by order
  std::map<Mode, HPoly> xneg;  // ambient realization of the accumulated neg part
  std::map<Mode, HPoly> negCoordTotal;
  for (int iter = 0; iter <= K + 1; ++iter) {
    AlgElem enegInv = ambient.expTrunc(linearToElem(xneg).neg());
    AlgElem d = ambient.logTrunc(ambient.multiply(enegInv, ex));
    // linear part of d
    std::map<Mode, HPoly> dl;
    for (const auto& [w, c] : d.terms()) {
      if (w.size() != 1) continue;
      dl[w[0]] = c;
    }
    splitLinear(sp, g, sb, dl, negC, posP);
    if (negC.empty()) break;
    // add the ambient realization of negC to xneg
    for (const auto& [m, c] : negC) {
      auto [it, fresh] = negCoordTotal.try_emplace(m, c);
      if (!fresh) it->second.add(c);
      for (const auto& [t, v] : sb.vecs.at({m.a, m.n})) {
        Mode am{t.first, t.second, Sector::G};
        auto [jt, fr] = xneg.try_emplace(am, HPoly());
        jt->second.add(c.scaled(v));
        if (jt->second.isZero()) xneg.erase(am);
      }
    }
  }
  // final check: exp(xneg) exp(xpos) == exp(x)
  AlgElem enegInv = ambient.expTrunc(linearToElem(xneg).neg());
  AlgElem rest = ambient.logTrunc(ambient.multiply(enegInv, ex));
  std::map<Mode, HPoly> dl;
  for (const auto& [w, c] : rest.terms()) {
    if (w.size() == 1) {
      if (w[0].n < 0) fail(Err::Internal, "factorization left a negative linear part");
      dl[w[0]] = c;
    } else if (!c.isZero()) {
      fail(Err::Internal, "factorization remainder is not primitive");
    }
  }
  Factorization out;
  for (const auto& [m, c] : negCoordTotal)
    if (!c.isZero()) out.xNeg.addTerm({m}, c);
  out.xPos = dl;
  return out;
}

TT2 twistMatrix(const LieAlgebra& g, const RMatrixInput& r1, const RMatrixInput& r2,
                ModeAlg& ambient, int N, int K) {
  // F is characterized by its associated map e^{hx} -> e^{hx_+} for
  // x in g(r1), i.e. on monomials by the (counit (x) 1)-component of the
  // factorization U(g(K)) = U(g(r2)) (x) U(g(O)). The tensor is recovered
  // through the duality of the r1 splitting. (The naive legwise product
  // E_{r2}^{-1} E_{r1} differs from this beyond first order: the counit
  // extension of the duality depends on the splitting.)
  Window win = ambient.window();
  win.K = K;
  SplitPair sp1 = makeLoopSplit(g, r1, win);
  int depth = 2 * std::max(N, 1) + 2 + std::max(r2.maxTailDegree(), 0);
  auto sb2 = std::make_shared<const SplittingBasis>(splittingBasis(g, r2, depth));
  Window aw = win;
  aw.loopMin = -depth - 1;
  auto adapted = makeAdaptedAlg(g, sb2, aw);

  const SplittingBasis& sb1 = *sp1.basis();
  auto realize = [&](const Word& mu) {
    AlgElem out = AlgElem::unit();
    for (const auto& r : mu) {
      AlgElem lin;
      for (const auto& [t, v] : sb1.vecs.at({r.a, r.n}))
        lin.addTerm({Mode{t.first, t.second, Sector::G}}, HPoly(v));
      out = ambient.multiply(out, lin);
    }
    return out;
  };

  auto mons = enumNegWords(sp1, K, N, K * (N + 1));
  std::map<Word, AlgElem> values;
  for (const auto& mu : mons)
    values[mu] = projectRegular(adaptedFromAmbient(g, *adapted, *sb2, realize(mu)));
  TT2 f = reconstructTensor(sp1, values);
  for (const auto& [k, c] : f) {
    c.checkPoly("twistMatrix");
    for (const auto& u : k[1].u)
      if (u.n < 0) fail(Err::Internal, "twist matrix has an irregular U-leg");
  }
  return f;
}

SuiteReport verifyTwist(const SmashCtx& ctx1, const SmashCtx& ctx2, const TT2& f,
                        const RMatrixInput& r1, const RMatrixInput& r2,
                        const std::vector<Mode>& uGens, const std::vector<Mode>& sGens) {
  SuiteReport rep;
  rep.suite = "twist";
  const LieAlgebra& g = ctx1.alg();
  int K = ctx1.K();

  // 1. conjugation: Delta_{rho2}(a) F = F Delta_{rho1}(a)
  auto conj = [&](const Smash& gen, const std::string& nm) {
    CheckLine l;
    l.identity = "F-conjugates-Delta(" + nm + ")";
    TT2 lhs = ctx2.ttMul(ctx2.delta(gen), f);
    TT2 rhs = ctx2.ttMul(f, ctx1.delta(gen));
    l.pass = (lhs == rhs);
    rep.lines.push_back(l);
  };
  for (const auto& m : uGens) conj(Smash::uGen(m), "I_" + g.label(m.a) + "_" + std::to_string(m.n));
  for (const auto& m : sGens) conj(Smash::sGen(m), "I^" + g.label(m.a) + "_" + std::to_string(m.n));

  // 2. cocycle: (Delta_{rho2} (x) 1)(F) F^{12} = (1 (x) Delta_{rho2})(F) F^{23}
  {
    CheckLine l;
    l.identity = "F-cocycle";
    TT3 lhs, rhs;
    for (const auto& [k, c] : f) {
      TT2 d0 = ctx2.deltaMono(k[0]);
      for (const auto& [dk, dc] : d0)
        ttAdd(lhs, TKey<3>{dk[0], dk[1], k[1]}, c.mulTrunc(dc, K));
      TT2 d1 = ctx2.deltaMono(k[1]);
      for (const auto& [dk, dc] : d1)
        ttAdd(rhs, TKey<3>{k[0], dk[0], dk[1]}, c.mulTrunc(dc, K));
    }
    TT3 f12, f23;
    for (const auto& [k, c] : f) {
      ttAdd(f12, TKey<3>{k[0], k[1], SmashMono{}}, c);
      ttAdd(f23, TKey<3>{SmashMono{}, k[0], k[1]}, c);
    }
    l.pass = (ctx2.ttMul(lhs, f12) == ctx2.ttMul(rhs, f23));
    rep.lines.push_back(l);
  }

  // 3. F - F^{21} = hbar (rho2 - rho1) + O(hbar^2)
  {
    CheckLine l;
    l.identity = "F-F21=hbar*t";
    TT2 diff = f;
    for (const auto& [k, c] : f) ttAdd(diff, TKey<2>{k[1], k[0]}, c.neg());
    TT2 lhs;
    for (const auto& [k, c] : diff) {
      Rat v = c.coeff(1);
      if (!v.isZero()) ttAdd(lhs, k, HPoly::hbar(1, v));
    }
    RhoMatrix rho1 = liftRho(g, r1), rho2 = liftRho(g, r2);
    DLau2 t = rho2.tail;
    for (const auto& [k, c] : rho1.tail) {
      auto [it, fresh] = t.try_emplace(k, -c);
      if (!fresh) {
        it->second -= c;
        if (it->second.isZero()) t.erase(it);
      }
    }
    TT2 rhs;
    for (const auto& [k, c] : t) {
      auto mk = [](int e, DLabel l) {
        if (l.s == Sector::GStar) return SmashMono{{Mode{e, l.a, Sector::GStar}}, {}};
        return SmashMono{{}, {Mode{e, l.a, Sector::G}}};
      };
      ttAdd(rhs, TKey<2>{mk(k.e1, k.x1), mk(k.e2, k.x2)}, HPoly::hbar(1, c));
    }
    l.pass = (lhs == rhs);
    rep.lines.push_back(l);
  }

  // 4. difference-only pairs: (T (x) 1 + 1 (x) T)(F) = 0
  if (tailIsDifferenceOnly(r1) && tailIsDifferenceOnly(r2)) {
    CheckLine l;
    l.identity = "F-commutes-with-T";
    TT2 img;
    for (const auto& [k, c] : f) {
      Smash t0 = ctx2.applyT(Smash::mono(k[0]));
      for (const auto& [mm, mc] : t0.terms()) ttAdd(img, TKey<2>{mm, k[1]}, c.mulTrunc(mc, K));
      Smash t1 = ctx2.applyT(Smash::mono(k[1]));
      for (const auto& [mm, mc] : t1.terms()) ttAdd(img, TKey<2>{k[0], mm}, c.mulTrunc(mc, K));
    }
    l.pass = img.empty();
    rep.lines.push_back(l);
  }
  return rep;
}

}  // namespace ty
