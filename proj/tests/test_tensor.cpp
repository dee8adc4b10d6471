#include "doctest.h"
#include "ty/error.hpp"
#include "ty/tensor.hpp"
#include "ty/twist.hpp"

using namespace ty;

namespace {

Mode g(int a, int n) { return Mode{n, a, Sector::G}; }
Mode gs(int a, int n) { return Mode{n, a, Sector::GStar}; }
const int E = 0, F = 1, H = 2;

struct Fix {
  LieAlgebra alg;
  Window win;
  std::shared_ptr<ModeAlg> ambient;
  Fix(int K = 3) : alg(LieSpec::sl2()) {
    win.K = K;
    win.loopMin = -30;
    win.loopMax = 10;
    ambient = makeAmbient(alg, win);
  }
  RMatrixInput fixtureR() const {
    RMatrixInput r;
    r.tail[{E, 0, E, 0}] = Rat(1);
    return r;
  }
};

}  // namespace

TEST_CASE("E-matrix: leading terms and the canonical embedding property") {
  Fix fx;
  SplitPair sp = makeLoopSplit(fx.alg, RMatrixInput{}, fx.win);
  TT2 e = eMatrix(fx.alg, RMatrixInput{}, *fx.ambient, 4, fx.win.K);
  // hbar^0 part is 1 (x) 1
  CHECK(e.at(TKey<2>{SmashMono{}, SmashMono{}}) == HPoly::one());
  // hbar^1 part: s_{a,n} (x) b^a t^{-n-1}
  CHECK(e.at(TKey<2>{SmashMono{{gs(E, 2)}, {}}, SmashMono{{}, {g(F, -3)}}}) == HPoly::hbar(1));
  CHECK(e.at(TKey<2>{SmashMono{{gs(H, 0)}, {}}, SmashMono{{}, {g(H, -1)}}}) ==
        HPoly::hbar(1, Rat(1, 2)));
  // <E_gamma, exp(h e_{-1})> = exp(h e_{-1}); e t^{-1} = r_{f,0} in split coords
  AlgElem grpSplit = sp.neg().expTrunc(AlgElem::monomial({g(F, 0)}, HPoly::hbar(1)));
  AlgElem lhs = tensorAsMap(sp, e, grpSplit);
  AlgElem rhs = fx.ambient->expTrunc(AlgElem::monomial({g(E, -1)}, HPoly::hbar(1)));
  CHECK(lhs == rhs);
  // and on a second group-like with a deeper mode: f t^{-3} = r_{e,2}
  AlgElem grp2 = sp.neg().expTrunc(AlgElem::monomial({g(E, 2)}, HPoly::hbar(1)));
  CHECK(tensorAsMap(sp, e, grp2) ==
        fx.ambient->expTrunc(AlgElem::monomial({g(F, -3)}, HPoly::hbar(1))));
}

TEST_CASE("tensor_as_map: counit tensor, leg typing, pointwise products on group-likes") {
  Fix fx;
  SplitPair sp = makeLoopSplit(fx.alg, RMatrixInput{}, fx.win);
  TT2 unitT;
  ttAdd(unitT, TKey<2>{SmashMono{}, SmashMono{}}, HPoly::one());
  AlgElem a = AlgElem::monomial({g(E, 0), g(F, 1)});
  a.add(AlgElem::unit().scaled(Rat(5)));
  AlgElem r = tensorAsMap(sp, unitT, a);
  CHECK(r == AlgElem::unit().scaled(Rat(5)));
  // leg type mismatch
  TT2 bad;
  ttAdd(bad, TKey<2>{SmashMono{{}, {g(E, 0)}}, SmashMono{}}, HPoly::one());
  CHECK_THROWS_AS(tensorAsMap(sp, bad, a), Error);
  // product of tensors acts pointwise on group-likes
  TT2 e = eMatrix(fx.alg, RMatrixInput{}, *fx.ambient, 3, fx.win.K);
  TT2 e2 = extMul(*fx.ambient, e, e, fx.win.K);
  AlgElem grp = sp.neg().expTrunc(AlgElem::monomial({g(F, 0)}, HPoly::hbar(1)));
  AlgElem lhs = tensorAsMap(sp, e2, grp);
  AlgElem one = tensorAsMap(sp, e, grp);
  CHECK(lhs == fx.ambient->multiply(one, one));
}

TEST_CASE("reconstruct inverts tensor_as_map") {
  Fix fx;
  SplitPair sp = makeLoopSplit(fx.alg, RMatrixInput{}, fx.win);
  TT2 e = eMatrix(fx.alg, RMatrixInput{}, *fx.ambient, 2, fx.win.K);
  // values: pairings of E_gamma against all monomials in the window
  auto mons = enumNegWords(sp, fx.win.K, 2, 12);
  std::map<Word, AlgElem> values;
  for (const auto& w : mons) values[w] = tensorAsMap(sp, e, AlgElem::monomial(w));
  TT2 back = reconstructTensor(sp, values);
  CHECK(back == e);
  // values all zero -> zero tensor
  std::map<Word, AlgElem> zeros;
  for (const auto& w : mons) zeros[w] = AlgElem();
  CHECK(reconstructTensor(sp, zeros).empty());
  // a non-deletion-closed window is rejected
  std::map<Word, AlgElem> badvals = values;
  badvals.erase(Word{});
  CHECK_THROWS_AS(reconstructTensor(sp, badvals), Error);
}

TEST_CASE("S-side multiplicativity of the pairing") {
  Fix fx;
  SplitPair sp = makeLoopSplit(fx.alg, RMatrixInput{}, fx.win);
  // <fg, A> = <f (x) g, Delta_U(A)> for the cocommutative coproduct of U(neg)
  std::vector<Word> As = {{g(E, 0), g(F, 0)}, {g(F, 0), g(F, 0)}, {g(E, 0), g(H, 0), g(E, 1)}};
  std::vector<std::pair<Mode, Mode>> fgs = {{gs(E, 0), gs(F, 0)}, {gs(F, 0), gs(F, 0)},
                                            {gs(H, 1), gs(E, 0)}};
  for (const auto& w : As)
    for (const auto& [f1, f2] : fgs) {
      Word fg = {f1, f2};
      std::sort(fg.begin(), fg.end());
      HPoly lhs = pairPlain(sp, fg, AlgElem::monomial(w));
      HPoly rhs;
      for (const auto& [split, c] : coproductWord(w)) {
        HPoly p1 = pairPlain(sp, {f1}, AlgElem::monomial(split.first));
        if (p1.isZero()) continue;
        HPoly p2 = pairPlain(sp, {f2}, AlgElem::monomial(split.second));
        if (p2.isZero()) continue;
        rhs.add(p1.mulTrunc(p2, 16).scaled(c));
      }
      CHECK(lhs == rhs);
    }
}

TEST_CASE("duality consistency: <f, AB> = <Delta f, A (x) B>") {
  Fix fx;
  SplitPair sp = makeLoopSplit(fx.alg, RMatrixInput{}, fx.win);
  SmashCtx ctx(sp);
  for (int a = 0; a < 3; ++a)
    for (int n = 0; n <= 3; ++n) {
      Mode f = gs(a, n);
      TT2 df = ctx.deltaS(f);
      std::vector<Word> mons = {{g(E, 0)}, {g(F, 0)}, {g(H, 1)}, {g(E, 0), g(F, 0)},
                                {g(F, 0), g(E, 1)}, {g(H, 0), g(H, 0)}};
      for (const auto& mu : mons)
        for (const auto& nu : mons) {
          AlgElem prod = sp.neg().multiply(AlgElem::monomial(mu), AlgElem::monomial(nu));
          HPoly lhs = pairPhi(sp, {f}, prod);
          HPoly rhs;
          for (const auto& [k, c] : df) {
            if (!k[0].u.empty() || !k[1].u.empty()) continue;
            HPoly p1 = pairPhi(sp, k[0].s, AlgElem::monomial(mu));
            if (p1.isZero()) continue;
            HPoly p2 = pairPhi(sp, k[1].s, AlgElem::monomial(nu));
            if (p2.isZero()) continue;
            rhs.add(c.mulTrunc(p1, 16).mulTrunc(p2, 16));
          }
          // both sides live at bounded hbar order; compare truncated alike
          CHECK(lhs.truncated(fx.win.K) == rhs.truncated(fx.win.K));
        }
    }
}

TEST_CASE("factorization across the Yang splitting") {
  Fix fx;
  SplitPair sp = makeLoopSplit(fx.alg, RMatrixInput{}, fx.win);
  // x already negative: (x, 0)
  {
    std::map<Mode, HPoly> x = {{g(E, -1), HPoly::hbar(1)}};
    auto fac = factorize(sp, *fx.ambient, x);
    CHECK(fac.xPos.empty());
    // e t^{-1} = r_{f,0}
    CHECK(fac.xNeg == AlgElem::monomial({g(F, 0)}, HPoly::hbar(1)));
  }
  // x regular: (0, x)
  {
    std::map<Mode, HPoly> x = {{g(H, 2), HPoly::hbar(1)}};
    auto fac = factorize(sp, *fx.ambient, x);
    CHECK(fac.xNeg.isZero());
    CHECK(fac.xPos.size() == 1);
    CHECK(fac.xPos.at(g(H, 2)) == HPoly::hbar(1));
  }
  // mixed: verify exp(x-) exp(x+) = exp(x) and uniqueness via refactorization
  {
    std::map<Mode, HPoly> x = {{g(E, -1), HPoly::hbar(1)}, {g(E, 0), HPoly::hbar(1)}};
    auto fac = factorize(sp, *fx.ambient, x);
    // leading parts
    CHECK(fac.xNeg.coeff({g(F, 0)}).coeff(1) == Rat(1));
    CHECK(fac.xPos.at(g(E, 0)).coeff(1) == Rat(1));
    // exp check in the ambient algebra
    AlgElem exNeg;
    for (const auto& [w, c] : fac.xNeg.terms()) {
      REQUIRE(w.size() == 1);
      // realize r_{a,n} concretely
      for (int b = 0; b < 3; ++b) {
        Rat coef = fx.alg.kappa0inv(w[0].a, b);
        if (!coef.isZero()) exNeg.addTerm({Mode{-w[0].n - 1, b, Sector::G}}, c.scaled(coef));
      }
    }
    AlgElem exPos;
    for (const auto& [m, c] : fac.xPos) exPos.addTerm({m}, c);
    AlgElem lhs = fx.ambient->multiply(fx.ambient->expTrunc(exNeg), fx.ambient->expTrunc(exPos));
    AlgElem xe;
    for (const auto& [m, c] : x) xe.addTerm({m}, c);
    CHECK(lhs == fx.ambient->expTrunc(xe));
    // refactorize exp(x-)exp(x+): log then factorize returns the same pair
    AlgElem logProd = fx.ambient->logTrunc(lhs);
    std::map<Mode, HPoly> xl;
    for (const auto& [w, c] : logProd.terms()) {
      REQUIRE(w.size() == 1);
      xl[w[0]] = c;
    }
    auto fac2 = factorize(sp, *fx.ambient, xl);
    CHECK(fac2.xNeg == fac.xNeg);
    CHECK(fac2.xPos == fac.xPos);
  }
}

TEST_CASE("twist matrix: trivial pair, fixture pair, inverse") {
  Fix fx(2);
  TT2 f0 = twistMatrix(fx.alg, RMatrixInput{}, RMatrixInput{}, *fx.ambient, 3, 2);
  TT2 unitT;
  ttAdd(unitT, TKey<2>{SmashMono{}, SmashMono{}}, HPoly::one());
  CHECK(f0 == unitT);

  RMatrixInput r2 = fx.fixtureR();
  TT2 f = twistMatrix(fx.alg, RMatrixInput{}, r2, *fx.ambient, 4, 2);
  CHECK(f.at(TKey<2>{SmashMono{}, SmashMono{}}).isOne());
  // U legs are regular (in U(g[t]))
  for (const auto& [k, c] : f)
    for (const auto& u : k[1].u) CHECK(u.n >= 0);
  // F F^{-1} = 1 within the window
  TT2 finv = extInverse(*fx.ambient, f, 2);
  CHECK(extMul(*fx.ambient, f, finv, 2) == unitT);
}

TEST_CASE("twist suite: F conjugates the coproducts, cocycle, semiclassical term, T") {
  Fix fx(2);
  RMatrixInput r1;            // Yang
  RMatrixInput r2 = fx.fixtureR();
  SmashCtx ctx1(makeLoopSplit(fx.alg, r1, fx.win));
  SmashCtx ctx2(makeLoopSplit(fx.alg, r2, fx.win));
  TT2 f = twistMatrix(fx.alg, r1, r2, *fx.ambient, 5, 2);
  std::vector<Mode> uGens, sGens;
  for (int n = 0; n <= 2; ++n)
    for (int a = 0; a < 3; ++a) {
      uGens.push_back(g(a, n));
      sGens.push_back(gs(a, n));
    }
  auto rep = verifyTwist(ctx1, ctx2, f, r1, r2, uGens, sGens);
  for (const auto& l : rep.lines) {
    INFO(l.identity);
    CHECK(l.pass);
  }
  // corrupted F fails the conjugation with a witness generator
  TT2 bad = f;
  ttAdd(bad, TKey<2>{SmashMono{{gs(E, 0)}, {}}, SmashMono{{}, {g(E, 0)}}}, HPoly::hbar(1, Rat(7)));
  auto repBad = verifyTwist(ctx1, ctx2, bad, r1, r2, uGens, sGens);
  bool anyFail = false;
  for (const auto& l : repBad.lines) anyFail |= !l.pass;
  CHECK(anyFail);
}
