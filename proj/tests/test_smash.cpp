#include "doctest.h"
#include "ty/error.hpp"
#include "ty/smash.hpp"

using namespace ty;

namespace {

Mode g(int a, int n) { return Mode{n, a, Sector::G}; }
Mode gs(int a, int n) { return Mode{n, a, Sector::GStar}; }

const int E = 0, F = 1, H = 2;

struct Fix {
  LieAlgebra alg;
  Window win;
  Fix(int K = 3) : alg(LieSpec::sl2()) {
    win.K = K;
    win.loopMin = -10;
    win.loopMax = 10;
  }
  SplitPair yang() const { return makeLoopSplit(alg, RMatrixInput{}, win); }
  SplitPair fixture() const {
    RMatrixInput r;
    r.tail[{E, 0, E, 0}] = Rat(1);
    return makeLoopSplit(alg, r, win);
  }
};

}  // namespace

TEST_CASE("matched-pair actions in the Yang splitting") {
  Fix fx;
  SplitPair sp = fx.yang();
  // r_{e,0} = f t^{-1} (trace-form dual); e_1 <| r_{e,0} = [e t, f t^-1]_+ = h_0
  auto act = rightActionPrim(sp, g(E, 1), {g(E, 0)});
  REQUIRE(act.size() == 1);
  CHECK(act.at(g(H, 0)) == Rat(1));
  // I_{a,0} <| r_{c,1} = 0: bracket stays negative
  CHECK(rightActionPrim(sp, g(H, 0), {g(E, 1)}).empty());
  // x <| 1 = x
  auto id = rightActionPrim(sp, g(F, 2), {});
  CHECK(id.at(g(F, 2)) == Rat(1));
  // x |> 1 = 0 for primitive x
  CHECK(leftAction(sp, g(E, 1), {}).isZero());
  // h_0 |> r_{e,0} = [h, f] t^{-1} = -2 f t^{-1} = -2 r_{e,0}
  auto la = leftAction(sp, g(H, 0), {g(E, 0)});
  CHECK(la == AlgElem::monomial({g(E, 0)}, HPoly(Rat(-2))));
}

TEST_CASE("both action routes agree: projected brackets vs normal-ordering extraction") {
  Fix fx;
  SplitPair sp = fx.yang();
  const LieAlgebra& alg = fx.alg;
  // ambient straightening context over all loop modes of g
  Window wide = fx.win;
  wide.loopMin = -20;
  ModeAlg ambient(wide, [&alg](Mode a, Mode b) { return bracketModes(alg, a, b); });
  // concrete realization of r_{a,n} = b^a t^{-n-1}
  auto concrete = [&](Mode r) {
    std::map<Mode, Rat> v;
    for (int b = 0; b < 3; ++b) {
      Rat c = alg.kappa0inv(r.a, b);
      if (!c.isZero()) v[Mode{-r.n - 1, b, Sector::G}] = c;
    }
    return v;
  };
  auto concreteWord = [&](const Word& mu) {
    AlgElem out = AlgElem::unit();
    for (const auto& r : mu) {
      AlgElem lin;
      for (auto& [m, c] : concrete(r)) lin.addTerm({m}, HPoly(c));
      out = ambient.multiply(out, lin);
    }
    return out;
  };
  // convert a pure-negative ambient word to the split basis
  std::function<AlgElem(const Word&)> negToSplit = [&](const Word& w) {
    AlgElem out = AlgElem::unit();
    for (const auto& m : w) {
      AlgElem lin;
      for (int a = 0; a < 3; ++a) {
        Rat c = alg.kappa0(m.a, a);
        if (!c.isZero()) lin.addTerm({Mode{-m.n - 1, a, Sector::G}}, HPoly(c));
      }
      out = sp.neg().multiply(out, lin);
    }
    return out;
  };
  std::vector<Word> mus = {{g(E, 0)}, {g(H, 1)}, {g(E, 0), g(F, 0)}, {g(E, 0), g(E, 0), g(H, 0)},
                           {g(F, 2)}, {g(E, 0), g(F, 1)}};
  std::vector<Mode> xs = {g(E, 1), g(H, 2), g(F, 3), g(H, 1)};
  for (const auto& x : xs)
    for (const auto& mu : mus) {
      AlgElem prod = ambient.multiply(AlgElem::monomial({x}), concreteWord(mu));
      // extract the pure-nonnegative component -> x <| mu
      std::map<Mode, Rat> no;
      AlgElem negPart;
      for (const auto& [w, c] : prod.terms()) {
        bool allPos = true, allNeg = true;
        for (const auto& m : w) {
          (m.n >= 0 ? allNeg : allPos) = false;
        }
        if (w.empty()) continue;
        if (allPos && w.size() == 1) no[w[0]] += c.coeff(0);
        if (allNeg) negPart.addTerm(w, c);
      }
      for (auto it = no.begin(); it != no.end();)
        it = it->second.isZero() ? no.erase(it) : std::next(it);
      CHECK(rightActionPrim(sp, x, mu) == no);
      // pure-negative component -> x |> mu (after basis conversion)
      AlgElem lhs;
      for (const auto& [w, c] : negPart.terms()) lhs.add(negToSplit(w).scaledH(c, fx.win.K));
      CHECK(leftAction(sp, x, mu) == lhs);
    }
}

TEST_CASE("divided-power pairing: permanents, kappa contraction, degree mismatch") {
  Fix fx;
  SplitPair sp = fx.yang();
  // <eps e t^2, f t^{-3}>: in split coordinates f t^{-3} = r_{e,2}
  CHECK(pairPlain(sp, {gs(E, 2)}, AlgElem::monomial({g(E, 2)})) == HPoly::one());
  // <(eps e t^0)^2, (f t^{-1})^2> = 2
  CHECK(pairPlain(sp, {gs(E, 0), gs(E, 0)}, AlgElem::monomial({g(E, 0), g(E, 0)})) ==
        HPoly(Rat(2)));
  // <eps h t^1, e t^{-1}>: e t^{-1} = r_{f,0}, labels mismatch -> 0
  CHECK(pairPlain(sp, {gs(H, 1)}, AlgElem::monomial({g(F, 0)})).isZero());
  // degree mismatch on a symmetrized product -> 0, but a straightened word
  // pairs through the lower sigma-components
  AlgElem word = sp.neg().multiply(AlgElem::monomial({g(E, 1)}), AlgElem::monomial({g(F, 0)}));
  AlgElem sym = word;
  sym.add(sp.neg().multiply(AlgElem::monomial({g(F, 0)}), AlgElem::monomial({g(E, 1)})));
  sym = sym.scaled(Rat(1, 2));
  for (int a = 0; a < 3; ++a)
    for (int n = 0; n <= 3; ++n) CHECK(pairPlain(sp, {gs(a, n)}, sym).isZero());
}

TEST_CASE("mixed commutators: classical part and the quadratic correction pattern") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  // [I_{a,0}, I^b_m]: classical coadjoint only
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int m = 0; m <= 2; ++m) {
        Smash c = ctx.mixedComm(g(a, 0), gs(b, m));
        Smash expect;
        for (const auto& [cc, v] : fx.alg.bracket(a, b))
          expect.addTerm(SmashMono{{gs(cc, m)}, {}}, HPoly(v));
        CHECK(c == expect);
      }
  // bidegree homogeneity: [x, f] has the bidegree of x + f
  auto bideg = [](const SmashMono& m, int k) {
    int loop = k, eps = -2 * k;
    for (auto& s : m.s) {
      loop += s.n;
      eps += 2;
    }
    for (auto& u : m.u) loop += u.n;
    return std::pair<int, int>(loop, eps);
  };
  for (int n = 1; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m) {
      Smash c = ctx.mixedComm(g(E, n), gs(F, m));
      for (const auto& [mono, hp] : c.terms())
        for (const auto& [k, v] : hp.terms()) {
          CHECK(bideg(mono, k) == std::pair<int, int>(n + m, 2));
        }
    }
}

TEST_CASE("smash product: S-left normal form and associativity with mixed terms") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  Smash x = Smash::uGen(g(E, 1));
  Smash f = Smash::sGen(gs(F, 0));
  // x f = f x + [x, f]
  Smash lhs = ctx.mul(x, f);
  Smash rhs = ctx.mul(f, x);
  rhs.add(ctx.mixedComm(g(E, 1), gs(F, 0)));
  CHECK(lhs == rhs);
  // associativity on samples
  std::vector<Smash> els = {x, f, Smash::uGen(g(H, 0)), Smash::sGen(gs(E, 1)),
                            Smash::uGen(g(F, 2))};
  for (const auto& a : els)
    for (const auto& b : els)
      for (const auto& c : els)
        CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
}

TEST_CASE("coproducts of generators") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  // Delta(I_{a,0}) primitive
  TT2 d = ctx.deltaU(g(E, 0));
  TT2 prim;
  ttAdd(prim, TKey<2>{SmashMono{{}, {g(E, 0)}}, SmashMono{}}, HPoly::one());
  ttAdd(prim, TKey<2>{SmashMono{}, SmashMono{{}, {g(E, 0)}}}, HPoly::one());
  CHECK(d == prim);
  // Delta(I^h_1) = prim + hbar (s_{f,0} x s_{e,0} - s_{e,0} x s_{f,0})
  TT2 dh = ctx.deltaS(gs(H, 1));
  TT2 expect;
  ttAdd(expect, TKey<2>{SmashMono{{gs(H, 1)}, {}}, SmashMono{}}, HPoly::one());
  ttAdd(expect, TKey<2>{SmashMono{}, SmashMono{{gs(H, 1)}, {}}}, HPoly::one());
  ttAdd(expect, TKey<2>{SmashMono{{gs(F, 0)}, {}}, SmashMono{{gs(E, 0)}, {}}}, HPoly::hbar(1));
  ttAdd(expect, TKey<2>{SmashMono{{gs(E, 0)}, {}}, SmashMono{{gs(F, 0)}, {}}},
        HPoly::hbar(1, Rat(-1)));
  CHECK(dh == expect);
  // Delta(I_{a,n}) = x (x) 1 + 1 (x) x + hbar-terms with S-leg (x) U-leg
  TT2 de = ctx.deltaU(g(E, 2));
  bool sawCorrection = false;
  for (const auto& [k, c] : de) {
    if (k[0].isUnit() || k[1].isUnit()) continue;
    sawCorrection = true;
    CHECK(!k[0].s.empty());
    CHECK(k[0].u.empty());
  }
  CHECK(sawCorrection);
}

TEST_CASE("Hopf suite passes for the Yangian of sl2 at loop <= 2") {
  Fix fx(2);
  SmashCtx ctx(fx.yang());
  std::vector<Mode> uGens, sGens;
  for (int n = 0; n <= 2; ++n)
    for (int a = 0; a < 3; ++a) {
      uGens.push_back(g(a, n));
      sGens.push_back(gs(a, n));
    }
  auto rep = verifyHopf(ctx, uGens, sGens);
  for (const auto& l : rep.lines) {
    INFO(l.identity);
    CHECK(l.pass);
  }
}

TEST_CASE("deliberately corrupted coproduct fails coassociativity") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  TT2 d = ctx.deltaS(gs(H, 1));
  // drop the hbar-term
  TT2 bad;
  for (const auto& [k, c] : d) {
    if (!k[0].isUnit() && !k[1].isUnit()) continue;
    ttAdd(bad, k, c);
  }
  // coassociativity of the corrupted tensor: apply Delta legwise and compare
  TT3 a = ctx.deltaOnLeg(bad, 0);
  TT3 b = ctx.deltaOnLeg(bad, 1);
  CHECK(a != b);
}

TEST_CASE("quantization: Delta - Delta_op = hbar delta_rho mod hbar^2") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  auto rho = liftRho(fx.alg, RMatrixInput{});
  std::vector<Mode> gens;
  for (int n = 0; n <= 2; ++n)
    for (int a = 0; a < 3; ++a) {
      gens.push_back(g(a, n));
      gens.push_back(gs(a, n));
    }
  auto rep = verifyQuantization(ctx, rho, gens);
  for (const auto& l : rep.lines) {
    INFO(l.identity);
    CHECK(l.pass);
  }
  auto repz = verifyQuantizationZ(ctx, rho, gens);
  for (const auto& l : repz.lines) {
    INFO(l.identity);
    CHECK(l.pass);
  }
}

TEST_CASE("antipode values and axiom") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  // S(I^a_n) = -I^a_n
  CHECK(ctx.antipode(Smash::sGen(gs(E, 2))) == Smash::sGen(gs(E, 2)).neg());
  // S(I_{a,0}) = -I_{a,0}
  CHECK(ctx.antipode(Smash::uGen(g(H, 0))) == Smash::uGen(g(H, 0)).neg());
  // antipode axiom on I^a_1 via the Hopf suite is covered; spot-check mult
  Smash x = Smash::uGen(g(E, 1));
  TT2 d = ctx.delta(x);
  Smash acc;
  for (const auto& [k, c] : d)
    acc.add(ctx.mul(ctx.antipode(Smash::mono(k[0])), Smash::mono(k[1])).scaledH(c, ctx.K()));
  CHECK(acc.isZero());
}

TEST_CASE("counit") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  CHECK(ctx.counit(Smash::unit()) == HPoly::one());
  CHECK(ctx.counit(Smash::uGen(g(E, 2))).isZero());
  CHECK(ctx.counit(ctx.mul(Smash::sGen(gs(E, 0)), Smash::uGen(g(F, 1)))).isZero());
}

TEST_CASE("T is a Hopf derivation; z-shifted coproduct") {
  Fix fx;
  SmashCtx ctx(fx.yang());
  // T(I^a_2): Delta T = (T x 1 + 1 x T) Delta
  for (Mode m : {gs(E, 2), gs(H, 2), g(F, 2)}) {
    Smash gen = (m.s == Sector::GStar) ? Smash::sGen(m) : Smash::uGen(m);
    TT2 lhs = ctx.delta(ctx.applyT(gen));
    TT2 rhs;
    for (const auto& [k, c] : ctx.delta(gen)) {
      Smash t0 = ctx.applyT(Smash::mono(k[0]));
      for (const auto& [mm, mc] : t0.terms()) ttAdd(rhs, TKey<2>{mm, k[1]}, c.mulTrunc(mc, ctx.K()));
      Smash t1 = ctx.applyT(Smash::mono(k[1]));
      for (const auto& [mm, mc] : t1.terms()) ttAdd(rhs, TKey<2>{k[0], mm}, c.mulTrunc(mc, ctx.K()));
    }
    CHECK(lhs == rhs);
  }
  // Delta_{h,z}(I_{a,0}) primitive (tau_z fixes degree 0)
  auto dz = ctx.deltaZShifted(Smash::uGen(g(E, 0)));
  CHECK(dz.size() == 1);
  CHECK(dz.count(0) == 1);
  // Delta_{h,z}(I_{a,1}): z-coefficient contains I_{a,0} (x) 1
  auto dz1 = ctx.deltaZShifted(Smash::uGen(g(E, 1)));
  REQUIRE(dz1.count(1) == 1);
  CHECK(dz1.at(1).count(TKey<2>{SmashMono{{}, {g(E, 0)}}, SmashMono{}}) == 1);
  // z = 0 recovers Delta
  CHECK(dz1.at(0) == ctx.delta(Smash::uGen(g(E, 1))));
}

TEST_CASE("shifted coassociativity of the z-coproduct") {
  Fix fx(2);
  SmashCtx ctx(fx.yang());
  for (Mode m : {g(E, 2), gs(H, 1)}) {
    Smash gen = (m.s == Sector::GStar) ? Smash::sGen(m) : Smash::uGen(m);
    // LHS: (Delta_{h,z1} (x) 1) Delta_{h,z2}
    std::map<std::pair<int, int>, TT3> lhs;
    for (const auto& [z2, t] : ctx.deltaZShifted(gen))
      for (const auto& [k, c] : t) {
        // apply Delta_{h,z1} to leg 0
        TT2 d = ctx.deltaMono(k[0]);
        for (const auto& [dk, dc] : d) {
          auto sh = ctx.tauZ(Smash::mono(dk[0]));
          for (const auto& [z1, sm] : sh)
            for (const auto& [mm, mc] : sm.terms()) {
              HPoly cc = c.mulTrunc(dc, ctx.K()).mulTrunc(mc, ctx.K());
              ttAdd(lhs[{z1, z2}], TKey<3>{mm, dk[1], k[1]}, cc);
            }
        }
      }
    // RHS: (1 (x) Delta_{h,z2}) Delta_{h,z1+z2}
    std::map<std::pair<int, int>, TT3> rhs;
    for (const auto& [w, t] : ctx.deltaZShifted(gen))
      for (const auto& [k, c] : t) {
        TT2 d = ctx.deltaMono(k[1]);
        for (const auto& [dk, dc] : d) {
          auto sh = ctx.tauZ(Smash::mono(dk[0]));
          for (const auto& [z2q, sm] : sh)
            for (const auto& [mm, mc] : sm.terms()) {
              HPoly cc = c.mulTrunc(dc, ctx.K()).mulTrunc(mc, ctx.K());
              // expand w = z1 + z2
              for (int i = 0; i <= w; ++i) {
                Rat bin = Rat::binom(w, i);
                ttAdd(rhs[{i, w - i + z2q}], TKey<3>{k[0], mm, dk[1]}, cc.scaled(bin));
              }
            }
        }
      }
    for (auto it = lhs.begin(); it != lhs.end();)
      it = it->second.empty() ? lhs.erase(it) : std::next(it);
    for (auto it = rhs.begin(); it != rhs.end();)
      it = it->second.empty() ? rhs.erase(it) : std::next(it);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("the smash algebra does not depend on the splitting") {
  Fix fx;
  SmashCtx a(fx.yang());
  SmashCtx b(fx.fixture());
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (int x = 0; x < 3; ++x)
        for (int f = 0; f < 3; ++f) CHECK(a.mixedComm(g(x, n), gs(f, m)) == b.mixedComm(g(x, n), gs(f, m)));
}

TEST_CASE("evaluation at hbar = xi commutes with multiplication") {
  // on windowed (loop-bounded) elements the deformation degree of any
  // product is finite, so a window that large makes the products exact and
  // evaluation commutes on the nose
  Fix fx(12);
  SmashCtx ctx(fx.yang());
  Rat xi(3, 2);
  std::vector<Smash> els = {Smash::uGen(g(E, 1)), Smash::sGen(gs(F, 0)),
                            ctx.mixedComm(g(E, 2), gs(F, 1))};
  for (const auto& a : els)
    for (const auto& b : els) {
      Smash lhs = SmashCtx::evalXi(ctx.mul(a, b), xi);
      Smash rhs = ctx.mul(SmashCtx::evalXi(a, xi), SmashCtx::evalXi(b, xi));
      CHECK(lhs == SmashCtx::evalXi(rhs, xi));
    }
}

TEST_CASE("Borel matched pair reproduces the finite quantization") {
  LieAlgebra sl2(LieSpec::sl2());
  MatchedPairSpec mps;
  mps.p = LieSpec::sl2();
  mps.plus = {F};      // p_+ = span(F)
  mps.minus = {H, E};  // p_- = span(H, E) (the Borel)
  Window win;
  win.K = 3;
  SplitPair sp = makeMatchedPairSplit(sl2, mps, win);
  SmashCtx ctx(sp);
  // reindexed labels: pos 0 = E, pos 1 = H; neg 0 = F; S-symbol 0 = F-dual
  Mode Epos = g(0, 0), Hpos = g(1, 0), Fdual = gs(0, 0);
  // [H, E] = 2E in U(p_-)
  {
    Smash lhs = ctx.mul(Smash::uGen(Hpos), Smash::uGen(Epos));
    lhs.sub(ctx.mul(Smash::uGen(Epos), Smash::uGen(Hpos)));
    CHECK(lhs == Smash::uGen(Epos).scaled(Rat(2)));
  }
  // [H, F^] = 2 F^
  CHECK(ctx.mixedComm(Hpos, Fdual) == Smash::sGen(Fdual).scaled(Rat(2)));
  // [E, F^] = hbar (F^)^2
  {
    Smash expect = Smash::mono(SmashMono{{Mode{0, 0, Sector::GStar}, Mode{0, 0, Sector::GStar}}, {}},
                               HPoly::hbar(1));
    CHECK(ctx.mixedComm(Epos, Fdual) == expect);
  }
  // Delta(H) and Delta(F^) primitive; Delta(E) = prim + hbar F^ (x) H
  {
    TT2 dH = ctx.deltaU(Hpos);
    CHECK(dH.size() == 2);
    TT2 dF = ctx.deltaS(Fdual);
    CHECK(dF.size() == 2);
    TT2 dE = ctx.deltaU(Epos);
    TT2 expect;
    ttAdd(expect, TKey<2>{SmashMono{{}, {Epos}}, SmashMono{}}, HPoly::one());
    ttAdd(expect, TKey<2>{SmashMono{}, SmashMono{{}, {Epos}}}, HPoly::one());
    ttAdd(expect, TKey<2>{SmashMono{{Mode{0, 0, Sector::GStar}}, {}}, SmashMono{{}, {Hpos}}},
          HPoly::hbar(1));
    CHECK(dE == expect);
  }
  // full Hopf suite for the finite quantization
  auto rep = verifyHopf(ctx, {Epos, Hpos}, {Fdual});
  for (const auto& l : rep.lines) {
    INFO(l.identity);
    CHECK(l.pass);
  }
}

TEST_CASE("abelian matched pair gives the trivial quantization") {
  LieSpec s;
  s.dim = 2;
  s.labels = {"x", "y"};
  s.kappa0[{0, 0}] = Rat(1);
  s.kappa0[{1, 1}] = Rat(1);
  LieAlgebra p(s);
  MatchedPairSpec mps;
  mps.p = s;
  mps.plus = {0};
  mps.minus = {1};
  Window win;
  SplitPair sp = makeMatchedPairSplit(p, mps, win);
  SmashCtx ctx(sp);
  CHECK(ctx.mixedComm(g(0, 0), gs(0, 0)).isZero());
  CHECK(ctx.deltaU(g(0, 0)).size() == 2);
  CHECK(ctx.deltaS(gs(0, 0)).size() == 2);
}

TEST_CASE("matched pair validation errors") {
  LieAlgebra sl2(LieSpec::sl2());
  Window win;
  {
    MatchedPairSpec mps;
    mps.p = LieSpec::sl2();
    mps.plus = {E, F};  // span(e,f) is not a subalgebra
    mps.minus = {H};
    bool threw = false;
    try {
      makeMatchedPairSplit(sl2, mps, win);
    } catch (const Error& e) {
      threw = true;
      CHECK(e.code() == Err::NotSubalgebra);
    }
    CHECK(threw);
  }
  {
    MatchedPairSpec mps;
    mps.p = LieSpec::sl2();
    mps.plus = {F};
    mps.minus = {H};  // E missing
    bool threw = false;
    try {
      makeMatchedPairSplit(sl2, mps, win);
    } catch (const Error& e) {
      threw = true;
      CHECK(e.code() == Err::NotDirectSum);
    }
    CHECK(threw);
  }
}
