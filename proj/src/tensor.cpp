#include "ty/tensor.hpp"

#include <algorithm>

#include "ty/error.hpp"

namespace ty {

std::shared_ptr<ModeAlg> makeAmbient(const LieAlgebra& g, Window win) {
  const LieAlgebra* gp = &g;
  return std::make_shared<ModeAlg>(win, [gp](Mode a, Mode b) { return bracketModes(*gp, a, b); });
}

namespace {

void checkExtLegs(const TT2& a) {
  for (const auto& [k, c] : a) {
    if (!k[0].u.empty()) fail(Err::LegTypeMismatch, "leg 1 must be S-typed");
    if (!k[1].s.empty()) fail(Err::LegTypeMismatch, "leg 2 must be U-typed");
  }
}

}  // namespace

TT2 extMul(ModeAlg& ambient, const TT2& a, const TT2& b, int K) {
  checkExtLegs(a);
  checkExtLegs(b);
  TT2 out;
  for (const auto& [k1, c1] : a)
    for (const auto& [k2, c2] : b) {
      HPoly c = c1.mulTrunc(c2, K);
      if (c.isZero()) continue;
      Word s = k1[0].s;
      s.insert(s.end(), k2[0].s.begin(), k2[0].s.end());
      std::sort(s.begin(), s.end());
      Word u = k1[1].u;
      u.insert(u.end(), k2[1].u.begin(), k2[1].u.end());
      AlgElem no = ambient.normalOrder(u);
      for (const auto& [w, v] : no.terms())
        ttAdd(out, TKey<2>{SmashMono{s, {}}, SmashMono{{}, w}}, c.mulTrunc(v, K));
    }
  return out;
}

TT2 extInverse(ModeAlg& ambient, const TT2& a, int K) {
  TKey<2> unit{SmashMono{}, SmashMono{}};
  auto it = a.find(unit);
  if (it == a.end() || !it->second.isOne())
    fail(Err::NoUnitLeadingTerm, "inverse requires unit leading term 1 (x) 1");
  TT2 n = a;  // a - 1
  n.erase(unit);
  // every remaining term must vanish at hbar^0 for the series to close
  for (const auto& [k, c] : n)
    if (c.minExp() < 1)
      fail(Err::NoUnitLeadingTerm, "non-unit terms must carry positive deformation order");
  TT2 out;
  ttAdd(out, unit, HPoly::one());
  TT2 pw;
  ttAdd(pw, unit, HPoly::one());
  for (int k = 1; k <= K; ++k) {
    pw = extMul(ambient, pw, n, K);
    if (pw.empty()) break;
    Rat sgn = (k % 2) ? Rat(-1) : Rat(1);
    for (const auto& [key, c] : pw) ttAdd(out, key, c.scaled(sgn));
  }
  return out;
}

TT2 eMatrix(const LieAlgebra& g, const RMatrixInput& r, ModeAlg& ambient, int N, int K) {
  SplittingBasis sb = splittingBasis(g, r, N);
  TT2 x;  // sum s_{a,n} (x) r_{a,n} with an hbar
  for (int n = 0; n <= N; ++n)
    for (int a = 0; a < g.dim(); ++a) {
      const auto& vec = sb.vecs.at({a, n});
      for (const auto& [k, c] : vec) {
        ttAdd(x,
              TKey<2>{SmashMono{{Mode{n, a, Sector::GStar}}, {}},
                      SmashMono{{}, {Mode{k.first, k.second, Sector::G}}}},
              HPoly::hbar(1, c));
      }
    }
  TT2 out;
  ttAdd(out, TKey<2>{SmashMono{}, SmashMono{}}, HPoly::one());
  TT2 pw = out;
  Rat fact(1);
  for (int k = 1; k <= K; ++k) {
    pw = extMul(ambient, pw, x, K);
    if (pw.empty()) break;
    fact *= Rat(k);
    for (const auto& [key, c] : pw) ttAdd(out, key, c.scaled(Rat(1) / fact));
  }
  return out;
}

AlgElem tensorAsMap(const SplitPair& sp, const TT2& t, const AlgElem& a) {
  AlgElem out;
  for (const auto& [k, c] : t) {
    if (!k[0].u.empty()) fail(Err::LegTypeMismatch, "tensor_as_map needs an S-typed first leg");
    HPoly p = pairPhi(sp, k[0].s, a);
    if (p.isZero()) continue;
    out.addTerm(k[1].u, p.mulTrunc(c, sp.window().K));
  }
  return out;
}

std::shared_ptr<ModeAlg> makeAdaptedAlg(const LieAlgebra& g,
                                        std::shared_ptr<const SplittingBasis> sb, Window win) {
  const LieAlgebra* gp = &g;
  auto bracket = [gp, sb](Mode x, Mode y) {
    // decode to concrete Laurent vectors
    auto concrete = [&](Mode m) {
      std::map<std::pair<int, int>, Rat> v;
      if (m.n >= 0) {
        v[{m.n, m.a}] = Rat(1);
      } else {
        for (const auto& [k, c] : sb->vecs.at({m.a, -m.n - 1})) v[k] = c;
      }
      return v;
    };
    auto vx = concrete(x), vy = concrete(y);
    std::map<std::pair<int, int>, Rat> br;
    for (const auto& [k1, c1] : vx)
      for (const auto& [k2, c2] : vy)
        for (const auto& [m, v] : gp->bracket(k1.second, k2.second)) {
          auto key = std::make_pair(k1.first + k2.first, m);
          auto [it, fresh] = br.try_emplace(key, c1 * c2 * v);
          if (!fresh) {
            it->second += c1 * c2 * v;
            if (it->second.isZero()) br.erase(it);
          }
        }
    // negative exponents determine the splitting coordinates
    std::vector<std::pair<Mode, Rat>> out;
    std::map<std::pair<int, int>, Rat> negCoord;
    for (const auto& [k, c] : br) {
      auto [exp, lab] = k;
      if (exp >= 0) continue;
      int kk = -exp - 1;
      if (kk > sb->depth) fail(Err::WindowOverflow, "adapted bracket exceeds splitting depth");
      for (int cc = 0; cc < gp->dim(); ++cc) {
        Rat coef = c * gp->kappa0(lab, cc);
        if (coef.isZero()) continue;
        auto key = std::make_pair(cc, kk);
        auto [it, fresh] = negCoord.try_emplace(key, coef);
        if (!fresh) {
          it->second += coef;
          if (it->second.isZero()) negCoord.erase(it);
        }
      }
    }
    for (const auto& [k, c] : negCoord) {
      out.push_back({Mode{-k.second - 1, k.first, Sector::G}, c});
      for (const auto& [t, v] : sb->vecs.at(k)) {
        auto key = std::make_pair(t.first, t.second);
        auto [it, fresh] = br.try_emplace(key, -(c * v));
        if (!fresh) {
          it->second -= c * v;
          if (it->second.isZero()) br.erase(it);
        }
      }
    }
    for (const auto& [k, c] : br) {
      auto [exp, lab] = k;
      if (exp < 0) fail(Err::Internal, "adapted bracket residual is not regular");
      out.push_back({Mode{exp, lab, Sector::G}, c});
    }
    return out;
  };
  return std::make_shared<ModeAlg>(win, bracket);
}

AlgElem adaptedFromAmbient(const LieAlgebra& g, ModeAlg& adapted, const SplittingBasis& sb,
                           const AlgElem& a) {
  AlgElem out;
  for (const auto& [w, c] : a.terms()) {
    AlgElem cur = AlgElem::scalar(c);
    for (const auto& m : w) {
      AlgElem letter;
      if (m.n >= 0) {
        letter.addTerm({m}, HPoly::one());
      } else {
        // b_c t^{-k-1} = sum_a kappa0(c,a) r_{a,k} - (their tails)
        int k = -m.n - 1;
        std::map<Mode, Rat> lin;
        for (int aa = 0; aa < g.dim(); ++aa) {
          Rat coef = g.kappa0(m.a, aa);
          if (coef.isZero()) continue;
          lin[Mode{-k - 1, aa, Sector::G}] += coef;
          for (const auto& [t, v] : sb.vecs.at({aa, k})) {
            if (t.first < 0) continue;  // the dual-mode part is the encoding itself
            lin[Mode{t.first, t.second, Sector::G}] -= coef * v;
          }
        }
        for (const auto& [mm, cc] : lin)
          if (!cc.isZero()) letter.addTerm({mm}, HPoly(cc));
      }
      cur = adapted.multiply(cur, letter);
    }
    out.add(cur);
  }
  return out;
}

AlgElem projectRegular(const AlgElem& a) {
  AlgElem out;
  for (const auto& [w, c] : a.terms()) {
    bool regular = true;
    for (const auto& m : w)
      if (m.n < 0) {
        regular = false;
        break;
      }
    if (regular) out.addTerm(w, c);
  }
  return out;
}

TT2 reconstructTensor(const SplitPair& sp, const std::map<Word, AlgElem>& values) {
  // deletion-closedness of the value window
  for (const auto& [w, v] : values) {
    for (size_t i = 0; i < w.size(); ++i) {
      Word shorter;
      for (size_t j = 0; j < w.size(); ++j)
        if (j != i) shorter.push_back(w[j]);
      if (!values.count(shorter))
        fail(Err::UnderdeterminedWindow,
             "value window is not closed under letter deletion: missing [" + wordKey(shorter) + "]");
    }
  }
  std::vector<Word> keys;
  for (const auto& [w, v] : values) keys.push_back(w);
  std::sort(keys.begin(), keys.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  auto multisetFactorial = [](const Word& w) {
    Rat r(1);
    size_t i = 0;
    while (i < w.size()) {
      size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      r *= Rat::factorial(int(j - i));
      i = j;
    }
    return r;
  };
  std::map<Word, std::map<Word, HPoly>> solved;  // S-word -> payload (U-word -> coeff)
  for (const auto& w : keys) {
    std::map<Word, HPoly> val;
    for (const auto& [uw, c] : values.at(w).terms()) val[uw] = c;
    for (const auto& [M, payload] : solved) {
      if (M.size() > w.size()) continue;
      HPoly p = pairPhi(sp, M, AlgElem::monomial(w));
      if (p.isZero()) continue;
      for (const auto& [uw, c] : payload) {
        auto [it, fresh] = val.try_emplace(uw, HPoly());
        it->second.sub(c.mulTrunc(p, sp.window().K + 8));
        if (it->second.isZero()) val.erase(uw);
      }
    }
    if (val.empty()) continue;
    Rat mf = multisetFactorial(w);
    Word dual = w;
    for (auto& m : dual) m.s = Sector::GStar;
    std::map<Word, HPoly> payload;
    for (auto& [uw, c] : val) payload[uw] = c.shifted((int)w.size()).scaled(Rat(1) / mf);
    solved.emplace(dual, std::move(payload));
  }
  TT2 out;
  for (const auto& [M, payload] : solved)
    for (const auto& [uw, c] : payload)
      ttAdd(out, TKey<2>{SmashMono{M, {}}, SmashMono{{}, uw}}, c);
  return out;
}

}  // namespace ty
