#include "ty/split.hpp"

#include <algorithm>

#include "ty/error.hpp"

namespace ty {

namespace {

// permanent of a k x k rational matrix (expansion over the last row with
// memo on column subsets; k stays small here)
Rat permanent(const std::vector<std::vector<Rat>>& m) {
  size_t k = m.size();
  if (k == 0) return Rat(1);
  std::vector<Rat> memo(size_t(1) << k, Rat(0));
  memo[0] = Rat(1);
  for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
    int row = __builtin_popcountll(mask) - 1;
    Rat acc(0);
    for (size_t j = 0; j < k; ++j)
      if (mask & (size_t(1) << j)) {
        const Rat& v = m[row][j];
        if (!v.isZero()) acc += v * memo[mask ^ (size_t(1) << j)];
      }
    memo[mask] = acc;
  }
  return memo[(size_t(1) << k) - 1];
}

}  // namespace

SplitPair makeLoopSplit(const LieAlgebra& g, const RMatrixInput& r, Window win) {
  int d = g.dim();
  auto sb = std::make_shared<SplittingBasis>(splittingBasis(g, r, std::max(win.loopMax, 2)));
  int tailDeg = std::max(r.maxTailDegree(), 0);

  auto posBracket = [&g](Mode a, Mode b) {
    if (a.n < 0 || b.n < 0) fail(Err::Internal, "pos context saw a negative mode");
    return bracketModes(g, a, b);
  };
  auto pos = std::make_shared<ModeAlg>(win, posBracket);

  const LieAlgebra* gp = &g;
  RMatrixInput rr = r;
  // neg bracket: [r_{a,n}, r_{b,m}] via the splitting vectors
  auto negBracket = [gp, sb, rr](Mode x, Mode y) {
    if (x.n < 0 || y.n < 0) fail(Err::Internal, "neg context saw a negative depth index");
    int need = x.n + y.n + 1;
    if (need > sb->depth) {
      // extend on the fly is not possible on a shared const basis; the
      // basis is built to the window, so this is a window overflow.
      fail(Err::WindowOverflow, "neg bracket needs depth " + std::to_string(need));
    }
    std::vector<std::pair<Mode, Rat>> out;
    for (auto& [c, k, v] : splitBracket(*gp, *sb, x.a, x.n, y.a, y.n))
      out.push_back({Mode{k, c, Sector::G}, v});
    return out;
  };
  Window negWin = win;
  negWin.loopMin = 0;
  negWin.loopMax = sb->depth;
  auto neg = std::make_shared<ModeAlg>(negWin, negBracket);

  auto cross = [gp, sb](Mode x, Mode y, std::vector<std::pair<Mode, Rat>>& posPart,
                        std::vector<std::pair<Mode, Rat>>& negPart) {
    // [b_{x.a} t^{x.n}, r_{y.a, y.n}] as a concrete Laurent element
    const auto& vec = sb->vecs.at({y.a, y.n});
    std::map<std::pair<int, int>, Rat> br;  // (exp, label) -> coeff
    for (const auto& [k, c] : vec)
      for (const auto& [m, v] : gp->bracket(x.a, k.second)) {
        auto key = std::make_pair(x.n + k.first, m);
        auto [it, fresh] = br.try_emplace(key, c * v);
        if (!fresh) {
          it->second += c * v;
          if (it->second.isZero()) br.erase(it);
        }
      }
    // negative exponents determine the r-coordinates
    std::map<std::pair<int, int>, Rat> negCoord;
    for (const auto& [k, c] : br) {
      auto [exp, lab] = k;
      if (exp >= 0) continue;
      int kk = -exp - 1;
      if (kk > sb->depth) fail(Err::WindowOverflow, "cross bracket exceeds splitting depth");
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
      negPart.push_back({Mode{k.second, k.first, Sector::G}, c});
      // subtract the full splitting vector to leave the pos residual
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
      if (exp < 0) fail(Err::Internal, "cross residual is not regular");
      posPart.push_back({Mode{exp, lab, Sector::G}, c});
    }
  };

  SplitPair out(g, win, pos, neg, cross, d, d, tailDeg, SplitKind::Loop);
  out.setBasis(sb);
  return out;
}

SplitPair makeMatchedPairSplit(const LieAlgebra& p, const MatchedPairSpec& spec, Window win) {
  int d = p.dim();
  std::vector<int> side(d, -1);  // 0 = plus(neg side), 1 = minus(pos side)
  for (int i : spec.plus) side.at(i) = 0;
  for (int i : spec.minus) {
    if (side.at(i) == 0) fail(Err::NotDirectSum, "basis vector in both summands: " + p.label(i));
    side.at(i) = 1;
  }
  for (int i = 0; i < d; ++i)
    if (side[i] < 0) fail(Err::NotDirectSum, "basis vector in neither summand: " + p.label(i));
  // subalgebra checks
  auto checkClosed = [&](const std::vector<int>& part, int tag, const char* name) {
    for (int a : part)
      for (int b : part)
        for (const auto& [c, v] : p.bracket(a, b))
          if (side[c] != tag)
            fail(Err::NotSubalgebra, std::string(name) + " is not a subalgebra: [" + p.label(a) +
                                         "," + p.label(b) + "] has component " + p.label(c));
  };
  checkClosed(spec.plus, 0, "p_+");
  checkClosed(spec.minus, 1, "p_-");

  // reindex
  std::vector<int> plusIdx = spec.plus, minusIdx = spec.minus;
  std::sort(plusIdx.begin(), plusIdx.end());
  std::sort(minusIdx.begin(), minusIdx.end());
  std::vector<int> toPlus(d, -1), toMinus(d, -1);
  for (size_t i = 0; i < plusIdx.size(); ++i) toPlus[plusIdx[i]] = (int)i;
  for (size_t i = 0; i < minusIdx.size(); ++i) toMinus[minusIdx[i]] = (int)i;

  const LieAlgebra* pp = &p;
  auto posBracket = [pp, minusIdx, toMinus](Mode a, Mode b) {
    std::vector<std::pair<Mode, Rat>> out;
    for (const auto& [c, v] : pp->bracket(minusIdx[a.a], minusIdx[b.a]))
      out.push_back({Mode{0, toMinus[c], Sector::G}, v});
    return out;
  };
  auto negBracket = [pp, plusIdx, toPlus](Mode a, Mode b) {
    std::vector<std::pair<Mode, Rat>> out;
    for (const auto& [c, v] : pp->bracket(plusIdx[a.a], plusIdx[b.a]))
      out.push_back({Mode{0, toPlus[c], Sector::G}, v});
    return out;
  };
  Window w0 = win;
  w0.loopMin = 0;
  w0.loopMax = 0;
  auto pos = std::make_shared<ModeAlg>(w0, posBracket);
  auto neg = std::make_shared<ModeAlg>(w0, negBracket);
  auto cross = [pp, plusIdx, minusIdx, toPlus, toMinus, side](
                   Mode x, Mode y, std::vector<std::pair<Mode, Rat>>& posPart,
                   std::vector<std::pair<Mode, Rat>>& negPart) {
    for (const auto& [c, v] : pp->bracket(minusIdx[x.a], plusIdx[y.a])) {
      if (side[c] == 1)
        posPart.push_back({Mode{0, toMinus[c], Sector::G}, v});
      else
        negPart.push_back({Mode{0, toPlus[c], Sector::G}, v});
    }
  };
  return SplitPair(p, w0, pos, neg, cross, (int)minusIdx.size(), (int)plusIdx.size(), 0,
                   SplitKind::Finite);
}

std::map<Mode, Rat> rightActionPrim(const SplitPair& sp, Mode x, const Word& mu) {
  std::map<Mode, Rat> cur;
  cur[x] = Rat(1);
  for (const Mode& y : mu) {
    std::map<Mode, Rat> next;
    for (const auto& [m, c] : cur) {
      std::vector<std::pair<Mode, Rat>> posPart, negPart;
      sp.cross(m, y, posPart, negPart);
      for (const auto& [pm, v] : posPart) {
        auto [it, fresh] = next.try_emplace(pm, c * v);
        if (!fresh) {
          it->second += c * v;
          if (it->second.isZero()) next.erase(it);
        }
      }
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

std::map<Mode, Rat> rightActionPrim(const SplitPair& sp, const std::map<Mode, Rat>& x,
                                    const Word& mu) {
  std::map<Mode, Rat> out;
  for (const auto& [m, c] : x)
    for (const auto& [rm, rc] : rightActionPrim(sp, m, mu)) {
      auto [it, fresh] = out.try_emplace(rm, c * rc);
      if (!fresh) {
        it->second += c * rc;
        if (it->second.isZero()) out.erase(it);
      }
    }
  return out;
}

AlgElem leftAction(const SplitPair& sp, Mode x, const Word& mu) {
  if (mu.empty()) return AlgElem();  // counit of a primitive
  Mode y = mu.front();
  Word rest(mu.begin() + 1, mu.end());
  std::vector<std::pair<Mode, Rat>> posPart, negPart;
  sp.cross(x, y, posPart, negPart);
  AlgElem out;
  // (x |> y) * rest
  for (const auto& [m, c] : negPart) {
    Word w;
    w.push_back(m);
    w.insert(w.end(), rest.begin(), rest.end());
    out.add(sp.neg().normalOrder(w).scaled(c));
  }
  if (!rest.empty()) {
    // y * (x |> rest)
    AlgElem inner = leftAction(sp, x, rest);
    out.add(sp.neg().multiply(AlgElem::monomial({y}), inner));
    // (x <| y) |> rest
    for (const auto& [m, c] : posPart) out.add(leftAction(sp, m, rest).scaled(c));
  }
  return out;
}

HPoly pairPlain(const SplitPair& sp, const Word& sMono, const AlgElem& a) {
  size_t deg = sMono.size();
  HPoly out;
  for (const auto& [w, c] : a.terms()) {
    if (w.size() < deg) continue;
    // sigma^{-1}(w), keep the degree-deg commutative part
    auto dec = sp.neg().symInv(w);
    Rat acc(0);
    for (const auto& [v, vc] : dec) {
      if (v.size() != deg) continue;
      // diagonal duality: multisets must match labelwise
      bool match = true;
      for (size_t i = 0; i < deg; ++i)
        if (sMono[i].a != v[i].a || sMono[i].n != v[i].n) {
          match = false;
          break;
        }
      if (!match) continue;
      // permanent of the delta-matrix of a multiset = prod of multiplicities!
      Rat mult(1);
      size_t i = 0;
      while (i < deg) {
        size_t j = i;
        while (j < deg && v[j] == v[i]) ++j;
        mult *= Rat::factorial(int(j - i));
        i = j;
      }
      acc += vc * mult;
    }
    if (!acc.isZero()) out.add(c.scaled(acc));
  }
  return out;
}

HPoly pairPhi(const SplitPair& sp, const Word& sMono, const AlgElem& a) {
  return pairPlain(sp, sMono, a).shifted(-(int)sMono.size());
}

std::vector<Word> enumNegWords(const SplitPair& sp, int maxLen, int maxIdx, int maxWeight) {
  std::vector<Mode> gens;
  for (int n = 0; n <= maxIdx; ++n)
    for (int a = 0; a < sp.negLabelCount(); ++a) gens.push_back(Mode{n, a, Sector::G});
  std::vector<Word> out;
  out.push_back({});
  Word cur;
  std::function<void(size_t, int, int)> rec = [&](size_t start, int len, int weight) {
    if (len >= maxLen) return;
    for (size_t i = start; i < gens.size(); ++i) {
      int w = gens[i].n + 1;
      if (weight + w > maxWeight) continue;
      cur.push_back(gens[i]);
      out.push_back(cur);
      rec(i, len + 1, weight + w);
      cur.pop_back();
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace ty
