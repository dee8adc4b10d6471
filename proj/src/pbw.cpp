#include "ty/pbw.hpp"

#include <algorithm>
#include <sstream>

#include "ty/error.hpp"

namespace ty {

std::string wordKey(const Word& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << "|";
    os << (w[i].s == Sector::GStar ? "s" : "g") << w[i].a << "," << w[i].n;
  }
  return os.str();
}

Word wordFromKey(const std::string& s) {
  Word w;
  if (s.empty()) return w;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t bar = s.find('|', pos);
    std::string tok = s.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    Mode m;
    m.s = tok[0] == 's' ? Sector::GStar : Sector::G;
    size_t comma = tok.find(',');
    m.a = std::stoi(tok.substr(1, comma - 1));
    m.n = std::stoi(tok.substr(comma + 1));
    w.push_back(m);
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return w;
}

AlgElem AlgElem::scalar(HPoly c) {
  AlgElem r;
  if (!c.isZero()) r.t_[Word{}] = std::move(c);
  return r;
}

AlgElem AlgElem::monomial(Word w, HPoly c) {
  AlgElem r;
  if (!c.isZero()) r.t_[std::move(w)] = std::move(c);
  return r;
}

HPoly AlgElem::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? HPoly() : it->second;
}

void AlgElem::addTerm(const Word& w, const HPoly& c) {
  if (c.isZero()) return;
  auto [it, fresh] = t_.try_emplace(w, c);
  if (!fresh) {
    it->second.add(c);
    if (it->second.isZero()) t_.erase(it);
  }
}

void AlgElem::add(const AlgElem& o) {
  for (const auto& [w, c] : o.t_) addTerm(w, c);
}

void AlgElem::sub(const AlgElem& o) {
  for (const auto& [w, c] : o.t_) addTerm(w, c.neg());
}

AlgElem AlgElem::neg() const {
  AlgElem r;
  for (const auto& [w, c] : t_) r.t_[w] = c.neg();
  return r;
}

AlgElem AlgElem::scaled(const Rat& s) const {
  AlgElem r;
  if (s.isZero()) return r;
  for (const auto& [w, c] : t_) r.t_[w] = c.scaled(s);
  return r;
}

AlgElem AlgElem::scaledH(const HPoly& s, int K) const {
  AlgElem r;
  for (const auto& [w, c] : t_) {
    HPoly p = c.mulTrunc(s, K);
    if (!p.isZero()) r.t_[w] = std::move(p);
  }
  return r;
}

AlgElem AlgElem::shiftedH(int dk) const {
  AlgElem r;
  for (const auto& [w, c] : t_) r.t_[w] = c.shifted(dk);
  return r;
}

AlgElem AlgElem::truncated(int K) const {
  AlgElem r;
  for (const auto& [w, c] : t_) {
    HPoly p = c.truncated(K);
    if (!p.isZero()) r.t_[w] = std::move(p);
  }
  return r;
}

int AlgElem::maxWordLen() const {
  int m = 0;
  for (const auto& [w, c] : t_) m = std::max(m, (int)w.size());
  return m;
}

std::string AlgElem::str(const LieAlgebra& g) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (const auto& m : w) os << "*" << m.str(g);
    if (w.empty()) os << "*1";
  }
  return os.str();
}

std::vector<std::pair<Mode, Rat>> ModeAlg::bracket(Mode a, Mode b) const {
  auto out = bracket_(a, b);
  for (const auto& [m, c] : out)
    if (m.n < win_.loopMin || m.n > win_.loopMax)
      fail(Err::WindowOverflow,
           "bracket produced loop degree " + std::to_string(m.n) + " outside window");
  return out;
}

AlgElem ModeAlg::normalOrderUncached(const Word& w) const {
  // find first descent
  size_t i = 0;
  for (; i + 1 < w.size(); ++i)
    if (w[i + 1] < w[i]) break;
  if (i + 1 >= w.size()) return AlgElem::monomial(w);

  Word swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  AlgElem r = normalOrder(swapped);
  if (!commutative_) {
    for (const auto& [m, c] : bracket(w[i], w[i + 1])) {
      Word shorter;
      shorter.reserve(w.size() - 1);
      shorter.insert(shorter.end(), w.begin(), w.begin() + i);
      shorter.push_back(m);
      shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
      r.add(normalOrder(shorter).scaled(c));
    }
  }
  return r;
}

AlgElem ModeAlg::normalOrder(const Word& w) const {
  if (w.size() <= 1) return AlgElem::monomial(w);
  if (std::is_sorted(w.begin(), w.end())) return AlgElem::monomial(w);
  {
    std::lock_guard<std::mutex> lk(mtx_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  AlgElem r = normalOrderUncached(w);
  {
    std::lock_guard<std::mutex> lk(mtx_);
    cache_.emplace(w, r);
  }
  return r;
}

AlgElem ModeAlg::multiply(const AlgElem& a, const AlgElem& b) const {
  AlgElem r;
  for (const auto& [w1, c1] : a.terms())
    for (const auto& [w2, c2] : b.terms()) {
      HPoly c = c1.mulTrunc(c2, win_.K);
      if (c.isZero()) continue;
      Word prod;
      prod.reserve(w1.size() + w2.size());
      prod.insert(prod.end(), w1.begin(), w1.end());
      prod.insert(prod.end(), w2.begin(), w2.end());
      AlgElem no = normalOrder(prod);
      for (const auto& [w, v] : no.terms()) r.addTerm(w, v.mulTrunc(c, win_.K));
    }
  return r;
}

AlgElem ModeAlg::power(const AlgElem& a, int n) const {
  AlgElem r = AlgElem::unit();
  for (int i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

AlgElem ModeAlg::expTrunc(const AlgElem& x) const {
  for (const auto& [w, c] : x.terms())
    if (c.minExp() < 1)
      fail(Err::NotTopologicallyNilpotent,
           "exp requires positive deformation valuation; offending word [" + wordKey(w) + "]");
  AlgElem r = AlgElem::unit();
  AlgElem term = AlgElem::unit();
  for (int n = 1; n <= win_.K; ++n) {
    term = multiply(term, x).scaled(Rat(1, n));
    if (term.isZero()) break;
    r.add(term);
  }
  return r;
}

AlgElem ModeAlg::logTrunc(const AlgElem& a) const {
  AlgElem n = a;
  HPoly unitPart = n.coeff(Word{});
  HPoly u1 = unitPart;
  u1.addTerm(0, Rat(-1));
  if (u1.minExp() < 1 && !u1.isZero())
    fail(Err::BadUnitPart, "log requires unit part 1 + O(hbar)");
  if (unitPart.isZero()) fail(Err::BadUnitPart, "log requires invertible unit part");
  n.addTerm(Word{}, HPoly(Rat(-1)));
  for (const auto& [w, c] : n.terms())
    if (c.minExp() < 1) fail(Err::BadUnitPart, "log argument not of the form 1 + O(hbar)");
  AlgElem r;
  AlgElem pw = AlgElem::unit();
  for (int k = 1; k <= win_.K; ++k) {
    pw = multiply(pw, n);
    if (pw.isZero()) break;
    r.add(pw.scaled(Rat((k % 2 == 1) ? 1 : -1, k)));
  }
  return r;
}

AlgElem ModeAlg::bch(const AlgElem& x, const AlgElem& y) const {
  return logTrunc(multiply(expTrunc(x), expTrunc(y)));
}

std::map<Word, Rat> ModeAlg::symInv(const Word& w) const {
  if (!std::is_sorted(w.begin(), w.end())) fail(Err::Internal, "symInv expects a normal-formed word");
  std::map<Word, Rat> out;
  if (w.size() <= 1) {
    out[w] = Rat(1);
    return out;
  }
  {
    std::lock_guard<std::mutex> lk(mtx_);
    auto it = symCache_.find(w);
    if (it != symCache_.end()) return it->second;
  }
  // average of all arrangements, straightened
  AlgElem avg;
  Word arr = w;
  long count = 0;
  do {
    avg.add(normalOrder(arr));
    ++count;
  } while (std::next_permutation(arr.begin(), arr.end()));
  avg = avg.scaled(Rat(1, count));
  // avg = w + L with L supported on shorter words
  std::map<Word, Rat> res;
  res[w] = Rat(1);
  for (const auto& [v, c] : avg.terms()) {
    if (v == w) continue;
    if (v.size() >= w.size()) fail(Err::Internal, "symmetrization produced unexpected word");
    if (c.maxExp() != 0 || c.minExp() != 0) fail(Err::Internal, "symmetrization produced deformation terms");
    auto lower = symInv(v);
    for (const auto& [lw, lc] : lower) {
      Rat add = -c.coeff(0) * lc;
      auto [it, fresh] = res.try_emplace(lw, add);
      if (!fresh) {
        it->second += add;
        if (it->second.isZero()) res.erase(it);
      }
    }
  }
  {
    std::lock_guard<std::mutex> lk(mtx_);
    symCache_.emplace(w, res);
  }
  return res;
}

AlgElem ModeAlg::symApply(const Word& w) const {
  if (w.size() <= 1) return AlgElem::monomial(w);
  AlgElem avg;
  Word arr = w;
  std::sort(arr.begin(), arr.end());
  long count = 0;
  do {
    avg.add(normalOrder(arr));
    ++count;
  } while (std::next_permutation(arr.begin(), arr.end()));
  return avg.scaled(Rat(1, count));
}

size_t ModeAlg::cacheSize() const {
  std::lock_guard<std::mutex> lk(mtx_);
  return cache_.size();
}

void ModeAlg::cacheDump(std::map<std::string, std::map<std::string, std::string>>& out) const {
  std::lock_guard<std::mutex> lk(mtx_);
  for (const auto& [w, elem] : cache_) {
    auto& slot = out[wordKey(w)];
    for (const auto& [v, c] : elem.terms()) slot[wordKey(v)] = c.str();
  }
}

void ModeAlg::cacheLoad(const std::map<std::string, std::map<std::string, std::string>>& in) {
  std::lock_guard<std::mutex> lk(mtx_);
  for (const auto& [wk, terms] : in) {
    Word w = wordFromKey(wk);
    AlgElem e;
    for (const auto& [vk, cs] : terms) {
      // coefficients here are plain rationals (straightening is h-free)
      e.addTerm(wordFromKey(vk), HPoly(Rat::parse(cs)));
    }
    cache_.emplace(std::move(w), std::move(e));
  }
}

std::map<std::pair<Word, Word>, Rat> coproductWord(const Word& w) {
  // runs of equal modes
  std::vector<std::pair<Mode, int>> runs;
  for (const auto& m : w) {
    if (!runs.empty() && runs.back().first == m)
      runs.back().second++;
    else
      runs.push_back({m, 1});
  }
  std::map<std::pair<Word, Word>, Rat> out;
  std::vector<int> pick(runs.size(), 0);
  while (true) {
    Word left, right;
    Rat coef(1);
    for (size_t i = 0; i < runs.size(); ++i) {
      for (int j = 0; j < pick[i]; ++j) left.push_back(runs[i].first);
      for (int j = pick[i]; j < runs[i].second; ++j) right.push_back(runs[i].first);
      coef *= Rat::binom(runs[i].second, pick[i]);
    }
    out[{left, right}] += coef;
    // next multi-index
    size_t i = 0;
    for (; i < runs.size(); ++i) {
      if (pick[i] < runs[i].second) {
        pick[i]++;
        break;
      }
      pick[i] = 0;
    }
    if (i == runs.size()) break;
  }
  return out;
}

std::map<std::pair<Word, Word>, HPoly> coproductU(const AlgElem& a) {
  std::map<std::pair<Word, Word>, HPoly> out;
  for (const auto& [w, c] : a.terms())
    for (const auto& [split, coef] : coproductWord(w)) {
      auto& slot = out[split];
      slot.add(c.scaled(coef));
      if (slot.isZero()) out.erase(split);
    }
  return out;
}

}  // namespace ty
