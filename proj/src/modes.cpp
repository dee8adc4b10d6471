#include "ty/modes.hpp"

#include <sstream>

#include "ty/error.hpp"

namespace ty {

std::string Mode::str(const LieAlgebra& g) const {
  std::ostringstream os;
  os << (s == Sector::GStar ? "I^" : "I_") << g.label(a) << "_" << n;
  return os.str();
}

DElement DElement::mode(Mode m, Rat c) {
  DElement r;
  if (!c.isZero()) r.t_[m] = HPoly(c);
  return r;
}

void DElement::addTerm(Mode m, const HPoly& c) {
  if (c.isZero()) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second.add(c);
    if (it->second.isZero()) t_.erase(it);
  }
}

void DElement::add(const DElement& o) {
  for (const auto& [m, c] : o.t_) addTerm(m, c);
}

DElement DElement::neg() const {
  DElement r;
  for (const auto& [m, c] : t_) r.t_[m] = c.neg();
  return r;
}

DElement DElement::scaled(const Rat& s) const {
  DElement r;
  if (s.isZero()) return r;
  for (const auto& [m, c] : t_) r.t_[m] = c.scaled(s);
  return r;
}

std::string DElement::str(const LieAlgebra& g) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << m.str(g);
  }
  return os.str();
}

std::vector<std::pair<Mode, Rat>> bracketModes(const LieAlgebra& g, Mode m1, Mode m2) {
  std::vector<std::pair<Mode, Rat>> out;
  if (m1.s == Sector::GStar && m2.s == Sector::GStar) return out;  // abelian ideal
  Sector s = (m1.s == Sector::GStar || m2.s == Sector::GStar) ? Sector::GStar : Sector::G;
  int n = m1.n + m2.n;
  for (const auto& [c, v] : g.bracket(m1.a, m2.a)) out.push_back({Mode{n, c, s}, v});
  return out;
}

DElement cotangentBracket(const LieAlgebra& g, const DElement& x, const DElement& y,
                          const Window& win) {
  DElement r;
  for (const auto& [m1, c1] : x.terms())
    for (const auto& [m2, c2] : y.terms()) {
      auto br = bracketModes(g, m1, m2);
      if (br.empty()) continue;
      int n = m1.n + m2.n;
      if (n < win.loopMin || n > win.loopMax)
        fail(Err::WindowOverflow, "bracket loop degree " + std::to_string(n) + " outside window [" +
                                      std::to_string(win.loopMin) + "," +
                                      std::to_string(win.loopMax) + "]");
      HPoly c = c1.mulTrunc(c2, win.K);
      for (const auto& [m, v] : br) r.addTerm(m, c.scaled(v));
    }
  return r;
}

std::vector<std::tuple<DLabel, DLabel, Rat>> casimirD(const LieAlgebra& g) {
  std::vector<std::tuple<DLabel, DLabel, Rat>> out;
  for (const auto& [a, b, c] : g.casimirG()) {
    out.push_back({DLabel{a, Sector::G}, DLabel{b, Sector::GStar}, c});
    out.push_back({DLabel{b, Sector::GStar}, DLabel{a, Sector::G}, c});
  }
  return out;
}

Rat kappaD(const LieAlgebra& g, DLabel x, DLabel y) {
  if (x.s == y.s) return Rat(0);
  return g.kappa0(x.a, y.a);
}

DElement derivationT(const DElement& x) {
  DElement r;
  for (const auto& [m, c] : x.terms()) {
    if (m.n == 0) continue;
    r.addTerm(Mode{m.n - 1, m.a, m.s}, c.scaled(Rat(m.n)));
  }
  return r;
}

std::map<int, DElement> translate(const DElement& x) {
  for (const auto& [m, c] : x.terms())
    if (m.n < 0) fail(Err::Usage, "translate requires nonnegative loop degrees");
  std::map<int, DElement> out;
  for (const auto& [m, c] : x.terms())
    for (int j = 0; j <= m.n; ++j)
      out[j].addTerm(Mode{m.n - j, m.a, m.s}, c.scaled(Rat::binom(m.n, j)));
  for (auto it = out.begin(); it != out.end();)
    it = it->second.isZero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace ty
