#include <ostream>
#include <sstream>

#include "ty/error.hpp"
#include "ty/hpoly.hpp"
#include "ty/rational.hpp"

namespace ty {

const char* errName(Err e) {
  switch (e) {
    case Err::JacobiViolation: return "JacobiViolation";
    case Err::FormDegenerate: return "FormDegenerate";
    case Err::FormNotInvariant: return "FormNotInvariant";
    case Err::WindowOverflow: return "WindowOverflow";
    case Err::NotTopologicallyNilpotent: return "NotTopologicallyNilpotent";
    case Err::BadUnitPart: return "BadUnitPart";
    case Err::LegTypeMismatch: return "LegTypeMismatch";
    case Err::UnderdeterminedWindow: return "UnderdeterminedWindow";
    case Err::NotComplementary: return "NotComplementary";
    case Err::NotClosed: return "NotClosed";
    case Err::RequiresDifferenceDependence: return "RequiresDifferenceDependence";
    case Err::NoUnitLeadingTerm: return "NoUnitLeadingTerm";
    case Err::RequiresRational: return "RequiresRational";
    case Err::WindowTooSmall: return "WindowTooSmall";
    case Err::ClosureFailure: return "ClosureFailure";
    case Err::LegActionUndefined: return "LegActionUndefined";
    case Err::NotSubalgebra: return "NotSubalgebra";
    case Err::NotDirectSum: return "NotDirectSum";
    case Err::RequiresWindow: return "RequiresWindow";
    case Err::HbarUnderflow: return "HbarUnderflow";
    case Err::Usage: return "Usage";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.isZero()) fail(Err::Internal, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(mpq_class(s));
  mpq_class n(s.substr(0, slash));
  mpq_class d(s.substr(slash + 1));
  if (d == 0) fail(Err::Usage, "rational with zero denominator: " + s);
  return Rat(mpq_class(n / d));
}

std::string Rat::str() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

Rat Rat::factorial(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return Rat(mpq_class(r));
}

Rat Rat::binom(long n, long k) {
  if (k < 0) return Rat(0);
  mpq_class r = 1;
  for (long i = 0; i < k; ++i) {
    r *= mpq_class(n - i);
    r /= mpq_class(i + 1);
  }
  return Rat(r);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

HPoly HPoly::hbar(int k, Rat coeff) {
  HPoly p;
  if (!coeff.isZero()) p.c_[k] = std::move(coeff);
  return p;
}

bool HPoly::isOne() const { return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second.isOne(); }

int HPoly::minExp() const { return c_.empty() ? 0 : c_.begin()->first; }
int HPoly::maxExp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

Rat HPoly::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Rat(0) : it->second;
}

void HPoly::addTerm(int k, const Rat& c) {
  if (c.isZero()) return;
  auto [it, fresh] = c_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.isZero()) c_.erase(it);
  }
}

void HPoly::add(const HPoly& o) {
  for (const auto& [k, c] : o.c_) addTerm(k, c);
}

void HPoly::sub(const HPoly& o) {
  for (const auto& [k, c] : o.c_) addTerm(k, -c);
}

HPoly HPoly::neg() const {
  HPoly r;
  for (const auto& [k, c] : c_) r.c_[k] = -c;
  return r;
}

HPoly HPoly::scaled(const Rat& s) const {
  HPoly r;
  if (s.isZero()) return r;
  for (const auto& [k, c] : c_) r.c_[k] = c * s;
  return r;
}

HPoly HPoly::shifted(int dk) const {
  HPoly r;
  for (const auto& [k, c] : c_) r.c_[k + dk] = c;
  return r;
}

HPoly HPoly::mulTrunc(const HPoly& o, int K) const {
  HPoly r;
  for (const auto& [k1, c1] : c_)
    for (const auto& [k2, c2] : o.c_) {
      int k = k1 + k2;
      if (k > K) continue;
      r.addTerm(k, c1 * c2);
    }
  return r;
}

HPoly HPoly::truncated(int K) const {
  HPoly r;
  for (const auto& [k, c] : c_)
    if (k <= K) r.c_[k] = c;
  return r;
}

void HPoly::checkPoly(const char* where) const {
  if (!isPoly()) fail(Err::HbarUnderflow, std::string("negative deformation exponent in ") + where);
}

Rat HPoly::evalAt(const Rat& xi) const {
  checkPoly("evalAt");
  Rat r(0);
  for (const auto& [k, c] : c_) {
    Rat p(1);
    for (int i = 0; i < k; ++i) p *= xi;
    r += c * p;
  }
  return r;
}

std::string HPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : c_) {
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << c.str();
    } else {
      if (!c.isOne()) os << c.str() << "*";
      os << "h";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace ty
