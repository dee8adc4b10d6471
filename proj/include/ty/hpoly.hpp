#pragma once

#include <map>
#include <string>

#include "ty/rational.hpp"

namespace ty {

// Sparse polynomial in the deformation parameter, truncated at an order K
// supplied by the enclosing context. Negative exponents are permitted
// transiently inside duality contractions; materialized algebra elements
// must be polynomial (checkPoly).
class HPoly {
 public:
  HPoly() = default;
  explicit HPoly(Rat c) {
    if (!c.isZero()) c_[0] = std::move(c);
  }
  static HPoly one() { return HPoly(Rat(1)); }
  static HPoly hbar(int k = 1, Rat coeff = Rat(1));

  bool isZero() const { return c_.empty(); }
  bool isOne() const;
  int minExp() const;  // 0 on zero
  int maxExp() const;  // 0 on zero
  const std::map<int, Rat>& terms() const { return c_; }
  Rat coeff(int k) const;

  void add(const HPoly& o);
  void sub(const HPoly& o);
  void addTerm(int k, const Rat& c);
  HPoly neg() const;
  HPoly scaled(const Rat& c) const;
  HPoly shifted(int dk) const;              // multiply by hbar^dk
  HPoly mulTrunc(const HPoly& o, int K) const;  // product, exponents > K dropped
  HPoly truncated(int K) const;

  bool isPoly() const { return c_.empty() || c_.begin()->first >= 0; }
  void checkPoly(const char* where) const;  // HbarUnderflow if negative exponent
  Rat evalAt(const Rat& xi) const;          // substitute hbar = xi (requires poly)

  friend bool operator==(const HPoly& a, const HPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }
  friend bool operator<(const HPoly& a, const HPoly& b) { return a.c_ < b.c_; }

  std::string str() const;  // e.g. "1 + 3/2*h^2"

 private:
  std::map<int, Rat> c_;  // exponent -> coefficient, no zero entries
};

}  // namespace ty
