#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace ty {

// Exact rational scalar. Always reduced, denominator positive.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}
  Rat(long n) : v_(n) {}
  Rat(long n, long d) : v_(n, d) { v_.canonicalize(); }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rat parse(const std::string& s);  // "n", "n/d"

  bool isZero() const { return v_ == 0; }
  bool isOne() const { return v_ == 1; }
  int sgn() const { return ::sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) {
    v_ += o.v_;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    v_ -= o.v_;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    v_ *= o.v_;
    return *this;
  }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  std::string str() const;  // "n" or "n/d"

  // n!, binom as exact rationals
  static Rat factorial(int n);
  static Rat binom(long n, long k);  // generalized: n may be negative

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace ty
