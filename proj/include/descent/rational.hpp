#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace descent {

// Exact rational scalar used throughout the engine.
//
// Canonical form is an invariant, not a convention: numerator and denominator
// coprime, denominator positive, zero stored as 0/1.  GMP maintains this for
// all arithmetic provided the operands are canonical, so the constructors are
// the only places that must canonicalize explicitly.  The wrapper exposes
// plain value-returning operators (no gmpxx expression templates), which is
// what lets Eigen treat it as an ordinary scalar.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                    // NOLINT: implicit by design
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT
  explicit Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }

  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }

  // Accepts "p", "-p", "p/q" with optional sign; base 10.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (q.get_den() == 0)
      throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  std::string to_string() const { return v_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational::raw(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational::raw(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational::raw(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational::raw(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational::raw(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
  }

  const mpq_class& raw_value() const { return v_; }

 private:
  // Trusted constructor for results of arithmetic on canonical operands.
  static Rational raw(mpq_class q) {
    Rational r;
    r.v_ = std::move(q);
    return r;
  }

  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace descent

namespace Eigen {

template <>
struct NumTraits<descent::Rational> : GenericNumTraits<descent::Rational> {
  using Real = descent::Rational;
  using NonInteger = descent::Rational;
  using Nested = descent::Rational;
  using Literal = long;

  static inline Real epsilon() { return descent::Rational(0); }
  static inline Real dummy_precision() { return descent::Rational(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
};

}  // namespace Eigen
