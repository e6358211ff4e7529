// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_RATIONAL_HPP
#define CUF_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuf {

/// A value in Q_{>=0} together with a distinguished infinity.
///
/// All payload arithmetic in the library goes through this type: payloads are
/// exact rationals in lowest terms, infinity is a flag, and no floating point
/// is involved anywhere. The additive conventions are the monoid ones:
/// inf + x = inf, and inf * 0 = 0 (the empty sum).
class Ext {
public:
  Ext() : q_(0) {}
  Ext(long n) : q_(n) { require_nonneg(); }
  Ext(unsigned long n) : q_(static_cast<unsigned long>(n)) {}
  Ext(long num, long den);
  explicit Ext(const mpz_class& n) : q_(n) { require_nonneg(); }
  explicit Ext(mpq_class q) : q_(std::move(q)) {
    q_.canonicalize();
    require_nonneg();
  }

  static Ext inf() {
    Ext e;
    e.inf_ = true;
    return e;
  }
  static Ext ratio(const mpz_class& num, const mpz_class& den);

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && q_ == 0; }
  bool is_integer() const { return !inf_ && q_.get_den() == 1; }

  /// Finite value; caller must check is_inf() first.
  const mpq_class& value() const;
  mpz_class num() const { return inf_ ? mpz_class(0) : q_.get_num(); }
  mpz_class den() const { return inf_ ? mpz_class(0) : q_.get_den(); }

  Ext operator+(const Ext& o) const;
  Ext operator-(const Ext& o) const;  // requires o <= *this, both finite or *this inf
  Ext operator*(const Ext& o) const;  // inf * 0 = 0
  Ext times(const mpz_class& k) const;
  Ext div(const mpz_class& k) const;  // exact division by a positive integer

  bool operator==(const Ext& o) const {
    return inf_ == o.inf_ && (inf_ || q_ == o.q_);
  }
  bool operator!=(const Ext& o) const { return !(*this == o); }
  bool operator<(const Ext& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return q_ < o.q_;
  }
  bool operator<=(const Ext& o) const { return *this < o || *this == o; }
  bool operator>(const Ext& o) const { return o < *this; }
  bool operator>=(const Ext& o) const { return o <= *this; }

  /// Least integer >= value, with ceil(inf) = inf.
  Ext ceil() const;

  /// Rendered as "p/q", "p", or "inf".
  std::string str() const;
  static std::optional<Ext> parse(const std::string& text);

private:
  void require_nonneg() {
    if (q_ < 0) throw std::invalid_argument("Ext: negative payload");
  }

  mpq_class q_;
  bool inf_ = false;
};

/// Polynomial with rational coefficients, used as a chain-index generator.
struct Poly {
  std::vector<mpq_class> coeff;  // coeff[i] * d^i

  static Poly constant(const mpq_class& c) { return Poly{{c}}; }
  static Poly linear(const mpq_class& a, const mpq_class& b) { return Poly{{b, a}}; }  // a*d + b

  int degree() const;
  mpq_class eval(const mpz_class& d) const;
  mpq_class lead() const;
  Poly operator*(const Poly& o) const;
  Poly operator+(const Poly& o) const;
  bool is_zero() const { return degree() < 0; }
};

/// Exact rational function of the chain index d, P(d)/Q(d) with Q(d) > 0 for
/// d >= 1. Closed-form chains carry their payloads in this form so that
/// suprema are limits computed by degree comparison, never by rounding.
struct PolyFrac {
  Poly num;
  Poly den;

  static PolyFrac constant(const Ext& c);  // c must be finite
  static PolyFrac index();                 // d
  /// t * d / (d + 1), the standard strictly increasing ramp with supremum t.
  static PolyFrac ramp(const Ext& t);

  Ext eval(const mpz_class& d) const;
  /// Limit as d -> inf; for nondecreasing nonnegative families this is the supremum.
  Ext limit() const;
  bool is_constant() const;

  PolyFrac operator*(const PolyFrac& o) const;
  PolyFrac scaled(const mpq_class& r) const;
};

}  // namespace cuf

#endif
