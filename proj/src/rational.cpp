// SPDX-License-Identifier: Apache-2.0

#include "cuf/rational.hpp"

namespace cuf {

Ext::Ext(long num, long den) : q_(num, den) {
  if (den == 0) throw std::invalid_argument("Ext: zero denominator");
  q_.canonicalize();
  require_nonneg();
}

Ext Ext::ratio(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("Ext: zero denominator");
  mpq_class q(num);
  q /= mpq_class(den);
  return Ext(q);
}

const mpq_class& Ext::value() const {
  if (inf_) throw std::logic_error("Ext: value() on inf");
  return q_;
}

Ext Ext::operator+(const Ext& o) const {
  if (inf_ || o.inf_) return inf();
  return Ext(mpq_class(q_ + o.q_));
}

Ext Ext::operator-(const Ext& o) const {
  if (inf_) return inf();
  if (o.inf_ || o.q_ > q_) throw std::invalid_argument("Ext: negative difference");
  return Ext(mpq_class(q_ - o.q_));
}

Ext Ext::operator*(const Ext& o) const {
  if (is_zero() || o.is_zero()) return Ext();
  if (inf_ || o.inf_) return inf();
  return Ext(mpq_class(q_ * o.q_));
}

Ext Ext::times(const mpz_class& k) const {
  if (k < 0) throw std::invalid_argument("Ext: negative scalar");
  if (k == 0) return Ext();
  if (inf_) return inf();
  return Ext(mpq_class(q_ * k));
}

Ext Ext::div(const mpz_class& k) const {
  if (k <= 0) throw std::invalid_argument("Ext: division by nonpositive integer");
  if (inf_) return inf();
  mpq_class q = q_;
  q /= mpq_class(k);
  return Ext(q);
}

Ext Ext::ceil() const {
  if (inf_) return inf();
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return Ext(c);
}

std::string Ext::str() const {
  if (inf_) return "inf";
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::optional<Ext> Ext::parse(const std::string& text) {
  if (text == "inf") return inf();
  if (text.empty()) return std::nullopt;
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!digits(num) || !digits(den)) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  return ratio(n, d);
}

int Poly::degree() const {
  for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i)
    if (coeff[i] != 0) return i;
  return -1;
}

mpq_class Poly::eval(const mpz_class& d) const {
  mpq_class acc = 0;
  for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) acc = acc * d + coeff[i];
  return acc;
}

mpq_class Poly::lead() const {
  int deg = degree();
  return deg < 0 ? mpq_class(0) : coeff[deg];
}

Poly Poly::operator*(const Poly& o) const {
  if (coeff.empty() || o.coeff.empty()) return Poly{};
  Poly out;
  out.coeff.assign(coeff.size() + o.coeff.size() - 1, mpq_class(0));
  for (size_t i = 0; i < coeff.size(); ++i)
    for (size_t j = 0; j < o.coeff.size(); ++j) out.coeff[i + j] += coeff[i] * o.coeff[j];
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out;
  out.coeff.assign(std::max(coeff.size(), o.coeff.size()), mpq_class(0));
  for (size_t i = 0; i < coeff.size(); ++i) out.coeff[i] += coeff[i];
  for (size_t i = 0; i < o.coeff.size(); ++i) out.coeff[i] += o.coeff[i];
  return out;
}

PolyFrac PolyFrac::constant(const Ext& c) {
  if (c.is_inf()) throw std::invalid_argument("PolyFrac: infinite constant");
  return PolyFrac{Poly::constant(c.value()), Poly::constant(1)};
}

PolyFrac PolyFrac::index() { return PolyFrac{Poly::linear(1, 0), Poly::constant(1)}; }

PolyFrac PolyFrac::ramp(const Ext& t) {
  if (t.is_inf()) return index();
  return PolyFrac{Poly::linear(t.value(), 0), Poly::linear(1, 1)};
}

Ext PolyFrac::eval(const mpz_class& d) const {
  mpq_class q = den.eval(d);
  if (q <= 0) throw std::logic_error("PolyFrac: nonpositive denominator at index");
  mpq_class p = num.eval(d);
  p /= q;
  return Ext(p);
}

Ext PolyFrac::limit() const {
  int dn = num.degree(), dd = den.degree();
  if (dn < 0) return Ext();
  if (dd < 0) throw std::logic_error("PolyFrac: zero denominator");
  if (dn > dd) return Ext::inf();
  if (dn < dd) return Ext();
  mpq_class q = num.lead() / den.lead();
  return Ext(q);
}

bool PolyFrac::is_constant() const {
  // P/Q constant iff P*Q(1) == Q*P(1) as polynomials.
  Poly lhs = num * Poly::constant(den.eval(1));
  Poly rhs = den * Poly::constant(num.eval(1));
  Poly diff = lhs + (rhs * Poly::constant(-1));
  return diff.is_zero();
}

PolyFrac PolyFrac::operator*(const PolyFrac& o) const {
  return PolyFrac{num * o.num, den * o.den};
}

PolyFrac PolyFrac::scaled(const mpq_class& r) const {
  if (r < 0) throw std::invalid_argument("PolyFrac: negative scale");
  return PolyFrac{num * Poly::constant(r), den};
}

}  // namespace cuf
