#pragma once

// Dense univariate polynomials over Q and the field Q(x) of rational functions.
// The variable name is supplied at print time; arithmetic does not depend on it.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adelic/rational.hpp"

namespace adelic {

class ScalarPolynomial {
 public:
  ScalarPolynomial() = default;
  ScalarPolynomial(const Rational& c) {  // NOLINT: constants are polynomials
    if (!c.is_zero()) c_.push_back(c);
  }
  ScalarPolynomial(int c) : ScalarPolynomial(Rational(c)) {}
  explicit ScalarPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static ScalarPolynomial monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return ScalarPolynomial(std::move(v));
  }
  static ScalarPolynomial variable() { return monomial(Rational(1), 1); }
  // t - a
  static ScalarPolynomial linear_root(const Rational& a) {
    return ScalarPolynomial(std::vector<Rational>{-a, Rational(1)});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  ScalarPolynomial& operator+=(const ScalarPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  ScalarPolynomial& operator-=(const ScalarPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  ScalarPolynomial operator-() const {
    ScalarPolynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend ScalarPolynomial operator+(ScalarPolynomial a, const ScalarPolynomial& b) { return a += b; }
  friend ScalarPolynomial operator-(ScalarPolynomial a, const ScalarPolynomial& b) { return a -= b; }
  friend ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return ScalarPolynomial(std::move(v));
  }
  ScalarPolynomial& operator*=(const ScalarPolynomial& o) { return *this = *this * o; }
  friend bool operator==(const ScalarPolynomial& a, const ScalarPolynomial& b) { return a.c_ == b.c_; }

  ScalarPolynomial scaled(const Rational& s) const {
    if (s.is_zero()) return {};
    ScalarPolynomial r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  ScalarPolynomial derivative(unsigned k = 1) const {
    if (c_.size() <= k) return {};
    std::vector<Rational> v(c_.size() - k);
    for (std::size_t i = k; i < c_.size(); ++i) v[i - k] = c_[i] * falling(static_cast<unsigned>(i), k);
    return ScalarPolynomial(std::move(v));
  }

  Rational eval(const Rational& t) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  ScalarPolynomial monic() const {
    if (is_zero()) return {};
    return scaled(Rational(1) / lead());
  }

  ScalarPolynomial pow(unsigned e) const {
    ScalarPolynomial r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  // Euclidean division: *this = q * d + r, deg r < deg d.
  std::pair<ScalarPolynomial, ScalarPolynomial> divmod(const ScalarPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {ScalarPolynomial(), *this};
    std::vector<Rational> r = c_;
    std::vector<Rational> q(c_.size() - d.c_.size() + 1, Rational(0));
    Rational inv = Rational(1) / d.lead();
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational& top = r[k + d.c_.size() - 1];
      if (top.is_zero()) continue;
      Rational f = top * inv;
      q[k] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
    }
    return {ScalarPolynomial(std::move(q)), ScalarPolynomial(std::move(r))};
  }

  // Division that must be exact.
  ScalarPolynomial exact_div(const ScalarPolynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }

  bool divisible_by(const ScalarPolynomial& d) const { return divmod(d).second.is_zero(); }

  std::string str(char var = 'x') const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& a = c_[i];
      if (a.is_zero()) continue;
      Rational mag = a.sign() < 0 ? -a : a;
      if (first) {
        if (a.sign() < 0) os << "-";
      } else {
        os << (a.sign() < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = mag.is_one();
      if (i == 0 || !unit) {
        if (!mag.is_integer() && i > 0) os << "(" << mag << ")";
        else os << mag;
      }
      if (i > 0) {
        if (!unit) os << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline bool is_zero(const ScalarPolynomial& p) { return p.is_zero(); }
inline std::size_t pivot_cost(const ScalarPolynomial& p) { return p.size(); }

// Monic gcd (zero if both are zero).
inline ScalarPolynomial gcd(ScalarPolynomial a, ScalarPolynomial b) {
  while (!b.is_zero()) {
    ScalarPolynomial r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

inline ScalarPolynomial lcm(const ScalarPolynomial& a, const ScalarPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a * b).exact_div(gcd(a, b)).monic();
}

// Element of Q(x): num / den with gcd 1 and den monic.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(ScalarPolynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RationalFunction(ScalarPolynomial num, ScalarPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const ScalarPolynomial& num() const { return num_; }
  const ScalarPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  std::string str(char var = 'x') const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = ScalarPolynomial(1);
      return;
    }
    if (den_.degree() > 0) {
      ScalarPolynomial g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
      }
    }
    Rational l = den_.lead();
    if (!l.is_one()) {
      num_ = num_.scaled(Rational(1) / l);
      den_ = den_.scaled(Rational(1) / l);
    }
  }
  ScalarPolynomial num_;
  ScalarPolynomial den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }
inline std::size_t pivot_cost(const RationalFunction& f) { return f.num().size() + f.den().size(); }

}  // namespace adelic
