#pragma once

// R[x] (polynomials with coefficients in a finite-dimensional algebra) and
// R(x) = R[x] localized at nonzero scalar polynomials, which are central.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adelic/algebra.hpp"
#include "adelic/polynomial.hpp"

namespace adelic {

class AlgebraPolynomial {
 public:
  AlgebraPolynomial() = default;  // zero, algebra adopted from the other operand
  explicit AlgebraPolynomial(Algebra a) : alg_(std::move(a)) {}
  AlgebraPolynomial(Algebra a, std::vector<Coords> coeffs) : alg_(std::move(a)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
      if (c.size() != alg_->dim()) throw std::invalid_argument("coefficient has wrong length");
    trim();
  }
  AlgebraPolynomial(const AlgebraElement& constant)  // NOLINT: constants embed
      : alg_(constant.algebra()) {
    c_.push_back(constant.coords());
    trim();
  }
  // p(x) * 1
  static AlgebraPolynomial from_scalar(const Algebra& a, const ScalarPolynomial& p) {
    std::vector<Coords> c;
    for (const auto& v : p.coeffs()) c.push_back(AlgebraElement::scalar(a, v).coords());
    return AlgebraPolynomial(a, std::move(c));
  }
  // sum_c p_c(x) b_c
  static AlgebraPolynomial from_coordinates(const Algebra& a, const std::vector<ScalarPolynomial>& ps) {
    if (ps.size() != a->dim()) throw std::invalid_argument("need one coordinate polynomial per basis element");
    std::size_t n = 0;
    for (const auto& p : ps) n = std::max(n, p.size());
    std::vector<Coords> c(n, Coords(a->dim(), Rational(0)));
    for (std::size_t k = 0; k < ps.size(); ++k)
      for (std::size_t t = 0; t < ps[k].size(); ++t) c[t][k] = ps[k].coeff(t);
    return AlgebraPolynomial(a, std::move(c));
  }
  static AlgebraPolynomial monomial(const AlgebraElement& r, std::size_t k) {
    std::vector<Coords> c(k + 1, Coords(r.algebra()->dim(), Rational(0)));
    c[k] = r.coords();
    return AlgebraPolynomial(r.algebra(), std::move(c));
  }

  const Algebra& algebra() const { return alg_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coords>& coeffs() const { return c_; }
  AlgebraElement coeff(std::size_t k) const {
    if (k < c_.size()) return AlgebraElement(alg_, c_[k]);
    return AlgebraElement::zero(alg_);
  }
  ScalarPolynomial coordinate(std::size_t b) const {
    std::vector<Rational> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(c[b]);
    return ScalarPolynomial(std::move(v));
  }

  AlgebraPolynomial& operator+=(const AlgebraPolynomial& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coords(alg_->dim(), Rational(0)));
    for (std::size_t t = 0; t < o.c_.size(); ++t)
      for (std::size_t k = 0; k < alg_->dim(); ++k) c_[t][k] += o.c_[t][k];
    trim();
    return *this;
  }
  AlgebraPolynomial& operator-=(const AlgebraPolynomial& o) { return *this += -o; }
  AlgebraPolynomial operator-() const { return scaled(Rational(-1)); }
  friend AlgebraPolynomial operator+(AlgebraPolynomial a, const AlgebraPolynomial& b) { return a += b; }
  friend AlgebraPolynomial operator-(AlgebraPolynomial a, const AlgebraPolynomial& b) { return a -= b; }
  friend AlgebraPolynomial operator*(const AlgebraPolynomial& a, const AlgebraPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return AlgebraPolynomial(a.alg_ ? a.alg_ : b.alg_);
    require_same(a.alg_, b.alg_);
    const std::size_t d = a.alg_->dim();
    std::vector<Coords> out(a.c_.size() + b.c_.size() - 1, Coords(d, Rational(0)));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        Coords p = a.alg_->mul(a.c_[i], b.c_[j]);
        for (std::size_t k = 0; k < d; ++k) out[i + j][k] += p[k];
      }
    return AlgebraPolynomial(a.alg_, std::move(out));
  }
  AlgebraPolynomial& operator*=(const AlgebraPolynomial& o) { return *this = *this * o; }
  friend bool operator==(const AlgebraPolynomial& a, const AlgebraPolynomial& b) { return a.c_ == b.c_; }

  AlgebraPolynomial scaled(const Rational& s) const {
    AlgebraPolynomial r = *this;
    for (auto& c : r.c_)
      for (auto& v : c) v *= s;
    r.trim();
    return r;
  }
  // Product with a central scalar polynomial.
  AlgebraPolynomial times(const ScalarPolynomial& s) const {
    if (is_zero() || s.is_zero()) return AlgebraPolynomial(alg_);
    const std::size_t d = alg_->dim();
    std::vector<Coords> out(c_.size() + s.size() - 1, Coords(d, Rational(0)));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.coeff(j).is_zero()) continue;
        for (std::size_t k = 0; k < d; ++k) out[i + j][k] += c_[i][k] * s.coeff(j);
      }
    return AlgebraPolynomial(alg_, std::move(out));
  }
  // Exact division by a scalar polynomial, coordinatewise.
  AlgebraPolynomial exact_div(const ScalarPolynomial& s) const {
    if (is_zero()) return *this;
    std::vector<ScalarPolynomial> ps;
    for (std::size_t k = 0; k < alg_->dim(); ++k) ps.push_back(coordinate(k).exact_div(s));
    return from_coordinates(alg_, ps);
  }
  AlgebraPolynomial left_mul(const AlgebraElement& r) const { return AlgebraPolynomial(r) * *this; }
  AlgebraPolynomial right_mul(const AlgebraElement& r) const { return *this * AlgebraPolynomial(r); }

  AlgebraPolynomial derivative(unsigned k = 1) const {
    if (c_.size() <= k) return AlgebraPolynomial(alg_);
    std::vector<Coords> out;
    for (std::size_t t = k; t < c_.size(); ++t) {
      Coords v = c_[t];
      Rational f = falling(static_cast<unsigned>(t), k);
      for (auto& x : v) x *= f;
      out.push_back(std::move(v));
    }
    return AlgebraPolynomial(alg_, std::move(out));
  }
  // p' + alpha p, the derivative of p(x) exp(alpha x) with the exponential stripped.
  AlgebraPolynomial shifted_derivative(const Rational& alpha) const {
    return derivative() + scaled(alpha);
  }

  AlgebraElement eval(const Rational& t) const {
    Coords acc(alg_->dim(), Rational(0));
    for (std::size_t i = c_.size(); i-- > 0;)
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = acc[k] * t + c_[i][k];
    return AlgebraElement(alg_, std::move(acc));
  }

  // Largest scalar-polynomial factor common to all coordinates (monic gcd).
  ScalarPolynomial content() const {
    ScalarPolynomial g;
    for (std::size_t k = 0; k < alg_->dim(); ++k) g = gcd(g, coordinate(k));
    return g;
  }

  std::string str(char var = 'x') const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < alg_->dim(); ++k) {
      ScalarPolynomial p = coordinate(k);
      if (p.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + p.str(var) + ")*" + alg_->basis_names()[k];
    }
    return s;
  }

 private:
  void adopt(const AlgebraPolynomial& o) {
    if (!alg_) alg_ = o.alg_;
    else if (o.alg_) require_same(alg_, o.alg_);
  }
  void trim() {
    while (!c_.empty()) {
      bool z = true;
      for (const auto& v : c_.back())
        if (!v.is_zero()) { z = false; break; }
      if (!z) break;
      c_.pop_back();
    }
  }
  Algebra alg_;
  std::vector<Coords> c_;
};

// Matrix of left multiplication by p, entries in Q[x].
inline std::vector<std::vector<ScalarPolynomial>> left_regular_poly_matrix(const AlgebraPolynomial& p) {
  const Algebra& a = p.algebra();
  const std::size_t d = a->dim();
  std::vector<std::vector<ScalarPolynomial>> m(d, std::vector<ScalarPolynomial>(d));
  std::vector<std::vector<std::vector<Rational>>> cols(d, std::vector<std::vector<Rational>>(d));
  for (std::size_t t = 0; t < p.size(); ++t) {
    Matrix<Rational> l = a->left_matrix(p.coeffs()[t]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto& v = cols[i][j];
        v.resize(p.size(), Rational(0));
        v[t] = l(i, j);
      }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = ScalarPolynomial(cols[i][j]);
  return m;
}

inline ScalarPolynomial left_regular_det(const AlgebraPolynomial& p) {
  return berkowitz_det(left_regular_poly_matrix(p), ScalarPolynomial(0), ScalarPolynomial(1));
}

struct RegularityWitness {
  AlgebraPolynomial q;
  ScalarPolynomial s;  // p q = q p = s
};

// q = adj[p.] applied to 1, so that p q = det[p.] =: s.  None when p is a zero divisor.
inline std::optional<RegularityWitness> poly_regularity_witness(const AlgebraPolynomial& p) {
  if (p.is_zero()) return std::nullopt;
  const Algebra& a = p.algebra();
  const std::size_t d = a->dim();
  auto m = left_regular_poly_matrix(p);
  std::vector<ScalarPolynomial> c = berkowitz_charpoly(m, ScalarPolynomial(0), ScalarPolynomial(1));
  ScalarPolynomial det = (d % 2 == 0) ? c.back() : -c.back();
  if (det.is_zero()) return std::nullopt;
  // adj(M) = (-1)^{d+1} (M^{d-1} + c_1 M^{d-2} + ... + c_{d-1}); apply to the identity's coordinates.
  std::vector<ScalarPolynomial> one(d);
  for (std::size_t k = 0; k < d; ++k) one[k] = ScalarPolynomial(a->one()[k]);
  std::vector<ScalarPolynomial> w = one;
  for (std::size_t k = 1; k < d; ++k) {
    std::vector<ScalarPolynomial> nw(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) nw[i] += m[i][j] * w[j];
      nw[i] += c[k] * one[i];
    }
    w = std::move(nw);
  }
  if (d % 2 == 0)
    for (auto& x : w) x = -x;
  return RegularityWitness{AlgebraPolynomial::from_coordinates(a, w), det};
}

// Element of R(x): numerator in R[x] over a monic scalar denominator, with the
// denominator reduced against the gcd of the numerator's coordinates.
class AlgebraRationalFunction {
 public:
  AlgebraRationalFunction() : den_(1) {}
  explicit AlgebraRationalFunction(const Algebra& a) : num_(a), den_(1) {}
  AlgebraRationalFunction(AlgebraPolynomial num) : num_(std::move(num)), den_(1) {}  // NOLINT
  AlgebraRationalFunction(const AlgebraElement& r) : num_(r), den_(1) {}  // NOLINT
  AlgebraRationalFunction(AlgebraPolynomial num, ScalarPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }
  static AlgebraRationalFunction scalar(const Algebra& a, const RationalFunction& f) {
    return AlgebraRationalFunction(AlgebraPolynomial::from_scalar(a, f.num()), f.den());
  }

  const AlgebraPolynomial& num() const { return num_; }
  const ScalarPolynomial& den() const { return den_; }
  const Algebra& algebra() const { return num_.algebra(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_one() const {
    return is_polynomial() && num_.degree() == 0 && num_.coeff(0).coords() == num_.algebra()->one();
  }

  // Coordinate k as an element of Q(x).
  RationalFunction coordinate(std::size_t k) const { return RationalFunction(num_.coordinate(k), den_); }

  friend AlgebraRationalFunction operator+(const AlgebraRationalFunction& a, const AlgebraRationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return AlgebraRationalFunction(a.num_ + b.num_, a.den_);
    ScalarPolynomial l = lcm(a.den_, b.den_);
    return AlgebraRationalFunction(a.num_.times(l.exact_div(a.den_)) + b.num_.times(l.exact_div(b.den_)), l);
  }
  AlgebraRationalFunction operator-() const { return AlgebraRationalFunction(-num_, den_); }
  friend AlgebraRationalFunction operator-(const AlgebraRationalFunction& a, const AlgebraRationalFunction& b) {
    return a + (-b);
  }
  friend AlgebraRationalFunction operator*(const AlgebraRationalFunction& a, const AlgebraRationalFunction& b) {
    if (a.is_zero() || b.is_zero()) {
      AlgebraRationalFunction z;
      z.num_ = AlgebraPolynomial(a.algebra() ? a.algebra() : b.algebra());
      return z;
    }
    return AlgebraRationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  AlgebraRationalFunction& operator+=(const AlgebraRationalFunction& o) { return *this = *this + o; }
  AlgebraRationalFunction& operator-=(const AlgebraRationalFunction& o) { return *this = *this - o; }
  friend bool operator==(const AlgebraRationalFunction& a, const AlgebraRationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  AlgebraRationalFunction times(const RationalFunction& s) const {
    return AlgebraRationalFunction(num_.times(s.num()), den_ * s.den());
  }
  AlgebraRationalFunction scaled(const Rational& s) const { return AlgebraRationalFunction(num_.scaled(s), den_); }

  AlgebraRationalFunction derivative() const {
    if (is_polynomial()) return AlgebraRationalFunction(num_.derivative(), den_);
    return AlgebraRationalFunction(num_.derivative().times(den_) - num_.times(den_.derivative()), den_ * den_);
  }

  // Inverse in R(x) via the regularity witness; throws when the element is a zero divisor.
  AlgebraRationalFunction inverse() const {
    auto w = poly_regularity_witness(num_);
    if (!w) throw NonInvertible("R(x) element " + str() + " is a zero divisor", "0");
    return AlgebraRationalFunction(w->q.times(den_), w->s);
  }

  std::string str(char var = 'x') const {
    if (is_polynomial()) return num_.str(var);
    return "[" + num_.str(var) + "]/(" + den_.str(var) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = ScalarPolynomial(1);
      return;
    }
    if (den_.degree() > 0) {
      ScalarPolynomial g = den_;
      for (std::size_t k = 0; k < num_.algebra()->dim() && g.degree() > 0; ++k) g = gcd(g, num_.coordinate(k));
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
  AlgebraPolynomial num_;
  ScalarPolynomial den_;
};

}  // namespace adelic
