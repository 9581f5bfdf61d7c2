#pragma once

// Quasipolynomials: finite sums of p(x) exp(alpha x).  QuasiExp has
// coefficients in R[x]; QuasiScalar in Q[x] and is the commutative domain in
// which Wronski determinants are taken.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adelic/algebra_polynomial.hpp"

namespace adelic {

class QuasiScalar {
 public:
  QuasiScalar() = default;
  QuasiScalar(int c) : QuasiScalar(ScalarPolynomial(c)) {}  // NOLINT
  QuasiScalar(const ScalarPolynomial& p, const Rational& alpha = Rational(0)) {  // NOLINT
    if (!p.is_zero()) t_.emplace(alpha, p);
  }

  const std::map<Rational, ScalarPolynomial>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  ScalarPolynomial component(const Rational& alpha) const {
    auto it = t_.find(alpha);
    return it == t_.end() ? ScalarPolynomial() : it->second;
  }

  QuasiScalar& operator+=(const QuasiScalar& o) {
    for (const auto& [a, p] : o.t_) add_term(a, p);
    return *this;
  }
  QuasiScalar operator-() const {
    QuasiScalar r = *this;
    for (auto& [a, p] : r.t_) p = -p;
    return r;
  }
  QuasiScalar& operator-=(const QuasiScalar& o) { return *this += -o; }
  friend QuasiScalar operator+(QuasiScalar a, const QuasiScalar& b) { return a += b; }
  friend QuasiScalar operator-(QuasiScalar a, const QuasiScalar& b) { return a -= b; }
  friend QuasiScalar operator*(const QuasiScalar& a, const QuasiScalar& b) {
    QuasiScalar r;
    for (const auto& [x, p] : a.t_)
      for (const auto& [y, q] : b.t_) r.add_term(x + y, p * q);
    return r;
  }
  friend bool operator==(const QuasiScalar& a, const QuasiScalar& b) { return a.t_ == b.t_; }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [a, p] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + p.str('x') + ")";
      if (!a.is_zero()) s += "*exp(" + a.str() + "x)";
    }
    return s;
  }

 private:
  void add_term(const Rational& a, const ScalarPolynomial& p) {
    if (p.is_zero()) return;
    auto it = t_.find(a);
    if (it == t_.end()) {
      t_.emplace(a, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) t_.erase(it);
  }
  std::map<Rational, ScalarPolynomial> t_;
};

inline bool is_zero(const QuasiScalar& q) { return q.is_zero(); }

class QuasiExp {
 public:
  QuasiExp() = default;
  explicit QuasiExp(Algebra a) : alg_(std::move(a)) {}
  QuasiExp(const AlgebraPolynomial& p, const Rational& alpha) : alg_(p.algebra()) {
    if (!p.is_zero()) t_.emplace(alpha, p);
  }

  const Algebra& algebra() const { return alg_; }
  const std::map<Rational, AlgebraPolynomial>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::vector<Rational> exponents() const {
    std::vector<Rational> v;
    for (const auto& kv : t_) v.push_back(kv.first);
    return v;
  }
  AlgebraPolynomial component(const Rational& alpha) const {
    auto it = t_.find(alpha);
    return it == t_.end() ? AlgebraPolynomial(alg_) : it->second;
  }
  int max_degree() const {
    int m = -1;
    for (const auto& kv : t_) m = std::max(m, kv.second.degree());
    return m;
  }

  QuasiExp& operator+=(const QuasiExp& o) {
    if (!alg_) alg_ = o.alg_;
    for (const auto& [a, p] : o.t_) add_term(a, p);
    return *this;
  }
  QuasiExp operator-() const {
    QuasiExp r = *this;
    for (auto& [a, p] : r.t_) p = -p;
    return r;
  }
  QuasiExp& operator-=(const QuasiExp& o) { return *this += -o; }
  friend QuasiExp operator+(QuasiExp a, const QuasiExp& b) { return a += b; }
  friend QuasiExp operator-(QuasiExp a, const QuasiExp& b) { return a -= b; }
  friend QuasiExp operator*(const QuasiExp& a, const QuasiExp& b) {
    QuasiExp r(a.alg_ ? a.alg_ : b.alg_);
    for (const auto& [x, p] : a.t_)
      for (const auto& [y, q] : b.t_) r.add_term(x + y, p * q);
    return r;
  }
  friend bool operator==(const QuasiExp& a, const QuasiExp& b) { return a.t_ == b.t_; }

  QuasiExp right_mul(const AlgebraElement& r) const {
    QuasiExp out(alg_);
    for (const auto& [a, p] : t_) out.add_term(a, p.right_mul(r));
    return out;
  }
  QuasiExp left_mul(const AlgebraElement& r) const {
    QuasiExp out(alg_);
    for (const auto& [a, p] : t_) out.add_term(a, p.left_mul(r));
    return out;
  }
  QuasiExp left_mul(const AlgebraPolynomial& r) const {
    QuasiExp out(alg_);
    for (const auto& [a, p] : t_) out.add_term(a, r * p);
    return out;
  }
  QuasiExp times(const ScalarPolynomial& s) const {
    QuasiExp out(alg_);
    for (const auto& [a, p] : t_) out.add_term(a, p.times(s));
    return out;
  }
  QuasiExp scaled(const Rational& s) const {
    QuasiExp out(alg_);
    for (const auto& [a, p] : t_) out.add_term(a, p.scaled(s));
    return out;
  }

  // termwise (p' + alpha p) exp(alpha x)
  QuasiExp derivative(unsigned k = 1) const {
    QuasiExp out = *this;
    for (unsigned i = 0; i < k; ++i) {
      QuasiExp next(alg_);
      for (const auto& [a, p] : out.t_) next.add_term(a, p.shifted_derivative(a));
      out = std::move(next);
    }
    return out;
  }

  AlgebraElement eval_at_zero() const {
    AlgebraElement s = AlgebraElement::zero(alg_);
    for (const auto& kv : t_) s += kv.second.eval(Rational(0));
    return s;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [a, p] : t_) {
      if (!s.empty()) s += " + ";
      s += "[" + p.str('x') + "]";
      if (!a.is_zero()) s += "*exp(" + a.str() + "x)";
    }
    return s;
  }

 private:
  void add_term(const Rational& a, const AlgebraPolynomial& p) {
    if (p.is_zero()) return;
    if (!alg_) alg_ = p.algebra();
    auto it = t_.find(a);
    if (it == t_.end()) {
      t_.emplace(a, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) t_.erase(it);
  }
  Algebra alg_;
  std::map<Rational, AlgebraPolynomial> t_;
};

inline QuasiExp qp_derivative(const QuasiExp& f) { return f.derivative(); }

// Row k holds the k-th derivatives.
inline std::vector<std::vector<QuasiExp>> wronski(const std::vector<QuasiExp>& fs) {
  const std::size_t n = fs.size();
  std::vector<std::vector<QuasiExp>> w(n, std::vector<QuasiExp>(n));
  for (std::size_t j = 0; j < n; ++j) {
    QuasiExp f = fs[j];
    for (std::size_t k = 0; k < n; ++k) {
      w[k][j] = f;
      if (k + 1 < n) f = f.derivative();
    }
  }
  return w;
}

// The Wronski matrix acting by left multiplication on columns R^n, as an
// (n d) x (n d) matrix over QuasiScalar.  Row index k*d + c_out, column j*d + c_in.
inline std::vector<std::vector<QuasiScalar>> flattened_wronski(const std::vector<QuasiExp>& fs, const Algebra& a) {
  const std::size_t n = fs.size(), d = a->dim();
  auto w = wronski(fs);
  std::vector<std::vector<QuasiScalar>> m(n * d, std::vector<QuasiScalar>(n * d));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [alpha, p] : w[k][j].terms()) {
        auto lp = left_regular_poly_matrix(p);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c)
            if (!lp[r][c].is_zero()) m[k * d + r][j * d + c] += QuasiScalar(lp[r][c], alpha);
      }
  return m;
}

struct Nondegeneracy {
  bool nondegenerate;
  QuasiScalar det;
};

inline Nondegeneracy is_nondegenerate(const std::vector<QuasiExp>& fs, const Algebra& a) {
  if (fs.empty()) return {true, QuasiScalar(1)};
  QuasiScalar det = berkowitz_det(flattened_wronski(fs, a), QuasiScalar(), QuasiScalar(1));
  return {!det.is_zero(), det};
}

// det W over a commutative algebra, as an element of QP(R).
inline QuasiExp commutative_wronskian_det(const std::vector<QuasiExp>& fs, const Algebra& a) {
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < a->dim(); ++j) {
      auto bi = AlgebraElement::basis(a, i), bj = AlgebraElement::basis(a, j);
      if (bi * bj != bj * bi) throw std::invalid_argument("commutative determinant over a noncommutative algebra");
    }
  QuasiExp one(AlgebraPolynomial(AlgebraElement::one(a)), Rational(0));
  return berkowitz_det(wronski(fs), QuasiExp(a), one);
}

}  // namespace adelic
