#pragma once

// Differential operators sum_k a_k(x) d^k with coefficients in R(x), stored as
// R[x]-numerators over central scalar denominators.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adelic/kernel.hpp"

namespace adelic {

class DifferentialOperator {
 public:
  DifferentialOperator() = default;
  explicit DifferentialOperator(Algebra a, char var = 'x') : alg_(std::move(a)), var_(var) {}
  DifferentialOperator(Algebra a, std::vector<AlgebraRationalFunction> coeffs, char var = 'x')
      : alg_(std::move(a)), c_(std::move(coeffs)), var_(var) {
    for (auto& c : c_)
      if (c.is_zero()) c = AlgebraRationalFunction(alg_);
    trim();
  }

  // d^k
  static DifferentialOperator d(const Algebra& a, std::size_t k = 1, char var = 'x') {
    std::vector<AlgebraRationalFunction> c(k + 1, AlgebraRationalFunction(a));
    c[k] = AlgebraElement::one(a);
    return DifferentialOperator(a, std::move(c), var);
  }
  // Order-zero operator: multiplication by f.
  static DifferentialOperator multiplication(const AlgebraRationalFunction& f, char var = 'x') {
    return DifferentialOperator(f.algebra(), {f}, var);
  }
  // Constant-coefficient operator p(d) from p in R[t].
  static DifferentialOperator constant(const AlgebraPolynomial& p, char var = 'x') {
    std::vector<AlgebraRationalFunction> c;
    for (std::size_t k = 0; k < p.size(); ++k) c.emplace_back(p.coeff(k));
    return DifferentialOperator(p.algebra(), std::move(c), var);
  }
  static DifferentialOperator scalar_constant(const Algebra& a, const ScalarPolynomial& p, char var = 'x') {
    return constant(AlgebraPolynomial::from_scalar(a, p), var);
  }

  const Algebra& algebra() const { return alg_; }
  char variable() const { return var_; }
  bool is_zero() const { return c_.empty(); }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<AlgebraRationalFunction>& coeffs() const { return c_; }
  AlgebraRationalFunction coeff(std::size_t k) const { return k < c_.size() ? c_[k] : AlgebraRationalFunction(alg_); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool has_polynomial_coefficients() const {
    for (const auto& c : c_)
      if (!c.is_polynomial()) return false;
    return true;
  }
  // lcm of coefficient denominators.
  ScalarPolynomial common_denominator() const {
    ScalarPolynomial l(1);
    for (const auto& c : c_) l = lcm(l, c.den());
    return l;
  }

  friend DifferentialOperator operator+(const DifferentialOperator& a, const DifferentialOperator& b) {
    const Algebra& alg = a.alg_ ? a.alg_ : b.alg_;
    std::vector<AlgebraRationalFunction> c(std::max(a.c_.size(), b.c_.size()), AlgebraRationalFunction(alg));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return DifferentialOperator(alg, std::move(c), a.var_);
  }
  DifferentialOperator operator-() const {
    DifferentialOperator r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend DifferentialOperator operator-(const DifferentialOperator& a, const DifferentialOperator& b) { return a + (-b); }
  friend bool operator==(const DifferentialOperator& a, const DifferentialOperator& b) { return a.c_ == b.c_; }

  // Left multiplication by a coefficient: f * P.
  DifferentialOperator left_mul(const AlgebraRationalFunction& f) const {
    std::vector<AlgebraRationalFunction> c;
    for (const auto& x : c_) c.push_back(f * x);
    return DifferentialOperator(alg_, std::move(c), var_);
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string d = k == 0 ? "" : (k == 1 ? std::string("d") : "d^" + std::to_string(k));
      if (c_[k].is_one() && k > 0) s += d;
      else s += "(" + c_[k].str(var_) + ")" + (k ? "*" + d : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  Algebra alg_;
  std::vector<AlgebraRationalFunction> c_;
  char var_ = 'x';
};

// Leibniz: d^i b = sum_s C(i,s) b^{(s)} d^{i-s}.
inline DifferentialOperator compose(const DifferentialOperator& A, const DifferentialOperator& B) {
  const Algebra& alg = A.algebra() ? A.algebra() : B.algebra();
  if (A.is_zero() || B.is_zero()) return DifferentialOperator(alg, A.variable());
  require_same(A.algebra(), B.algebra());
  const std::size_t n = A.coeffs().size(), m = B.coeffs().size();
  // derivs[j][s] = b_j^{(s)}
  std::vector<std::vector<AlgebraRationalFunction>> derivs(m);
  for (std::size_t j = 0; j < m; ++j) {
    derivs[j].push_back(B.coeffs()[j]);
    for (std::size_t s = 1; s < n; ++s) derivs[j].push_back(derivs[j].back().derivative());
  }
  std::vector<AlgebraRationalFunction> c(n + m - 1, AlgebraRationalFunction(alg));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = A.coeffs()[i];
    if (a.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t s = 0; s <= i; ++s) {
        const auto& b = derivs[j][s];
        if (b.is_zero()) continue;
        c[i - s + j] += (a * b).scaled(binomial(static_cast<unsigned>(i), static_cast<unsigned>(s)));
      }
  }
  return DifferentialOperator(alg, std::move(c), A.variable());
}

inline DifferentialOperator compose(std::initializer_list<DifferentialOperator> ops) {
  auto it = ops.begin();
  DifferentialOperator r = *it;
  for (++it; it != ops.end(); ++it) r = compose(r, *it);
  return r;
}

// Quasipolynomial divided by a nonzero scalar polynomial.
struct QuasiFraction {
  QuasiExp num;
  ScalarPolynomial den;
  bool is_zero() const { return num.is_zero(); }
};

inline QuasiFraction apply(const DifferentialOperator& P, const QuasiExp& f) {
  ScalarPolynomial D = P.common_denominator();
  QuasiExp out(f.algebra() ? f.algebra() : P.algebra());
  QuasiExp fk = f;
  for (std::size_t k = 0; k < P.coeffs().size(); ++k) {
    const auto& a = P.coeffs()[k];
    if (!a.is_zero()) out += fk.left_mul(a.num().times(D.exact_div(a.den())));
    if (k + 1 < P.coeffs().size()) fk = fk.derivative();
  }
  return {out, D};
}

struct Division {
  DifferentialOperator quotient;
  DifferentialOperator remainder;
};

// L = Q P + Rem with ord Rem < ord P, for monic P.
inline Division right_divide(const DifferentialOperator& L, const DifferentialOperator& P) {
  if (!P.is_monic()) throw std::invalid_argument("right_divide needs a monic divisor");
  const Algebra& alg = P.algebra();
  const int m = P.order();
  DifferentialOperator rem = L;
  std::vector<AlgebraRationalFunction> q(std::max(L.order() - m + 1, 0), AlgebraRationalFunction(alg));
  while (!rem.is_zero() && rem.order() >= m) {
    const std::size_t shift = static_cast<std::size_t>(rem.order() - m);
    AlgebraRationalFunction lead = rem.coeffs().back();
    q[shift] += lead;
    rem = rem - compose(DifferentialOperator::multiplication(lead, L.variable()), compose(DifferentialOperator::d(alg, shift, L.variable()), P));
  }
  return {DifferentialOperator(alg, std::move(q), L.variable()), rem};
}

// Monic operator of order l annihilating V = sum f_j R, found by solving
// sum_k a_k f_j^{(k)} = -f_j^{(l)} separately in each exponent over Q(x).
inline DifferentialOperator operator_from_kernel(const Algebra& alg, const std::vector<QuasiExp>& fs) {
  const std::size_t l = fs.size(), d = alg->dim();
  if (l == 0) return DifferentialOperator::multiplication(AlgebraElement::one(alg));
  // derivs[j][k] = f_j^{(k)}, k = 0..l
  std::vector<std::vector<QuasiExp>> derivs(l);
  std::set<Rational> exps;
  for (std::size_t j = 0; j < l; ++j) {
    derivs[j].push_back(fs[j]);
    for (std::size_t k = 0; k < l; ++k) derivs[j].push_back(derivs[j].back().derivative());
    for (const auto& [a, p] : fs[j].terms()) exps.insert(a);
  }
  std::vector<AlgebraElement> basis;
  for (std::size_t c = 0; c < d; ++c) basis.push_back(AlgebraElement::basis(alg, c));

  const std::size_t nunk = l * d;
  std::vector<std::vector<RationalFunction>> rows;
  for (std::size_t j = 0; j < l; ++j)
    for (const auto& alpha : exps) {
      std::vector<std::vector<RationalFunction>> block(d, std::vector<RationalFunction>(nunk + 1));
      for (std::size_t k = 0; k < l; ++k) {
        AlgebraPolynomial q = derivs[j][k].component(alpha);
        if (q.is_zero()) continue;
        for (std::size_t c = 0; c < d; ++c) {
          AlgebraPolynomial bq = q.left_mul(basis[c]);
          for (std::size_t co = 0; co < d; ++co) block[co][k * d + c] = RationalFunction(bq.coordinate(co));
        }
      }
      AlgebraPolynomial rhs = derivs[j][l].component(alpha);
      for (std::size_t co = 0; co < d; ++co) block[co][nunk] = -RationalFunction(rhs.coordinate(co));
      for (auto& r : block) {
        bool nz = false;
        for (const auto& x : r) nz = nz || !x.is_zero();
        if (nz) rows.push_back(std::move(r));
      }
    }
  Matrix<RationalFunction> aug = Matrix<RationalFunction>::from_rows(rows, nunk + 1);
  Echelon<RationalFunction> e = rref(aug, nunk);
  if (e.pivots.size() < nunk) throw DegenerateKernel(is_nondegenerate(fs, alg).det.str());
  for (std::size_t r = nunk; r < e.reduced.rows(); ++r)
    if (!e.reduced(r, nunk).is_zero())
      throw ConsistencyError("no operator with rational coefficients annihilates the basis: exponential content survives");

  std::vector<AlgebraRationalFunction> coeffs;
  for (std::size_t k = 0; k < l; ++k) {
    std::vector<ScalarPolynomial> nums(d);
    ScalarPolynomial den(1);
    for (std::size_t c = 0; c < d; ++c) den = lcm(den, e.reduced(k * d + c, nunk).den());
    for (std::size_t c = 0; c < d; ++c) {
      const RationalFunction& v = e.reduced(k * d + c, nunk);
      nums[c] = v.num() * den.exact_div(v.den());
    }
    coeffs.emplace_back(AlgebraPolynomial::from_coordinates(alg, nums), den);
  }
  coeffs.emplace_back(AlgebraElement::one(alg));
  DifferentialOperator P(alg, std::move(coeffs));
  for (std::size_t j = 0; j < l; ++j)
    if (!apply(P, fs[j]).is_zero())
      throw ConsistencyError("constructed operator does not annihilate f" + std::to_string(j + 1));
  return P;
}

inline DifferentialOperator operator_from_kernel(const KernelBasis& v) { return operator_from_kernel(v.algebra(), v.elements()); }

// Quasideterminant |Y|_{ij} over a ring with a partial inverse.
template <class T>
T quasideterminant(const std::vector<std::vector<T>>& Y, std::size_t i, std::size_t j,
                   const std::function<T(const T&)>& inv) {
  const std::size_t n = Y.size();
  if (n == 1) return Y[0][0];
  std::vector<std::size_t> ri, cj;
  for (std::size_t p = 0; p < n; ++p) {
    if (p != i) ri.push_back(p);
    if (p != j) cj.push_back(p);
  }
  std::vector<std::vector<T>> sub(n - 1, std::vector<T>(n - 1));
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = 0; q + 1 < n; ++q) sub[p][q] = Y[ri[p]][cj[q]];
  // (Y^{ij})^{-1}_{qp} = |Y^{ij}|_{pq}^{-1}
  T r = Y[i][j];
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = 0; q + 1 < n; ++q) {
      T w = inv(quasideterminant(sub, p, q, inv));
      r = r - Y[i][cj[q]] * w * Y[ri[p]][j];
    }
  return r;
}

// Inverse of a square matrix over R(x), computed as a Q(x)-linear solve on the
// left-regular flattening.  Returns nullopt when the matrix is singular.
inline std::optional<std::vector<std::vector<AlgebraRationalFunction>>> inverse_over_fractions(
    const std::vector<std::vector<AlgebraRationalFunction>>& W, const Algebra& alg) {
  const std::size_t n = W.size(), d = alg->dim();
  Matrix<RationalFunction> flat(n * d, n * d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const auto& w = W[r][s];
      if (w.is_zero()) continue;
      auto lp = left_regular_poly_matrix(w.num());
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) flat(r * d + a, s * d + b) = RationalFunction(lp[a][b], w.den());
    }
  Matrix<RationalFunction> rhs(n * d, n);
  const Coords& one = alg->one();
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < d; ++a) rhs(q * d + a, q) = RationalFunction(one[a]);
  auto sol = solve_matrix(flat, rhs);
  if (!sol || rank(flat) < n * d) return std::nullopt;
  std::vector<std::vector<AlgebraRationalFunction>> out(n, std::vector<AlgebraRationalFunction>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q) {
      ScalarPolynomial den(1);
      for (std::size_t a = 0; a < d; ++a) den = lcm(den, (*sol)(r * d + a, q).den());
      std::vector<ScalarPolynomial> nums(d);
      for (std::size_t a = 0; a < d; ++a) nums[a] = (*sol)(r * d + a, q).num() * den.exact_div((*sol)(r * d + a, q).den());
      out[r][q] = AlgebraRationalFunction(AlgebraPolynomial::from_coordinates(alg, nums), den);
    }
  return out;
}

// Wronski matrix of a kernel whose elements all carry the single exponent
// alpha, with exp(alpha x) divided out; entries lie in R[x].
inline std::vector<std::vector<AlgebraRationalFunction>> reduced_wronski(const std::vector<QuasiExp>& fs, std::size_t rows,
                                                                         const Rational& alpha, const Algebra& alg) {
  std::vector<std::vector<AlgebraRationalFunction>> w(rows, std::vector<AlgebraRationalFunction>(fs.size(), AlgebraRationalFunction(alg)));
  for (std::size_t j = 0; j < fs.size(); ++j) {
    QuasiExp f = fs[j];
    for (std::size_t k = 0; k < rows; ++k) {
      for (const auto& [a, p] : f.terms())
        if (a != alpha) throw std::invalid_argument("reduced Wronski matrix needs a single exponent");
      w[k][j] = f.component(alpha);
      f = f.derivative();
    }
  }
  return w;
}

// Operator as the quasideterminant |W(f_1..f_n, g)|_{n+1,n+1}, for kernels with
// one common exponent.  Coefficient of d^k is -(row_n W^{-1})_k, with W^{-1}
// assembled entrywise from quasideterminants; throws NonInvertible when one of
// those is a zero divisor even though W itself is invertible.
inline DifferentialOperator operator_by_quasideterminant(const Algebra& alg, const std::vector<QuasiExp>& fs,
                                                          const Rational& alpha) {
  const std::size_t n = fs.size();
  auto ext = reduced_wronski(fs, n + 1, alpha, alg);
  std::vector<std::vector<AlgebraRationalFunction>> W(ext.begin(), ext.begin() + static_cast<long>(n));
  std::function<AlgebraRationalFunction(const AlgebraRationalFunction&)> inv = [](const AlgebraRationalFunction& x) {
    return x.inverse();
  };
  // (W^{-1})_{qp} = |W|_{pq}^{-1}
  std::vector<std::vector<AlgebraRationalFunction>> winv(n, std::vector<AlgebraRationalFunction>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) winv[q][p] = inv(quasideterminant(W, p, q, inv));
  // Row n of W times W^{-1} is unchanged by stripping the common exp(alpha x).
  std::vector<AlgebraRationalFunction> c(n + 1, AlgebraRationalFunction(alg));
  for (std::size_t k = 0; k < n; ++k) {
    AlgebraRationalFunction s(alg);
    for (std::size_t j = 0; j < n; ++j) s += ext[n][j] * winv[j][k];
    c[k] = -s;
  }
  c[n] = AlgebraElement::one(alg);
  return DifferentialOperator(alg, std::move(c));
}

// Same operator with W^{-1} from a linear solve: d^n - (row_n W) W^{-1} (1, d, .., d^{n-1})^T.
inline DifferentialOperator operator_by_wronski_inverse(const Algebra& alg, const std::vector<QuasiExp>& fs,
                                                        const Rational& alpha) {
  const std::size_t n = fs.size();
  auto ext = reduced_wronski(fs, n + 1, alpha, alg);
  std::vector<std::vector<AlgebraRationalFunction>> W(ext.begin(), ext.begin() + static_cast<long>(n));
  auto winv = inverse_over_fractions(W, alg);
  if (!winv) throw NonInvertible("Wronski matrix", "0");
  std::vector<AlgebraRationalFunction> c(n + 1, AlgebraRationalFunction(alg));
  for (std::size_t k = 0; k < n; ++k) {
    AlgebraRationalFunction s(alg);
    for (std::size_t j = 0; j < n; ++j) s += ext[n][j] * (*winv)[j][k];
    c[k] = -s;
  }
  c[n] = AlgebraElement::one(alg);
  return DifferentialOperator(alg, std::move(c));
}

struct Factorization {
  DifferentialOperator Q;
  DifferentialOperator P;
};

// L = Q P with ker P = V.
inline Factorization factor_through_submodule(const DifferentialOperator& L, const KernelBasis& v) {
  DifferentialOperator P = operator_from_kernel(v);
  Division dv = right_divide(L, P);
  if (!dv.remainder.is_zero())
    throw ConsistencyError("L is not right divisible by the operator of V; remainder " + dv.remainder.str());
  return {dv.quotient, P};
}

struct ScalarDivisorCertificate {
  ScalarPolynomial q;  // q(t) with q(d) = Q P
  DifferentialOperator quotient;
};

// q(t) = prod_alpha (t - alpha)^{N_alpha + 1}, N_alpha the top x-degree at alpha.
inline ScalarPolynomial scalar_divisor(const std::vector<QuasiExp>& fs) {
  std::map<Rational, int> top;
  for (const auto& f : fs)
    for (const auto& [a, p] : f.terms()) top[a] = std::max(top.count(a) ? top[a] : -1, p.degree());
  ScalarPolynomial q(1);
  for (const auto& [a, n] : top) q = q * ScalarPolynomial::linear_root(a).pow(static_cast<unsigned>(n + 1));
  return q;
}

inline ScalarDivisorCertificate scalar_divisor_certificate(const KernelBasis& v, const DifferentialOperator& P) {
  ScalarPolynomial q = scalar_divisor(v.elements());
  Division dv = right_divide(DifferentialOperator::scalar_constant(v.algebra(), q), P);
  if (!dv.remainder.is_zero())
    throw ConsistencyError("q(d) is not right divisible by P; remainder " + dv.remainder.str());
  return {q, dv.quotient};
}

// Fourier map b(d_x) = z, b(x) = -d_z, b(r) = r on operators with polynomial
// coefficients; the image is an operator in d_z with coefficients in R[z].
inline DifferentialOperator fourier_b(const DifferentialOperator& S) {
  const Algebra& alg = S.algebra();
  if (!S.has_polynomial_coefficients()) throw std::invalid_argument("fourier_b needs polynomial coefficients");
  DifferentialOperator out(alg, 'z');
  DifferentialOperator minus_dz = -DifferentialOperator::d(alg, 1, 'z');
  DifferentialOperator z = DifferentialOperator::multiplication(AlgebraPolynomial::monomial(AlgebraElement::one(alg), 1), 'z');
  for (std::size_t k = 0; k < S.coeffs().size(); ++k) {
    const AlgebraPolynomial& a = S.coeffs()[k].num();
    DifferentialOperator zk = DifferentialOperator::multiplication(AlgebraElement::one(alg), 'z');
    for (std::size_t i = 0; i < k; ++i) zk = compose(zk, z);
    DifferentialOperator dt = DifferentialOperator::multiplication(AlgebraElement::one(alg), 'z');
    for (std::size_t t = 0; t < a.size(); ++t) {
      if (!a.coeff(t).is_zero())
        out = out + compose(DifferentialOperator::multiplication(a.coeff(t), 'z'), compose(dt, zk));
      dt = compose(dt, minus_dz);
    }
  }
  return out;
}

// b^{-1}(z) = d_x, b^{-1}(d_z) = -x.
inline DifferentialOperator fourier_b_inverse(const DifferentialOperator& T) {
  const Algebra& alg = T.algebra();
  if (!T.has_polynomial_coefficients()) throw std::invalid_argument("fourier_b_inverse needs polynomial coefficients");
  DifferentialOperator out(alg, 'x');
  DifferentialOperator minus_x =
      DifferentialOperator::multiplication(AlgebraPolynomial::monomial(AlgebraElement::scalar(alg, Rational(-1)), 1));
  DifferentialOperator dx = DifferentialOperator::d(alg);
  DifferentialOperator xs = DifferentialOperator::multiplication(AlgebraElement::one(alg));
  for (std::size_t s = 0; s < T.coeffs().size(); ++s) {
    const AlgebraPolynomial& c = T.coeffs()[s].num();
    DifferentialOperator dk = DifferentialOperator::multiplication(AlgebraElement::one(alg));
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!c.coeff(k).is_zero())
        out = out + compose(DifferentialOperator::multiplication(c.coeff(k)), compose(dk, xs));
      dk = compose(dk, dx);
    }
    xs = compose(xs, minus_x);
  }
  return out;
}

namespace detail {
inline std::string first_difference(const DifferentialOperator& a, const DifferentialOperator& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t k = 0; k < n; ++k)
    if (!(a.coeff(k) == b.coeff(k)))
      return "coefficient of d^" + std::to_string(k) + ": " + a.coeff(k).str(a.variable()) + " vs " +
             b.coeff(k).str(b.variable());
  return "";
}
}  // namespace detail

struct BispectralData {
  DifferentialOperator Pp;  // P' = g P
  DifferentialOperator Qp;  // Q' = Q h
  ScalarPolynomial g, h;
  DifferentialOperator L;
};

// Clears denominators of L = Q P so that L = Q' h^{-1} g^{-1} P' with P', Q'
// polynomial in x.
inline BispectralData bispectral_data(const DifferentialOperator& P, const DifferentialOperator& L) {
  const Algebra& alg = P.algebra();
  BispectralData out;
  out.L = L;
  out.g = P.common_denominator();
  out.Pp = P.left_mul(AlgebraRationalFunction::scalar(alg, out.g));
  Division dv = right_divide(L, P);
  if (!dv.remainder.is_zero()) throw ConsistencyError("L is not right divisible by P");
  const DifferentialOperator& Q = dv.quotient;
  ScalarPolynomial D = Q.common_denominator();
  auto times = [&](const ScalarPolynomial& h) {
    return compose(Q, DifferentialOperator::multiplication(AlgebraRationalFunction::scalar(alg, h)));
  };
  ScalarPolynomial h(1);
  int N = 0;
  while (!times(h).has_polynomial_coefficients()) {
    if (++N > 64) throw ConsistencyError("no power of the denominator clears Q");
    h = h * D;
  }
  // Strip squarefree layers of D while Q h stays polynomial.
  if (D.degree() > 0) {
    ScalarPolynomial s = D.exact_div(gcd(D, D.derivative())).monic();
    for (ScalarPolynomial layer = s; layer.degree() > 0;) {
      if (h.divisible_by(layer) && times(h.exact_div(layer)).has_polynomial_coefficients()) {
        h = h.exact_div(layer);
      } else {
        ScalarPolynomial next = gcd(layer, h.exact_div(gcd(h, layer)));
        if (next.degree() <= 0 || next == layer) break;
        layer = next.monic();
      }
    }
  }
  out.h = h;
  out.Qp = times(h);
  return out;
}

// Checks the two intertwining identities of a bispectral factorization
// L = Q' h^{-1} g^{-1} P':
//   (x side)  (g^{-1}P' Q' h^{-1}) g^{-1}P' = g^{-1}P' L
//   (z side)  b(P') b(L)^{-1} b(Q') b(P') = b(g h P'), composed in the z-variable.
inline Report verify_bispectral(const DifferentialOperator& Pp, const DifferentialOperator& Qp, const ScalarPolynomial& g,
                                const ScalarPolynomial& h, const DifferentialOperator& L) {
  const Algebra& alg = Pp.algebra();
  Report rep("bispectral identities");
  auto ginv = DifferentialOperator::multiplication(AlgebraRationalFunction::scalar(alg, RationalFunction(ScalarPolynomial(1), g)));
  auto hinv = DifferentialOperator::multiplication(AlgebraRationalFunction::scalar(alg, RationalFunction(ScalarPolynomial(1), h)));
  DifferentialOperator P = compose(ginv, Pp);

  bool const_coeff = true;
  for (const auto& c : L.coeffs()) const_coeff = const_coeff && c.is_polynomial() && c.num().degree() <= 0;
  if (!const_coeff) return rep.add(Report::fail("L has constant coefficients", L.str()));
  if (!Pp.has_polynomial_coefficients() || !Qp.has_polynomial_coefficients())
    return rep.add(Report::fail("P' and Q' have polynomial coefficients", "P' = " + Pp.str() + ", Q' = " + Qp.str()));

  DifferentialOperator lhs1 = compose({P, Qp, hinv, P});
  DifferentialOperator rhs1 = compose(P, L);
  rep.add(Report::check("x-side intertwining", lhs1 == rhs1,
                        lhs1 == rhs1 ? "order " + std::to_string(rhs1.order()) : detail::first_difference(lhs1, rhs1)));

  // b(L) = q(z) is a function of z alone; its inverse is a coefficient.
  DifferentialOperator bL = fourier_b(L);
  if (bL.order() != 0 || bL.is_zero()) return rep.add(Report::fail("b(L) is a multiplication operator", bL.str()));
  auto qinv = DifferentialOperator::multiplication(bL.coeffs()[0].inverse(), 'z');
  DifferentialOperator bP = fourier_b(Pp);
  DifferentialOperator lhs2 = compose({bP, qinv, fourier_b(Qp), bP});
  DifferentialOperator rhs2 = fourier_b(Pp.left_mul(AlgebraRationalFunction::scalar(alg, g * h)));
  rep.add(Report::check("z-side intertwining", lhs2 == rhs2,
                        lhs2 == rhs2 ? "order " + std::to_string(rhs2.order()) : detail::first_difference(lhs2, rhs2)));
  return rep;
}

}  // namespace adelic
