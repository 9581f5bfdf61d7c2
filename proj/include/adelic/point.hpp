#pragma once

// Points P exp(xz) of the decorated adelic Grassmannian, their normalization,
// successors and the fiber test.

#include <string>
#include <utility>
#include <vector>

#include "adelic/diffop.hpp"

namespace adelic {

struct PointRejected : Error {
  PointRejected(std::string reason, Report report)
      : Error("kernel rejected: " + reason), reason(std::move(reason)), report(std::move(report)) {}
  std::string reason;
  Report report;
};

struct DecoratedAdelicPoint {
  Algebra algebra;
  KernelBasis kernel;
  DifferentialOperator P;
  std::vector<std::vector<Rational>> exponents;  // alpha_ij, m x l
  ScalarPolynomial certificate;                  // q(t) with P right-dividing q(d)

  std::size_t order() const { return kernel.rank(); }
  friend bool operator==(const DecoratedAdelicPoint& a, const DecoratedAdelicPoint& b) {
    return a.kernel == b.kernel && a.P == b.P && a.exponents == b.exponents && a.certificate == b.certificate;
  }
};

inline DecoratedAdelicPoint build_point(const KernelBasis& v) {
  TheoremACheck th = check_theorem_A(v);
  if (!th.ok()) throw PointRejected(th.failed_condition(), th.report);
  DifferentialOperator P = operator_from_kernel(v);
  ScalarDivisorCertificate cert = scalar_divisor_certificate(v, P);
  return {v.algebra(), v, P, v.exponent_matrix(), cert.q};
}

// Re-establishes every stored invariant; used on loaded point files.
inline Report verify_point(const DecoratedAdelicPoint& pt) {
  Report rep("decorated adelic point");
  bool annihilates = true;
  std::string bad;
  for (std::size_t j = 0; j < pt.kernel.rank(); ++j)
    if (!apply(pt.P, pt.kernel.element(j)).is_zero()) {
      annihilates = false;
      bad = "P f" + std::to_string(j + 1) + " != 0";
      break;
    }
  rep.add(Report::check("operator annihilates kernel", annihilates, annihilates ? pt.P.str() : bad));
  rep.add(Report::check("operator is monic of order rank V", pt.P.is_monic() && pt.P.order() == static_cast<int>(pt.order()),
                        "order " + std::to_string(pt.P.order()) + ", rank " + std::to_string(pt.order())));
  rep.add(Report::check("exponents match kernel", pt.exponents == pt.kernel.exponent_matrix(),
                        exponent_matrix_str(pt.exponents)));
  bool divides = false;
  std::string cw;
  if (pt.P.is_monic()) {
    Division dv = right_divide(DifferentialOperator::scalar_constant(pt.algebra, pt.certificate), pt.P);
    divides = dv.remainder.is_zero();
    cw = divides ? "q(t) = " + pt.certificate.str('t') : "remainder " + dv.remainder.str();
  } else {
    cw = "P not monic";
  }
  rep.add(Report::check("certificate divides", divides, cw));
  TheoremACheck th = check_theorem_A(pt.kernel);
  rep.add(th.report);
  return rep;
}

// g(z) = sum_i prod_j (z - alpha_ij) e_i
inline AlgebraPolynomial normalizer(const Algebra& a, const std::vector<std::vector<Rational>>& alpha) {
  AlgebraPolynomial g(a);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    ScalarPolynomial p(1);
    for (const auto& x : alpha[i]) p = p * ScalarPolynomial::linear_root(x);
    g = g + AlgebraPolynomial::from_scalar(a, p).right_mul(AlgebraElement::idempotent(a, i));
  }
  return g;
}

struct NormalizedAdelicPoint {
  DecoratedAdelicPoint point;
  AlgebraPolynomial g;  // in z
};

inline NormalizedAdelicPoint normalize(const DecoratedAdelicPoint& pt) {
  return {pt, normalizer(pt.algebra, pt.exponents)};
}

// d - sum_i gamma_i e_i
inline DifferentialOperator successor_factor(const Algebra& a, const std::vector<Rational>& gamma) {
  AlgebraElement s = AlgebraElement::zero(a);
  for (std::size_t i = 0; i < gamma.size(); ++i) s += AlgebraElement::idempotent(a, i).scaled(gamma[i]);
  return DifferentialOperator::d(a) - DifferentialOperator::multiplication(s);
}

// Kernel of P (d - sum gamma_i e_i): each term p e_i exp(alpha x) is lifted
// through F_A, and sum_i exp(gamma_i x) e_i is appended as the last element.
inline KernelBasis successor_kernel(const KernelBasis& v, const std::vector<Rational>& gamma) {
  const Algebra& a = v.algebra();
  if (gamma.size() != a->num_idempotents()) throw std::invalid_argument("gamma needs one entry per idempotent");
  std::vector<std::vector<KernelTerm>> elems;
  for (std::size_t j = 0; j < v.rank(); ++j) {
    std::vector<KernelTerm> el;
    for (std::size_t i = 0; i < v.idempotent_count(); ++i) {
      const KernelTerm& t = v.term(j, i);
      el.push_back({t.exponent, f_a_apply(t.exponent, gamma, v.component(i, j))});
    }
    elems.push_back(std::move(el));
  }
  std::vector<KernelTerm> last;
  for (std::size_t i = 0; i < gamma.size(); ++i) last.push_back({gamma[i], AlgebraPolynomial(AlgebraElement::idempotent(a, i))});
  elems.push_back(std::move(last));
  return KernelBasis(a, std::move(elems));
}

inline DecoratedAdelicPoint immediate_successor(const DecoratedAdelicPoint& pt, const std::vector<Rational>& gamma) {
  KernelBasis w = successor_kernel(pt.kernel, gamma);
  DecoratedAdelicPoint s = build_point(w);
  DifferentialOperator expected = compose(pt.P, successor_factor(pt.algebra, gamma));
  if (!(s.P == expected))
    throw ConsistencyError("successor operator " + s.P.str() + " differs from P (d - gamma) = " + expected.str());
  return s;
}

inline DecoratedAdelicPoint successor_chain(const DecoratedAdelicPoint& pt, const std::vector<std::vector<Rational>>& steps) {
  DecoratedAdelicPoint cur = pt;
  for (const auto& g : steps) cur = immediate_successor(cur, g);
  return cur;
}

// Same normalized point iff P g_beta(d) = S g_alpha(d).
inline bool same_fiber(const DecoratedAdelicPoint& p1, const DecoratedAdelicPoint& p2) {
  require_same(p1.algebra, p2.algebra);
  AlgebraPolynomial ga = normalizer(p1.algebra, p1.exponents), gb = normalizer(p2.algebra, p2.exponents);
  return compose(p1.P, DifferentialOperator::constant(gb)) == compose(p2.P, DifferentialOperator::constant(ga));
}

}  // namespace adelic
