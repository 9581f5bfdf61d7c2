#pragma once

// The pairing <p(z), f(x)> between R[z] and QP(R), orthogonal complements,
// points of the rational Grassmannian and the embedding iota.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adelic/modules.hpp"
#include "adelic/point.hpp"

namespace adelic {

// <p, x^n exp(alpha x) r> = p^{(n)}(alpha) r
inline AlgebraElement pairing(const AlgebraPolynomial& p, const QuasiExp& f) {
  const Algebra& a = p.algebra() ? p.algebra() : f.algebra();
  AlgebraElement s = AlgebraElement::zero(a);
  if (p.is_zero()) return s;
  for (const auto& [alpha, q] : f.terms())
    for (std::size_t n = 0; n < q.size(); ++n) {
      if (q.coeff(n).is_zero()) continue;
      s += p.derivative(static_cast<unsigned>(n)).eval(alpha) * q.coeff(n);
    }
  return s;
}

// (p(d) f)(0)
inline AlgebraElement pairing_alt(const AlgebraPolynomial& p, const QuasiExp& f) {
  const Algebra& a = p.algebra() ? p.algebra() : f.algebra();
  AlgebraElement s = AlgebraElement::zero(a);
  QuasiExp fk = f;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!p.coeff(k).is_zero()) s += p.coeff(k) * fk.eval_at_zero();
    if (k + 1 < p.size()) fk = fk.derivative();
  }
  return s;
}

class PairingContext {
 public:
  PairingContext() = default;
  explicit PairingContext(std::vector<std::pair<Rational, unsigned>> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].second == 0) throw std::invalid_argument("context multiplicities must be positive");
      if (i && parts_[i].first == parts_[i - 1].first) throw std::invalid_argument("context exponents must be distinct");
    }
  }
  // alpha -> (top x-degree at alpha) + 1
  static PairingContext for_kernel(const std::vector<QuasiExp>& fs) {
    std::map<Rational, int> top;
    for (const auto& f : fs)
      for (const auto& [a, p] : f.terms()) top[a] = std::max(top.count(a) ? top[a] : -1, p.degree());
    std::vector<std::pair<Rational, unsigned>> parts;
    for (const auto& [a, n] : top) parts.emplace_back(a, static_cast<unsigned>(n + 1));
    return PairingContext(std::move(parts));
  }
  static PairingContext for_kernel(const KernelBasis& v) { return for_kernel(v.elements()); }

  const std::vector<std::pair<Rational, unsigned>>& parts() const { return parts_; }
  ScalarPolynomial h() const {
    ScalarPolynomial p(1);
    for (const auto& [a, n] : parts_) p = p * ScalarPolynomial::linear_root(a).pow(n);
    return p;
  }
  std::size_t degree() const {
    std::size_t s = 0;
    for (const auto& pr : parts_) s += pr.second;
    return s;
  }
  unsigned multiplicity(const Rational& a) const {
    for (const auto& [b, n] : parts_)
      if (a == b) return n;
    return 0;
  }
  std::string str() const {
    std::string s;
    for (const auto& [a, n] : parts_) s += (s.empty() ? "" : ",") + a.str() + ":" + std::to_string(n);
    return s;
  }
  friend bool operator==(const PairingContext&, const PairingContext&) = default;

 private:
  std::vector<std::pair<Rational, unsigned>> parts_;
};

// Coordinates on R[z]_{<T}: index t*d + c for z^t b_c.
inline std::vector<Rational> zpoly_vec(const AlgebraPolynomial& p, std::size_t T, std::size_t d) {
  if (p.size() > T) throw std::out_of_range("polynomial degree exceeds the truncation");
  std::vector<Rational> v(T * d, Rational(0));
  for (std::size_t t = 0; t < p.size(); ++t)
    for (std::size_t c = 0; c < d; ++c) v[t * d + c] = p.coeffs()[t][c];
  return v;
}

inline AlgebraPolynomial vec_zpoly(const Algebra& a, const std::vector<Rational>& v) {
  const std::size_t d = a->dim();
  std::vector<Coords> cs(v.size() / d, Coords(d, Rational(0)));
  for (std::size_t i = 0; i < v.size(); ++i) cs[i / d][i % d] = v[i];
  return AlgebraPolynomial(a, std::move(cs));
}

// p mod h coordinatewise, for scalar h.
inline AlgebraPolynomial mod_scalar(const AlgebraPolynomial& p, const ScalarPolynomial& h) {
  const Algebra& a = p.algebra();
  if (p.is_zero()) return p;
  std::vector<ScalarPolynomial> cs;
  for (std::size_t c = 0; c < a->dim(); ++c) cs.push_back(p.coordinate(c).divmod(h).second);
  return AlgebraPolynomial::from_coordinates(a, cs);
}

// Columns b_c p for each p: the Q-span of the left R-span.
inline Matrix<Rational> left_span_matrix(const Algebra& a, const std::vector<AlgebraPolynomial>& ps, std::size_t T) {
  std::vector<std::vector<Rational>> cols;
  for (const auto& p : ps)
    for (std::size_t c = 0; c < a->dim(); ++c) cols.push_back(zpoly_vec(p.left_mul(AlgebraElement::basis(a, c)), T, a->dim()));
  return Matrix<Rational>::from_columns(cols, T * a->dim());
}

// Same, reduced modulo a scalar polynomial h (T = deg h).
inline Matrix<Rational> left_span_matrix_mod(const Algebra& a, const std::vector<AlgebraPolynomial>& ps, const ScalarPolynomial& h) {
  std::vector<AlgebraPolynomial> red;
  for (const auto& p : ps) red.push_back(mod_scalar(p, h));
  return left_span_matrix(a, red, static_cast<std::size_t>(h.degree()));
}

// Matrix of p -> (<p, f_j>)_j on R[z]_{<T}; rows j*d + c_out.
inline Matrix<Rational> pairing_matrix(const Algebra& a, const std::vector<QuasiExp>& fs, std::size_t T) {
  const std::size_t d = a->dim();
  Matrix<Rational> m(fs.size() * d, T * d);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t c = 0; c < d; ++c) {
      AlgebraPolynomial p = AlgebraPolynomial::monomial(AlgebraElement::basis(a, c), t);
      for (std::size_t j = 0; j < fs.size(); ++j) {
        AlgebraElement v = pairing(p, fs[j]);
        for (std::size_t co = 0; co < d; ++co) m(j * d + co, t * d + c) = v.coords()[co];
      }
    }
  return m;
}

// Q-basis (columns) of V^perp restricted to R[z]_{<T}.
inline Matrix<Rational> perp_truncated(const Algebra& a, const std::vector<QuasiExp>& fs, std::size_t T) {
  if (fs.empty()) return Matrix<Rational>::identity(T * a->dim());
  return nullspace(pairing_matrix(a, fs, T));
}

struct PerpModule {
  PairingContext ctx;
  ScalarPolynomial h;
  Matrix<Rational> basis;  // V^perp mod h, canonical representatives of degree < deg h
  Algebra algebra;
  std::size_t dim() const { return basis.cols(); }
  std::vector<AlgebraPolynomial> elements() const {
    std::vector<AlgebraPolynomial> v;
    for (std::size_t j = 0; j < basis.cols(); ++j) v.push_back(vec_zpoly(algebra, basis.column(j)));
    return v;
  }
};

inline void require_context(const std::vector<QuasiExp>& fs, const PairingContext& ctx) {
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (const auto& [a, p] : fs[j].terms()) {
      unsigned n = ctx.multiplicity(a);
      if (n == 0 || static_cast<int>(n) <= p.degree())
        throw InsufficientContext("f" + std::to_string(j + 1) + " has x-degree " + std::to_string(p.degree()) + " at exponent " +
                                  a.str() + "; the context needs " + a.str() + ":" + std::to_string(p.degree() + 1) +
                                  " or more");
    }
}

inline PerpModule perp_of_kernel(const Algebra& a, const std::vector<QuasiExp>& fs, const PairingContext& ctx) {
  require_context(fs, ctx);
  ScalarPolynomial h = ctx.h();
  return {ctx, h, perp_truncated(a, fs, ctx.degree()), a};
}
inline PerpModule perp_of_kernel(const KernelBasis& v, const PairingContext& ctx) {
  return perp_of_kernel(v.algebra(), v.elements(), ctx);
}
inline PerpModule perp_of_kernel(const KernelBasis& v) { return perp_of_kernel(v, PairingContext::for_kernel(v)); }

// Basis of QP_{alpha,N}(R): x^n exp(alpha x) b_c.
inline std::vector<QuasiExp> ambient_basis(const Algebra& a, const PairingContext& ctx) {
  std::vector<QuasiExp> out;
  for (const auto& [alpha, N] : ctx.parts())
    for (unsigned n = 0; n < N; ++n)
      for (std::size_t c = 0; c < a->dim(); ++c)
        out.emplace_back(AlgebraPolynomial::monomial(AlgebraElement::basis(a, c), n), alpha);
  return out;
}

// (V^perp)^perp inside QP_{alpha,N}(R), compared with V as Q-spans.
inline Report double_perp(const KernelBasis& v, const PairingContext& ctx) {
  const Algebra& a = v.algebra();
  Report rep("double orthogonal complement");
  PerpModule pm = perp_of_kernel(v, ctx);
  std::vector<QuasiExp> amb = ambient_basis(a, ctx);
  QPCoordinates co(a->dim());
  for (const auto& f : amb) co.include(f);
  // Conditions <p_k, sum y_i amb_i> = 0 for the perp basis p_k.
  auto perp = pm.elements();
  Matrix<Rational> cond(perp.size() * a->dim(), amb.size());
  for (std::size_t i = 0; i < amb.size(); ++i)
    for (std::size_t k = 0; k < perp.size(); ++k) {
      AlgebraElement e = pairing(perp[k], amb[i]);
      for (std::size_t c = 0; c < a->dim(); ++c) cond(k * a->dim() + c, i) = e.coords()[c];
    }
  Matrix<Rational> dp = nullspace(cond);  // coordinates w.r.t. amb
  // amb is the coordinate basis of co up to ordering; map back explicitly.
  std::vector<std::vector<Rational>> cols;
  for (std::size_t j = 0; j < dp.cols(); ++j) {
    QuasiExp f(a);
    for (std::size_t i = 0; i < amb.size(); ++i)
      if (!dp(i, j).is_zero()) f += amb[i].scaled(dp(i, j));
    cols.push_back(co.vec(f));
  }
  Matrix<Rational> dpm = Matrix<Rational>::from_columns(cols, co.dim());
  Matrix<Rational> vm = q_span_matrix(v.elements(), a, co);
  bool eq = same_column_span(dpm, vm);
  rep.add(Report::check("(V^perp)^perp = V", eq,
                        "dim (V^perp)^perp = " + std::to_string(dpm.cols()) + ", dim V = " + std::to_string(rank(vm))));
  std::size_t expect = a->dim() * ctx.degree() - rank(vm);
  rep.add(Report::check("dim V^perp mod h = d deg h - dim V", pm.dim() == expect,
                        std::to_string(pm.dim()) + " vs " + std::to_string(expect)));
  return rep;
}

// Candidate left R-generators of V^perp: their Q-span (left R-span) must equal
// V^perp within R[z]_{<T}, T one more than the top candidate degree, and they
// must be R-linearly independent.
inline Report verify_candidate_generators(const Algebra& a, const std::vector<QuasiExp>& fs,
                                          const std::vector<AlgebraPolynomial>& gens) {
  Report rep("candidate generators of V^perp");
  int top = -1;
  for (const auto& g : gens) top = std::max(top, g.degree());
  const std::size_t T = static_cast<std::size_t>(top + 1), d = a->dim();
  Matrix<Rational> span = left_span_matrix(a, gens, T);
  Matrix<Rational> perp = perp_truncated(a, fs, T);
  bool inside = column_span_contains(perp, span);
  std::string bad;
  if (!inside)
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!column_span_contains(perp, left_span_matrix(a, {gens[i]}, T))) {
        bad = "generator " + std::to_string(i + 1) + " = " + gens[i].str('z') + " pairs nontrivially with V";
        break;
      }
  rep.add(Report::check("generators lie in V^perp", inside, inside ? "truncation degree " + std::to_string(T) : bad));
  std::size_t r = rank(span);
  bool spans = inside && r == perp.cols();
  rep.add(Report::check("generators span V^perp below the truncation", spans,
                        "rank " + std::to_string(r) + " of " + std::to_string(perp.cols())));
  bool free = r == gens.size() * d;
  rep.add(Report::check("generators are R-independent", free,
                        "Q-rank " + std::to_string(r) + ", expected " + std::to_string(gens.size() * d)));
  return rep;
}

inline Report verify_candidate_generators(const PerpModule& pm, const KernelBasis& v, const std::vector<AlgebraPolynomial>& gens) {
  Report rep = verify_candidate_generators(v.algebra(), v.elements(), gens);
  // Agreement with the stored basis modulo h.
  std::vector<AlgebraPolynomial> below;
  for (const auto& g : gens)
    if (!mod_scalar(g, pm.h).is_zero()) below.push_back(g);
  Matrix<Rational> red = left_span_matrix_mod(v.algebra(), below, pm.h);
  bool eq = same_column_span(red, pm.basis);
  rep.add(Report::check("span modulo h equals the computed basis", eq,
                        "rank " + std::to_string(rank(red)) + " of " + std::to_string(pm.dim())));
  return rep;
}

// M = theta^{-1} Span_R(generators) + h R[z], claimed to satisfy
// h R[z] <= M <= g^{-1} R[z].
struct RationalPoint {
  Algebra algebra;
  ScalarPolynomial theta;
  std::vector<AlgebraPolynomial> generators;
  ScalarPolynomial h;
  ScalarPolynomial g;
};

// Q-span of theta * M modulo theta * H for H a multiple of h.
inline Matrix<Rational> cleared_span(const RationalPoint& M, const ScalarPolynomial& theta, const ScalarPolynomial& H) {
  const Algebra& a = M.algebra;
  ScalarPolynomial mod = theta * H;
  ScalarPolynomial scale = theta.exact_div(M.theta);
  std::vector<AlgebraPolynomial> ps;
  for (const auto& n : M.generators) ps.push_back(n.times(scale));
  ScalarPolynomial th = theta * M.h;
  for (int t = 0; t + th.degree() < mod.degree(); ++t)
    ps.push_back(AlgebraPolynomial::from_scalar(a, th * ScalarPolynomial::monomial(Rational(1), static_cast<std::size_t>(t))));
  return column_basis(left_span_matrix_mod(a, ps, mod));
}

inline bool operator==(const RationalPoint& x, const RationalPoint& y) {
  require_same(x.algebra, y.algebra);
  ScalarPolynomial theta = lcm(x.theta, y.theta), H = lcm(x.h, y.h);
  return same_column_span(cleared_span(x, theta, H), cleared_span(y, theta, H));
}

namespace detail {
inline std::string dims_str(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}
// dim_Q e_i X for X a left-module Q-span given by columns (coordinates t*d + c).
inline std::vector<std::size_t> idempotent_dims(const Algebra& a, const Matrix<Rational>& X, std::size_t N) {
  std::vector<std::size_t> out;
  auto act = free_left_action(a, N);
  for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
    Matrix<Rational> Le = left_regular_matrix(AlgebraElement::idempotent(a, i));
    Matrix<Rational> M(N * a->dim(), N * a->dim());
    for (std::size_t t = 0; t < N; ++t)
      for (std::size_t r = 0; r < a->dim(); ++r)
        for (std::size_t c = 0; c < a->dim(); ++c) M(t * a->dim() + r, t * a->dim() + c) = Le(r, c);
    out.push_back(X.cols() ? rank(M * X) : 0);
  }
  return out;
}
}  // namespace detail

// Membership conditions for the rational Grassmannian, all checked inside the
// finite quotient g^{-1}R[z] / hR[z], multiplied through by g.
inline Report is_rational_point(const RationalPoint& M) {
  const Algebra& a = M.algebra;
  const std::size_t d = a->dim();
  Report rep("rational Grassmannian membership");
  // (i) M <= g^{-1} R[z], i.e. theta divides g n for every generator.
  bool upper = true;
  std::string bad;
  for (std::size_t i = 0; i < M.generators.size() && upper; ++i)
    for (std::size_t c = 0; c < d; ++c)
      if (!(M.generators[i].coordinate(c) * M.g).divisible_by(M.theta)) {
        upper = false;
        bad = "generator " + std::to_string(i + 1) + " times g is not divisible by theta";
        break;
      }
  rep.add(Report::check("M inside g^{-1} R[z]", upper, upper ? "g = " + M.g.str('z') : bad));
  rep.add(Report::pass("h R[z] inside M", "h = " + M.h.str('z')));
  if (!upper) return rep;

  // (ii) U = gM / ghR[z] inside Q = R[z]/(gh) is a left R-direct summand with free complement of rank deg g.
  ScalarPolynomial gh = M.g * M.h;
  const std::size_t N = static_cast<std::size_t>(gh.degree());
  std::vector<AlgebraPolynomial> ps;
  for (const auto& n : M.generators) ps.push_back(n.times(M.g).exact_div(M.theta));
  Matrix<Rational> U = column_basis(left_span_matrix_mod(a, ps, gh));
  auto pi = direct_summand_witness_free(U, a, N);
  bool summand = pi.has_value() && verify_projection(*pi, U, free_left_action(a, N));
  rep.add(Report::check("direct summand of g^{-1}R[z]/hR[z]", summand,
                        summand ? "projection found, dim_Q of summand " + std::to_string(U.cols())
                                : "no R-linear projection onto M/hR[z] exists"));
  // Corank: e_i-dimensions of the quotient against deg g copies of R.
  std::vector<std::size_t> total = detail::idempotent_dims(a, Matrix<Rational>::identity(N * d), N);
  std::vector<std::size_t> sub = detail::idempotent_dims(a, U, N);
  std::vector<std::size_t> quot, want;
  const std::size_t degg = static_cast<std::size_t>(M.g.degree());
  Matrix<Rational> one_block = Matrix<Rational>::identity(d);
  std::vector<std::size_t> r_dims = detail::idempotent_dims(a, one_block, 1);
  bool corank = true;
  for (std::size_t i = 0; i < total.size(); ++i) {
    quot.push_back(total[i] - sub[i]);
    want.push_back(degg * r_dims[i]);
    corank = corank && quot.back() == want.back();
  }
  rep.add(Report::check("quotient is free of rank deg g", corank && summand,
                        "dim e_i(quotient) = " + detail::dims_str(quot) + ", deg g copies of R give " + detail::dims_str(want)));
  return rep;
}

// Candidate complement of M in g^{-1}R[z]/hR[z]: elements num_k / den_k.
inline Report verify_complement(const RationalPoint& M, const std::vector<AlgebraRationalFunction>& comp) {
  const Algebra& a = M.algebra;
  Report rep("direct complement");
  ScalarPolynomial gh = M.g * M.h;
  std::vector<AlgebraPolynomial> cs;
  for (std::size_t k = 0; k < comp.size(); ++k) {
    AlgebraPolynomial gn = comp[k].num().times(M.g);
    for (std::size_t c = 0; c < a->dim(); ++c)
      if (!gn.coordinate(c).divisible_by(comp[k].den()))
        return rep.add(Report::fail("complement inside g^{-1}R[z]", "element " + std::to_string(k + 1) + " has a pole beyond g"));
    cs.push_back(gn.exact_div(comp[k].den()));
  }
  std::vector<AlgebraPolynomial> ps;
  for (const auto& n : M.generators) ps.push_back(n.times(M.g).exact_div(M.theta));
  Matrix<Rational> U = column_basis(left_span_matrix_mod(a, ps, gh));
  Matrix<Rational> C = left_span_matrix_mod(a, cs, gh);
  std::size_t rc = rank(C);
  bool free = rc == comp.size() * a->dim();
  rep.add(Report::check("complement is R-free", free, "Q-rank " + std::to_string(rc)));
  bool rank_ok = comp.size() == static_cast<std::size_t>(M.g.degree());
  rep.add(Report::check("complement rank equals deg g", rank_ok, std::to_string(comp.size()) + " vs " + std::to_string(M.g.degree())));
  std::size_t total = static_cast<std::size_t>(gh.degree()) * a->dim();
  bool direct = rank(U.hcat(C)) == total && U.cols() + rc == total;
  rep.add(Report::check("M + complement = g^{-1}R[z] directly", direct,
                        "dim M/hR[z] = " + std::to_string(U.cols()) + ", dim complement = " + std::to_string(rc) +
                            ", total " + std::to_string(total)));
  return rep;
}

// Candidate left R-basis of M, checked in degrees below T after clearing theta:
// theta M cut to R[z]_{<T} is Span_R(generators) + theta h R[z]_{<T - deg theta h}
// once T exceeds every generator degree.  Candidates of cleared degree >= T are
// ignored, so infinite families are passed in truncated.
inline Report verify_module_basis(const RationalPoint& M, const std::vector<AlgebraRationalFunction>& basis, std::size_t T) {
  const Algebra& a = M.algebra;
  Report rep("left R-basis below degree " + std::to_string(T));
  std::vector<AlgebraPolynomial> cleared;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    AlgebraPolynomial tn = basis[k].num().times(M.theta);
    bool ok = true;
    for (std::size_t c = 0; c < a->dim(); ++c) ok = ok && tn.coordinate(c).divisible_by(basis[k].den());
    if (!ok) return rep.add(Report::fail("candidates inside theta^{-1} R[z]", "element " + std::to_string(k + 1) + " has a pole beyond theta"));
    AlgebraPolynomial p = tn.exact_div(basis[k].den());
    if (p.degree() < static_cast<int>(T)) cleared.push_back(p);
  }
  std::vector<AlgebraPolynomial> ms = M.generators;
  for (const auto& n : ms)
    if (n.degree() >= static_cast<int>(T)) throw std::invalid_argument("truncation degree below a generator degree");
  ScalarPolynomial th = M.theta * M.h;
  for (int t = 0; t + th.degree() < static_cast<int>(T); ++t)
    ms.push_back(AlgebraPolynomial::from_scalar(a, th * ScalarPolynomial::monomial(Rational(1), static_cast<std::size_t>(t))));
  Matrix<Rational> full = column_basis(left_span_matrix(a, ms, T));
  Matrix<Rational> cand = left_span_matrix(a, cleared, T);
  std::string bad;
  for (std::size_t k = 0; k < cleared.size() && bad.empty(); ++k)
    if (!column_span_contains(full, left_span_matrix(a, {cleared[k]}, T)))
      bad = "candidate " + std::to_string(k + 1) + ", theta-cleared " + cleared[k].str('z') + ", is not in M";
  rep.add(Report::check("candidates lie in M", bad.empty(), bad.empty() ? std::to_string(cleared.size()) + " candidates" : bad));
  std::size_t r = rank(cand);
  bool spans = bad.empty() && r == full.cols();
  rep.add(Report::check("candidates span M", spans, "rank " + std::to_string(r) + " of " + std::to_string(full.cols())));
  rep.add(Report::check("candidates are R-independent", r == cleared.size() * a->dim(),
                        "Q-rank " + std::to_string(r) + ", expected " + std::to_string(cleared.size() * a->dim())));
  return rep;
}

// Smallest divisor h' of h with h' R[z] inside M.
inline ScalarPolynomial minimal_lower_bound(const RationalPoint& M, const std::vector<std::pair<Rational, unsigned>>& factors) {
  const Algebra& a = M.algebra;
  ScalarPolynomial mod = M.theta * M.h;
  std::vector<AlgebraPolynomial> ps = M.generators;
  Matrix<Rational> span = column_basis(left_span_matrix_mod(a, ps, mod));
  auto contained = [&](const ScalarPolynomial& hp) {
    int extra = M.h.degree() - hp.degree();
    std::vector<AlgebraPolynomial> test;
    for (int t = 0; t < extra; ++t)
      test.push_back(AlgebraPolynomial::from_scalar(a, M.theta * hp * ScalarPolynomial::monomial(Rational(1), static_cast<std::size_t>(t))));
    if (test.empty()) return true;
    return column_span_contains(span, left_span_matrix_mod(a, test, mod));
  };
  std::vector<std::pair<Rational, unsigned>> cur = factors;
  auto build = [&]() {
    ScalarPolynomial p(1);
    for (const auto& [r, n] : cur) p = p * ScalarPolynomial::linear_root(r).pow(n);
    return p;
  };
  for (auto& f : cur)
    while (f.second > 0) {
      --f.second;
      if (!contained(build())) {
        ++f.second;
        break;
      }
    }
  return build();
}

// iota(P exp(xz) g^{-1}) = V^perp g^{-1} = theta^{-1} V^perp G with
// theta = prod_ij (z - alpha_ij), G = sum_i theta / prod_j (z - alpha_ij) e_i.
inline RationalPoint embed_iota(const NormalizedAdelicPoint& npt, std::optional<PairingContext> ctx_in = std::nullopt,
                                bool minimize = true) {
  const DecoratedAdelicPoint& pt = npt.point;
  const Algebra& a = pt.algebra;
  PairingContext ctx = ctx_in ? *ctx_in : PairingContext::for_kernel(pt.kernel);
  PerpModule pm = perp_of_kernel(pt.kernel, ctx);
  ScalarPolynomial theta(1);
  std::vector<ScalarPolynomial> rowprod;
  for (const auto& row : pt.exponents) {
    ScalarPolynomial p(1);
    for (const auto& x : row) p = p * ScalarPolynomial::linear_root(x);
    rowprod.push_back(p);
    theta = theta * p;
  }
  AlgebraPolynomial G(a);
  for (std::size_t i = 0; i < rowprod.size(); ++i)
    G = G + AlgebraPolynomial::from_scalar(a, theta.exact_div(rowprod[i])).right_mul(AlgebraElement::idempotent(a, i));
  RationalPoint M{a, theta, {}, pm.h, theta};
  for (const auto& p : pm.elements()) M.generators.push_back(p * G);
  for (int t = 0; t < theta.degree(); ++t)
    M.generators.push_back(AlgebraPolynomial::from_scalar(a, pm.h * ScalarPolynomial::monomial(Rational(1), static_cast<std::size_t>(t))) * G);
  // Cancel scalar factors common to theta and every generator.
  ScalarPolynomial common = theta;
  for (const auto& n : M.generators)
    for (std::size_t c = 0; c < a->dim() && common.degree() > 0; ++c)
      if (!n.coordinate(c).is_zero()) common = gcd(common, n.coordinate(c));
  if (common.degree() > 0) {
    M.theta = M.g = theta.exact_div(common);
    for (auto& n : M.generators) n = n.exact_div(common);
  }
  if (minimize) M.h = minimal_lower_bound(M, ctx.parts());
  return M;
}

// V^perp g = W^perp for W the successor kernel under gamma and g = sum (z - gamma_i) e_i.
inline Report verify_perp_shift(const KernelBasis& v, const KernelBasis& w, const std::vector<Rational>& gamma) {
  const Algebra& a = v.algebra();
  Report rep("perp shift under a successor");
  AlgebraPolynomial g(a);
  ScalarPolynomial q(1);
  std::vector<Rational> distinct;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    g = g + AlgebraPolynomial::from_scalar(a, ScalarPolynomial::linear_root(gamma[i])).right_mul(AlgebraElement::idempotent(a, i));
    if (std::find(distinct.begin(), distinct.end(), gamma[i]) == distinct.end()) {
      distinct.push_back(gamma[i]);
      q = q * ScalarPolynomial::linear_root(gamma[i]);
    }
  }
  ScalarPolynomial H = lcm(PairingContext::for_kernel(w).h(), PairingContext::for_kernel(v).h() * q);
  const std::size_t T = static_cast<std::size_t>(H.degree());
  Matrix<Rational> vp = perp_truncated(a, v.elements(), T);
  std::vector<AlgebraPolynomial> shifted;
  for (std::size_t j = 0; j < vp.cols(); ++j) shifted.push_back(vec_zpoly(a, vp.column(j)) * g);
  Matrix<Rational> lhs = left_span_matrix_mod(a, shifted, H);
  Matrix<Rational> rhs = perp_truncated(a, w.elements(), T);
  bool eq = same_column_span(lhs, rhs);
  rep.add(Report::check("V^perp g = W^perp modulo H", eq,
                        "H = " + H.str('z') + ", ranks " + std::to_string(rank(lhs)) + " and " + std::to_string(rhs.cols())));
  return rep;
}

// V as a right submodule of the finite right module W = sum w_k R, both inside
// QP(R); looks for an R-linear projection W -> V.
inline std::optional<Matrix<Rational>> right_summand_witness(const Algebra& a, const std::vector<QuasiExp>& v,
                                                             const std::vector<QuasiExp>& w) {
  QPCoordinates co(a->dim());
  for (const auto& f : w) co.include(f);
  for (const auto& f : v) co.include(f);
  Matrix<Rational> Wb = column_basis(q_span_matrix(w, a, co));
  Matrix<Rational> Vm = q_span_matrix(v, a, co);
  if (!column_span_contains(Wb, Vm)) return std::nullopt;
  Matrix<Rational> Vb = column_basis(Vm);
  // Express in W-coordinates.
  Matrix<Rational> U = *solve_matrix(Wb, Vb);
  std::vector<Matrix<Rational>> action;
  for (std::size_t c = 0; c < a->dim(); ++c) {
    std::vector<std::vector<Rational>> cols;
    for (std::size_t k = 0; k < Wb.cols(); ++k) {
      QuasiExp f = co.element(a, Wb.column(k)).right_mul(AlgebraElement::basis(a, c));
      cols.push_back(*solve(Wb, co.vec(f)));
    }
    action.push_back(Matrix<Rational>::from_columns(cols, Wb.cols()));
  }
  auto pi = direct_summand_witness(U, action);
  if (pi && !verify_projection(*pi, U, action)) return std::nullopt;
  return pi;
}

}  // namespace adelic
