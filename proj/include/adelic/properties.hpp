#pragma once

// Seeded property battery over the catalog algebras.  Each property returns
// one report node per algebra; a failing node names the first bad case.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adelic/grassmannian.hpp"
#include "adelic/io.hpp"
#include "adelic/random.hpp"

namespace adelic::props {

struct NamedAlgebra {
  std::string name;
  Algebra algebra;
};

inline std::vector<NamedAlgebra> catalog_algebras() {
  std::vector<NamedAlgebra> out;
  for (const char* n : {"scalar", "dual_numbers", "a2_path", "kronecker", "m2"})
    out.push_back({n, io::load_algebra(io::data_dir() / "algebras" / (std::string(n) + ".json"))});
  return out;
}

struct Tally {
  std::size_t cases = 0;
  std::string first;
  void check(bool ok, const std::function<std::string()>& why) {
    if (!ok && first.empty()) first = "case " + std::to_string(cases) + ": " + why();
    ++cases;
  }
  Report report(const std::string& name) const {
    return Report::check(name, first.empty(), first.empty() ? std::to_string(cases) + " cases" : first);
  }
};

// Points reused across properties; every case still draws fresh randomness.
struct Pool {
  Algebra algebra;
  std::vector<DecoratedAdelicPoint> points;
  const DecoratedAdelicPoint& pick(gen::Gen& g) { return g.pick(points); }
};

inline Pool make_pool(const Algebra& a, gen::Gen& g, std::size_t size) {
  Pool p{a, {}};
  std::size_t max_rank = a->dim() >= 4 ? 1 : 2;
  for (std::size_t i = 0; i < size; ++i) p.points.push_back(g.point(a, max_rank, 2));
  return p;
}

inline DifferentialOperator random_poly_operator(const Algebra& a, gen::Gen& g, int max_order) {
  std::vector<AlgebraRationalFunction> c;
  int order = g.integer(0, max_order);
  for (int k = 0; k <= order; ++k) c.emplace_back(g.algebra_poly(a, 2));
  return DifferentialOperator(a, std::move(c));
}

inline DifferentialOperator random_monic_operator(const Algebra& a, gen::Gen& g, int max_order) {
  std::vector<AlgebraRationalFunction> c;
  int order = g.integer(1, max_order);
  for (int k = 0; k < order; ++k) {
    ScalarPolynomial den = g.scalar_poly(2);
    if (den.is_zero()) den = ScalarPolynomial(1);
    c.emplace_back(g.algebra_poly(a, 2), den);
  }
  c.emplace_back(AlgebraElement::one(a));
  return DifferentialOperator(a, std::move(c));
}

// 6a: L = Q P for L = q(d) from the certificate and for L = Q_random P.
inline Report factorization(Pool& pool, gen::Gen& g, std::size_t n) {
  const Algebra& a = pool.algebra;
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = pool.pick(g);
    DifferentialOperator L = i % 2 == 0 ? DifferentialOperator::scalar_constant(a, pt.certificate)
                                        : compose(random_poly_operator(a, g, 2), pt.P);
    Division dv = right_divide(L, pt.P);
    t.check(dv.remainder.is_zero() && compose(dv.quotient, pt.P) == L,
            [&] { return "L = " + L.str() + ", remainder " + dv.remainder.str(); });
  }
  return t.report("factorization round trip");
}

inline Report division(const Algebra& a, gen::Gen& g, std::size_t n) {
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    DifferentialOperator P = random_monic_operator(a, g, 2);
    DifferentialOperator L = random_poly_operator(a, g, 3);
    Division dv = right_divide(L, P);
    bool ok = compose(dv.quotient, P) + dv.remainder == L && dv.remainder.order() < P.order();
    t.check(ok, [&] { return "L = " + L.str() + ", P = " + P.str(); });
  }
  return t.report("right division round trip");
}

// 6b: (d + A) F_A(u) = u.
inline Report f_a_inverse(const Algebra& a, gen::Gen& g, std::size_t n) {
  const std::size_t d = a->dim();
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<Rational> A = g.coin() ? left_regular_matrix(g.element(a)) : g.matrix(d);
    std::vector<Coords> u;
    int deg = g.integer(0, 3);
    for (int k = 0; k <= deg; ++k) u.push_back(g.element(a).coords());
    std::vector<Coords> v = f_a_apply_matrix(A, u);
    std::size_t len = std::max(u.size(), v.size());
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k) {
      Coords lhs = k < v.size() ? A * v[k] : Coords(d, Rational(0));
      if (k + 1 < v.size())
        for (std::size_t c = 0; c < d; ++c) lhs[c] += v[k + 1][c] * Rational(static_cast<long>(k + 1));
      Coords rhs = k < u.size() ? u[k] : Coords(d, Rational(0));
      ok = lhs == rhs;
    }
    t.check(ok, [&] {
      std::string s = "A rows";
      for (std::size_t r = 0; r < d; ++r) s += " " + coords_str(A.row(r));
      return s;
    });
  }
  return t.report("(d + A) F_A(u) = u");
}

// 6c: both pairing formulas, invariance under q(d) and the mixed associativity.
inline Report pairing_laws(const Algebra& a, gen::Gen& g, std::size_t n) {
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraPolynomial p = g.algebra_poly(a, 4), q = g.algebra_poly(a, 2);
    QuasiExp f = g.quasi(a, 3);
    AlgebraElement r = g.element(a);
    QuasiExp qf(a);
    for (std::size_t k = 0; k < q.size(); ++k) qf += f.derivative(static_cast<unsigned>(k)).left_mul(q.coeff(k));
    bool alt = pairing(p, f) == pairing_alt(p, f);
    bool inv = pairing(p * q, f) == pairing(p, qf);
    bool mixed = pairing(p.right_mul(r), f) == pairing(p, f.left_mul(r));
    t.check(alt && inv && mixed, [&] {
      return std::string(alt ? "" : "pairing != pairing_alt; ") + (inv ? "" : "invariance fails; ") +
             (mixed ? "" : "mixed associativity fails; ") + "p = " + p.str('z') + ", f = " + f.str();
    });
  }
  return t.report("pairing laws");
}

// 6d on successor kernels of pool points.
inline Report double_perp_law(Pool& pool, gen::Gen& g, std::size_t n) {
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = pool.pick(g);
    KernelBasis w = i % 3 == 0 ? pt.kernel : successor_kernel(pt.kernel, g.gamma(pool.algebra));
    Report r = double_perp(w, PairingContext::for_kernel(w));
    t.check(r.ok(), [&] { return r.first_failure()->name + ": " + r.first_failure()->witness; });
  }
  return t.report("double orthogonal complement");
}

// 6e
inline Report perp_shift_law(Pool& pool, gen::Gen& g, std::size_t n) {
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = pool.pick(g);
    std::vector<Rational> gamma = g.gamma(pool.algebra);
    DecoratedAdelicPoint s = immediate_successor(pt, gamma);
    Report r = verify_perp_shift(pt.kernel, s.kernel, gamma);
    t.check(r.ok(), [&] { return r.first_failure()->witness; });
  }
  return t.report("V^perp g = W^perp for successors");
}

// 6f, plus injectivity of iota on pairs of pool points.
inline Report fiber_law(Pool& pool, gen::Gen& g, std::size_t n) {
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = pool.pick(g);
    std::vector<Rational> gamma = g.gamma(pool.algebra);
    DecoratedAdelicPoint s = immediate_successor(pt, gamma);
    RationalPoint m = embed_iota(normalize(pt));
    bool fiber = same_fiber(pt, s);
    bool agree = embed_iota(normalize(s)) == m;
    const auto& other = pool.pick(g);
    bool same = same_fiber(pt, other);
    bool iota_same = embed_iota(normalize(other)) == m;
    t.check(fiber && agree && same == iota_same, [&] {
      return std::string(fiber ? "" : "successor not in the fiber; ") + (agree ? "" : "iota differs across the fiber; ") +
             (same == iota_same ? "" : "same_fiber and iota disagree on a pair");
    });
  }
  return t.report("fibers and iota");
}

// 6g: the identities hold, and fail once Q' is perturbed.
inline Report bispectral_law(Pool& pool, gen::Gen& g, std::size_t n) {
  const Algebra& a = pool.algebra;
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    DecoratedAdelicPoint pt = pool.pick(g);
    if (i % 2 == 1) pt = immediate_successor(pt, g.gamma(a));
    BispectralData bd = bispectral_data(pt.P, DifferentialOperator::scalar_constant(a, pt.certificate));
    Report good = verify_bispectral(bd.Pp, bd.Qp, bd.g, bd.h, bd.L);
    AlgebraElement e = AlgebraElement::one(a).scaled(Rational(g.integer(1, 3)));
    DifferentialOperator bad_q = bd.Qp + DifferentialOperator::multiplication(AlgebraRationalFunction(e));
    Report bad = verify_bispectral(bd.Pp, bad_q, bd.g, bd.h, bd.L);
    t.check(good.ok() && !bad.ok(), [&] {
      return good.ok() ? "corrupted Q' accepted" : good.first_failure()->name + ": " + good.first_failure()->witness;
    });
  }
  return t.report("bispectral identities");
}

// 7: operator and nondegeneracy unchanged by V -> V G, G in GL_l(R).
inline Report basis_independence(Pool& pool, gen::Gen& g, std::size_t n) {
  const Algebra& a = pool.algebra;
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = pool.pick(g);
    auto G = g.invertible(a, pt.kernel.rank());
    std::vector<QuasiExp> fs = gen::change_basis(pt.kernel.elements(), G);
    bool nd = is_nondegenerate(fs, a).nondegenerate;
    DifferentialOperator P = operator_from_kernel(a, fs);
    // An arbitrary family, admissible or not, keeps its nondegeneracy verdict.
    std::vector<QuasiExp> raw = {g.quasi(a, 2), g.quasi(a, 2)};
    bool raw_same = is_nondegenerate(raw, a).nondegenerate == is_nondegenerate(gen::change_basis(raw, g.invertible(a, 2)), a).nondegenerate;
    t.check(nd && P == pt.P && raw_same, [&] {
      return std::string(nd ? "" : "nondegeneracy lost; ") + (P == pt.P ? "" : "operator changed to " + P.str() + "; ") +
             (raw_same ? "" : "verdict changed on an arbitrary family");
    });
  }
  return t.report("basis independence");
}

struct Options {
  std::uint64_t seed = 20240611;
  std::size_t cases = 100;        // per property and algebra
  std::size_t heavy_cases = 40;   // 6d-6f, which build successors
  std::size_t bispectral_cases = 20;
  std::size_t basis_cases = 10;   // per algebra; 50 in total over the catalog
  std::size_t pool = 12;
};

// The full battery; children grouped by property in criterion order.
inline Report run_all(const Options& o) {
  Report root("property suite, seed " + std::to_string(o.seed));
  std::vector<NamedAlgebra> algs = catalog_algebras();
  std::vector<Report> groups = {Report("6a factorization"), Report("6b F_A"),         Report("6c pairing"),
                                Report("6d double perp"),   Report("6e perp shift"),  Report("6f fibers"),
                                Report("6g bispectral"),    Report("7 basis change"), Report("division")};
  for (std::size_t k = 0; k < algs.size(); ++k) {
    const auto& [name, a] = algs[k];
    gen::Gen g(o.seed + 7919 * k);
    Pool pool = make_pool(a, g, o.pool);
    auto tag = [&](Report r) {
      r.name += " [" + name + "]";
      return r;
    };
    groups[0].add(tag(factorization(pool, g, o.cases)));
    groups[1].add(tag(f_a_inverse(a, g, o.cases)));
    groups[2].add(tag(pairing_laws(a, g, o.cases)));
    groups[3].add(tag(double_perp_law(pool, g, o.heavy_cases)));
    groups[4].add(tag(perp_shift_law(pool, g, o.heavy_cases)));
    groups[5].add(tag(fiber_law(pool, g, o.heavy_cases)));
    groups[6].add(tag(bispectral_law(pool, g, o.bispectral_cases)));
    groups[7].add(tag(basis_independence(pool, g, o.basis_cases)));
    groups[8].add(tag(division(a, g, o.cases)));
  }
  for (auto& r : groups) root.add(std::move(r));
  return root;
}

}  // namespace adelic::props
