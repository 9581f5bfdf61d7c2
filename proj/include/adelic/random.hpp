#pragma once

// Seeded generators of small random instances for the property suites.

#include <cstdint>
#include <random>
#include <vector>

#include "adelic/point.hpp"

namespace adelic::gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Mostly small integers, sometimes a fraction.
  Rational rational(int range = 3) {
    Rational r(integer(-range, range));
    if (coin(0.2)) r /= Rational(integer(2, 3));
    return r;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }

  ScalarPolynomial scalar_poly(int max_degree) {
    std::vector<Rational> c;
    int deg = integer(0, max_degree);
    for (int k = 0; k <= deg; ++k) c.push_back(rational());
    return ScalarPolynomial(std::move(c));
  }

  AlgebraElement element(const Algebra& a) {
    Coords c;
    for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(coin(0.6) ? rational() : Rational(0));
    return AlgebraElement(a, std::move(c));
  }

  AlgebraPolynomial algebra_poly(const Algebra& a, int max_degree) {
    std::vector<Coords> c;
    int deg = integer(0, max_degree);
    for (int k = 0; k <= deg; ++k) c.push_back(element(a).coords());
    return AlgebraPolynomial(a, std::move(c));
  }

  QuasiExp quasi(const Algebra& a, int max_degree) {
    static const std::vector<Rational> exps = {Rational(0), Rational(1), Rational(-1), Rational(1, 2)};
    QuasiExp f(a);
    int terms = integer(1, 2);
    for (int t = 0; t < terms; ++t) f += QuasiExp(algebra_poly(a, max_degree), pick(exps));
    return f;
  }

  Matrix<Rational> matrix(std::size_t n) {
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = coin(0.5) ? rational() : Rational(0);
    return m;
  }

  std::vector<Rational> gamma(const Algebra& a) {
    std::vector<Rational> g;
    for (std::size_t i = 0; i < a->num_idempotents(); ++i) g.push_back(Rational(integer(0, 2)));
    return g;
  }

  // A kernel of the structured form passing the classification conditions.
  // Exponents come from {0, 1}; polynomials have degree at most max_degree.
  KernelBasis kernel(const Algebra& a, std::size_t max_rank = 2, int max_degree = 2) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::size_t l = static_cast<std::size_t>(integer(1, static_cast<int>(max_rank)));
      std::vector<std::vector<KernelTerm>> elems(l);
      for (auto& el : elems)
        for (std::size_t i = 0; i < a->num_idempotents(); ++i)
          el.push_back({Rational(integer(0, 1)), algebra_poly(a, max_degree)});
      KernelBasis v(a, std::move(elems));
      if (check_theorem_A(v).ok()) return v;
    }
    throw std::runtime_error("no admissible random kernel found");
  }

  DecoratedAdelicPoint point(const Algebra& a, std::size_t max_rank = 2, int max_degree = 2) {
    return build_point(kernel(a, max_rank, max_degree));
  }

  // Invertible l x l matrix over R, as entries G[j][k].
  std::vector<std::vector<AlgebraElement>> invertible(const Algebra& a, std::size_t l) {
    const std::size_t d = a->dim();
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<std::vector<AlgebraElement>> G(l, std::vector<AlgebraElement>(l));
      Matrix<Rational> flat(l * d, l * d);
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t k = 0; k < l; ++k) {
          G[j][k] = element(a);
          Matrix<Rational> L = left_regular_matrix(G[j][k]);
          for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) flat(j * d + r, k * d + c) = L(r, c);
        }
      if (!determinant(flat).is_zero()) return G;
    }
    throw std::runtime_error("no invertible random matrix found");
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// f'_k = sum_j f_j G_jk
inline std::vector<QuasiExp> change_basis(const std::vector<QuasiExp>& fs, const std::vector<std::vector<AlgebraElement>>& G) {
  std::vector<QuasiExp> out;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    QuasiExp f(fs[0].algebra());
    for (std::size_t j = 0; j < fs.size(); ++j) f += fs[j].right_mul(G[j][k]);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace adelic::gen
