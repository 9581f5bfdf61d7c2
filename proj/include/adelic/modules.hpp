#pragma once

// Direct-summand witnesses for finite-dimensional R-modules: an R-linear
// projection pi : W -> W with image U and pi|_U = id, found by a Q-linear solve.

#include <cstddef>
#include <optional>
#include <vector>

#include "adelic/algebra.hpp"
#include "adelic/linalg.hpp"

namespace adelic {

// W = Q^n with the action of basis element b_c given by action[c]; U is given
// by linearly independent columns.  Unknown pi = U Y with Y of size k x n.
inline std::optional<Matrix<Rational>> direct_summand_witness(const Matrix<Rational>& U,
                                                              const std::vector<Matrix<Rational>>& action) {
  const std::size_t n = U.rows(), k = U.cols();
  if (k == 0) return Matrix<Rational>(n, n);
  const std::size_t nunk = k * n;
  auto var = [n](std::size_t a, std::size_t b) { return a * n + b; };
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& rho : action) {
    Matrix<Rational> rU = rho * U;
    // (rho U Y - U Y rho)_{ij} = 0
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> row(nunk, Rational(0));
        bool nz = false;
        for (std::size_t a = 0; a < k; ++a) {
          if (!rU(i, a).is_zero()) {
            row[var(a, j)] += rU(i, a);
            nz = true;
          }
          if (U(i, a).is_zero()) continue;
          for (std::size_t b = 0; b < n; ++b)
            if (!rho(b, j).is_zero()) {
              row[var(a, b)] -= U(i, a) * rho(b, j);
              nz = true;
            }
        }
        if (nz) {
          rows.push_back(std::move(row));
          rhs.push_back(Rational(0));
        }
      }
  }
  // Y U = I
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Rational> row(nunk, Rational(0));
      for (std::size_t b = 0; b < n; ++b)
        if (!U(b, c).is_zero()) row[var(a, b)] = U(b, c);
      rows.push_back(std::move(row));
      rhs.push_back(a == c ? Rational(1) : Rational(0));
    }
  auto y = solve(Matrix<Rational>::from_rows(rows, nunk), rhs);
  if (!y) return std::nullopt;
  Matrix<Rational> Y(k, n);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < n; ++b) Y(a, b) = (*y)[var(a, b)];
  return U * Y;
}

// Left action of b_c on the free module R^N, coordinates in blocks of d.
inline std::vector<Matrix<Rational>> free_left_action(const Algebra& a, std::size_t N) {
  const std::size_t d = a->dim();
  std::vector<Matrix<Rational>> out;
  for (std::size_t c = 0; c < d; ++c) {
    Matrix<Rational> L = left_regular_matrix(AlgebraElement::basis(a, c));
    Matrix<Rational> M(N * d, N * d);
    for (std::size_t t = 0; t < N; ++t)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) M(t * d + i, t * d + j) = L(i, j);
    out.push_back(std::move(M));
  }
  return out;
}

// Same problem with W = R^N free: pi is fixed by the images u_t = U y_t of the
// free generators, so only N * dim U unknowns remain.
inline std::optional<Matrix<Rational>> direct_summand_witness_free(const Matrix<Rational>& U, const Algebra& alg,
                                                                   std::size_t N) {
  const std::size_t d = alg->dim(), n = N * d, k = U.cols();
  if (U.rows() != n) throw std::invalid_argument("module dimension does not match the free rank");
  if (k == 0) return Matrix<Rational>(n, n);
  std::vector<Matrix<Rational>> Lb;  // left-regular matrices of basis elements
  for (std::size_t c = 0; c < d; ++c) Lb.push_back(left_regular_matrix(AlgebraElement::basis(alg, c)));
  // LU[c] = (b_c acting blockwise) * U
  auto act = free_left_action(alg, N);
  std::vector<Matrix<Rational>> LU;
  for (std::size_t c = 0; c < d; ++c) LU.push_back(act[c] * U);
  const std::size_t nunk = N * k;  // y_t in Q^k for each generator
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t col = 0; col < k; ++col) {
    // w = sum_t r_t z^t with r_t = sum_c w[t d + c] b_c; pi(w) = sum_t r_t u_t
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row(nunk, Rational(0));
      for (std::size_t t = 0; t < N; ++t)
        for (std::size_t c = 0; c < d; ++c) {
          const Rational& coef = U(t * d + c, col);
          if (coef.is_zero()) continue;
          for (std::size_t a = 0; a < k; ++a)
            if (!LU[c](i, a).is_zero()) row[t * k + a] += coef * LU[c](i, a);
        }
      rows.push_back(std::move(row));
      rhs.push_back(U(i, col));
    }
  }
  auto y = solve(Matrix<Rational>::from_rows(rows, nunk), rhs);
  if (!y) return std::nullopt;
  // Assemble pi as a Q-matrix: pi(b_c z^t) = b_c u_t.
  Matrix<Rational> pi(n, n);
  for (std::size_t t = 0; t < N; ++t) {
    std::vector<Rational> yt(k);
    for (std::size_t a = 0; a < k; ++a) yt[a] = (*y)[t * k + a];
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Rational> img = LU[c] * yt;
      for (std::size_t i = 0; i < n; ++i) pi(i, t * d + c) = img[i];
    }
  }
  return pi;
}

// Checks that pi is an R-linear idempotent with image span(U) fixing U.
inline bool verify_projection(const Matrix<Rational>& pi, const Matrix<Rational>& U,
                              const std::vector<Matrix<Rational>>& action) {
  for (const auto& rho : action)
    if (!(rho * pi == pi * rho)) return false;
  if (!(pi * U == U)) return false;
  return same_column_span(column_basis(pi), U) || (U.cols() == 0 && rank(pi) == 0);
}

}  // namespace adelic
