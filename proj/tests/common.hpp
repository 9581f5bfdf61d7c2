#pragma once

// Shared fixtures: catalog loading and the frozen oracle values.

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adelic/catalog.hpp"
#include "adelic/io.hpp"
#include "adelic/properties.hpp"

namespace testing_util {

using namespace adelic;

inline Algebra algebra(const std::string& file) { return io::load_algebra(io::data_dir() / "algebras" / file); }
inline KernelBasis kernel(const std::string& example) { return io::load_kernel(catalog::kernel_path(example)).kernel; }

inline const Json& oracle() {
  static const Json j = io::read_json_file(std::filesystem::path(ADELIC_TEST_DATA_DIR) / "oracle.json");
  return j;
}

inline ScalarPolynomial poly(const Json& j) { return io::scalar_poly_from(j, "oracle"); }
inline RationalFunction ratfun(const Json& j) { return RationalFunction(poly(j["num"]), poly(j["den"])); }

inline AlgebraElement el(const Algebra& a, std::vector<Rational> c) { return AlgebraElement(a, std::move(c)); }
inline ScalarPolynomial sp(std::initializer_list<Rational> c) { return catalog::sp(c); }

// x^k exp(alpha x) r
inline QuasiExp qe(const AlgebraElement& r, std::size_t k, const Rational& alpha) {
  return QuasiExp(AlgebraPolynomial::monomial(r, k), alpha);
}

// Failure witness of a report, for assertion messages.
inline std::string why(const Report& r) {
  const Report* f = r.first_failure();
  return f ? f->name + ": " + f->witness : "";
}

}  // namespace testing_util
