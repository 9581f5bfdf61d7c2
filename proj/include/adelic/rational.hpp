#pragma once

// Exact rationals. Thin value wrapper around GMP's mpq_class so that
// expression templates never leak into `auto` variables.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adelic {

class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT: implicit by intent, integers are rationals
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n, long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(mpz_class(n), mpz_class(d));
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "n", "-n", "p/q" with q > 0 written without sign.
  static Rational parse(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("malformed rational \"" + std::string(s) + "\""); };
    if (s.empty()) throw bad();
    std::size_t slash = s.find('/');
    auto digits = [](std::string_view t, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    std::string_view num = s.substr(0, slash);
    if (!digits(num, true)) throw bad();
    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
      std::string_view den = s.substr(slash + 1);
      if (!digits(den, false)) throw bad();
      d = mpz_class(std::string(den), 10);
      if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(s) + "\"");
    }
    Rational r;
    r.v_ = mpq_class(n, d);
    r.v_.canonicalize();
    return r;
  }

  std::string str() const { return v_.get_str(10); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
  }
  Rational operator-() const { Rational r; r.v_ = -v_; return r; }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

inline Rational pow(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(mpq_class(f));
}

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(mpq_class(b));
}

// n (n-1) ... (n-k+1)
inline Rational falling(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= Rational(static_cast<long>(n - i));
  return r;
}

}  // namespace adelic
