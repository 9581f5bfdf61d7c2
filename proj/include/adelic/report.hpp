#pragma once

// Pass/fail tree returned by every verification routine.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

struct Report {
  std::string name;
  bool passed = true;
  std::string witness;
  std::vector<Report> children;

  Report() = default;
  explicit Report(std::string n) : name(std::move(n)) {}

  static Report pass(std::string n, std::string witness = {}) {
    Report r(std::move(n));
    r.witness = std::move(witness);
    return r;
  }
  static Report fail(std::string n, std::string witness) {
    if (witness.empty()) throw std::logic_error("failure node '" + n + "' needs a witness");
    Report r(std::move(n));
    r.passed = false;
    r.witness = std::move(witness);
    return r;
  }
  static Report check(std::string n, bool ok, std::string witness) {
    return ok ? pass(std::move(n), std::move(witness)) : fail(std::move(n), std::move(witness));
  }

  Report& add(Report child) {
    children.push_back(std::move(child));
    return *this;
  }

  bool ok() const {
    if (!passed) return false;
    for (const auto& c : children)
      if (!c.ok()) return false;
    return true;
  }

  std::size_t failures() const {
    std::size_t n = passed ? 0 : 1;
    for (const auto& c : children) n += c.failures();
    return n;
  }

  // First failing node in depth-first order, or nullptr.
  const Report* first_failure() const {
    if (!passed) return this;
    for (const auto& c : children)
      if (const Report* f = c.first_failure()) return f;
    return nullptr;
  }

  friend bool operator==(const Report&, const Report&) = default;
};

inline void emit_text_node(std::ostringstream& os, const Report& r, int depth) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << (r.ok() ? "[pass] " : "[FAIL] ") << r.name;
  if (!r.witness.empty()) os << ": " << r.witness;
  os << "\n";
  for (const auto& c : r.children) emit_text_node(os, c, depth + 1);
}

inline std::string emit_text(const Report& r) {
  std::ostringstream os;
  if (!r.name.empty() || !r.children.empty() || !r.passed) emit_text_node(os, r, 0);
  std::size_t f = r.failures();
  if (f == 0) os << "all checks passed\n";
  else os << f << (f == 1 ? " check failed\n" : " checks failed\n");
  return os.str();
}

}  // namespace adelic
