#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncanon/errors.hpp"

namespace ncanon {

struct Violation {
  std::string law;    // e.g. "identity", "pentagon", "naturality"
  std::string where;  // human-readable instance description

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of an exhaustive checker: every violated equation instance, plus
/// the number of instances that were evaluated per law. Empty iff the
/// structure satisfies every checked law.
class ValidationReport {
 public:
  bool ok() const noexcept { return violations_.empty(); }
  explicit operator bool() const noexcept { return ok(); }

  void add(std::string law, std::string where) {
    violations_.push_back({std::move(law), std::move(where)});
  }
  void count(const std::string& law, std::size_t n = 1) { checked_[law] += n; }

  /// Appends `other`, optionally prefixing law names ("monoidal/pentagon").
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    const std::string p = prefix.empty() ? std::string{} : prefix + "/";
    for (const auto& v : other.violations_) violations_.push_back({p + v.law, v.where});
    for (const auto& [law, n] : other.checked_) checked_[p + law] += n;
  }

  const std::vector<Violation>& violations() const noexcept { return violations_; }
  const std::map<std::string, std::size_t>& checked() const noexcept { return checked_; }
  std::size_t checked(const std::string& law) const {
    auto it = checked_.find(law);
    return it == checked_.end() ? 0 : it->second;
  }
  bool has_violation(const std::string& law) const {
    for (const auto& v : violations_)
      if (v.law == law) return true;
    return false;
  }

  std::string summary(std::size_t max_items = 10) const {
    std::ostringstream os;
    os << (ok() ? "ok" : "FAILED") << " (" << violations_.size() << " violations";
    for (const auto& [law, n] : checked_) os << ", " << law << "=" << n;
    os << ")";
    for (std::size_t i = 0; i < violations_.size() && i < max_items; ++i)
      os << "\n  " << violations_[i].law << ": " << violations_[i].where;
    if (violations_.size() > max_items) os << "\n  ...";
    return os.str();
  }

 private:
  std::vector<Violation> violations_;
  std::map<std::string, std::size_t> checked_;
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
  return os << r.summary();
}

/// A loaded or constructed object failed its validator.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, ValidationReport report)
      : Error(what + ": " + report.summary(3)), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace ncanon
