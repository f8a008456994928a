#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gaugeworks {

/// A mathematical law failed to hold for the supplied data. The message
/// quotes the law, e.g. "ut = tu = p failed at index 3".
class LawViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation called outside its domain (non-honest filtration where gr is
/// needed, window not containing 0, ...).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Objects built over different primes were combined.
class ContextMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rational literal, matrix shape).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Every violated law of a structure, in the order checked.
struct LawReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  /// Throws LawViolation listing the violations, prefixed by what.
  void require(const std::string& what) const {
    if (ok()) return;
    std::string msg = what + ": invalid data";
    for (const auto& v : violations) msg += "; " + v;
    throw LawViolation(msg);
  }
};

}  // namespace gaugeworks
