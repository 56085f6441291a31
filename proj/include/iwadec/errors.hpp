#pragma once

#include <stdexcept>
#include <string>

namespace iwadec {

/// Input that cannot be parsed or violates a structural invariant.
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size bound (subgroup cap, matrix cap, Dixon prime search) was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// An identity that must hold exactly did not. Never downgraded to a warning.
class InternalConsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value failed a checked precondition (e.g. a non-idempotent).
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace iwadec
