#ifndef DQRA_ERROR_HPP_
#define DQRA_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dqra {

// Every failure the library reports deliberately goes through one of these.
// Error::kind() lets callers branch without parsing messages.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Dimension,      // mixed carrier sizes
    Containment,    // argument not inside the required ambient relation
    Validation,     // malformed input (not a poset, not an equivalence, ...)
    Capacity,       // enumeration exceeded a configured cap
    Domain,         // argument outside an operation's domain (non-bijection, even period, ...)
    Build,          // a construction hypothesis failed; see BuildError
    NonCarrier,     // relation is not an element of the algebra's carrier
    Unresiduated,   // residual tables requested but fusion is not residuated
    NotInvolutive,  // tilde/minus are not mutually inverse, so the notion is undefined
    Io,             // file or JSON problems
  };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class CapacityError : public Error {
 public:
  CapacityError(const std::string& msg, std::size_t lower_bound)
      : Error(Kind::Capacity, msg), lower_bound_(lower_bound) {}
  // How many elements were enumerated before giving up; the true count is >= this.
  std::size_t lower_bound() const noexcept { return lower_bound_; }

 private:
  std::size_t lower_bound_;
};

// Named hypotheses of the algebra construction.  The names appear verbatim in
// error messages and are stable (tests and CLI output rely on them).
enum class BuildFault {
  NotOrderAutomorphism,
  BetaNotSelfInverse,
  BetaNotDualAutomorphism,
  GammaNotInsideE,
  AbaConditionFailed,
  CarrierCapExceeded,
};

const char* build_fault_name(BuildFault f);

class BuildError : public Error {
 public:
  BuildError(BuildFault fault, const std::string& detail);
  BuildFault fault() const noexcept { return fault_; }

 private:
  BuildFault fault_;
};

}  // namespace dqra

#endif  // DQRA_ERROR_HPP_
