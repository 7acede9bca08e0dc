#pragma once

#include <stdexcept>
#include <string>

namespace rydberg {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Which end of a semi-infinite integral fails to converge.
enum class Endpoint { origin, infinity };

/// The requested integral does not converge for the given parameters.
class divergence_error : public domain_error {
public:
  divergence_error(const std::string& what, Endpoint where)
      : domain_error(what), endpoint_(where) {}
  Endpoint endpoint() const noexcept { return endpoint_; }

private:
  Endpoint endpoint_;
};

/// A closed-form constant hits a Gamma pole; the parameters sit on a regime
/// boundary and the transition-regime formula must be used instead.
class regime_boundary_error : public domain_error {
public:
  using domain_error::domain_error;
};

}  // namespace rydberg
