#pragma once

#include <stdexcept>
#include <string>

namespace polya_pila {

/// A caller violated a documented precondition (degree, k < d, square-freeness, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A certified bound failed. Carries a JSON reproduction bundle.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(const std::string& what, std::string bundle)
      : std::runtime_error(what), bundle_(std::move(bundle)) {}
  const std::string& bundle() const noexcept { return bundle_; }

 private:
  std::string bundle_;
};

/// A desk-scale guardrail refused the request (H, k or d too large without --force).
class GuardrailError : public std::runtime_error {
 public:
  explicit GuardrailError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polya_pila
