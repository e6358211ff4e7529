// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_ERRORS_HPP
#define CUF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cuf {

struct ModelMismatch : std::invalid_argument {
  explicit ModelMismatch(const std::string& what) : std::invalid_argument("ModelMismatch: " + what) {}
};

struct NotMonotone : std::runtime_error {
  explicit NotMonotone(const std::string& what) : std::runtime_error("NotMonotone: " + what) {}
};

struct UnsupportedChainForm : std::runtime_error {
  explicit UnsupportedChainForm(const std::string& what) : std::runtime_error("UnsupportedChainForm: " + what) {}
};

struct NoWitnessFound : std::runtime_error {
  explicit NoWitnessFound(const std::string& what) : std::runtime_error("NoWitnessFound: " + what) {}
};

struct NotADivisor : std::invalid_argument {
  explicit NotADivisor(const std::string& what) : std::invalid_argument("NotADivisor: " + what) {}
};

struct SoftnessViolated : std::runtime_error {
  explicit SoftnessViolated(const std::string& what) : std::runtime_error("SoftnessViolated: " + what) {}
};

struct PreconditionViolated : std::invalid_argument {
  explicit PreconditionViolated(const std::string& what) : std::invalid_argument("PreconditionViolated: " + what) {}
};

struct UniquenessViolated : std::runtime_error {
  explicit UniquenessViolated(const std::string& what) : std::runtime_error("UniquenessViolated: " + what) {}
};

}  // namespace cuf

#endif
