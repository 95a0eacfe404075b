#ifndef PROJCONE_ERRORS_HPP
#define PROJCONE_ERRORS_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>

namespace projcone {

/// Malformed or out-of-contract input (bad dimensions, indices, documents).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller violated a stated operation precondition (e.g. a non-trace-free
/// representative fed to the Weyl/Cotton formulas).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Refusal to build a developing map on a non-flat cone. Carries the witness
/// point and curvature magnitude that broke the flatness gate.
class FlatnessError : public std::runtime_error {
 public:
  FlatnessError(const std::string& msg, Eigen::VectorXd witness, double magnitude)
      : std::runtime_error(msg), witness_(std::move(witness)), magnitude_(magnitude) {}

  const Eigen::VectorXd& witness() const { return witness_; }
  double magnitude() const { return magnitude_; }

 private:
  Eigen::VectorXd witness_;
  double magnitude_;
};

}  // namespace projcone

#endif
