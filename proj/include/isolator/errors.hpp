#ifndef ISOLATOR_ERRORS_HPP
#define ISOLATOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isolator {

// Linear solve hit a pivot below the singularity threshold. For the model
// systems this signals a non-unique steady state (dark-state trapping).
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Drift matrix has a non-decaying mode; steady state / resolvent undefined.
class UnstableSystemError : public std::runtime_error {
 public:
  explicit UnstableSystemError(const std::string& what) : std::runtime_error(what) {}
};

class DivergedError : public std::runtime_error {
 public:
  explicit DivergedError(const std::string& what) : std::runtime_error(what) {}
};

class NoSignChangeError : public std::runtime_error {
 public:
  explicit NoSignChangeError(const std::string& what) : std::runtime_error(what) {}
};

class MaxDepthError : public std::runtime_error {
 public:
  explicit MaxDepthError(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isolator

#endif  // ISOLATOR_ERRORS_HPP
