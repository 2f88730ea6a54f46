#pragma once

#include <stdexcept>
#include <string>

namespace bellsq {

// A point or state lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An improper integral does not converge for the given payoff/strip width.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_tolerance() const { return achieved_; }

 private:
  double achieved_;
};

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A martingale tree (or a chain construction) breaks the splitting rules.
class InvalidTreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellsq
