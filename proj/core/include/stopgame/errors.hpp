#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace stopgame {

/// Malformed input data: space specs violating invariants, payoff tables with
/// holes, non-adapted stopping labels, maps that are not total. Carries the
/// offending node id when one exists.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what,
                           std::optional<int> node_id = std::nullopt)
      : std::runtime_error(what), node_id_(node_id) {}
  std::optional<int> node_id() const { return node_id_; }

 private:
  std::optional<int> node_id_;
};

/// An enumeration would exceed its configured cap. Never silently sampled.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : std::runtime_error(what), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Closed-loop Dynkin solve called with lower > upper somewhere; the caller
/// should fall back to dynkin_open_loop, which has no ordering requirement.
class OrderingViolationError : public std::runtime_error {
 public:
  OrderingViolationError(const std::string& what, int node_id)
      : std::runtime_error(what), node_id_(node_id) {}
  int node_id() const { return node_id_; }

 private:
  int node_id_;
};

/// Fixed-point iteration hit its cap. Carries the last residual as text.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::string residual)
      : std::runtime_error(what), residual_(std::move(residual)) {}
  const std::string& residual() const { return residual_; }

 private:
  std::string residual_;
};

}  // namespace stopgame
