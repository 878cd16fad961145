#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace stopgame {

/// Exact rational scalar. Thin value wrapper over GMP's mpq_class that adds
/// parsing of "a/b" and decimal strings, canonical formatting, and hashing.
/// All game values, probabilities and grid times are stored as Rat; double
/// is derived from it only in float mode.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor) scalar literal
  Rat(int n) : v_(n) {}   // NOLINT(google-explicit-constructor)
  Rat(long n, long d);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Exact value of a double (binary expansion, no decimal rounding).
  static Rat from_double_exact(double x);

  /// Accepts "a/b", integers and plain decimals ("-3/4", "7", "0.25", "1e-3"
  /// is NOT accepted). Returns nullopt on malformed input.
  static std::optional<Rat> parse(std::string_view text);

  double to_double() const { return v_.get_d(); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// "a/b", or just "a" when the denominator is 1.
  std::string str() const;
  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  const mpq_class& raw() const { return v_; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

Rat abs(const Rat& r);
// By value: returning a reference would dangle when called on temporaries.
inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

std::size_t hash_value(const Rat& r);

}  // namespace stopgame

template <>
struct std::hash<stopgame::Rat> {
  std::size_t operator()(const stopgame::Rat& r) const noexcept {
    return stopgame::hash_value(r);
  }
};
