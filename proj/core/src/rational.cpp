#include "stopgame/rational.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "stopgame/scalar.hpp"

namespace stopgame {

Rat::Rat(long n, long d) {
  if (d == 0) throw std::invalid_argument("Rat: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.v_ == 0) throw std::invalid_argument("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::from_double_exact(double x) {
  mpq_class q;
  q = x;  // exact binary conversion
  return Rat(std::move(q));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpq_class make_mpq(const mpz_class& num, const mpz_class& den) {
  mpq_class q;
  mpz_set(mpq_numref(q.get_mpq_t()), num.get_mpz_t());
  mpz_set(mpq_denref(q.get_mpq_t()), den.get_mpz_t());
  q.canonicalize();
  return q;
}

}  // namespace

std::optional<Rat> Rat::parse(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;

  auto slash = s.find('/');
  auto dot = s.find('.');
  mpq_class value;
  if (slash != std::string_view::npos) {
    if (dot != std::string_view::npos) return std::nullopt;
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d{std::string(den)};
    if (d == 0) return std::nullopt;
    value = make_mpq(mpz_class{std::string(num)}, d);
  } else if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class{std::string(ip)};
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class{std::string(fp)};
    value = make_mpq(whole * scale + frac, scale);
  } else {
    if (!all_digits(s)) return std::nullopt;
    value = mpq_class(mpz_class{std::string(s)});
  }
  value.canonicalize();
  if (neg) value = -value;
  return Rat(std::move(value));
}

std::string Rat::str() const {
  if (is_integer()) return num_str();
  return num_str() + "/" + den_str();
}

Rat abs(const Rat& r) { return r < Rat(0) ? -r : r; }

template <>
std::string scalar_str<Rat>(const Rat& x) {
  return x.str();
}

template <>
std::string scalar_str<double>(const double& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t hash_value(const Rat& r) {
  // FNV-1a over the canonical "num/den" text; rationals are always canonical.
  std::string repr = r.str();
  std::size_t h = 1469598103934665603ull;
  for (char c : repr) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace stopgame
