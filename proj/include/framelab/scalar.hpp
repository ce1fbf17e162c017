#pragma once

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "framelab/errors.hpp"

namespace framelab {

using BigInt = boost::multiprecision::cpp_int;
/// Arbitrary precision rational; boost keeps it in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw Error(ErrorKind::division_by_zero, "rational with zero denominator");
  if (den < 0) return Rational(-BigInt(num), -BigInt(den));
  return Rational(BigInt(num), BigInt(den));
}

/// Largest r with r^k <= n, for n >= 0.
inline BigInt integer_root(const BigInt& n, unsigned k) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "integer_root of a negative number");
  if (n < 2 || k == 1) return n;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  BigInt x = BigInt(1) << ((bits + k - 1) / k);
  while (true) {
    BigInt y = ((k - 1) * x + n / boost::multiprecision::pow(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  while (boost::multiprecision::pow(x, k) > n) --x;
  while (boost::multiprecision::pow(x + 1, k) <= n) ++x;
  return x;
}

/// Exact k-th root of a nonnegative rational when one exists.
inline std::optional<Rational> exact_root(const Rational& value, unsigned k) {
  if (value < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  const BigInt rn = integer_root(num, k);
  if (boost::multiprecision::pow(rn, k) != num) return std::nullopt;
  const BigInt rd = integer_root(den, k);
  if (boost::multiprecision::pow(rd, k) != den) return std::nullopt;
  return Rational(rn, rd);
}

/// Parses "p/q" or "p" into a rational. Whitespace is not accepted.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  auto to_bigint = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer(text)) return std::nullopt;
    return Rational(to_bigint(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+') return std::nullopt;
  BigInt d = to_bigint(den);
  if (d == 0) return std::nullopt;
  return Rational(to_bigint(num), d);
}

inline std::string rational_to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// A real number that is either an exact rational or a double.
///
/// Arithmetic between two exact values stays exact; as soon as a double takes
/// part the result is a double. There is no way back from float to exact.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Scalar(I i) : value_(Rational(static_cast<long long>(i))) {}  // NOLINT
  template <std::floating_point F>
  Scalar(F d) : value_(static_cast<double>(d)) {}  // NOLINT

  static Scalar ratio(long long num, long long den) { return Scalar(make_rational(num, den)); }

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const { return std::get<Rational>(value_); }

  double to_double() const {
    if (is_exact()) return framelab::to_double(exact());
    return std::get<double>(value_);
  }

  Scalar to_float() const { return Scalar(to_double()); }

  bool is_zero() const { return is_exact() ? exact() == 0 : std::get<double>(value_) == 0.0; }

  int sign() const {
    if (is_exact()) return exact() > 0 ? 1 : (exact() < 0 ? -1 : 0);
    const double d = std::get<double>(value_);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
  }

  Scalar operator-() const {
    if (is_exact()) return Scalar(Rational(-exact()));
    return Scalar(-std::get<double>(value_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() + b.exact()));
    return Scalar(a.to_double() + b.to_double());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() - b.exact()));
    return Scalar(a.to_double() - b.to_double());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.exact() * b.exact()));
    return Scalar(a.to_double() * b.to_double());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
      if (b.exact() == 0) throw Error(ErrorKind::division_by_zero, "exact division by zero");
      return Scalar(Rational(a.exact() / b.exact()));
    }
    return Scalar(a.to_double() / b.to_double());
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Exact comparison when both sides are exact, double comparison otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return a.to_double() == b.to_double();
  }
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
      if (a.exact() < b.exact()) return std::partial_ordering::less;
      if (a.exact() > b.exact()) return std::partial_ordering::greater;
      return std::partial_ordering::equivalent;
    }
    return a.to_double() <=> b.to_double();
  }

  /// Machine form: "p/q" for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const {
    if (is_exact()) return rational_to_string(exact());
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(value_);
    return os.str();
  }

  /// Human form: integers without "/1", floats with 12 significant digits.
  std::string pretty() const {
    if (is_exact()) {
      if (boost::multiprecision::denominator(exact()) == 1) {
        return boost::multiprecision::numerator(exact()).str();
      }
      return rational_to_string(exact());
    }
    std::ostringstream os;
    os.precision(12);
    os << std::get<double>(value_);
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.pretty(); }

 private:
  std::variant<Rational, double> value_;
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

inline Scalar pow(const Scalar& base, int exponent) {
  if (base.is_exact()) {
    if (exponent < 0) {
      if (base.exact() == 0) throw Error(ErrorKind::division_by_zero, "zero to a negative power");
      const Rational inv = 1 / base.exact();
      return Scalar(Rational(boost::multiprecision::pow(boost::multiprecision::numerator(inv), -exponent) /
                             boost::multiprecision::pow(boost::multiprecision::denominator(inv), -exponent)));
    }
    const auto e = static_cast<unsigned>(exponent);
    return Scalar(Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base.exact()), e),
                           boost::multiprecision::pow(boost::multiprecision::denominator(base.exact()), e)));
  }
  return Scalar(std::pow(base.to_double(), exponent));
}

/// Parses "p/q" / "p" as exact, anything else std::stod accepts as a double.
inline std::optional<Scalar> parse_scalar(std::string_view text) {
  if (auto r = parse_rational(text)) return Scalar(*r);
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double d = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return Scalar(d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace framelab
