// Exact truth degrees and the inequality algebra used by fuzzy assertions.
#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace fdl {

class Degree {
 public:
  using Rep = boost::rational<std::int64_t>;

  constexpr Degree() = default;
  Degree(std::int64_t numerator, std::int64_t denominator);
  explicit Degree(std::int64_t whole) : value_(whole) {}
  explicit Degree(Rep value) : value_(value) {}

  static Degree zero() { return Degree(0); }
  static Degree half() { return Degree(1, 2); }
  static Degree one() { return Degree(1); }

  // Accepts "0.75", "3/4", "1", "-0.125". Returns nullopt on malformed text.
  static std::optional<Degree> parse(std::string_view text);

  const Rep& value() const { return value_; }
  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }

  // Shortest exact rendering: a terminating decimal when one exists, else p/q.
  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const Degree& a, const Degree& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b);

  friend Degree operator+(const Degree& a, const Degree& b) { return Degree(a.value_ + b.value_); }
  friend Degree operator-(const Degree& a, const Degree& b) { return Degree(a.value_ - b.value_); }
  friend Degree operator*(const Degree& a, const Degree& b) { return Degree(a.value_ * b.value_); }
  friend Degree operator/(const Degree& a, const Degree& b) { return Degree(a.value_ / b.value_); }

 private:
  Rep value_{0};
};

std::ostream& operator<<(std::ostream& os, const Degree& d);

// Lukasiewicz complement 1 - d.
Degree neg_lukasiewicz(const Degree& d);
Degree tnorm_min(const Degree& a, const Degree& b);
Degree tconorm_max(const Degree& a, const Degree& b);
// Kleene-Dienes implication max(1 - a, b).
Degree impl_kd(const Degree& a, const Degree& b);

enum class Ineq : std::uint8_t { Ge, Gt, Le, Lt };

// >= <-> <=, > <-> <
Ineq reflect(Ineq k);
// >= <-> <, > <-> <=
Ineq negate(Ineq k);
bool is_positive(Ineq k);
inline bool is_negative(Ineq k) { return !is_positive(k); }
bool is_strict(Ineq k);
std::string_view symbol(Ineq k);
std::optional<Ineq> parse_ineq(std::string_view text);

// value ⋈ bound
bool holds(Ineq k, const Degree& value, const Degree& bound);

struct SignedBound {
  Ineq ineq = Ineq::Ge;
  Degree degree;

  friend bool operator==(const SignedBound&, const SignedBound&) = default;
  friend auto operator<=>(const SignedBound& a, const SignedBound& b) {
    if (auto c = a.ineq <=> b.ineq; c != 0) return c;
    return a.degree <=> b.degree;
  }
  std::string to_string() const;
};

// True when no degree can satisfy both bounds.
bool conjugates(const SignedBound& a, const SignedBound& b);

// True when every degree in [0, 1] satisfies the bound.
bool trivially_true(const SignedBound& b);

// True when every degree satisfying a also satisfies b.
bool implies(const SignedBound& a, const SignedBound& b);

}  // namespace fdl

template <>
struct std::hash<fdl::Degree> {
  std::size_t operator()(const fdl::Degree& d) const noexcept {
    auto h = std::hash<std::int64_t>{}(d.numerator());
    return h ^ (std::hash<std::int64_t>{}(d.denominator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
