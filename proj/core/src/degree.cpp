#include "fuzzydl/degree.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fdl {

Degree::Degree(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("degree with zero denominator");
  value_ = Rep(numerator, denominator);
}

namespace {

std::optional<std::int64_t> parse_digits(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return out;
}

}  // namespace

std::optional<Degree> Degree::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  std::optional<Degree> result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_digits(text.substr(0, slash));
    auto den = parse_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    result = Degree(*num, *den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole_text = text.substr(0, dot);
    auto frac_text = text.substr(dot + 1);
    if (frac_text.empty() || frac_text.size() > 17) return std::nullopt;
    auto whole = whole_text.empty() ? std::optional<std::int64_t>(0) : parse_digits(whole_text);
    auto frac = parse_digits(frac_text);
    if (!whole || !frac) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
    if (*whole > std::numeric_limits<std::int64_t>::max() / scale - 1) return std::nullopt;
    result = Degree(*whole * scale + *frac, scale);
  } else {
    auto whole = parse_digits(text);
    if (!whole) return std::nullopt;
    result = Degree(*whole);
  }
  if (negative) result = Degree::zero() - *result;
  return result;
}

std::string Degree::to_string() const {
  std::int64_t num = value_.numerator();
  std::int64_t den = value_.denominator();
  std::string sign = num < 0 ? "-" : "";
  std::uint64_t abs_num = num < 0 ? static_cast<std::uint64_t>(-(num + 1)) + 1 : static_cast<std::uint64_t>(num);
  auto uden = static_cast<std::uint64_t>(den);

  std::uint64_t rest = uden;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return sign + std::to_string(abs_num) + "/" + std::to_string(uden);

  std::uint64_t whole = abs_num / uden;
  std::uint64_t frac = abs_num % uden;
  if (frac == 0) return sign + std::to_string(whole);

  int digits = std::max(twos, fives);
  std::string out = sign + std::to_string(whole) + ".";
  for (int i = 0; i < digits; ++i) {
    frac *= 10;
    out += static_cast<char>('0' + frac / uden);
    frac %= uden;
  }
  return out;
}

double Degree::to_double() const {
  return static_cast<double>(value_.numerator()) / static_cast<double>(value_.denominator());
}

std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ == b.value_) return std::strong_ordering::equal;
  return std::strong_ordering::greater;
}

std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.to_string(); }

Degree neg_lukasiewicz(const Degree& d) { return Degree::one() - d; }
Degree tnorm_min(const Degree& a, const Degree& b) { return a < b ? a : b; }
Degree tconorm_max(const Degree& a, const Degree& b) { return a < b ? b : a; }
Degree impl_kd(const Degree& a, const Degree& b) { return tconorm_max(neg_lukasiewicz(a), b); }

Ineq reflect(Ineq k) {
  switch (k) {
    case Ineq::Ge: return Ineq::Le;
    case Ineq::Gt: return Ineq::Lt;
    case Ineq::Le: return Ineq::Ge;
    case Ineq::Lt: return Ineq::Gt;
  }
  return k;
}

Ineq negate(Ineq k) {
  switch (k) {
    case Ineq::Ge: return Ineq::Lt;
    case Ineq::Gt: return Ineq::Le;
    case Ineq::Le: return Ineq::Gt;
    case Ineq::Lt: return Ineq::Ge;
  }
  return k;
}

bool is_positive(Ineq k) { return k == Ineq::Ge || k == Ineq::Gt; }
bool is_strict(Ineq k) { return k == Ineq::Gt || k == Ineq::Lt; }

std::string_view symbol(Ineq k) {
  switch (k) {
    case Ineq::Ge: return ">=";
    case Ineq::Gt: return ">";
    case Ineq::Le: return "<=";
    case Ineq::Lt: return "<";
  }
  return "?";
}

std::optional<Ineq> parse_ineq(std::string_view text) {
  if (text == ">=") return Ineq::Ge;
  if (text == ">") return Ineq::Gt;
  if (text == "<=") return Ineq::Le;
  if (text == "<") return Ineq::Lt;
  return std::nullopt;
}

bool holds(Ineq k, const Degree& value, const Degree& bound) {
  switch (k) {
    case Ineq::Ge: return value >= bound;
    case Ineq::Gt: return value > bound;
    case Ineq::Le: return value <= bound;
    case Ineq::Lt: return value < bound;
  }
  return false;
}

std::string SignedBound::to_string() const {
  return std::string(symbol(ineq)) + " " + degree.to_string();
}

bool trivially_true(const SignedBound& b) {
  return (b.ineq == Ineq::Ge && b.degree <= Degree::zero()) || (b.ineq == Ineq::Le && b.degree >= Degree::one());
}

bool implies(const SignedBound& a, const SignedBound& b) {
  return trivially_true(b) || conjugates(a, {negate(b.ineq), b.degree});
}

bool conjugates(const SignedBound& a, const SignedBound& b) {
  if (is_positive(a.ineq) == is_positive(b.ineq)) return false;
  const SignedBound& pos = is_positive(a.ineq) ? a : b;
  const SignedBound& neg = is_positive(a.ineq) ? b : a;
  const Degree& n = pos.degree;
  const Degree& m = neg.degree;
  if (pos.ineq == Ineq::Ge && neg.ineq == Ineq::Le) return n > m;
  return n >= m;
}

}  // namespace fdl
