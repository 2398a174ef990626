#ifndef MOTZKIN_LOG_WEIGHT_HPP
#define MOTZKIN_LOG_WEIGHT_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <span>

namespace motzkin {

/// A nonnegative magnitude stored as its natural logarithm.
///
/// Weights of area-weighted walks span t^{O(n^2)}, far outside the range of a
/// double, so every product and sum of magnitudes is carried out here.
/// Magnitude zero is represented by log_value == -inf.
class LogWeight {
 public:
  constexpr LogWeight() = default;

  static constexpr LogWeight zero() { return LogWeight(-std::numeric_limits<double>::infinity()); }
  static constexpr LogWeight one() { return LogWeight(0.0); }
  static constexpr LogWeight from_log(double log_value) { return LogWeight(log_value); }
  static LogWeight from_value(double value) { return LogWeight(std::log(value)); }

  constexpr double log() const { return log_value_; }
  double value() const { return std::exp(log_value_); }
  constexpr bool is_zero() const { return log_value_ == -std::numeric_limits<double>::infinity(); }

  constexpr LogWeight operator*(LogWeight other) const { return LogWeight(log_value_ + other.log_value_); }
  constexpr LogWeight operator/(LogWeight other) const { return LogWeight(log_value_ - other.log_value_); }
  LogWeight &operator*=(LogWeight other) {
    log_value_ += other.log_value_;
    return *this;
  }

  LogWeight operator+(LogWeight other) const {
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    const double hi = std::max(log_value_, other.log_value_);
    const double lo = std::min(log_value_, other.log_value_);
    return LogWeight(hi + std::log1p(std::exp(lo - hi)));
  }
  LogWeight &operator+=(LogWeight other) { return *this = *this + other; }

  /// Raise the magnitude to a real power; zero stays zero for positive powers.
  LogWeight pow(double exponent) const {
    if (is_zero()) return *this;
    return LogWeight(log_value_ * exponent);
  }

  constexpr auto operator<=>(const LogWeight &) const = default;

 private:
  constexpr explicit LogWeight(double log_value) : log_value_(log_value) {}

  double log_value_ = -std::numeric_limits<double>::infinity();
};

/// log(sum_i exp(x_i)) anchored at the maximum term. Returns -inf for an
/// empty span or when every term is -inf.
inline double log_sum_exp(std::span<const double> logs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : logs) hi = std::max(hi, x);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  double acc = 0.0;
  for (double x : logs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

inline LogWeight sum(std::span<const LogWeight> terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (auto w : terms) hi = std::max(hi, w.log());
  if (hi == -std::numeric_limits<double>::infinity()) return LogWeight::zero();
  double acc = 0.0;
  for (auto w : terms) acc += std::exp(w.log() - hi);
  return LogWeight::from_log(hi + std::log(acc));
}

}  // namespace motzkin

#endif  // MOTZKIN_LOG_WEIGHT_HPP
