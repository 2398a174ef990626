#ifndef MOTZKIN_WALKS_HPP
#define MOTZKIN_WALKS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace motzkin {

enum class StepKind : std::uint8_t { Flat, Up, Down };

/// One site of a colored Motzkin walk. Up is the spin state l^k, Down is r^k.
struct Step {
  StepKind kind = StepKind::Flat;
  int color = 0;  // 1..s for Up/Down, 0 for Flat

  static constexpr Step flat() { return {StepKind::Flat, 0}; }
  static constexpr Step up(int color = 1) { return {StepKind::Up, color}; }
  static constexpr Step down(int color = 1) { return {StepKind::Down, color}; }

  constexpr int delta() const { return kind == StepKind::Up ? 1 : kind == StepKind::Down ? -1 : 0; }

  /// Local basis digit: 0 -> 0, l^k -> k, r^k -> s + k.
  constexpr int digit(int s) const { return kind == StepKind::Flat ? 0 : kind == StepKind::Up ? color : s + color; }
  static constexpr Step from_digit(int digit, int s) {
    if (digit == 0) return flat();
    if (digit <= s) return up(digit);
    return down(digit - s);
  }

  friend constexpr bool operator==(Step, Step) = default;
};

/// A sequence of colored steps over an alphabet of s colors. Validity is not
/// enforced on construction; see is_valid.
class ColoredWalk {
 public:
  ColoredWalk() = default;
  ColoredWalk(std::vector<Step> steps, int s);

  /// Parse the token form: '0', 'l<k>', 'r<k>' separated by spaces, with k
  /// omitted when s == 1 (so "l0r" and "l 0 r" are the same walk).
  static ColoredWalk parse(std::string_view text, int s = 1);

  std::string to_string() const;

  const std::vector<Step> &steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  int colors() const { return s_; }
  const Step &operator[](std::size_t i) const { return steps_[i]; }

  /// Height after the full walk.
  int final_height() const;

  friend bool operator==(const ColoredWalk &, const ColoredWalk &) = default;

 private:
  std::vector<Step> steps_;
  int s_ = 1;
};

/// Area under a walk, stored exactly as twice its value.
struct AreaValue {
  long long twice = 0;
  double value() const { return 0.5 * static_cast<double>(twice); }
  friend constexpr auto operator<=>(AreaValue, AreaValue) = default;
};

/// Height never negative, Down colors match the innermost open Up, and final
/// height zero when require_complete.
bool is_valid(const ColoredWalk &walk, bool require_complete);

/// Trapezoid area summed over steps. Throws std::invalid_argument on an
/// invalid half-walk.
AreaValue area(const ColoredWalk &walk);

struct Pairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (up, down), by up index
  std::vector<std::size_t> unmatched_up;                   // left to right
};

Pairing matched_pairs(const ColoredWalk &walk);

inline constexpr int kDefaultEnumerationCap = 14;

/// Visit every valid colored walk of the given length ending at end_height,
/// in lexicographic order of the digit encoding. Throws std::length_error if
/// length exceeds cap.
void for_each_walk(int length, int s, int end_height, const std::function<void(const ColoredWalk &)> &visit,
                   int cap = kDefaultEnumerationCap);

std::vector<ColoredWalk> enumerate_walks(int length, int s, int end_height, int cap = kDefaultEnumerationCap);

/// Mixed-radix little-endian basis index over local dimension 2s+1.
std::size_t basis_index(const ColoredWalk &walk);

}  // namespace motzkin

#endif  // MOTZKIN_WALKS_HPP
