#include "motzkin/walks.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace motzkin {

ColoredWalk::ColoredWalk(std::vector<Step> steps, int s) : steps_(std::move(steps)), s_(s) {
  if (s < 1) throw std::invalid_argument("ColoredWalk: number of colors must be >= 1");
  for (const auto &step : steps_) {
    if (step.kind == StepKind::Flat ? step.color != 0 : (step.color < 1 || step.color > s))
      throw std::invalid_argument("ColoredWalk: malformed step color " + std::to_string(step.color));
  }
}

ColoredWalk ColoredWalk::parse(std::string_view text, int s) {
  std::vector<Step> steps;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '0') {
      steps.push_back(Step::flat());
      ++i;
      continue;
    }
    if (c != 'l' && c != 'r') throw std::invalid_argument("ColoredWalk::parse: unexpected character '" + std::string(1, c) + "'");
    ++i;
    int color = 1;
    if (s == 1) {
      if (i < text.size() && text[i] == '1') ++i;
    } else {
      std::size_t start = i;
      color = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) color = color * 10 + (text[i++] - '0');
      if (i == start) throw std::invalid_argument("ColoredWalk::parse: missing color after '" + std::string(1, c) + "'");
    }
    steps.push_back(c == 'l' ? Step::up(color) : Step::down(color));
  }
  return ColoredWalk(std::move(steps), s);
}

std::string ColoredWalk::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i > 0) out += ' ';
    const auto &step = steps_[i];
    if (step.kind == StepKind::Flat) {
      out += '0';
      continue;
    }
    out += step.kind == StepKind::Up ? 'l' : 'r';
    if (s_ > 1) out += std::to_string(step.color);
  }
  return out;
}

int ColoredWalk::final_height() const {
  int h = 0;
  for (const auto &step : steps_) h += step.delta();
  return h;
}

bool is_valid(const ColoredWalk &walk, bool require_complete) {
  std::vector<int> open;
  for (const auto &step : walk.steps()) {
    if (step.kind == StepKind::Up) {
      open.push_back(step.color);
    } else if (step.kind == StepKind::Down) {
      if (open.empty() || open.back() != step.color) return false;
      open.pop_back();
    }
  }
  return !require_complete || open.empty();
}

AreaValue area(const ColoredWalk &walk) {
  if (!is_valid(walk, false)) throw std::invalid_argument("area: invalid walk '" + walk.to_string() + "'");
  AreaValue a;
  int h = 0;
  for (const auto &step : walk.steps()) {
    const int next = h + step.delta();
    a.twice += h + next;
    h = next;
  }
  return a;
}

Pairing matched_pairs(const ColoredWalk &walk) {
  if (!is_valid(walk, false)) throw std::invalid_argument("matched_pairs: invalid walk '" + walk.to_string() + "'");
  Pairing result;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto kind = walk[i].kind;
    if (kind == StepKind::Up) {
      open.push_back(i);
    } else if (kind == StepKind::Down) {
      result.pairs.emplace_back(open.back(), i);
      open.pop_back();
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.unmatched_up = std::move(open);
  return result;
}

namespace {

struct Enumerator {
  int length;
  int s;
  int end_height;
  const std::function<void(const ColoredWalk &)> &visit;
  std::vector<Step> steps;
  std::vector<int> open;

  void run(int pos) {
    const int h = static_cast<int>(open.size());
    if (pos == length) {
      if (h == end_height) visit(ColoredWalk(steps, s));
      return;
    }
    const int remaining = length - pos - 1;
    auto reachable = [&](int next_h) { return std::abs(next_h - end_height) <= remaining; };

    // Digit order: 0 < l^1..l^s < r^1..r^s.
    if (reachable(h)) {
      steps.push_back(Step::flat());
      run(pos + 1);
      steps.pop_back();
    }
    if (reachable(h + 1)) {
      for (int k = 1; k <= s; ++k) {
        steps.push_back(Step::up(k));
        open.push_back(k);
        run(pos + 1);
        open.pop_back();
        steps.pop_back();
      }
    }
    if (h > 0 && reachable(h - 1)) {
      const int k = open.back();
      steps.push_back(Step::down(k));
      open.pop_back();
      run(pos + 1);
      open.push_back(k);
      steps.pop_back();
    }
  }
};

}  // namespace

void for_each_walk(int length, int s, int end_height, const std::function<void(const ColoredWalk &)> &visit, int cap) {
  if (length < 0 || s < 1 || end_height < 0) throw std::invalid_argument("enumerate_walks: bad arguments");
  if (length > cap)
    throw std::length_error("enumerate_walks: length " + std::to_string(length) + " exceeds cap " + std::to_string(cap));
  Enumerator e{length, s, end_height, visit, {}, {}};
  e.steps.reserve(static_cast<std::size_t>(length));
  e.run(0);
}

std::vector<ColoredWalk> enumerate_walks(int length, int s, int end_height, int cap) {
  std::vector<ColoredWalk> out;
  for_each_walk(length, s, end_height, [&](const ColoredWalk &w) { out.push_back(w); }, cap);
  return out;
}

std::size_t basis_index(const ColoredWalk &walk) {
  const std::size_t d = 2 * static_cast<std::size_t>(walk.colors()) + 1;
  std::size_t index = 0;
  std::size_t stride = 1;
  for (const auto &step : walk.steps()) {
    index += stride * static_cast<std::size_t>(step.digit(walk.colors()));
    stride *= d;
  }
  return index;
}

}  // namespace motzkin
