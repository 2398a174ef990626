#include "motzkin/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "motzkin/format.hpp"

namespace motzkin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sector weights below this contribute nothing to the entropy.
constexpr double kEntropyFloor = 1e-300;

inline double lse3(double a, double b, double c) {
  const double hi = std::max({a, b, c});
  if (hi == kNegInf) return hi;
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi) + std::exp(c - hi));
}

void check_params(int s, double t) {
  if (s < 1) throw std::invalid_argument("number of colors s must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
}

}  // namespace

double SchmidtProfile::sector_weight(int m) const {
  if (m < 0 || m > n) return 0.0;
  return std::exp(m * std::log(static_cast<double>(s)) + log_p[m]);
}

double SchmidtProfile::normalization() const {
  double total = 0.0;
  for (int m = 0; m <= n; ++m) total += sector_weight(m);
  return total;
}

SchmidtProfile seed_profile(int s, double t) {
  check_params(s, t);
  SchmidtProfile p;
  p.n = 0;
  p.s = s;
  p.t = t;
  p.log_m = {LogWeight::one()};
  finalize(p);
  return p;
}

void advance(SchmidtProfile &prof) {
  const int k = prof.n;
  const double lt = std::log(prof.t);
  const double ls = std::log(static_cast<double>(prof.s));
  const auto old = [&](int m) { return m >= 0 && m <= k ? prof.log_m[m].log() : kNegInf; };

  std::vector<LogWeight> next(static_cast<std::size_t>(k) + 2);
  for (int m = 0; m <= k + 1; ++m) {
    // Arriving at height m by a down step (closes a pair), a flat step, or an up step.
    const double from_above = ls + (m + 0.5) * lt + old(m + 1);
    const double from_level = m * lt + old(m);
    const double from_below = (m - 0.5) * lt + old(m - 1);
    next[m] = LogWeight::from_log(lse3(from_above, from_level, from_below));
  }
  prof.log_m = std::move(next);
  prof.n = k + 1;
}

SchmidtProfile recurrence_step(const SchmidtProfile &profile) {
  SchmidtProfile next = profile;
  advance(next);
  finalize(next);
  return next;
}

void finalize(SchmidtProfile &prof) {
  const double ls = std::log(static_cast<double>(prof.s));
  const auto size = static_cast<std::size_t>(prof.n) + 1;
  std::vector<double> terms(size);
  for (std::size_t m = 0; m < size; ++m) terms[m] = static_cast<double>(m) * ls + 2.0 * prof.log_m[m].log();
  const double log_norm = log_sum_exp(terms);
  prof.norm = LogWeight::from_log(log_norm);
  prof.log_p.resize(size);
  prof.p.resize(size);
  double entropy = 0.0;
  for (std::size_t m = 0; m < size; ++m) {
    const double log_p = 2.0 * prof.log_m[m].log() - log_norm;
    prof.log_p[m] = log_p;
    prof.p[m] = std::exp(log_p);
    const double sector = std::exp(terms[m] - log_norm);
    if (sector >= kEntropyFloor) entropy -= sector * log_p;
  }
  prof.entropy = entropy;
}

SchmidtProfile profile(int n, int s, double t) {
  check_params(s, t);
  if (n < 1) throw std::invalid_argument("half-chain length n must be >= 1");
  if (n > kMaxProfileN) throw std::length_error("half-chain length n exceeds " + std::to_string(kMaxProfileN));
  SchmidtProfile p = seed_profile(s, t);
  for (int i = 0; i < n; ++i) advance(p);
  finalize(p);
  return p;
}

SchmidtProfile ground_state_profile(int n, int s, double t) {
  check_params(s, t);
  return profile(n, s, t * t);
}

double entanglement_entropy(int n, int s, double t, bool base2) {
  const double nats = profile(n, s, t).entropy;
  return base2 ? nats / std::numbers::ln2 : nats;
}

int peak_height(const SchmidtProfile &prof, PeakMode mode) {
  const double ls = std::log(static_cast<double>(prof.s));
  int best = 0;
  double best_value = kNegInf;
  for (int m = 0; m <= prof.n; ++m) {
    const double v = mode == PeakMode::MaxM ? prof.log_m[m].log() : m * ls + prof.log_p[m];
    if (v >= best_value) {
      best_value = v;
      best = m;
    }
  }
  return best;
}

double peak_offset_n0(int s, double t) {
  check_params(s, t);
  if (!(t > 1.0)) throw std::domain_error("N0 is defined for t > 1");
  const double log_f = 3.0 * s * std::pow(t, 1.5) / (t * t - 1.0);
  if (log_f < std::log(std::numbers::phi)) return 0.0;
  // log(1/f + 1) / log f, with 1/f = exp(-log f) to stay finite as t -> 1.
  return -std::log(std::log1p(std::exp(-log_f)) / log_f) / std::log(t);
}

int tail_start_m0(int s, double t) {
  check_params(s, t);
  if (!(t < 1.0)) throw std::domain_error("m0 is defined for 0 < t < 1");
  return static_cast<int>(std::floor(std::log(t / (9.0 * std::numbers::e * s)) / (2.0 * std::log(t)))) + 1;
}

double entropy_bound_c(int s, double t) {
  const int m0 = tail_start_m0(s, t);
  const double t2 = t * t;
  const double lead = (m0 + 1) / std::numbers::e;
  const double tail = 9.0 * s * std::pow(t, 2 * m0 + 1) / (1.0 - t2) * std::log(9.0 * s / t);
  const double slope = 18.0 * s * std::pow(t, 2 * m0 + 2) * (m0 * (1.0 - t2) + 1.0) / ((t2 - 1.0) * (t2 - 1.0)) * std::log(t);
  const double colors = 9.0 * s * t / ((t2 - 1.0) * (t2 - 1.0)) * std::log(static_cast<double>(s));
  return lead - tail - slope + colors;
}

BoundsReport bounds(int n, int s, double t) {
  BoundsReport r;
  r.mstar = peak_height(profile(n, s, t));
  if (t > 1.0) {
    r.has_n0 = true;
    r.log_f = 3.0 * s * std::pow(t, 1.5) / (t * t - 1.0);
    r.n0 = peak_offset_n0(s, t);
  } else if (t < 1.0) {
    r.has_c = true;
    r.m0 = tail_start_m0(s, t);
    r.c = entropy_bound_c(s, t);
  }
  return r;
}

TildeProfile tilde_profile(const SchmidtProfile &prof) {
  const double half_ls = 0.5 * std::log(static_cast<double>(prof.s));
  TildeProfile tp;
  tp.n = prof.n;
  std::vector<double> sq(static_cast<std::size_t>(prof.n) + 1);
  for (int m = 0; m <= prof.n; ++m) {
    tp.log_mt.push_back(prof.log_m[m] * LogWeight::from_log(m * half_ls));
    sq[m] = 2.0 * tp.log_mt.back().log();
  }
  tp.sum_sq = LogWeight::from_log(log_sum_exp(sq));
  for (double x : sq) tp.p_tilde.push_back(std::exp(x - tp.sum_sq.log()));
  return tp;
}

TildeProfile tilde_profile(int n, int s, double t) { return tilde_profile(profile(n, s, t)); }

std::vector<CurvePoint> entropy_curve(int n_max, int s, double t, int stride) {
  check_params(s, t);
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (n_max > kMaxProfileN) throw std::length_error("n_max exceeds " + std::to_string(kMaxProfileN));
  std::vector<CurvePoint> out;
  SchmidtProfile p = seed_profile(s, t);
  for (int n = 1; n <= n_max; ++n) {
    advance(p);
    if (n % stride == 0 || n == n_max) {
      finalize(p);
      out.push_back({n, p.entropy, peak_height(p), p.norm.log()});
    }
  }
  return out;
}

std::string curve_csv(int s, double t, const std::vector<CurvePoint> &points) {
  std::string out(kCurveCsvHeader);
  out += '\n';
  for (const auto &pt : points) {
    out += std::to_string(s) + "," + format_double(t) + "," + std::to_string(pt.n) + "," + format_double(pt.entropy) +
           "," + std::to_string(pt.mstar) + "," + format_double(pt.log_norm) + "\n";
  }
  return out;
}

}  // namespace motzkin
