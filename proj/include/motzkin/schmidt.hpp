#ifndef MOTZKIN_SCHMIDT_HPP
#define MOTZKIN_SCHMIDT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "motzkin/log_weight.hpp"

namespace motzkin {

/// Weighted half-walk sums M_{n,m} (over half-walks of length n ending at
/// height m, weight s^{pairs} t^{area}) and the Schmidt data they determine.
struct SchmidtProfile {
  int n = 0;
  int s = 1;
  double t = 1.0;
  std::vector<LogWeight> log_m;  // index m = 0..n
  LogWeight norm = LogWeight::zero();  // N_n = sum_m s^m M_{n,m}^2
  std::vector<double> log_p;     // log p_{n,m} = 2 log M - log N
  std::vector<double> p;         // exp(log_p); may underflow to 0
  double entropy = 0.0;          // nats

  /// M at height m, ZERO beyond n.
  LogWeight at(int m) const { return m >= 0 && m <= n ? log_m[m] : LogWeight::zero(); }

  /// Probability of the whole excess-height sector m: s^m p_{n,m}.
  double sector_weight(int m) const;

  /// sum_m s^m p_{n,m}; equals 1 up to rounding.
  double normalization() const;
};

/// Table at n = 0: M_{0,0} = 1.
SchmidtProfile seed_profile(int s, double t);

/// One step of the half-walk recurrence. Only log_m and n are advanced;
/// call finalize() to refresh norm, p and entropy.
SchmidtProfile recurrence_step(const SchmidtProfile &profile);

/// In-place variant used by the sweeps.
void advance(SchmidtProfile &profile);

/// Fill norm, log_p, p and entropy from log_m.
void finalize(SchmidtProfile &profile);

inline constexpr int kMaxProfileN = 1'000'000;

SchmidtProfile profile(int n, int s, double t);

/// The p_{n,m} of profile(n, s, t) are the Schmidt numbers of the state with
/// amplitudes t^{area/2}. The ground state of the chain with deformation t has
/// amplitudes t^{area}, so its half-chain data is the profile at t^2.
SchmidtProfile ground_state_profile(int n, int s, double t);

/// Half-chain entropy, in nats unless base2.
double entanglement_entropy(int n, int s, double t, bool base2 = false);

enum class PeakMode { MaxM, MaxSectorWeight };

/// argmax over m, ties broken towards larger m.
int peak_height(const SchmidtProfile &profile, PeakMode mode = PeakMode::MaxM);

struct BoundsReport {
  bool has_n0 = false;  // t > 1
  double n0 = 0.0;
  double log_f = 0.0;   // log f(s,t) = 3 s t^{3/2} / (t^2 - 1)
  bool has_c = false;   // 0 < t < 1
  int m0 = 0;
  double c = 0.0;
  int mstar = 0;
};

/// Offset N0 such that the peak of M_{n,m} lies in [n - 2 N0, n]; t > 1.
double peak_offset_n0(int s, double t);
/// Height beyond which 9 s t^{2m-1} < 1/e; 0 < t < 1.
int tail_start_m0(int s, double t);
/// Size-independent entropy bound C(s,t); 0 < t < 1.
double entropy_bound_c(int s, double t);

/// Closed-form bounds valid for this (s, t) plus the peak of profile(n, s, t).
/// At t == 1 neither family applies and only mstar is filled in.
BoundsReport bounds(int n, int s, double t);

/// M~_{n,m} = s^{m/2} M_{n,m} and its normalized squares.
struct TildeProfile {
  int n = 0;
  std::vector<LogWeight> log_mt;  // index m
  LogWeight sum_sq;               // sum_m M~^2
  std::vector<double> p_tilde;    // M~^2 / sum_m M~^2
};

TildeProfile tilde_profile(const SchmidtProfile &profile);
TildeProfile tilde_profile(int n, int s, double t);

struct CurvePoint {
  int n = 0;
  double entropy = 0.0;
  int mstar = 0;
  double log_norm = 0.0;
};

/// Entropy at every stride-th n (and at n_max) from a single forward pass.
std::vector<CurvePoint> entropy_curve(int n_max, int s, double t, int stride = 1);

inline constexpr std::string_view kCurveCsvHeader = "s,t,n,entropy_nats,mstar,logN";
std::string curve_csv(int s, double t, const std::vector<CurvePoint> &points);

}  // namespace motzkin

#endif  // MOTZKIN_SCHMIDT_HPP
