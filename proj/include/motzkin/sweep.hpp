#ifndef MOTZKIN_SWEEP_HPP
#define MOTZKIN_SWEEP_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace motzkin {

struct GridPoint {
  int s = 1;
  double t = 1.0;
};

struct SweepPlan {
  std::vector<GridPoint> grid;
  std::vector<int> n_samples;  // ascending, unique
  std::filesystem::path output;
  int jobs = 1;
};

/// The smallest grid showing every phase: s in {1, 2}, t in {0.5, 1, 2}.
std::vector<GridPoint> default_grid();

/// Line-oriented key=value plan:
///   grid=1,0.5;1,1;2,2      semicolon-separated s,t pairs
///   n=1,2,10:300:10         integers and a:b[:step] ranges
///   out=results.csv         optional
///   jobs=4                  optional
/// '#' starts a comment. A missing grid key means default_grid().
SweepPlan parse_plan(std::string_view text);

/// Throws std::invalid_argument when a plan invariant is broken.
void validate(const SweepPlan &plan);

struct SweepRow {
  int s = 1;
  double t = 1.0;
  int n = 0;
  double entropy = 0.0;
  int mstar = 0;
  double log_norm = 0.0;
  std::string status = "ok";
};

inline constexpr std::string_view kSweepCsvHeader = "s,t,n,entropy_nats,mstar,logN,status";

/// Entropy curve of every grid point at the sampled n. Rows follow plan
/// order (grid point, then n) whatever the worker count. Rows whose closed
/// form bound is violated get a "bound-violated:" status; a grid point that
/// throws yields error rows and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepPlan &plan);

std::string sweep_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

/// Writes to a sibling temporary file and renames it into place.
void write_sweep_csv(const std::filesystem::path &path, std::span<const SweepRow> rows);

enum class ScalingModel { Linear, Sqrt, Log, Constant };

std::string_view to_string(ScalingModel model);
ScalingModel parse_model(std::string_view name);
inline constexpr ScalingModel kAllModels[] = {ScalingModel::Linear, ScalingModel::Sqrt, ScalingModel::Log,
                                              ScalingModel::Constant};

struct FitResult {
  ScalingModel model = ScalingModel::Linear;
  double coefficient = 0.0;  // of n, sqrt n or log n; the mean for Constant
  double intercept = 0.0;
  double residual = 0.0;     // RMS
  std::pair<int, int> n_range{0, 0};
};

inline constexpr std::size_t kMinFitRows = 10;

/// Least squares S = a f(n) + b, f in {n, sqrt n, log n}, or S = b.
FitResult fit_scaling(std::span<const SweepRow> rows, ScalingModel model);

/// Model with the smallest RMS residual.
FitResult best_fit(std::span<const SweepRow> rows);

}  // namespace motzkin

#endif  // MOTZKIN_SWEEP_HPP
