#ifndef MOTZKIN_HAMILTONIAN_HPP
#define MOTZKIN_HAMILTONIAN_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "motzkin/lanczos.hpp"

namespace motzkin {

/// Area weighting t^{area}: cot(phi) = tan(psi) = cot(theta) = t at every junction.
struct UniformDeformation {
  double t = 1.0;
};

/// Per-junction mixing angles of the uncolored chain. Entry q belongs to the
/// junction between sites q and q+1 (0-based), so each array has two_n - 1
/// entries.
struct AngleDeformation {
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> theta;

  /// The translation invariant angle set equivalent to UniformDeformation{t}.
  static AngleDeformation uniform(int junctions, double t);
};

struct ChainSpec {
  int two_n = 2;
  int s = 1;
  std::variant<UniformDeformation, AngleDeformation> deformation = UniformDeformation{};

  static ChainSpec uniform(int two_n, int s, double t) { return {two_n, s, UniformDeformation{t}}; }
  static ChainSpec angles(int two_n, AngleDeformation a) { return {two_n, 1, std::move(a)}; }

  int n() const { return two_n / 2; }
  int local_dim() const { return 2 * s + 1; }
  bool is_uniform() const { return std::holds_alternative<UniformDeformation>(deformation); }
  double t() const;  // throws for angle specs
  const AngleDeformation &angle_set() const;

  /// (2s+1)^{two_n}, or 0 if that does not fit in size_t.
  std::size_t dimension() const;
};

inline constexpr double kTuningTolerance = 1e-12;

/// max_q |tan th_q cot ph_q - tan th_{q+1} tan ps_{q+1}|, relative to the
/// larger side.
double tuning_residual(const AngleDeformation &angles);

/// Throws std::invalid_argument for malformed specs. The tuning relation is
/// only enforced when check_tuning is set.
void validate(const ChainSpec &spec, bool check_tuning = true);

/// key=value lines: two_n, s, deformation.kind, and t or phi/psi/theta.
std::string to_config(const ChainSpec &spec);
ChainSpec parse_config(std::string_view text);

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 20;

/// kDefaultDimensionCap unless MOTZKIN_DIM_CAP is set.
std::size_t dimension_cap_from_env();

struct HamiltonianOptions {
  std::size_t dimension_cap = kDefaultDimensionCap;
  bool check_tuning = true;
};

/// Frustration-free projector Hamiltonian. Basis states are mixed-radix
/// little-endian over sites with the walk digit encoding.
SparseOperator build_hamiltonian(const ChainSpec &spec, const HamiltonianOptions &options = {});

/// Sample phi, psi uniformly in (0.1, pi/2 - 0.1) and propagate theta
/// through the tuning relation starting from theta_first.
ChainSpec generate_tuned_angles(int two_n, std::uint64_t seed, double theta_first);

struct SpectrumReport {
  std::vector<double> lowest_eigenvalues;
  double gs_residual = 0.0;  // ||H v0|| for the lowest eigenvector
  int null_dim = 0;
};

struct DiagonalizeOptions {
  double zero_tol = 1e-9;
  HamiltonianOptions hamiltonian;
  LanczosOptions lanczos;
};

SpectrumReport diagonalize_low(const ChainSpec &spec, int k, const DiagonalizeOptions &options = {});

/// ||H state|| / ||state||.
double residual(const SparseOperator &hamiltonian, const Eigen::VectorXd &state);
double residual(const ChainSpec &spec, const Eigen::VectorXd &state, const HamiltonianOptions &options = {});

inline constexpr std::string_view kSpectrumCsvHeader = "two_n,s,t_or_angles_hash,e0,e1,residual,null_dim";
std::string spectrum_csv_row(const ChainSpec &spec, const SpectrumReport &report);

/// t for uniform specs, otherwise a hex FNV-1a digest of the angle arrays.
std::string deformation_label(const ChainSpec &spec);

}  // namespace motzkin

#endif  // MOTZKIN_HAMILTONIAN_HPP
