#ifndef MOTZKIN_GROUNDSTATE_HPP
#define MOTZKIN_GROUNDSTATE_HPP

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "motzkin/hamiltonian.hpp"
#include "motzkin/log_weight.hpp"
#include "motzkin/walks.hpp"

namespace motzkin {

/// Local two-site rewrites that flatten a walk, and their inverses (which
/// pile it back up). Site is the left site of the junction acted on.
enum class MoveKind { R, L, F, RInverse, LInverse, FInverse };

struct Move {
  MoveKind kind;
  std::size_t site;
  friend bool operator==(const Move &, const Move &) = default;
};

/// Flattening moves taking a walk to the all-flat walk, in application order.
struct MoveTrace {
  std::size_t length = 0;
  std::vector<Move> moves;
};

/// Canonical flattening: repeatedly take the leftmost highest plateau l0..0r,
/// slide its r leftwards with L moves until it touches the l, then apply F.
MoveTrace flatten_canonical(const ColoredWalk &walk);

/// Flattening with a random choice of local peak, hill position inside the
/// plateau and interleaving of R/L moves at every stage.
MoveTrace flatten_random(const ColoredWalk &walk, std::mt19937_64 &rng);

/// Applies the inverse moves in reverse order to the flat walk of the trace's
/// length. Throws std::logic_error if any intermediate walk is invalid or a
/// move does not match the configuration it acts on.
ColoredWalk replay_from_flat(const MoveTrace &trace);

/// Amplitude of the walk relative to the flat walk implied by the trace:
/// the product over flattening moves of 1/tan(phi), tan(psi), 1/tan(theta).
LogWeight trace_log_weight(const MoveTrace &trace, const AngleDeformation &angles);

/// t^{area(walk)} for a valid complete walk.
LogWeight walk_weight_uniform(const ColoredWalk &walk, double t);

/// Relative amplitude under a tuned angle set (s = 1), via canonical flattening.
LogWeight walk_weight_angles(const ColoredWalk &walk, const ChainSpec &spec);

struct WeightedEntry {
  ColoredWalk walk;
  LogWeight weight;
};

/// Unnormalized ground state as a superposition of complete walks.
struct WeightedEnsemble {
  ChainSpec spec;
  std::vector<WeightedEntry> entries;  // enumeration order
  LogWeight norm;                      // sqrt(sum of squared weights)

  /// Normalized dense state vector in the Hamiltonian's basis.
  Eigen::VectorXd state_vector() const;
};

WeightedEnsemble build_ground_state(const ChainSpec &spec, int cap = kDefaultEnumerationCap);

/// "# header" lines followed by one "walk<TAB>log-weight" line per entry.
std::string dump_ensemble(const WeightedEnsemble &ensemble);

struct SchmidtGroup {
  int m = 0;                // unmatched Up steps in the left half
  int multiplicity = 0;     // number of equal Schmidt values in the group
  double p = 0.0;           // squared singular value
};

struct SchmidtSpectrum {
  std::vector<SchmidtGroup> groups;              // ascending m
  std::vector<double> squared_singular_values;   // full SVD, descending
  std::vector<std::string> issues;               // grouping ambiguities
};

/// Half-chain Schmidt spectrum by explicit SVD of the reshaped state. The
/// state is block diagonal in the excess height m across the cut, so each
/// block is decomposed separately and its values carry the label m.
SchmidtSpectrum schmidt_by_svd(const WeightedEnsemble &ensemble, double group_tol = 1e-9);

}  // namespace motzkin

#endif  // MOTZKIN_GROUNDSTATE_HPP
