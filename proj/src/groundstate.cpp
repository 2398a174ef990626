#include "motzkin/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "motzkin/format.hpp"

namespace motzkin {

namespace {

// Uncolored height-profile steps: +1, 0, -1.
std::vector<int> deltas_of(const ColoredWalk &walk) {
  std::vector<int> d;
  d.reserve(walk.size());
  for (const auto &step : walk.steps()) d.push_back(step.delta());
  return d;
}

bool all_flat(const std::vector<int> &d) {
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

void apply_move(std::vector<int> &d, const Move &move) {
  auto &a = d.at(move.site);
  auto &b = d.at(move.site + 1);
  auto expect = [&](int x, int y, int nx, int ny) {
    if (a != x || b != y) throw std::logic_error("move does not match the local configuration");
    a = nx;
    b = ny;
  };
  switch (move.kind) {
    case MoveKind::R: expect(1, 0, 0, 1); break;
    case MoveKind::L: expect(0, -1, -1, 0); break;
    case MoveKind::F: expect(1, -1, 0, 0); break;
    case MoveKind::RInverse: expect(0, 1, 1, 0); break;
    case MoveKind::LInverse: expect(-1, 0, 0, -1); break;
    case MoveKind::FInverse: expect(0, 0, 1, -1); break;
  }
}

MoveKind inverse(MoveKind k) {
  switch (k) {
    case MoveKind::R: return MoveKind::RInverse;
    case MoveKind::L: return MoveKind::LInverse;
    case MoveKind::F: return MoveKind::FInverse;
    case MoveKind::RInverse: return MoveKind::R;
    case MoveKind::LInverse: return MoveKind::L;
    case MoveKind::FInverse: return MoveKind::F;
  }
  return k;
}

// Plateau l 0^w r starting at `up` (index of the l step).
std::size_t plateau_end(const std::vector<int> &d, std::size_t up) {
  std::size_t j = up + 1;
  while (j < d.size() && d[j] == 0) ++j;
  if (j >= d.size() || d[j] != -1) throw std::logic_error("flatten: expected a plateau closing with r");
  return j;
}

void require_valid(const ColoredWalk &walk) {
  if (!is_valid(walk, true)) throw std::invalid_argument("flatten: walk is not a complete Motzkin walk");
}

}  // namespace

MoveTrace flatten_canonical(const ColoredWalk &walk) {
  require_valid(walk);
  auto d = deltas_of(walk);
  MoveTrace trace{d.size(), {}};
  while (!all_flat(d)) {
    int h = 0, best = 0;
    std::size_t up = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      h += d[i];
      if (d[i] == 1 && h > best) {
        best = h;
        up = i;
      }
    }
    const std::size_t down = plateau_end(d, up);
    for (std::size_t pos = down - 1; pos > up; --pos) {
      trace.moves.push_back({MoveKind::L, pos});
      apply_move(d, trace.moves.back());
    }
    trace.moves.push_back({MoveKind::F, up});
    apply_move(d, trace.moves.back());
  }
  return trace;
}

MoveTrace flatten_random(const ColoredWalk &walk, std::mt19937_64 &rng) {
  require_valid(walk);
  auto d = deltas_of(walk);
  MoveTrace trace{d.size(), {}};
  while (!all_flat(d)) {
    // Every l 0..0 r substring is a local peak that can be flattened.
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] != 1) continue;
      std::size_t j = i + 1;
      while (j < d.size() && d[j] == 0) ++j;
      if (j < d.size() && d[j] == -1) peaks.push_back(i);
    }
    const std::size_t up = peaks[std::uniform_int_distribution<std::size_t>(0, peaks.size() - 1)(rng)];
    const std::size_t down = plateau_end(d, up);
    const std::size_t hill = std::uniform_int_distribution<std::size_t>(up, down - 1)(rng);

    std::size_t left = up;        // current position of the l
    std::size_t right = down;     // current position of the r
    while (left < hill || right > hill + 1) {
      const bool can_r = left < hill;
      const bool can_l = right > hill + 1;
      const bool take_r = can_r && (!can_l || std::bernoulli_distribution(0.5)(rng));
      if (take_r) {
        trace.moves.push_back({MoveKind::R, left++});
      } else {
        trace.moves.push_back({MoveKind::L, --right});
      }
      apply_move(d, trace.moves.back());
    }
    trace.moves.push_back({MoveKind::F, hill});
    apply_move(d, trace.moves.back());
  }
  return trace;
}

ColoredWalk replay_from_flat(const MoveTrace &trace) {
  std::vector<int> d(trace.length, 0);
  for (auto it = trace.moves.rbegin(); it != trace.moves.rend(); ++it) {
    apply_move(d, {inverse(it->kind), it->site});
    int h = 0;
    for (int x : d) {
      h += x;
      if (h < 0) throw std::logic_error("replay_from_flat: intermediate walk dips below zero");
    }
  }
  std::vector<Step> steps;
  for (int x : d) steps.push_back(x == 1 ? Step::up() : x == -1 ? Step::down() : Step::flat());
  return ColoredWalk(std::move(steps), 1);
}

LogWeight trace_log_weight(const MoveTrace &trace, const AngleDeformation &angles) {
  double log_w = 0.0;
  for (const auto &move : trace.moves) {
    const std::size_t q = move.site;
    switch (move.kind) {
      case MoveKind::R: log_w -= std::log(std::tan(angles.phi.at(q))); break;
      case MoveKind::L: log_w += std::log(std::tan(angles.psi.at(q))); break;
      case MoveKind::F: log_w -= std::log(std::tan(angles.theta.at(q))); break;
      case MoveKind::RInverse: log_w += std::log(std::tan(angles.phi.at(q))); break;
      case MoveKind::LInverse: log_w -= std::log(std::tan(angles.psi.at(q))); break;
      case MoveKind::FInverse: log_w += std::log(std::tan(angles.theta.at(q))); break;
    }
  }
  return LogWeight::from_log(log_w);
}

LogWeight walk_weight_uniform(const ColoredWalk &walk, double t) {
  if (!is_valid(walk, true)) throw std::invalid_argument("walk_weight_uniform: walk is not complete and valid");
  if (!(t > 0.0)) throw std::invalid_argument("walk_weight_uniform: t must be positive");
  return LogWeight::from_log(area(walk).value() * std::log(t));
}

LogWeight walk_weight_angles(const ColoredWalk &walk, const ChainSpec &spec) {
  validate(spec);
  if (spec.is_uniform()) throw std::invalid_argument("walk_weight_angles: spec has no angle set");
  if (walk.colors() != 1 || walk.size() != static_cast<std::size_t>(spec.two_n))
    throw std::invalid_argument("walk_weight_angles: walk does not fit the spec");
  return trace_log_weight(flatten_canonical(walk), spec.angle_set());
}

WeightedEnsemble build_ground_state(const ChainSpec &spec, int cap) {
  validate(spec);
  WeightedEnsemble ens{spec, {}, LogWeight::zero()};
  std::vector<double> twice_logs;
  for_each_walk(spec.two_n, spec.s, 0,
                [&](const ColoredWalk &w) {
                  const auto weight = spec.is_uniform() ? walk_weight_uniform(w, spec.t()) : walk_weight_angles(w, spec);
                  ens.entries.push_back({w, weight});
                  twice_logs.push_back(2.0 * weight.log());
                },
                cap);
  ens.norm = LogWeight::from_log(0.5 * log_sum_exp(twice_logs));
  return ens;
}

Eigen::VectorXd WeightedEnsemble::state_vector() const {
  const std::size_t dim = spec.dimension();
  if (dim == 0 || dim > kDefaultDimensionCap) throw std::length_error("state_vector: dimension exceeds cap");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto &e : entries) v[static_cast<Eigen::Index>(basis_index(e.walk))] = (e.weight / norm).value();
  return v;
}

std::string dump_ensemble(const WeightedEnsemble &ensemble) {
  std::ostringstream out;
  std::istringstream cfg(to_config(ensemble.spec));
  for (std::string line; std::getline(cfg, line);) out << "# " << line << "\n";
  out << "# log_norm=" << format_double(ensemble.norm.log()) << "\n";
  for (const auto &e : ensemble.entries) out << e.walk.to_string() << "\t" << format_double(e.weight.log()) << "\n";
  return out.str();
}

namespace {

// Excess-height label of a half-chain basis state, or -1 if no complete walk
// can contain it. Left halves are read forwards (l opens), right halves
// backwards (r opens).
int half_label(std::size_t index, int sites, int s, bool reversed) {
  const int d = 2 * s + 1;
  std::vector<int> digits(static_cast<std::size_t>(sites));
  for (int j = 0; j < sites; ++j) {
    digits[j] = static_cast<int>(index % d);
    index /= d;
  }
  if (reversed) std::reverse(digits.begin(), digits.end());
  std::vector<int> open;
  for (int digit : digits) {
    if (digit == 0) continue;
    const bool is_up = digit <= s;
    const int color = is_up ? digit : digit - s;
    if (is_up != reversed) {
      open.push_back(color);
    } else {
      if (open.empty() || open.back() != color) return -1;
      open.pop_back();
    }
  }
  return static_cast<int>(open.size());
}

}  // namespace

SchmidtSpectrum schmidt_by_svd(const WeightedEnsemble &ensemble, double group_tol) {
  const auto &spec = ensemble.spec;
  const int n = spec.n();
  const int s = spec.s;
  std::size_t half_dim = 1;
  for (int j = 0; j < n; ++j) half_dim *= static_cast<std::size_t>(spec.local_dim());

  const Eigen::VectorXd psi = ensemble.state_vector();
  const auto hd = static_cast<Eigen::Index>(half_dim);
  const Eigen::Map<const Eigen::MatrixXd> full(psi.data(), hd, hd);  // (left, right)

  SchmidtSpectrum out;
  {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(full);
    const auto &sv = svd.singularValues();
    const double cutoff = 1e-10 * (sv.size() ? sv[0] : 0.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > cutoff) out.squared_singular_values.push_back(sv[i] * sv[i]);
  }

  std::vector<std::vector<Eigen::Index>> rows(static_cast<std::size_t>(n) + 1), cols(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < half_dim; ++i) {
    if (int m = half_label(i, n, s, false); m >= 0) rows[m].push_back(static_cast<Eigen::Index>(i));
    if (int m = half_label(i, n, s, true); m >= 0) cols[m].push_back(static_cast<Eigen::Index>(i));
  }

  const double global_cutoff = out.squared_singular_values.empty() ? 0.0 : 1e-20 * out.squared_singular_values.front();
  for (int m = 0; m <= n; ++m) {
    Eigen::MatrixXd block(static_cast<Eigen::Index>(rows[m].size()), static_cast<Eigen::Index>(cols[m].size()));
    for (Eigen::Index r = 0; r < block.rows(); ++r)
      for (Eigen::Index c = 0; c < block.cols(); ++c) block(r, c) = full(rows[m][r], cols[m][c]);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(block);
    std::vector<double> ps;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      const double p = svd.singularValues()[i] * svd.singularValues()[i];
      if (p > global_cutoff) ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end(), std::greater<>());
    std::size_t groups_in_block = 0;
    for (std::size_t i = 0; i < ps.size();) {
      std::size_t j = i;
      double acc = 0.0;
      while (j < ps.size() && std::abs(ps[j] - ps[i]) <= group_tol * ps[i]) acc += ps[j++];
      out.groups.push_back({m, static_cast<int>(j - i), acc / static_cast<double>(j - i)});
      ++groups_in_block;
      i = j;
    }
    if (groups_in_block > 1)
      out.issues.push_back("excess height " + std::to_string(m) + " splits into " + std::to_string(groups_in_block) +
                           " distinct Schmidt values");
  }
  return out;
}

}  // namespace motzkin
