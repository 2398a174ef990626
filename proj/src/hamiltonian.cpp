#include "motzkin/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "motzkin/format.hpp"

namespace motzkin {

AngleDeformation AngleDeformation::uniform(int junctions, double t) {
  AngleDeformation a;
  const auto n = static_cast<std::size_t>(std::max(junctions, 0));
  a.phi.assign(n, std::atan(1.0 / t));
  a.psi.assign(n, std::atan(t));
  a.theta.assign(n, std::atan(1.0 / t));
  return a;
}

double ChainSpec::t() const {
  if (!is_uniform()) throw std::logic_error("ChainSpec::t: spec uses per-junction angles");
  return std::get<UniformDeformation>(deformation).t;
}

const AngleDeformation &ChainSpec::angle_set() const {
  if (is_uniform()) throw std::logic_error("ChainSpec::angle_set: spec is uniform");
  return std::get<AngleDeformation>(deformation);
}

std::size_t ChainSpec::dimension() const {
  if (two_n < 0 || s < 1) return 0;
  std::size_t dim = 1;
  const auto d = static_cast<std::size_t>(local_dim());
  for (int i = 0; i < two_n; ++i) {
    if (dim > std::numeric_limits<std::size_t>::max() / d) return 0;
    dim *= d;
  }
  return dim;
}

double tuning_residual(const AngleDeformation &a) {
  double worst = 0.0;
  for (std::size_t q = 0; q + 1 < a.theta.size(); ++q) {
    const double lhs = std::tan(a.theta[q]) / std::tan(a.phi[q]);
    const double rhs = std::tan(a.theta[q + 1]) * std::tan(a.psi[q + 1]);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
  }
  return worst;
}

void validate(const ChainSpec &spec, bool check_tuning) {
  if (spec.two_n < 2 || spec.two_n % 2 != 0)
    throw std::invalid_argument("chain length two_n must be even and >= 2, got " + std::to_string(spec.two_n));
  if (spec.s < 1) throw std::invalid_argument("number of colors s must be >= 1");
  if (spec.is_uniform()) {
    const double t = spec.t();
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("deformation t must be positive and finite");
    return;
  }
  if (spec.s != 1) throw std::invalid_argument("per-junction angles are only defined for the uncolored chain (s = 1)");
  const auto &a = spec.angle_set();
  const auto junctions = static_cast<std::size_t>(spec.two_n - 1);
  if (a.phi.size() != junctions || a.psi.size() != junctions || a.theta.size() != junctions)
    throw std::invalid_argument("angle arrays must have two_n - 1 = " + std::to_string(junctions) + " entries");
  for (const auto *arr : {&a.phi, &a.psi, &a.theta})
    for (double x : *arr)
      if (!(x > 0.0 && x < std::numbers::pi / 2))
        throw std::invalid_argument("mixing angles must lie in the open interval (0, pi/2), got " + format_double(x));
  if (check_tuning && tuning_residual(a) > kTuningTolerance)
    throw std::invalid_argument("angles violate the tuning relation (residual " + format_double(tuning_residual(a)) +
                                ")");
}

namespace {

std::string join(const std::vector<double> &xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

std::vector<double> split_doubles(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string to_config(const ChainSpec &spec) {
  std::ostringstream out;
  out << "two_n=" << spec.two_n << "\ns=" << spec.s << "\n";
  if (spec.is_uniform()) {
    out << "deformation.kind=uniform\nt=" << format_double(spec.t()) << "\n";
  } else {
    const auto &a = spec.angle_set();
    out << "deformation.kind=angles\nphi=" << join(a.phi) << "\npsi=" << join(a.psi) << "\ntheta=" << join(a.theta)
        << "\n";
  }
  return out.str();
}

ChainSpec parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto need = [&](std::string_view key) -> const std::string & {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("config missing key '" + std::string(key) + "'");
    return it->second;
  };
  ChainSpec spec;
  spec.two_n = static_cast<int>(parse_integer(need("two_n")));
  spec.s = static_cast<int>(parse_integer(need("s")));
  const auto &kind = need("deformation.kind");
  if (kind == "uniform") {
    spec.deformation = UniformDeformation{parse_double(need("t"))};
  } else if (kind == "angles") {
    spec.deformation = AngleDeformation{split_doubles(need("phi")), split_doubles(need("psi")),
                                        split_doubles(need("theta"))};
  } else {
    throw std::invalid_argument("unknown deformation.kind '" + kind + "'");
  }
  return spec;
}

std::size_t dimension_cap_from_env() {
  const char *raw = std::getenv("MOTZKIN_DIM_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultDimensionCap;
  const long long cap = parse_integer(raw);
  if (cap <= 0) throw std::invalid_argument("MOTZKIN_DIM_CAP must be positive");
  return static_cast<std::size_t>(cap);
}

namespace {

// Dense (d^2 x d^2) two-site operator acting on the pair digit a + d*b.
class PairBlock {
 public:
  explicit PairBlock(int d) : d_(d), m_(Eigen::MatrixXd::Zero(d * d, d * d)) {}

  int pair(int a, int b) const { return a + d_ * b; }

  // Adds |v><v| for v = sum_i c_i |pair_i>.
  void add_projector(std::initializer_list<std::pair<int, double>> v) {
    for (auto [i, ci] : v)
      for (auto [j, cj] : v) m_(i, j) += ci * cj;
  }

  // Column -> list of (row, value), nonzeros only.
  std::vector<std::vector<std::pair<int, double>>> columns() const {
    std::vector<std::vector<std::pair<int, double>>> cols(static_cast<std::size_t>(m_.cols()));
    for (int c = 0; c < m_.cols(); ++c)
      for (int r = 0; r < m_.rows(); ++r)
        if (m_(r, c) != 0.0) cols[c].emplace_back(r, m_(r, c));
    return cols;
  }

 private:
  int d_;
  Eigen::MatrixXd m_;
};

PairBlock uniform_block(int s, double t) {
  const int d = 2 * s + 1;
  PairBlock block(d);
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  for (int k = 1; k <= s; ++k) {
    const int l = k, r = s + k;
    block.add_projector({{block.pair(l, 0), c}, {block.pair(0, l), -t * c}});  // Phi^k
    block.add_projector({{block.pair(0, r), c}, {block.pair(r, 0), -t * c}});  // Psi^k
    block.add_projector({{block.pair(l, r), c}, {block.pair(0, 0), -t * c}});  // Theta^k
  }
  for (int k = 1; k <= s; ++k)
    for (int kk = 1; kk <= s; ++kk)
      if (k != kk) block.add_projector({{block.pair(k, s + kk), 1.0}});
  return block;
}

PairBlock angle_block(double phi, double psi, double theta) {
  constexpr int l = 1, r = 2;
  PairBlock block(3);
  block.add_projector({{block.pair(0, l), std::cos(phi)}, {block.pair(l, 0), -std::sin(phi)}});
  block.add_projector({{block.pair(0, r), std::cos(psi)}, {block.pair(r, 0), -std::sin(psi)}});
  block.add_projector({{block.pair(0, 0), std::cos(theta)}, {block.pair(l, r), -std::sin(theta)}});
  return block;
}

}  // namespace

SparseOperator build_hamiltonian(const ChainSpec &spec, const HamiltonianOptions &options) {
  validate(spec, options.check_tuning);
  const std::size_t dim = spec.dimension();
  if (dim == 0 || dim > options.dimension_cap)
    throw std::length_error("Hilbert space dimension (2s+1)^two_n exceeds cap " + std::to_string(options.dimension_cap));

  const int d = spec.local_dim();
  const int sites = spec.two_n;
  const int junctions = sites - 1;
  const int s = spec.s;

  std::vector<std::vector<std::vector<std::pair<int, double>>>> block_cols;
  block_cols.reserve(static_cast<std::size_t>(junctions));
  if (spec.is_uniform()) {
    const auto cols = uniform_block(s, spec.t()).columns();
    block_cols.assign(static_cast<std::size_t>(junctions), cols);
  } else {
    const auto &a = spec.angle_set();
    for (int q = 0; q < junctions; ++q) block_cols.push_back(angle_block(a.phi[q], a.psi[q], a.theta[q]).columns());
  }

  std::vector<std::size_t> stride(static_cast<std::size_t>(sites) + 1, 1);
  for (int j = 1; j <= sites; ++j) stride[j] = stride[j - 1] * static_cast<std::size_t>(d);

  SparseOperator h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.reserve(static_cast<Eigen::Index>(dim) * (junctions + 1));

  std::vector<int> digits(static_cast<std::size_t>(sites));
  std::vector<std::pair<std::size_t, double>> column;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (int j = 0; j < sites; ++j) {
      digits[j] = static_cast<int>(rest % d);
      rest /= d;
    }
    column.clear();

    // Boundary: r^k on the first site, l^k on the last.
    double diag = 0.0;
    if (digits.front() > s) diag += 1.0;
    if (digits.back() != 0 && digits.back() <= s) diag += 1.0;
    if (diag != 0.0) column.emplace_back(col, diag);

    for (int q = 0; q < junctions; ++q) {
      const int a = digits[q], b = digits[q + 1];
      for (auto [row_pair, value] : block_cols[q][a + d * b]) {
        const int a2 = row_pair % d, b2 = row_pair / d;
        const std::size_t row = col - static_cast<std::size_t>(a) * stride[q] - static_cast<std::size_t>(b) * stride[q + 1] +
                                static_cast<std::size_t>(a2) * stride[q] + static_cast<std::size_t>(b2) * stride[q + 1];
        column.emplace_back(row, value);
      }
    }

    std::sort(column.begin(), column.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    h.startVec(static_cast<Eigen::Index>(col));
    for (std::size_t i = 0; i < column.size();) {
      const std::size_t row = column[i].first;
      double value = 0.0;
      for (; i < column.size() && column[i].first == row; ++i) value += column[i].second;
      if (value != 0.0) h.insertBack(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
    }
  }
  h.finalize();
  return h;
}

ChainSpec generate_tuned_angles(int two_n, std::uint64_t seed, double theta_first) {
  constexpr double half_pi = std::numbers::pi / 2;
  if (!(theta_first > 0.0 && theta_first < half_pi)) throw std::invalid_argument("theta_first must lie in (0, pi/2)");
  if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("two_n must be even and >= 2");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.1, half_pi - 0.1);
  const auto junctions = static_cast<std::size_t>(two_n - 1);

  AngleDeformation a;
  a.phi.resize(junctions);
  a.psi.resize(junctions);
  a.theta.resize(junctions);
  for (std::size_t q = 0; q < junctions; ++q) {
    a.phi[q] = angle(rng);
    a.psi[q] = angle(rng);
  }
  a.theta[0] = theta_first;

  constexpr double margin = 1e-6;
  constexpr int max_retries = 100;
  for (std::size_t q = 0; q + 1 < junctions; ++q) {
    const double carried = std::tan(a.theta[q]) / std::tan(a.phi[q]);
    bool ok = false;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
      if (attempt > 0) a.psi[q + 1] = angle(rng);
      const double next = std::atan(carried / std::tan(a.psi[q + 1]));
      if (next > margin && next < half_pi - margin) {
        a.theta[q + 1] = next;
        ok = true;
        break;
      }
    }
    if (!ok) throw std::runtime_error("generate_tuned_angles: theta left (0, pi/2) after 100 resamples");
  }
  return ChainSpec::angles(two_n, std::move(a));
}

double residual(const SparseOperator &hamiltonian, const Eigen::VectorXd &state) {
  if (state.size() != hamiltonian.cols())
    throw std::invalid_argument("residual: state dimension " + std::to_string(state.size()) + " != operator dimension " +
                                std::to_string(hamiltonian.cols()));
  const double norm = state.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("residual: zero state");
  return (hamiltonian * state).norm() / norm;
}

double residual(const ChainSpec &spec, const Eigen::VectorXd &state, const HamiltonianOptions &options) {
  if (spec.dimension() != static_cast<std::size_t>(state.size()))
    throw std::invalid_argument("residual: state dimension does not match spec");
  return residual(build_hamiltonian(spec, options), state);
}

SpectrumReport diagonalize_low(const ChainSpec &spec, int k, const DiagonalizeOptions &options) {
  if (k < 2) throw std::invalid_argument("diagonalize_low: need k >= 2");
  const auto h = build_hamiltonian(spec, options.hamiltonian);
  const int kk = static_cast<int>(std::min<Eigen::Index>(k, h.rows()));
  auto pairs = lowest_eigenpairs(h, kk, options.lanczos);
  SpectrumReport report;
  report.lowest_eigenvalues = pairs.values;
  report.gs_residual = (h * pairs.vectors.front()).norm();
  report.null_dim = static_cast<int>(
      std::count_if(pairs.values.begin(), pairs.values.end(), [&](double e) { return e < options.zero_tol; }));
  return report;
}

std::string deformation_label(const ChainSpec &spec) {
  if (spec.is_uniform()) return format_double(spec.t());
  std::uint64_t hash = 1469598103934665603ULL;
  const auto &a = spec.angle_set();
  for (const auto *arr : {&a.phi, &a.psi, &a.theta}) {
    for (double x : *arr) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &x, sizeof(double));
      for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 1099511628211ULL;
      }
    }
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string spectrum_csv_row(const ChainSpec &spec, const SpectrumReport &report) {
  const auto &e = report.lowest_eigenvalues;
  std::string row = std::to_string(spec.two_n) + "," + std::to_string(spec.s) + "," + deformation_label(spec) + ",";
  row += (e.empty() ? "nan" : format_double(e[0])) + ",";
  row += (e.size() < 2 ? "nan" : format_double(e[1])) + ",";
  row += format_double(report.gs_residual) + "," + std::to_string(report.null_dim);
  return row;
}

}  // namespace motzkin
