#include "motzkin/lanczos.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace motzkin {

namespace {

void project_out(Eigen::VectorXd &w, const std::vector<Eigen::VectorXd> &basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto &b : basis) w -= b.dot(w) * b;
}

}  // namespace

EigenPairs lowest_eigenpairs(const SparseOperator &op, int k, const LanczosOptions &options) {
  const Eigen::Index dim = op.rows();
  if (op.cols() != dim) throw std::invalid_argument("lowest_eigenpairs: operator not square");
  if (k < 1 || k > dim) throw std::invalid_argument("lowest_eigenpairs: k out of range");
  if (options.krylov_dim < 2) throw std::invalid_argument("lowest_eigenpairs: krylov_dim must be >= 2");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;

  double norm_bound = 0.0;
  for (Eigen::Index c = 0; c < op.outerSize(); ++c) {
    double col = 0.0;
    for (SparseOperator::InnerIterator it(op, c); it; ++it) col += std::abs(it.value());
    norm_bound = std::max(norm_bound, col);
  }
  const double breakdown = 1e-13 * std::max(1.0, norm_bound);
  // The error left in a locked vector leaks into every later pair, so lock
  // well below the requested tolerance while that is attainable.
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, norm_bound);
  const double lock_tol = std::min(options.tol, std::max(1e-2 * options.tol, floor));
  constexpr int kStallRestarts = 20;
  int last_lock = 0;

  std::vector<Eigen::VectorXd> locked;
  std::vector<double> locked_values;

  // Returns false when the complement of `against` is numerically exhausted.
  auto random_unit = [&](Eigen::VectorXd &v, const std::vector<Eigen::VectorXd> &against) {
    for (int attempt = 0; attempt < 5; ++attempt) {
      v.resize(dim);
      for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
      project_out(v, locked);
      project_out(v, against);
      const double nv = v.norm();
      if (nv > 1e-8 * std::sqrt(static_cast<double>(dim))) {
        v /= nv;
        return true;
      }
    }
    return false;
  };

  std::vector<Eigen::VectorXd> basis;  // kept Ritz vectors, then the new block
  std::vector<double> kept_values;     // Rayleigh quotients of the kept vectors
  Eigen::VectorXd next;
  random_unit(next, basis);

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    const auto free_dim = static_cast<std::size_t>(dim) - locked.size();
    const std::size_t m_max = std::min<std::size_t>(static_cast<std::size_t>(options.krylov_dim), free_dim);
    const std::size_t kept = basis.size();
    basis.push_back(next);

    // Projected matrix G = V^T A V. Columns of the new block come from the
    // orthogonalization coefficients; the kept block is diagonal.
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_max), static_cast<Eigen::Index>(m_max));
    for (std::size_t i = 0; i < kept; ++i) g(i, i) = kept_values[i];

    double beta = 0.0;
    for (std::size_t j = kept; j < m_max; ++j) {
      Eigen::VectorXd w = op * basis[j];
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto &l : locked) w -= l.dot(w) * l;
        for (std::size_t i = 0; i <= j && i < basis.size(); ++i) {
          const double c = basis[i].dot(w);
          g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += c;
          w -= c * basis[i];
        }
      }
      beta = w.norm();
      if (beta < breakdown || j + 1 == m_max) break;
      g(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j)) = beta;
      basis.push_back(w / beta);
    }
    const auto m = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd proj = g.topLeftCorner(m, m);
    // Entries below the computed band are zero; mirror the upper triangle.
    proj = proj.triangularView<Eigen::Upper>();
    proj = proj.selfadjointView<Eigen::Upper>();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
    const Eigen::VectorXd &theta = es.eigenvalues();
    const Eigen::MatrixXd &y = es.eigenvectors();

    auto ritz_vector = [&](Eigen::Index col) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index i = 0; i < m; ++i) x += y(i, col) * basis[static_cast<std::size_t>(i)];
      project_out(x, locked);
      return Eigen::VectorXd(x.normalized());
    };

    // Lock the leading Ritz pairs whose explicit residual is small.
    const bool exhausted = static_cast<std::size_t>(m) >= free_dim;
    Eigen::Index first_free = 0;
    Eigen::VectorXd target_residual;
    while (first_free < m && locked.size() < static_cast<std::size_t>(k)) {
      Eigen::VectorXd x = ritz_vector(first_free);
      const Eigen::VectorXd image = op * x;
      const double lambda = x.dot(image);
      target_residual = image - lambda * x;
      const double res = target_residual.norm();
      const bool stalled = restart - last_lock >= kStallRestarts && res < options.tol;
      if (!exhausted && !stalled && res >= lock_tol) break;
      locked.push_back(std::move(x));
      locked_values.push_back(lambda);
      ++first_free;
      last_lock = restart;
    }
    if (locked.size() == static_cast<std::size_t>(k)) break;
    if (restart == options.max_restarts) break;

    // Thick restart: keep the lowest unlocked Ritz vectors.
    const std::size_t need = static_cast<std::size_t>(k) - locked.size();
    const std::size_t remaining = free_dim - (static_cast<std::size_t>(first_free));
    std::size_t keep = std::max(need, m_max / 2);
    keep = std::min({keep, static_cast<std::size_t>(m - first_free), m_max - 1, remaining > 0 ? remaining - 1 : 0});
    std::vector<Eigen::VectorXd> new_basis;
    kept_values.clear();
    for (std::size_t i = 0; i < keep; ++i) {
      const auto col = first_free + static_cast<Eigen::Index>(i);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index r = 0; r < m; ++r) x += y(r, col) * basis[static_cast<std::size_t>(r)];
      project_out(x, locked);
      project_out(x, new_basis);
      x.normalize();
      new_basis.push_back(std::move(x));
      kept_values.push_back(theta[col]);
    }
    basis = std::move(new_basis);

    // Extend along the residual of the lowest unlocked Ritz vector. For a pure
    // Krylov space that is the Lanczos residual; once a random direction has
    // been mixed in, the residuals of different Ritz vectors differ and only
    // the target's own residual guarantees progress. After a lock, bring in a
    // random direction instead so that further copies of a degenerate
    // eigenvalue become visible.
    bool fresh = first_free > 0;
    if (!fresh) {
      next = target_residual;
      project_out(next, locked);
      project_out(next, basis);
      const double nn = next.norm();
      if (nn <= floor) fresh = true;
      else next /= nn;
    }
    if (fresh && !random_unit(next, basis)) {
      // The kept vectors span everything that is left; lock them as they are.
      for (std::size_t i = 0; i < basis.size() && locked.size() < static_cast<std::size_t>(k); ++i) {
        locked_values.push_back(basis[i].dot(op * basis[i]));
        locked.push_back(basis[i]);
      }
      break;
    }
  }
  if (locked.size() < static_cast<std::size_t>(k))
    throw ConvergenceError("lowest_eigenpairs: eigenpair " + std::to_string(locked.size()) + " did not converge after " +
                           std::to_string(options.max_restarts) + " restarts");

  std::vector<std::size_t> order(locked.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return locked_values[a] < locked_values[b]; });
  EigenPairs out;
  for (auto i : order) {
    out.values.push_back(locked_values[i]);
    out.vectors.push_back(std::move(locked[i]));
  }
  return out;
}

}  // namespace motzkin
