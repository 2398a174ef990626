// Independent reference computations used only by the tests. Nothing here
// calls into the recurrence or the sparse eigensolver it is used to check.
#ifndef MOTZKIN_TESTS_ORACLES_HPP
#define MOTZKIN_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace oracle {

/// Motzkin numbers by the convolution M_k = M_{k-1} + sum_{i} M_i M_{k-2-i}.
inline std::vector<std::uint64_t> motzkin_numbers(int count) {
  std::vector<std::uint64_t> m{1, 1};
  for (int k = 2; k < count; ++k) {
    std::uint64_t v = m[k - 1];
    for (int i = 0; i <= k - 2; ++i) v += m[i] * m[k - 2 - i];
    m.push_back(v);
  }
  m.resize(static_cast<std::size_t>(count));
  return m;
}

/// sum over uncolored half-walks of length n ending at height m of
/// s^{pairs} t^{area}, by visiting all 3^n step strings. Index m.
inline std::vector<double> half_walk_sums(int n, int s, double t) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    int h = 0, pairs = 0, twice_area = 0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const int step = static_cast<int>(c % 3) - 1;  // -1, 0, +1
      c /= 3;
      const int next = h + step;
      if (next < 0) {
        ok = false;
        break;
      }
      if (step == -1) ++pairs;
      twice_area += h + next;
      h = next;
    }
    if (ok) out[h] += std::pow(static_cast<double>(s), pairs) * std::pow(t, 0.5 * twice_area);
  }
  return out;
}

/// Full spectrum of a sparse symmetric matrix by dense diagonalization.
inline Eigen::VectorXd dense_spectrum(const Eigen::SparseMatrix<double> &h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace oracle

#endif  // MOTZKIN_TESTS_ORACLES_HPP
