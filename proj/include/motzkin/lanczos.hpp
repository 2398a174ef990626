#ifndef MOTZKIN_LANCZOS_HPP
#define MOTZKIN_LANCZOS_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace motzkin {

using SparseOperator = Eigen::SparseMatrix<double>;

/// Raised when an iterative solver fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LanczosOptions {
  int krylov_dim = 120;    // basis size per restart cycle
  int max_restarts = 1000;
  double tol = 1e-10;      // on ||A x - lambda x||
  std::uint64_t seed = 42;
};

struct EigenPairs {
  std::vector<double> values;  // ascending
  std::vector<Eigen::VectorXd> vectors;
};

/// k lowest eigenpairs of a symmetric operator.
///
/// Thick-restart Lanczos with full reorthogonalization. The lowest Ritz
/// vectors survive each restart and the next block grows from the residual
/// of the lowest unconverged one. Converged pairs are locked and all later
/// search spaces live in their orthogonal complement. A fresh random vector
/// enters after every lock, so an eigenvalue of multiplicity r is returned
/// r times.
EigenPairs lowest_eigenpairs(const SparseOperator &op, int k, const LanczosOptions &options = {});

}  // namespace motzkin

#endif  // MOTZKIN_LANCZOS_HPP
