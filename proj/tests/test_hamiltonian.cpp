#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "motzkin/hamiltonian.hpp"
#include "motzkin/walks.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

Eigen::VectorXd basis_vector(std::size_t dim, std::size_t index) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

// Permutes colors on every site: digit k -> perm[k], s+k -> s+perm[k].
SparseOperator color_permutation(int two_n, int s, const std::vector<int> &perm) {
  const int d = 2 * s + 1;
  std::size_t dim = 1;
  for (int i = 0; i < two_n; ++i) dim *= static_cast<std::size_t>(d);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rest = idx, out = 0, stride = 1;
    for (int j = 0; j < two_n; ++j, stride *= d, rest /= d) {
      int digit = static_cast<int>(rest % d);
      if (digit != 0) digit = digit <= s ? perm[digit - 1] : s + perm[digit - s - 1];
      out += stride * static_cast<std::size_t>(digit);
    }
    trip.emplace_back(static_cast<int>(out), static_cast<int>(idx), 1.0);
  }
  SparseOperator p(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  p.setFromTriplets(trip.begin(), trip.end());
  return p;
}

}  // namespace

TEST_CASE("two-site chain at t = 1") {
  const auto h = build_hamiltonian(ChainSpec::uniform(2, 1, 1.0));
  CHECK(h.rows() == 9);
  Eigen::VectorXd gs = basis_vector(9, basis_index(ColoredWalk::parse("00"))) +
                       basis_vector(9, basis_index(ColoredWalk::parse("lr")));
  CHECK(residual(h, gs) < 1e-15);
  const auto spectrum = oracle::dense_spectrum(h);
  CHECK(std::abs(spectrum[0]) < 1e-14);
  CHECK(spectrum[1] > 0.1);
}

TEST_CASE("two-site null vector is |00> + t|lr>") {
  for (double t : {0.3, 2.0, 5.0}) {
    const auto spec = ChainSpec::uniform(2, 1, t);
    Eigen::VectorXd gs = basis_vector(9, 0) + t * basis_vector(9, basis_index(ColoredWalk::parse("lr")));
    CHECK(residual(spec, gs) < 1e-12);
    Eigen::VectorXd wrong = basis_vector(9, 0) + basis_vector(9, basis_index(ColoredWalk::parse("lr")));
    CHECK(residual(spec, wrong) > 1e-3);
  }
}

TEST_CASE("symmetric and positive semidefinite") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const std::vector<ChainSpec> specs{ChainSpec::uniform(4, 1, 0.5), ChainSpec::uniform(4, 2, 2.0),
                                     ChainSpec::uniform(6, 1, 1.7), generate_tuned_angles(6, 3, 0.7)};
  for (const auto &spec : specs) {
    const auto h = build_hamiltonian(spec);
    const SparseOperator asym = h - SparseOperator(h.transpose());
    double worst = 0.0;
    for (int k = 0; k < asym.outerSize(); ++k)
      for (SparseOperator::InnerIterator it(asym, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    CHECK(worst == 0.0);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd v(h.rows());
      for (auto &x : v) x = g(rng);
      v.normalize();
      CHECK(v.dot(h * v) >= -1e-12);
    }
  }
}

TEST_CASE("uniform spec commutes with global color permutations") {
  for (int s : {2, 3}) {
    for (int two_n : {2, 4}) {
      const auto h = build_hamiltonian(ChainSpec::uniform(two_n, s, 1.6));
      std::vector<int> perm(static_cast<std::size_t>(s));
      std::iota(perm.begin(), perm.end(), 1);
      std::rotate(perm.begin(), perm.begin() + 1, perm.end());
      const auto p = color_permutation(two_n, s, perm);
      const SparseOperator comm = p * h - h * p;
      CHECK(comm.norm() < 1e-13);
    }
  }
}

TEST_CASE("uniform angle set reproduces the uniform Hamiltonian") {
  const double t = 1.9;
  const auto a = build_hamiltonian(ChainSpec::uniform(6, 1, t));
  const auto b = build_hamiltonian(ChainSpec::angles(6, AngleDeformation::uniform(5, t)));
  CHECK(SparseOperator(a - b).norm() < 1e-13);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_hamiltonian(ChainSpec::uniform(3, 1, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian(ChainSpec::uniform(4, 1, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian(ChainSpec::uniform(4, 0, 1.0)), std::invalid_argument);

  auto boundary = AngleDeformation::uniform(3, 1.0);
  boundary.theta[0] = std::numbers::pi / 2;
  CHECK_THROWS_AS(build_hamiltonian(ChainSpec::angles(4, boundary)), std::invalid_argument);

  ChainSpec colored{4, 2, AngleDeformation::uniform(3, 1.0)};
  CHECK_THROWS_AS(validate(colored), std::invalid_argument);

  auto detuned = generate_tuned_angles(4, 1, 0.6);
  std::get<AngleDeformation>(detuned.deformation).theta[1] *= 0.9;
  CHECK_THROWS_AS(build_hamiltonian(detuned), std::invalid_argument);
  HamiltonianOptions loose;
  loose.check_tuning = false;
  CHECK_NOTHROW(build_hamiltonian(detuned, loose));

  HamiltonianOptions small;
  small.dimension_cap = 100;
  CHECK_THROWS_AS(build_hamiltonian(ChainSpec::uniform(6, 1, 1.0), small), std::length_error);
  CHECK_THROWS_AS(residual(ChainSpec::uniform(2, 1, 1.0), Eigen::VectorXd::Ones(4)), std::invalid_argument);
}

TEST_CASE("generate_tuned_angles") {
  const auto spec = generate_tuned_angles(6, 7, std::numbers::pi / 4);
  const auto &a = spec.angle_set();
  CHECK(a.theta.size() == 5);
  CHECK(a.theta[0] == std::numbers::pi / 4);
  CHECK(tuning_residual(a) < 1e-12);
  for (const auto *arr : {&a.phi, &a.psi, &a.theta})
    for (double x : *arr) CHECK((x > 0 && x < std::numbers::pi / 2));
  CHECK(to_config(generate_tuned_angles(6, 7, std::numbers::pi / 4)) == to_config(spec));
  CHECK(to_config(generate_tuned_angles(6, 8, std::numbers::pi / 4)) != to_config(spec));

  // Translation invariant choices satisfy the relation exactly.
  CHECK(tuning_residual(AngleDeformation::uniform(7, 1.0)) < 1e-15);
  CHECK(tuning_residual(AngleDeformation::uniform(7, 2.5)) < 1e-15);
  CHECK_THROWS_AS(generate_tuned_angles(6, 1, 0.0), std::invalid_argument);
}

TEST_CASE("config record round trip") {
  for (const auto &spec : {ChainSpec::uniform(6, 2, 0.25), generate_tuned_angles(8, 5, 1.1)}) {
    const auto text = to_config(spec);
    const auto back = parse_config(text);
    CHECK(to_config(back) == text);
    CHECK(deformation_label(back) == deformation_label(spec));
  }
  CHECK_THROWS_AS(parse_config("two_n=4\ns=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("two_n=4\ns=1\ndeformation.kind=wavy\n"), std::invalid_argument);
}

TEST_CASE("Lanczos agrees with dense diagonalization") {
  const std::vector<ChainSpec> specs{ChainSpec::uniform(4, 1, 1.0), ChainSpec::uniform(6, 1, 0.5),
                                     ChainSpec::uniform(4, 2, 2.0), generate_tuned_angles(6, 2, 0.9)};
  for (const auto &spec : specs) {
    const auto h = build_hamiltonian(spec);
    const auto dense = oracle::dense_spectrum(h);
    const auto pairs = lowest_eigenpairs(h, 5);
    for (int i = 0; i < 5; ++i) CHECK(pairs.values[i] == doctest::Approx(dense[i]).epsilon(1e-8));
  }
}

TEST_CASE("Lanczos resolves degenerate eigenvalues") {
  // diag(0, 0, 0, 1, 2, ...) rotated: a triple zero must be counted three times.
  const int dim = 60;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < dim; ++i) trip.emplace_back(i, i, i < 3 ? 0.0 : 1.0 + 0.1 * i);
  for (int i = 0; i + 1 < dim; ++i) {
    if (i < 3) continue;
    trip.emplace_back(i, i + 1, 0.05);
    trip.emplace_back(i + 1, i, 0.05);
  }
  SparseOperator a(dim, dim);
  a.setFromTriplets(trip.begin(), trip.end());
  LanczosOptions opts;
  opts.krylov_dim = 20;
  const auto pairs = lowest_eigenpairs(a, 4, opts);
  CHECK(std::abs(pairs.values[0]) < 1e-12);
  CHECK(std::abs(pairs.values[1]) < 1e-12);
  CHECK(std::abs(pairs.values[2]) < 1e-12);
  CHECK(pairs.values[3] > 0.5);
}

TEST_CASE("diagonalize_low") {
  auto r = diagonalize_low(ChainSpec::uniform(4, 1, 1.0), 3);
  CHECK(r.null_dim == 1);
  CHECK(r.gs_residual < 1e-9);
  CHECK(std::is_sorted(r.lowest_eigenvalues.begin(), r.lowest_eigenvalues.end()));

  r = diagonalize_low(ChainSpec::uniform(4, 2, 2.0), 2);
  CHECK(r.null_dim == 1);
  CHECK(r.lowest_eigenvalues[1] > 1e-9);

  CHECK_THROWS_AS(diagonalize_low(ChainSpec::uniform(4, 1, 1.0), 1), std::invalid_argument);

  const auto row = spectrum_csv_row(ChainSpec::uniform(4, 1, 1.0), r);
  CHECK(row.rfind("4,1,1,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 6);
}

TEST_CASE("detuned angles frustrate the chain") {
  auto spec = generate_tuned_angles(4, 9, 0.8);
  std::get<AngleDeformation>(spec.deformation).theta[1] *= 0.9;
  HamiltonianOptions loose;
  loose.check_tuning = false;
  const auto spectrum = oracle::dense_spectrum(build_hamiltonian(spec, loose));
  CHECK(spectrum[0] > 1e-6);
}
