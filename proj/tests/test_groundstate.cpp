#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "motzkin/groundstate.hpp"
#include "motzkin/schmidt.hpp"

using namespace motzkin;

namespace {

double weight_of(const WeightedEnsemble &ens, const char *text) {
  const auto w = ColoredWalk::parse(text, ens.spec.s);
  for (const auto &e : ens.entries)
    if (e.walk == w) return e.weight.value();
  FAIL("walk not in ensemble: " << text);
  return 0.0;
}

// Random complete walk of the given length, by rejection from the enumeration.
ColoredWalk random_walk(int length, std::mt19937_64 &rng) {
  const auto all = enumerate_walks(length, 1, 0);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

}  // namespace

TEST_CASE("uniform walk weights") {
  CHECK(walk_weight_uniform(ColoredWalk::parse("lr"), 2.0).value() == doctest::Approx(2.0));
  CHECK(walk_weight_uniform(ColoredWalk::parse("l0r"), 3.0).value() == doctest::Approx(9.0));
  CHECK(walk_weight_uniform(ColoredWalk::parse("0000"), 7.0).value() == 1.0);
  CHECK_THROWS_AS(walk_weight_uniform(ColoredWalk::parse("l0"), 2.0), std::invalid_argument);
}

TEST_CASE("uniform angle set gives the area weight") {
  for (double t : {0.4, 1.0, 2.2}) {
    const auto spec = ChainSpec::angles(8, AngleDeformation::uniform(7, t));
    for (const auto &w : enumerate_walks(8, 1, 0))
      CHECK(walk_weight_angles(w, spec).log() == doctest::Approx(walk_weight_uniform(w, t).log()).epsilon(1e-12));
  }
}

TEST_CASE("flattening traces replay to the original walk") {
  std::mt19937_64 rng(5);
  for (int len : {2, 6, 10}) {
    for (const auto &w : enumerate_walks(len, 1, 0)) {
      CHECK(replay_from_flat(flatten_canonical(w)) == w);
      CHECK(replay_from_flat(flatten_random(w, rng)) == w);
    }
  }
  MoveTrace bad{2, {{MoveKind::R, 0}}};
  CHECK_THROWS_AS(replay_from_flat(bad), std::logic_error);
}

TEST_CASE("weights do not depend on the flattening order under tuned angles") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int len = 2 * std::uniform_int_distribution<int>(2, 6)(rng);
    const auto spec = generate_tuned_angles(len, 100 + trial, 0.3 + 0.02 * trial);
    const auto w = random_walk(len, rng);
    const double ref = trace_log_weight(flatten_canonical(w), spec.angle_set()).log();
    for (int order = 0; order < 5; ++order)
      CHECK(trace_log_weight(flatten_random(w, rng), spec.angle_set()).log() == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("detuned angles make the weight path dependent") {
  auto spec = generate_tuned_angles(6, 4, 0.7);
  std::get<AngleDeformation>(spec.deformation).theta[2] *= 0.8;
  const auto &a = spec.angle_set();
  // The plateau l 0 r can be flattened on either side of its middle site.
  const auto w = ColoredWalk::parse("0l0r00");
  MoveTrace via_r{6, {{MoveKind::R, 1}, {MoveKind::F, 2}}};
  MoveTrace via_l{6, {{MoveKind::L, 2}, {MoveKind::F, 1}}};
  REQUIRE(replay_from_flat(via_r) == w);
  REQUIRE(replay_from_flat(via_l) == w);
  CHECK(std::abs(trace_log_weight(via_r, a).log() - trace_log_weight(via_l, a).log()) > 1e-3);
}

TEST_CASE("two-site ensembles") {
  for (double t : {0.5, 1.0, 3.0}) {
    const auto ens = build_ground_state(ChainSpec::uniform(2, 1, t));
    REQUIRE(ens.entries.size() == 2);
    CHECK(weight_of(ens, "00") == doctest::Approx(1.0));
    CHECK(weight_of(ens, "lr") == doctest::Approx(t));
    CHECK(ens.norm.value() == doctest::Approx(std::sqrt(1 + t * t)));
  }
  const auto colored = build_ground_state(ChainSpec::uniform(2, 2, 1.0));
  CHECK(colored.entries.size() == 3);
  CHECK(colored.norm.value() == doctest::Approx(std::sqrt(3.0)));

  const auto four = build_ground_state(ChainSpec::uniform(4, 1, 1.0));
  CHECK(four.entries.size() == 9);
  CHECK(four.norm.value() == doctest::Approx(3.0));
}

TEST_CASE("explicit ground state is annihilated by the Hamiltonian") {
  for (double t : {0.5, 1.0, 2.0}) {
    for (int two_n = 2; two_n <= 8; two_n += 2) {
      const auto spec = ChainSpec::uniform(two_n, 1, t);
      CHECK(residual(spec, build_ground_state(spec).state_vector()) < 1e-10);
    }
    for (int two_n = 2; two_n <= 6; two_n += 2) {
      const auto spec = ChainSpec::uniform(two_n, 2, t);
      CHECK(residual(spec, build_ground_state(spec).state_vector()) < 1e-10);
    }
  }
}

TEST_CASE("tuned angle ground states are exact and unique") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int two_n = 2 * std::uniform_int_distribution<int>(1, 4)(rng);
    const auto spec = generate_tuned_angles(two_n, 500 + trial, 0.2 + 0.05 * trial);
    CHECK(residual(spec, build_ground_state(spec).state_vector()) < 1e-10);
    CHECK(diagonalize_low(spec, 2).null_dim == 1);
  }
}

TEST_CASE("ensemble dump") {
  const auto text = dump_ensemble(build_ground_state(ChainSpec::uniform(2, 1, 2.0)));
  CHECK(text.find("# two_n=2\n") != std::string::npos);
  CHECK(text.find("# log_norm=") != std::string::npos);
  CHECK(text.find("0 0\t0\n") != std::string::npos);
  CHECK(text.find("l r\t0.6931471805599453\n") != std::string::npos);
}

TEST_CASE("schmidt_by_svd on two sites") {
  auto sp = schmidt_by_svd(build_ground_state(ChainSpec::uniform(2, 1, 1.0)));
  REQUIRE(sp.groups.size() == 2);
  CHECK(sp.groups[0].m == 0);
  CHECK(sp.groups[0].p == doctest::Approx(0.5));
  CHECK(sp.groups[1].m == 1);
  CHECK(sp.groups[1].p == doctest::Approx(0.5));
  CHECK(sp.issues.empty());

  sp = schmidt_by_svd(build_ground_state(ChainSpec::uniform(2, 2, 1.0)));
  REQUIRE(sp.groups.size() == 2);
  CHECK(sp.groups[0].multiplicity == 1);
  CHECK(sp.groups[0].p == doctest::Approx(1.0 / 3));
  CHECK(sp.groups[1].multiplicity == 2);
  CHECK(sp.groups[1].p == doctest::Approx(1.0 / 3));

  // |00> + t|lr>: the Schmidt numbers are 1/(1+t^2) and t^2/(1+t^2).
  const double t = 3.0;
  sp = schmidt_by_svd(build_ground_state(ChainSpec::uniform(2, 1, t)));
  REQUIRE(sp.groups.size() == 2);
  CHECK(sp.groups[0].p == doctest::Approx(1 / (1 + t * t)));
  CHECK(sp.groups[1].p == doctest::Approx(t * t / (1 + t * t)));
}

TEST_CASE("squared singular values sum to one") {
  for (const auto &spec : {ChainSpec::uniform(8, 1, 0.6), ChainSpec::uniform(6, 2, 1.8), generate_tuned_angles(8, 3, 0.5)}) {
    const auto sp = schmidt_by_svd(build_ground_state(spec));
    double total = 0.0;
    for (double p : sp.squared_singular_values) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    double grouped = 0.0;
    for (const auto &g : sp.groups) grouped += g.multiplicity * g.p;
    CHECK(grouped == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("explicit SVD matches the recurrence at t^2") {
  for (int s : {1, 2}) {
    for (double t : {0.5, 1.0, 1.7}) {
      for (int two_n = 2; two_n <= (s == 1 ? 8 : 6); two_n += 2) {
        const auto sp = schmidt_by_svd(build_ground_state(ChainSpec::uniform(two_n, s, t)));
        const auto prof = ground_state_profile(two_n / 2, s, t);
        CHECK(sp.issues.empty());
        for (const auto &g : sp.groups) {
          CHECK(g.multiplicity == static_cast<int>(std::lround(std::pow(s, g.m))));
          CHECK(g.p == doctest::Approx(prof.p[g.m]).epsilon(1e-8));
        }
        double entropy = 0.0;
        for (double p : sp.squared_singular_values) entropy -= p * std::log(p);
        CHECK(entropy == doctest::Approx(prof.entropy).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("recurrence at the same t is not the ground-state spectrum for t != 1") {
  const auto sp = schmidt_by_svd(build_ground_state(ChainSpec::uniform(2, 1, 2.0)));
  const auto same_t = profile(1, 1, 2.0);
  CHECK(std::abs(sp.groups[1].p - same_t.p[1]) > 0.1);
}
