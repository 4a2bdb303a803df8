#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "cpsrel/architecture.hpp"
#include "cpsrel/block.hpp"
#include "cpsrel/errors.hpp"

using namespace cpsrel;

namespace {

// 2^n enumeration oracle for "at least k of n heterogeneous parts work".
double k_of_n_brute_force(std::size_t k, const std::vector<double>& parts) {
  const std::size_t n = parts.size();
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t up = 0;
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        ++up;
        p *= parts[i];
      } else {
        p *= 1.0 - parts[i];
      }
    }
    if (up >= k) total += p;
  }
  return total;
}

Component constant_component(const std::string& id, double lambda) {
  return Component(id, id, ModuleKind::Other, ConstantRate(lambda));
}

CpsArchitecture simple_arch(double lambda, double mission) {
  return CpsArchitecture{
      Block::leaf(constant_component("s", lambda)),
      Block::leaf(constant_component("a", lambda)),
      Block::leaf(constant_component("n", lambda)),
      Block::leaf(constant_component("sw", 0.0)),
      Block::leaf(constant_component("hw", lambda)),
      Block::leaf(constant_component("si", 0.0)),
      CombinerMode::product(),
      mission,
      std::nullopt};
}

}  // namespace

TEST_CASE("series reliability") {
  CHECK(series_reliability({0.9, 0.9, 0.9}) ==
        doctest::Approx(0.729).epsilon(1e-15));
  CHECK(series_reliability({1.0, 0.42}) == 0.42);
  CHECK_THROWS_AS(series_reliability({}), ValidationError);
  CHECK_THROWS_AS(series_reliability({0.5, 1.5}), ValidationError);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> parts(6);
    for (auto& p : parts) p = unit(rng);
    double expect = 1.0;
    for (double p : parts) expect *= p;
    CHECK(series_reliability(parts) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(series_reliability(parts) <=
          *std::min_element(parts.begin(), parts.end()));
  }
}

TEST_CASE("parallel reliability") {
  CHECK(parallel_reliability({0.8, 0.8}) ==
        doctest::Approx(0.96).epsilon(1e-15));
  CHECK(parallel_reliability({0.0, 0.37}) ==
        doctest::Approx(0.37).epsilon(1e-15));
  CHECK(parallel_reliability({0.9, 0.9}) ==
        doctest::Approx(0.99).epsilon(1e-15));
  CHECK(parallel_reliability({0.9, 0.9}) > parallel_reliability({0.9}));
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> parts(5);
    for (auto& p : parts) p = unit(rng);
    CHECK(parallel_reliability(parts) >=
          *std::max_element(parts.begin(), parts.end()));
  }
}

TEST_CASE("k-of-n reliability") {
  CHECK(k_of_n_reliability(2, {0.9, 0.9, 0.9}) ==
        doctest::Approx(0.972).epsilon(1e-12));
  CHECK_THROWS_AS(k_of_n_reliability(0, {0.9}), ValidationError);
  CHECK_THROWS_AS(k_of_n_reliability(3, {0.9, 0.9}), ValidationError);

  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> n_dist(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = n_dist(rng);
    std::vector<double> parts(n);
    for (auto& p : parts) p = unit(rng);
    std::uniform_int_distribution<std::size_t> k_dist(1, n);
    const std::size_t k = k_dist(rng);
    CHECK(k_of_n_reliability(k, parts) ==
          doctest::Approx(k_of_n_brute_force(k, parts)).epsilon(1e-12));
    // boundary collapses
    CHECK(k_of_n_reliability(1, parts) ==
          doctest::Approx(parallel_reliability(parts)).epsilon(1e-12));
    CHECK(k_of_n_reliability(n, parts) ==
          doctest::Approx(series_reliability(parts)).epsilon(1e-12));
  }
}

TEST_CASE("k-of-n is non-increasing in k") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> parts(8);
    for (auto& p : parts) p = unit(rng);
    double prev = 1.0;
    for (std::size_t k = 1; k <= parts.size(); ++k) {
      const double r = k_of_n_reliability(k, parts);
      CHECK(r <= prev + 1e-15);
      prev = r;
    }
  }
}

TEST_CASE("evaluate_block") {
  const double mission = 1000.0;
  SUBCASE("ideal leaf") {
    CHECK(evaluate_block(Block::leaf(constant_component("x", 0.0)), mission) ==
          1.0);
  }
  SUBCASE("parallel of two identical leaves") {
    const double r = std::exp(-0.1);
    Block b = Block::parallel({Block::leaf(constant_component("x1", 1e-4)),
                               Block::leaf(constant_component("x2", 1e-4))});
    CHECK(evaluate_block(b, mission) ==
          doctest::Approx(1.0 - (1.0 - r) * (1.0 - r)).epsilon(1e-14));
    CHECK(evaluate_block(b, mission) ==
          doctest::Approx(0.9909440829939373).epsilon(1e-12));
  }
  SUBCASE("mission zero is 1") {
    Block b = Block::series({Block::leaf(constant_component("x1", 0.1)),
                             Block::parallel(
                                 {Block::leaf(constant_component("x2", 0.2)),
                                  Block::leaf(constant_component("x3", 0.3))})});
    CHECK(evaluate_block(b, 0.0) == 1.0);
  }
  SUBCASE("single-child groups reduce to the child") {
    Block leaf = Block::leaf(constant_component("x", 2e-4));
    const double r = evaluate_block(leaf, mission);
    CHECK(evaluate_block(Block::series({leaf}), mission) == r);
    CHECK(evaluate_block(Block::parallel({leaf}), mission) == r);
    CHECK(evaluate_block(Block::k_of_n(1, {leaf}), mission) == r);
  }
  SUBCASE("model errors carry the component id") {
    Block b = Block::leaf(Component("sh-unit", "", ModuleKind::Other,
                                    PowerLaw(0.01, 2.0)));
    CHECK_THROWS_AS(evaluate_block(b, -1.0), ValidationError);
  }
}

TEST_CASE("evaluate_block order invariance and monotone substitution") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> lam(1e-6, 2e-3);
  const double mission = 500.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Block> leaves;
    for (int i = 0; i < 5; ++i) {
      leaves.push_back(
          Block::leaf(constant_component("c" + std::to_string(i), lam(rng))));
    }
    auto shuffled = leaves;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(evaluate_block(Block::series(leaves), mission) ==
          doctest::Approx(evaluate_block(Block::series(shuffled), mission))
              .epsilon(1e-14));
    CHECK(evaluate_block(Block::parallel(leaves), mission) ==
          doctest::Approx(evaluate_block(Block::parallel(shuffled), mission))
              .epsilon(1e-14));

    // swapping any leaf model for a pointwise-better one never hurts
    Block base = Block::k_of_n(3, leaves);
    const double before = evaluate_block(base, mission);
    auto improved = leaves;
    improved[trial % 5] =
        Block::leaf(constant_component("c" + std::to_string(trial % 5), 0.0));
    CHECK(evaluate_block(Block::k_of_n(3, improved), mission) >=
          before - 1e-15);
  }
}

TEST_CASE("duplicate leaf ids are rejected") {
  Block b = Block::series({Block::leaf(constant_component("dup", 1e-4)),
                           Block::leaf(constant_component("dup", 2e-4))});
  CHECK_THROWS_AS(b.validate_unique_ids(), ValidationError);
}

TEST_CASE("cc_reliability modes") {
  const auto product = cc_reliability(0.99, 0.98, 0.97, CombinerMode::product());
  CHECK(product.value == doctest::Approx(0.941094).epsilon(1e-12));
  CHECK(!product.exceeds_unity);

  const auto sum =
      cc_reliability(0.9, 0.9, 0.9, CombinerMode::literal_sum());
  CHECK(sum.value == doctest::Approx(2.7).epsilon(1e-14));
  CHECK(sum.exceeds_unity);

  const auto mean = cc_reliability(
      0.9, 0.9, 0.9,
      CombinerMode::normalized_mean({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}));
  CHECK(mean.value == doctest::Approx(0.9).epsilon(1e-14));

  CHECK_THROWS_AS(CombinerMode::normalized_mean({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(CombinerMode::normalized_mean({-0.5, 1.5}), ValidationError);
  CHECK_THROWS_AS(cc_reliability(1.2, 0.9, 0.9, CombinerMode::product()),
                  ValidationError);
}

TEST_CASE("cps_reliability") {
  SUBCASE("all ideal modules give 1") {
    CHECK(cps_reliability(simple_arch(0.0, 1000.0)) == 1.0);
  }
  SUBCASE("four modules at 0.99 give 0.99^4") {
    const double lambda = -std::log(0.99) / 1000.0;
    const auto b = evaluate_cps(simple_arch(lambda, 1000.0));
    CHECK(b.sensors == doctest::Approx(0.99).epsilon(1e-13));
    CHECK(b.cps_without_data == doctest::Approx(0.96059601).epsilon(1e-10));
  }
  SUBCASE("data term multiplies through") {
    const double lambda = -std::log(0.99) / 1000.0;
    auto arch = simple_arch(lambda, 1000.0);
    arch.data_reliability = 0.98;
    const auto b = evaluate_cps(arch);
    CHECK(*b.cps_with_data ==
          doctest::Approx(b.cps_without_data * 0.98).epsilon(1e-15));
    CHECK(*b.cps_with_data == doctest::Approx(0.9413840898).epsilon(1e-9));
  }
  SUBCASE("literal_sum mode refused without the override") {
    auto arch = simple_arch(1e-4, 1000.0);
    arch.cc_mode = CombinerMode::literal_sum();
    CHECK_THROWS_AS(cps_reliability(arch), ValidationError);
    CHECK_NOTHROW(cps_reliability(arch, /*allow_literal_sum=*/true));
  }
}

TEST_CASE("eq-15 factorization over random architectures") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> lam(0.0, 1e-3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    auto arch = simple_arch(lam(rng), 100.0 + 900.0 * unit(rng));
    const double without = cps_reliability(arch);
    const double r_data = unit(rng);
    arch.data_reliability = r_data;
    CHECK(cps_reliability(arch) ==
          doctest::Approx(without * r_data).epsilon(1e-15));
  }
}
