#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "dtppo/rng.hpp"

using namespace dtppo;

TEST_CASE("same seed reproduces the same stream") {
  Rng a(12345);
  Rng b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(12345);
  Rng d(12345);
  for (int i = 0; i < 100; ++i) CHECK(c.normal() == d.normal());
}

TEST_CASE("different seeds diverge") {
  Rng a(1);
  Rng b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("next_unit stays in [0,1) and is roughly centered") {
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("uniform respects bounds") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-0.05, 0.05);
    REQUIRE(v >= -0.05);
    REQUIRE(v < 0.05);
  }
}

TEST_CASE("normal draws have sane first two moments") {
  Rng rng(11);
  const int n = 40000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::fabs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("uniform_int covers its range uniformly") {
  Rng rng(13);
  std::array<int, 4> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const int v = rng.uniform_int(4);
    REQUIRE(v >= 0);
    REQUIRE(v < 4);
    ++counts[v];
  }
  for (int c : counts) {
    CHECK(c >= static_cast<int>(0.22 * n));
    CHECK(c <= static_cast<int>(0.28 * n));
  }
}

TEST_CASE("categorical follows the given distribution") {
  Rng rng(17);
  const std::vector<double> point{0.0, 1.0, 0.0};
  for (int i = 0; i < 100; ++i) CHECK(rng.categorical(point) == 1);

  const std::vector<double> uniform4{0.25, 0.25, 0.25, 0.25};
  std::array<int, 4> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[rng.categorical(uniform4)];
  for (int c : counts) {
    CHECK(c >= static_cast<int>(0.22 * n));
    CHECK(c <= static_cast<int>(0.28 * n));
  }
}

TEST_CASE("categorical is deterministic given identical state") {
  Rng a(23);
  Rng b(23);
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 50; ++i) CHECK(a.categorical(p) == b.categorical(p));
}

TEST_CASE("shuffle permutes without loss and deterministically") {
  Rng a(29);
  Rng b(29);
  std::vector<int> x(50);
  std::vector<int> y(50);
  for (int i = 0; i < 50; ++i) x[i] = y[i] = i;
  a.shuffle(std::span<int>(x));
  b.shuffle(std::span<int>(y));
  CHECK(x == y);
  std::vector<int> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
  CHECK(x != sorted);  // 50! leaves the identity vanishingly unlikely
}

TEST_CASE("mix_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(mix_seed(42, 0) != mix_seed(43, 0));
}

TEST_CASE("child streams differ from the parent and each other") {
  Rng parent(99);
  Rng c0 = parent.child(0);
  Rng c1 = parent.child(1);
  Rng p2(99);
  CHECK(c0.next_u64() != c1.next_u64());
  CHECK(Rng(parent.seed()).next_u64() == p2.next_u64());
}
