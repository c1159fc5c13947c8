#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "pursuit/rng.hpp"

using namespace pursuit;

TEST_CASE("identical seeds give identical streams", "[rng]") {
  rng::Xorshift64Star a(123456);
  rng::Xorshift64Star b(123456);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

  rng::Xorshift64Star c(123456), d(123457);
  bool differ = false;
  for (int i = 0; i < 10 && !differ; ++i) differ = c.next_u64() != d.next_u64();
  REQUIRE(differ);
}

TEST_CASE("unit draws stay in range", "[rng]") {
  rng::Xorshift64Star gen(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = gen.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = gen.next_open_unit();
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("gaussian draws have plausible moments", "[rng]") {
  rng::Xorshift64Star gen(17);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = gen.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  REQUIRE(std::abs(mean) < 0.01);
  REQUIRE(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("seed mixing is stable across sessions", "[rng]") {
  // pinned outputs; any change here silently breaks stored experiment seeds
  REQUIRE(rng::mix64(0) == 0ull);
  REQUIRE(rng::combine(1, 2) != rng::combine(2, 1));
  REQUIRE(rng::combine(0, 0) == rng::mix64(rng::kGolden));
}

TEST_CASE("next_below covers the range", "[rng]") {
  rng::Xorshift64Star gen(21);
  bool hit_low = false, hit_high = false;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t v = gen.next_below(7);
    REQUIRE(v < 7);
    hit_low = hit_low || v == 0;
    hit_high = hit_high || v == 6;
  }
  REQUIRE(hit_low);
  REQUIRE(hit_high);
}
