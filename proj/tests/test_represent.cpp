#include <doctest.h>

#include <cmath>
#include <random>

#include "wfc/arcs.hpp"
#include "wfc/convolution.hpp"
#include "wfc/integral.hpp"
#include "wfc/errors.hpp"
#include "wfc/oracle.hpp"
#include "wfc/powersets.hpp"
#include "wfc/represent.hpp"

using namespace wfc;

TEST_CASE("count_conje examples") {
  const auto squares = count_conje(400, 2, 2, 8, 0, 1).counts;
  for (std::uint64_t n = 1; n <= 400; ++n) {
    const std::uint64_t r = integer_root(n, 2);
    CHECK(squares[n] == u128(r * r == n ? 1 : 0));
  }
  const auto one = count_conje(200, 2, 2, 8, 1, 0).counts;
  CHECK(one[64] == 1);
  for (std::uint64_t n = 0; n < 64; ++n) CHECK(one[n] == 0);
  const auto two = count_conje(500, 2, 2, 8, 2, 0).counts;
  for (std::uint64_t n = 0; n < 128; ++n) CHECK(two[n] == 0);
}

TEST_CASE("count_conje equals brute force") {
  struct C {
    unsigned k, l, t, s, r;
    std::uint64_t n;
  };
  for (auto c : {C{2, 2, 2, 1, 0, 5000}, C{2, 2, 4, 2, 0, 5000}, C{2, 2, 8, 1, 1, 5000},
                 C{3, 2, 4, 2, 1, 5000}, C{2, 3, 2, 3, 1, 5000}, C{2, 2, 1, 8, 0, 5000},
                 C{2, 2, 4, 4, 0, 1000}})
    CHECK(count_conje(c.n, c.k, c.l, c.t, c.s, c.r).counts ==
          oracle::count_conje_direct(c.n, c.k, c.l, c.t, c.s, c.r));
}

TEST_CASE("count_theorem13 examples and brute force") {
  const auto rho = rep_count_table(2, 5, 100).rho;
  const auto single = count_theorem13(10'000, 2, 2, 5, 1, true).counts;
  for (std::uint64_t n = 0; n <= 10'000; ++n) {
    const std::uint64_t m = integer_root(n, 2);
    CHECK(single[n] == u128(m * m == n ? rho[m] : 0));
  }
  const auto weighted = count_theorem13(5000, 2, 2, 5, 2, true).counts;
  const auto unweighted = count_theorem13(5000, 2, 2, 5, 2, false).counts;
  for (std::uint64_t n = 0; n <= 5000; ++n) CHECK(unweighted[n] <= weighted[n]);
  CHECK(weighted == oracle::count_theorem13_direct(5000, 2, 2, 5, 2, true));
  CHECK(unweighted == oracle::count_theorem13_direct(5000, 2, 2, 5, 2, false));
  CHECK(count_theorem13(3000, 3, 2, 4, 3, true).counts ==
        oracle::count_theorem13_direct(3000, 3, 2, 4, 3, true));
}

TEST_CASE("count budget") {
  CHECK_THROWS_AS(count_conje(kCountBudget + 1, 2, 2, 8, 1, 0), ResourceError);
}

TEST_CASE("NTT convolution equals schoolbook") {
  std::mt19937_64 rng(21);
  for (std::size_t len : {1, 2, 3, 64, 777, 2048})
    for (int bits : {1, 31, 50, 58}) {
      std::vector<u128> a(len), b(len);
      for (auto& x : a) x = rng() >> (64 - bits);
      for (auto& x : b) x = rng() >> (64 - bits);
      const auto direct = oracle::convolve_direct(a, b);
      CHECK(conv::convolve(a, b, 2 * len, conv::Method::ntt) == direct);
      CHECK(conv::convolve(a, b, 2 * len, conv::Method::schoolbook) == direct);
      CHECK(conv::convolve(a, b, len / 2, conv::Method::ntt) ==
            std::vector<u128>(direct.begin(), direct.begin() + len / 2 + 1));
    }
  // 2048 products near 2^126 no longer fit
  const std::vector<u128> big(2048, u128(1) << 63);
  CHECK_THROWS_AS(conv::convolve(big, big, 4096, conv::Method::ntt), OverflowError);
}

TEST_CASE("support convolution matches counts") {
  const auto counts = count_conje(20'000, 2, 2, 8, 2, 1).counts;
  const auto support = support_conje(20'000, 2, 2, 8, 2, 1);
  for (std::uint64_t n = 0; n <= 20'000; ++n) CHECK((support[n] != 0) == (counts[n] != 0));
}

TEST_CASE("positivity window for t = 8, s = 11, four extra squares") {
  const auto w = positivity_window(2, 2, 8, 11, 4);
  REQUIRE(w.N0.has_value());
  CHECK(*w.N0 <= 1'000'000);
  const auto support = support_conje(*w.N0 + 1000, 2, 2, 8, 11, 4);
  for (std::uint64_t n = *w.N0; n <= *w.N0 + 1000; ++n) CHECK(support[n] != 0);
  MESSAGE("N0 = " << *w.N0);
}

TEST_CASE("main-term comparison") {
  CHECK(C_klxi(2, 2, 4, 2) == doctest::Approx(0.25 * std::pow(c_tl(4, 2), 2)));
  const auto pt = main_term_ratio(20'000, 2, 2, 5, 6);
  CHECK(pt.count > 0);
  if (pt.series > 0) {
    REQUIRE(pt.ratio.has_value());
    CHECK(*pt.ratio == doctest::Approx(pt.count / pt.main));
  } else {
    CHECK_FALSE(pt.ratio.has_value());
  }
  const auto counts = count_theorem13(4000, 2, 2, 5, 6);
  const SingularSeries series({2, 2, 5, 6}, SeriesKind::prime_variant, 50);
  const auto w = window_ratio(counts, series, 2000, 4000, 2, 2, 5, 6);
  CHECK(w.flagged <= 2001);
  CHECK(w.ratio > 0);
}

TEST_CASE("scaling exponent of the weighted count") {
  struct C {
    unsigned xi, s;
  };
  for (auto c : {C{4, 2}, C{3, 2}, C{2, 4}}) {
    const auto near = scaling_slope(5000, 2, 2, c.xi, c.s);
    const auto far = scaling_slope(50'000, 2, 2, c.xi, c.s);
    MESSAGE("xi=" << c.xi << " s=" << c.s << " slopes " << near.slope << ", " << far.slope
                  << " expected " << far.expected);
    CHECK(std::abs(far.slope - far.expected) < std::abs(near.slope - near.expected));
    CHECK(std::abs(far.slope - far.expected) <= 0.1);
  }
}

TEST_CASE("Q(m) table") {
  ProblemParams p;
  p.k = 2;
  p.l = 2;
  p.t = 8;
  p.n = 1'000'000;
  const auto one = q_m_table(p, 1u);
  const auto sets = shifted_set_pair(p);
  std::vector<u128> direct(one.Q.counts.size(), 0);
  for (auto y : sets.S1.values)
    for (auto z : sets.S2.values) ++direct[(y + z) * (y + z)];
  CHECK(one.Q.counts == direct);
  CHECK(one.mass_ok);

  const auto full = q_m_table(p);
  CHECK(full.mass_ok);
  CHECK(full.support_max <= full.support_bound);
  CHECK(full.support_claim);
  CHECK(2 * full.support_bound <= p.n);
}

TEST_CASE("k = 2 mean value") {
  const auto single = k2_mean_value_for({7}, 5, 10);
  CHECK(single.diagonal == 6);
  CHECK(single.offdiagonal == 0);

  const std::vector<std::uint64_t> set = restricted_power_sums(2, 2, 6).values;
  const auto v = k2_mean_value_for(set, 20, 40);
  std::uint64_t pairs = 0;
  for (auto a : set)
    for (auto b : set)
      for (auto c : set)
        for (auto d : set) pairs += a * a + b * b == c * c + d * d;
  CHECK(v.diagonal == 21 * pairs);
  const auto direct = oracle::k2_direct(set, 20, 40);
  CHECK(v.diagonal == direct.diagonal);
  CHECK(v.offdiagonal == direct.offdiagonal);

  const auto paper = k2_mean_value(2, 100, 2);
  CHECK(paper.x_count == 51);
  CHECK(paper.Y == 10);
}
