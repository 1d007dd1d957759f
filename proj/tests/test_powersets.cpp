#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "wfc/errors.hpp"
#include "wfc/oracle.hpp"
#include "wfc/powersets.hpp"

using namespace wfc;

TEST_CASE("rep_count_table examples") {
  const auto table = rep_count_table(2, 2, 10);
  CHECK(table.rho[5] == 2);
  CHECK(table.rho[2] == 1);
  CHECK(table.rho[1] == 0);
  CHECK(table.rho[0] == 0);
}

TEST_CASE("distinct_count examples") {
  CHECK(distinct_count(rep_count_table(1, 1, 7), 7) == 7);
  CHECK(distinct_count(rep_count_table(2, 2, 10), 10) == 4);
  CHECK(distinct_count(rep_count_table(3, 2, 20), 20) == 3);
}

TEST_CASE("convolution matches nested-loop enumeration") {
  for (unsigned l = 1; l <= 3; ++l)
    for (unsigned t = 1; t <= 3; ++t)
      for (std::uint64_t N : {1ULL, 37ULL, 500ULL, 2000ULL}) {
        if (l == 1 && t == 3 && N == 2000) continue;  // 1.3e9 tuples
        CHECK(rep_count_table(l, t, N).rho == oracle::rho_direct(l, t, N));
      }
}

TEST_CASE("distinct_count is monotone in N and t") {
  for (unsigned l : {2u, 3u})
    for (unsigned t = 1; t <= 4; ++t) {
      const auto a = rep_count_table(l, t, 600);
      const auto b = rep_count_table(l, t + 1, 600);
      std::uint64_t prev = 0;
      for (std::uint64_t N = 1; N <= 600; ++N) {
        const auto d = distinct_count(a, N);
        CHECK(d >= prev);
        prev = d;
        if (N >= t + 1) CHECK(distinct_count(b, N) >= distinct_count(a, N - 1));
      }
    }
}

TEST_CASE("smooth_set examples") {
  CHECK(smooth_set(10, 1) == std::vector<std::uint64_t>{1});
  CHECK(smooth_set(10, 2) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(smooth_set(10, 3) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9});
}

TEST_CASE("restricted power sums examples") {
  CHECK(restricted_power_sums_with_bound(1, 2, 4, 2).values ==
        std::vector<std::uint64_t>{1, 4, 16});
  CHECK(restricted_power_sums(1, 2, 1, 0.5).values == std::vector<std::uint64_t>{1});
  CHECK(restricted_power_sums_with_bound(2, 2, 4, 2).values ==
        std::vector<std::uint64_t>{2, 5, 8, 17, 20, 32});
}

TEST_CASE("restricted power sums grow with Y at fixed R") {
  for (std::uint64_t Y = 2; Y < 60; ++Y) {
    const auto small = restricted_power_sums_with_bound(2, 2, Y, 5).values;
    const auto large = restricted_power_sums_with_bound(2, 2, Y + 7, 5).values;
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("restricted power sums against a set-based oracle") {
  const auto base = smooth_set(30, 5);
  std::set<std::uint64_t> expected;
  for (auto a : base)
    for (auto b : base)
      for (auto c : base) expected.insert(a * a * a + b * b * b + c * c * c);
  const auto got = restricted_power_sums_with_bound(3, 3, 30, 5).values;
  CHECK(got == std::vector<std::uint64_t>(expected.begin(), expected.end()));
}

TEST_CASE("delta_r values") {
  CHECK(delta_r(1, 2) == doctest::Approx(1.0));
  CHECK(delta_r(3, 3) == doctest::Approx(0.3678794).epsilon(1e-7));
  CHECK(delta_r(8, 4) == doctest::Approx(0.0497871).epsilon(1e-6));
}

TEST_CASE("density_report examples") {
  const double eta = std::log(2.0) / std::log(4.0);  // R = 2 at Y = 4
  const auto rows = density_report(1, 2, eta, {4});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].R == 2);
  CHECK(rows[0].size == 3);
  CHECK_FALSE(rows[0].pair_exponent.has_value());

  for (const auto& row : density_report(2, 3, 0.3, {1})) CHECK(row.size == 1);

  const auto grow = density_report(3, 2, kDefaultEta, {50, 100, 200});
  for (std::size_t i = 1; i < grow.size(); ++i) CHECK(grow[i].size >= grow[i - 1].size);
}

TEST_CASE("density exponent against the reference on the default grid") {
  for (auto [r, l] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) {
    const auto rows = density_report(r, l, kDefaultEta, default_density_grid());
    for (const auto& row : rows)
      if (row.pair_exponent) CHECK(*row.pair_exponent >= row.reference - 0.5);
  }
}

TEST_CASE("budgets raise ResourceError") {
  CHECK_THROWS_AS(rep_count_table(2, 2, 100, 10), ResourceError);
  CHECK_THROWS_AS(restricted_power_sums_with_bound(4, 2, 2000, 50, 1000), ResourceError);
}

TEST_CASE("table cache round-trips") {
  const auto dir = std::filesystem::temp_directory_path() / "wfc_test_powersets";
  std::filesystem::create_directories(dir);
  const auto path = dir / "l2_t3_N1000.bin";
  const auto table = rep_count_table(2, 3, 1000);
  write_table(path, table);
  const auto back = read_table(path);
  CHECK(back.l == 2);
  CHECK(back.t == 3);
  CHECK(back.limit == 1000);
  CHECK(back.rho == table.rho);
  std::filesystem::remove_all(dir);
}
