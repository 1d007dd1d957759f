#include <doctest.h>

#include <numeric>
#include <random>

#include "wfc/arith.hpp"
#include "wfc/errors.hpp"

using namespace wfc;

namespace {

std::uint64_t phi_by_count(std::uint64_t q) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= q; ++a) c += std::gcd(a, q) == 1;
  return c;
}

std::size_t solutions_by_enumeration(std::uint64_t m, unsigned k, std::uint64_t c) {
  std::size_t n = 0;
  for (std::uint64_t x = 0; x < m; ++x) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < k; ++i) v = v * x % m;
    n += v == c % m;
  }
  return n;
}

}  // namespace

TEST_CASE("factorize examples") {
  CHECK(factorize(1).empty());
  CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
  CHECK(factorize(97) == Factorization{{97, 1}});
  CHECK(factorize(1ULL << 40) == Factorization{{2, 40}});
}

TEST_CASE("euler_phi examples and counting oracle") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(12) == 4);
  for (std::uint64_t q = 1; q <= 300; ++q) CHECK(euler_phi(q) == phi_by_count(q));
}

TEST_CASE("euler_phi is multiplicative on sampled coprime pairs") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(1, 10'000);
  int pairs = 0;
  while (pairs < 500) {
    const auto a = pick(rng), b = pick(rng);
    if (std::gcd(a, b) != 1) continue;
    CHECK(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
    ++pairs;
  }
}

TEST_CASE("gamma and nu exponents") {
  CHECK(gamma_exponent(5, 3) == 1);
  CHECK(gamma_exponent(2, 2) == 3);
  CHECK(gamma_exponent(3, 6) == 2);
  CHECK(nu_exponent(5, 2, 2) == 1);
  CHECK(nu_exponent(2, 2, 2) == 5);
  CHECK(nu_exponent(3, 3, 2) == 3);
  for (std::uint32_t p : primes_up_to(100))
    for (unsigned k = 2; k <= 10; ++k)
      for (unsigned l = 2; l <= 10; ++l) CHECK(gamma_exponent(p, k) <= nu_exponent(p, k, l));
}

TEST_CASE("k-th power residue solutions") {
  CHECK(kth_power_residue_solutions(2, 3, 2, 1) == std::vector<std::uint64_t>{1, 3, 5, 7});
  CHECK(kth_power_residue_solutions(5, 1, 3, 2) == std::vector<std::uint64_t>{3});
  CHECK(kth_power_residue_solutions(5, 1, 2, 3).empty());
  CHECK_THROWS_AS(kth_power_residue_solutions(6, 1, 2, 1), PreconditionError);
}

TEST_CASE("solution counts of x^k = c are stable under lifting when p does not divide kc") {
  for (std::uint64_t p : {3, 5, 7, 11})
    for (unsigned k : {2u, 3u, 4u}) {
      if (k % p == 0) continue;
      for (std::uint64_t c = 1; c < p; ++c) {
        const std::size_t base = solutions_by_enumeration(p, k, c);
        std::uint64_t m = p;
        for (unsigned h = 1; m <= 100'000; ++h, m *= p) {
          const auto roots = kth_power_residue_solutions(p, h, k, c);
          CHECK(roots.size() == base);
          CHECK(solutions_by_enumeration(m, k, c) == base);
        }
      }
    }
}

TEST_CASE("lifting past the enumeration budget agrees with enumeration") {
  const auto lifted = kth_power_residue_solutions(3, 9, 2, 7, 100);
  const auto direct = kth_power_residue_solutions(3, 9, 2, 7);
  auto sorted = lifted;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == direct);
}

TEST_CASE("overflow is rejected, not wrapped") {
  CHECK_THROWS_AS(checked_pow(10, 20), OverflowError);
  CHECK_THROWS_AS(checked_mul(1ULL << 40, 1ULL << 30), OverflowError);
  CHECK(checked_pow(10, 19) == 10'000'000'000'000'000'000ULL);
}

TEST_CASE("integer roots are exact at perfect powers") {
  for (std::uint64_t x = 1; x < 2000; ++x) {
    CHECK(integer_root(x * x, 2) == x);
    CHECK(integer_root(x * x - 1, 2) == x - 1);
    CHECK(integer_root(x * x * x, 3) == x);
  }
  CHECK(integer_root(~0ULL, 2) == 4294967295ULL);
  CHECK(integer_root(~0ULL, 1) == ~0ULL);
}

TEST_CASE("u128 to string") {
  CHECK(to_string(u128(0)) == "0");
  CHECK(to_string(u128(1) << 100) == "1267650600228229401496703205376");
}
