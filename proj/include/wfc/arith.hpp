#pragma once

// Exact integer, modular and multiplicative-function helpers.

#include <cstdint>
#include <string>
#include <vector>

namespace wfc {

using u128 = unsigned __int128;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

// Primes strictly increasing, exponents >= 1. Empty for q = 1.
using Factorization = std::vector<PrimePower>;

std::string to_string(u128 value);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Throws PreconditionError when gcd(a, m) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

// base^exp, throwing OverflowError instead of wrapping.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
// Largest r with r^k <= n.
std::uint64_t integer_root(std::uint64_t n, unsigned k);

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

Factorization factorize(std::uint64_t q);
std::uint64_t euler_phi(std::uint64_t q);

// Largest e with p^e | n (n > 0).
unsigned valuation(std::uint64_t n, std::uint64_t p);

// gamma = tau + 1 for p > 2 or tau = 0, tau + 2 for p = 2 and tau > 0,
// where p^tau || k.
unsigned gamma_exponent(std::uint64_t p, unsigned k);

// nu = 2 tau_1 + 1 where p^tau_1 || kl.
unsigned nu_exponent(std::uint64_t p, unsigned k, unsigned l);

// Sorted list of x in [0, p^h) with x^k = c (mod p^h). Enumerates directly
// while p^h <= enumeration_budget; above that, lifts the solutions at level
// gamma_exponent(p, k) one digit at a time, which needs p not dividing c.
std::vector<std::uint64_t> kth_power_residue_solutions(
    std::uint64_t p, unsigned h, unsigned k, std::uint64_t c,
    std::uint64_t enumeration_budget = 1'000'000);

// The global parameter tuple. Derived reals are computed on demand.
struct ProblemParams {
  unsigned k = 2;
  unsigned l = 2;
  unsigned t = 8;
  unsigned s = 1;
  unsigned r_extra = 0;
  unsigned xi = 5;
  std::uint64_t n = 1;

  double X() const;  // n^{1/k}
  double P() const;  // X^{1/l}
  int t1() const { return static_cast<int>(t) - static_cast<int>(l); }
  int xi1() const { return static_cast<int>(xi) - 1; }

  // k, l >= 2, t >= 1, xi >= 1, n >= 1.
  void validate() const;
  // The standing local-solubility assumption t >= 4l.
  void require_t_at_least_4l() const;
};

}  // namespace wfc
