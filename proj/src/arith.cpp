#include "wfc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wfc/errors.hpp"

namespace wfc {

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  require(m >= 1, "inverse_mod: modulus must be positive");
  if (m == 1) return 0;
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    std::swap(old_r, r);
    r -= quotient * old_r;
    std::swap(old_s, s);
    s -= quotient * old_s;
  }
  require(old_r == 1, "inverse_mod: argument not invertible");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowError("integer product exceeds 64 bits");
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

std::uint64_t integer_root(std::uint64_t n, unsigned k) {
  require(k >= 1, "integer_root: k must be positive");
  if (k == 1 || n <= 1) return n;
  auto fits = [&](std::uint64_t r) {
    u128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= r;
      if (acc > n) return false;
    }
    return true;
  };
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n),
                                               1.0L / k));
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  if (limit > 4'000'000'000ULL)
    throw ResourceError("primes_up_to: sieve limit too large");
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

Factorization factorize(std::uint64_t q) {
  require(q >= 1, "factorize: q must be positive");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= q; ++p) {
    while (q % p == 0) {
      primes.push_back(p);
      q /= p;
    }
  }
  split(q, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

std::uint64_t euler_phi(std::uint64_t q) {
  std::uint64_t phi = q;
  for (const auto& [p, e] : factorize(q)) phi = phi / p * (p - 1);
  return phi;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  require(n > 0 && p >= 2, "valuation: need n > 0 and p >= 2");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

unsigned gamma_exponent(std::uint64_t p, unsigned k) {
  require(is_prime(p), "gamma_exponent: p must be prime");
  const unsigned tau = valuation(k, p);
  if (p > 2 || tau == 0) return tau + 1;
  return tau + 2;
}

unsigned nu_exponent(std::uint64_t p, unsigned k, unsigned l) {
  require(is_prime(p), "nu_exponent: p must be prime");
  const unsigned tau1 = valuation(static_cast<std::uint64_t>(k) * l, p);
  return 2 * tau1 + 1;
}

std::vector<std::uint64_t> kth_power_residue_solutions(
    std::uint64_t p, unsigned h, unsigned k, std::uint64_t c,
    std::uint64_t enumeration_budget) {
  require(is_prime(p), "kth_power_residue_solutions: p must be prime");
  require(h >= 1 && k >= 2, "kth_power_residue_solutions: need h >= 1, k >= 2");
  const std::uint64_t modulus = checked_pow(p, h);
  require(modulus <= (1ULL << 63), "kth_power_residue_solutions: p^h above 2^63");
  require(c < modulus, "kth_power_residue_solutions: c must lie in [0, p^h)");

  std::vector<std::uint64_t> roots;
  if (modulus <= enumeration_budget) {
    for (std::uint64_t x = 0; x < modulus; ++x)
      if (pow_mod(x, k, modulus) == c) roots.push_back(x);
    return roots;
  }
  if (c % p == 0)
    throw ResourceError(
        "kth_power_residue_solutions: p^h exceeds the enumeration budget and "
        "p | c, so lifting does not apply");

  // A unit root mod p^j lifts to the p candidates x + i p^j mod p^{j+1}.
  const unsigned base_level = std::min(gamma_exponent(p, k), h);
  std::uint64_t level_modulus = checked_pow(p, base_level);
  require(level_modulus <= enumeration_budget,
          "kth_power_residue_solutions: base level exceeds enumeration budget");
  for (std::uint64_t x = 0; x < level_modulus; ++x)
    if (pow_mod(x, k, level_modulus) == c % level_modulus) roots.push_back(x);
  for (unsigned level = base_level; level < h; ++level) {
    const std::uint64_t next_modulus = level_modulus * p;
    const std::uint64_t target = c % next_modulus;
    std::vector<std::uint64_t> lifted;
    for (std::uint64_t x : roots) {
      for (std::uint64_t i = 0; i < p; ++i) {
        const std::uint64_t y = x + i * level_modulus;
        if (pow_mod(y, k, next_modulus) == target) lifted.push_back(y);
      }
    }
    roots = std::move(lifted);
    level_modulus = next_modulus;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double ProblemParams::X() const {
  return std::pow(static_cast<double>(n), 1.0 / k);
}

double ProblemParams::P() const { return std::pow(X(), 1.0 / l); }

void ProblemParams::validate() const {
  require(k >= 2, "k must be at least 2");
  require(l >= 2, "l must be at least 2");
  require(t >= 1, "t must be at least 1");
  require(xi >= 1, "xi must be at least 1");
  require(n >= 1, "n must be at least 1");
}

void ProblemParams::require_t_at_least_4l() const {
  require(t >= 4 * l, "standing assumption t >= 4l violated");
}

}  // namespace wfc
