#pragma once

// Brute-force references. Deliberately naive: nested loops and direct
// definitions, no shared code paths with the fast implementations beyond the
// phase and prime helpers.

#include <cstdint>
#include <vector>

#include "wfc/arith.hpp"
#include "wfc/local.hpp"
#include "wfc/numeric.hpp"

namespace wfc::oracle {

inline constexpr std::uint64_t kEnumerationBudget = 50'000'000;

// sum over r in [1, q]^t of e_q(a T(r)^k)
Complex s_form_direct(std::uint64_t q, std::int64_t a, unsigned k, unsigned l, unsigned t);

// rho_t[m] by enumerating x in [1, m^{1/l}]^t.
std::vector<std::uint64_t> rho_direct(unsigned l, unsigned t, std::uint64_t limit);

// M_n(p^h) for all n by enumerating every variable mod p^h.
std::vector<std::uint64_t> m_n_direct(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                                      unsigned t, unsigned s);
std::vector<std::uint64_t> m_star_n_direct(std::uint64_t p, unsigned h, unsigned k,
                                           unsigned l, unsigned t, unsigned s);

// Ordered solution counts by recursive enumeration of the variable tuples.
// Throws ResourceError once the enumeration exceeds the budget.
std::vector<u128> count_conje_direct(std::uint64_t n_max, unsigned k, unsigned l, unsigned t,
                                     unsigned s, unsigned r_extra,
                                     std::uint64_t budget = kEnumerationBudget);
std::vector<u128> count_theorem13_direct(std::uint64_t n_max, unsigned k, unsigned l,
                                         unsigned xi, unsigned s, bool weighted,
                                         std::uint64_t budget = kEnumerationBudget);

std::vector<u128> convolve_direct(const std::vector<u128>& a, const std::vector<u128>& b);

// k^{-2} sum_{m=1}^{n-1} m^e (n-m)^e with e = xi/kl - 1.
double j_prime_s2_direct(std::uint64_t n, unsigned xi, unsigned k, unsigned l);
// Trapezoid rule for the integral of u(beta)^2 e(-beta n) over [0, 1).
double j_prime_s2_quadrature(std::uint64_t n, unsigned xi, unsigned k, unsigned l,
                             std::uint64_t nodes);
// s = 0 singular integral: sum over x_1 + x_2 + x_3 + x_4 = n of v v w w.
double j_singular_s0_direct(std::uint64_t n, unsigned k);

std::uint64_t vinogradov_direct(const std::vector<std::uint64_t>& set, unsigned s, unsigned k);

struct K2Direct {
  std::uint64_t diagonal = 0;
  std::uint64_t offdiagonal = 0;
};
K2Direct k2_direct(const std::vector<std::uint64_t>& set, std::uint64_t x_lo,
                   std::uint64_t x_hi);

// f(alpha) by looping over x in N^t with T(x) <= cutoff (t <= 3).
Complex f_alpha_direct(Phase alpha, unsigned k, unsigned l, unsigned t, std::uint64_t cutoff);

}  // namespace wfc::oracle
