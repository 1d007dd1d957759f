#pragma once

// Complete exponential sums S_k(q,a), S_k(q,a,-u), S(q,a), W(q,a), the
// weight w_k(q) and the split S(p^h,a) = p^{(t-1)h} S_k(p^h,a) + E(p^h,a).

#include <cstdint>
#include <vector>

#include "wfc/numeric.hpp"

namespace wfc {

inline constexpr std::uint64_t kFormSumBudget = 5000;

// e_q(j) for any integer j, reduced exactly before the trig call.
Complex root_of_unity(std::int64_t j, std::uint64_t q);

// sum_{r=1}^{q} e_q(a r^k); requires gcd(a, q) = 1.
Complex s_k(std::uint64_t q, std::int64_t a, unsigned k);
// sum_{r=1}^{q} e_q(a r^k - u r); no coprimality requirement.
Complex s_k_linear(std::uint64_t q, std::int64_t a, std::int64_t u, unsigned k);
// sum over r coprime to q of e_q(a r^k); requires gcd(a, q) = 1.
Complex w_q(std::uint64_t q, std::int64_t a, unsigned k);

// S(q, a) for every a at one modulus. Built from the tables S_l(q, u) and
// the u-sum  q^{-1} sum_u S_l(q,u)^t S_k(q,a,-u); after an O(q^2)
// precomputation each value costs O(q).
class FormSumTable {
 public:
  FormSumTable(std::uint64_t q, unsigned k, unsigned l, unsigned t);

  std::uint64_t modulus() const { return q_; }
  // S(q, a); requires gcd(a, q) = 1.
  Complex value(std::int64_t a) const;
  // q^{-t} S(q, a)
  Complex normalized(std::int64_t a) const;
  // S_l(q, u) for u in [0, q).
  const std::vector<Complex>& single_sums() const { return single_; }

 private:
  std::uint64_t q_;
  unsigned k_;
  unsigned t_;
  std::vector<Complex> single_;
  // weight_[m] = q^{-1} sum_{r : r^k = m} sum_u S_l(q,u)^t e_q(-u r)
  std::vector<Complex> weight_;
};

Complex s_form(std::uint64_t q, std::int64_t a, unsigned k, unsigned l, unsigned t);

// Multiplicative majorant with w_k(p^{uk+v}) = p^{-u-1} (2 <= v <= k) and
// k p^{-u-1/2} (v = 1).
double w_k_weight(std::uint64_t q, unsigned k);

struct ErrorTermReport {
  Complex E;                // S(p^h,a) - p^{(t-1)h} S_k(p^h,a)
  Complex E_direct;         // p^{-h} sum_{u=1}^{p^h-1} S_l(p^h,u)^t S_k(p^h,a,-u)
  double magnitude = 0.0;   // |E|
  double envelope = 0.0;    // p^{ht - h/k - (t/l - 1)}
};

ErrorTermReport e_error(std::uint64_t p, unsigned h, std::int64_t a, unsigned k,
                        unsigned l, unsigned t);

}  // namespace wfc
