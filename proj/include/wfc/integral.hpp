#pragma once

// Weighted sums u, v, w, the major-arc approximant U(alpha, q, a), and the
// singular integrals J'_s(n) and J(n) evaluated as exact weighted counts.

#include <cstdint>
#include <vector>

#include "wfc/numeric.hpp"

namespace wfc {

inline constexpr std::uint64_t kWeightBudget = 10'000'000;

// weight[m] = m^{exponent} / k for m in [1, n]; weight[0] = 0.
std::vector<double> power_weights(std::uint64_t n, double exponent, unsigned k);

// u(beta) = k^{-1} sum_{m<=n} m^{t/kl - 1} e(beta m), with the weights cached.
class UWeights {
 public:
  UWeights(std::uint64_t n, unsigned t, unsigned k, unsigned l);
  Complex operator()(Phase beta) const { return weighted_fourier_sum(weights_, beta); }
  double at_zero() const;
  std::uint64_t n() const { return n_; }

 private:
  std::uint64_t n_;
  std::vector<double> weights_;
};

Complex u_beta(double beta, std::uint64_t n, unsigned t, unsigned k, unsigned l);

// Gamma(1 + 1/l)^t / Gamma(t/l)
double c_tl(double t, double l);
// min(1, t/kl)
double gamma_kl(unsigned t, unsigned k, unsigned l);

struct DecayCheck {
  double max_ratio = 0.0;
  double argmax_beta = 0.0;
  std::uint64_t samples = 0;
};

// max over beta in {0} and sample_count seeded uniform draws from
// [-1/2, 1/2] of |u(beta)| (1 + n|beta|)^{gamma_kl} / P^t, P^t = n^{t/kl}.
DecayCheck u_decay_check(std::uint64_t n, unsigned t, unsigned k, unsigned l,
                         std::uint64_t sample_count, std::uint64_t seed);

// c_{t,l} q^{-t} S(q,a) u(alpha - a/q).
Complex U_major(Phase alpha, std::int64_t a, std::uint64_t q, std::uint64_t n,
                unsigned k, unsigned l, unsigned t);
Complex U_major(double alpha, std::int64_t a, std::uint64_t q, std::uint64_t n,
                unsigned k, unsigned l, unsigned t);

// X_1 = 2^{-1} (2k)^{-1/(k-1)} X with X = n^{1/k}.
double x1_of(std::uint64_t n, unsigned k);

// Weight vectors indexed by x in [0, n].
std::vector<double> v_weights(std::uint64_t n, unsigned k);
std::vector<double> w_weights(std::uint64_t n, unsigned k);

Complex v_beta(double beta, std::uint64_t n, unsigned k);
Complex w_beta(double beta, std::uint64_t n, unsigned k);

// k^{-s} sum over m_1 + ... + m_s = n, m_i >= 1, of prod m_i^{xi/kl - 1}.
double j_prime_exact(std::uint64_t n, unsigned s, unsigned xi, unsigned k, unsigned l);
// The same for every n' <= n (index n').
std::vector<double> j_prime_exact_all(std::uint64_t n, unsigned s, unsigned xi,
                                      unsigned k, unsigned l);

struct MainTerm {
  double main = 0.0;  // n^{s xi/kl - 1} k^{-s} Gamma(xi/kl)^s / Gamma(s xi/kl)
  double B = 0.0;     // 1/n + n^{-xi/kl}
};
MainTerm j_prime_main_term(std::uint64_t n, unsigned s, unsigned xi, unsigned k,
                           unsigned l);

struct SingularIntegral {
  double value = 0.0;
  double envelope = 0.0;  // P^{st} X^4 n^{-1} (log n)^{-2}
  double ratio = 0.0;     // value / envelope
};

// J(n): two v-weights, two w-weights and s u-weights convolved at n.
SingularIntegral j_singular_exact(std::uint64_t n, unsigned s, unsigned k, unsigned l,
                                  unsigned t);

}  // namespace wfc
