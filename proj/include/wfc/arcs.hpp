#pragma once

// Rational approximation, major/minor arc membership, the generating
// functions f, F, G, g, h, and the sampled diagnostics built on them.

#include <cstdint>
#include <optional>
#include <vector>

#include "wfc/arith.hpp"
#include "wfc/numeric.hpp"
#include "wfc/powersets.hpp"

namespace wfc {

struct Fraction {
  std::int64_t a = 0;
  std::uint64_t q = 1;
};

// Last continued-fraction convergent of alpha with q <= bound, so that
// |alpha - a/q| <= 1/(q bound). alpha is taken as its exact binary value.
Fraction dirichlet_approx(Phase alpha, std::uint64_t bound);
Fraction dirichlet_approx(double alpha, std::uint64_t bound);

enum class ArcClass { major, minor, mM, outside_mM };

struct ArcPoint {
  Phase alpha;
  std::int64_t a = 0;
  std::uint64_t q = 1;
  double beta = 0.0;  // alpha - a/q
  ArcClass cls = ArcClass::minor;
};

// Membership in M(Q): some reduced a/q with q <= Q and |alpha - a/q| <= Q/(qn).
// On success the smallest such q is reported; otherwise the point carries the
// Dirichlet pair with bound floor(Q).
ArcPoint classify_major(Phase alpha, std::uint64_t n, double Q);

// Membership in m_M for X = n^{1/k}: the Dirichlet pair with bound floor(2kX)
// must satisfy |beta| <= (2kqX)^{-1}, and |beta| >= M/(qn) whenever q <= M.
ArcPoint classify_mM(Phase alpha, std::uint64_t n, unsigned k, double M);

enum class Dissection { M, N, P, N_iota };
inline constexpr double kIota = 1.0 / 1000.0;
// Q for M(X), N = M(P^{1/2}), P = M(log P), N_iota = M(P^{1/2 + iota}).
double dissection_Q(Dissection d, const ProblemParams& params);

// alpha * m^k mod 1, exact.
inline Phase power_phase(Phase alpha, std::uint64_t m, unsigned k) {
  Phase out = alpha;
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

// f(alpha) = sum_{m <= floor(X)} rho_t[m] e(alpha m^k); X = P^l = n^{1/k}.
Complex f_alpha(Phase alpha, const ProblemParams& params, const PowerSumTable& table);

struct ShiftedSetPair {
  double C1 = 0.0;
  double C2 = 0.0;
  std::uint64_t P1 = 0;
  std::uint64_t P2 = 0;
  SmoothPowerSumSet S1;  // S_{t_1}(P_1)
  SmoothPowerSumSet S2;  // S_l(P_2)
};

double c1_constant(const ProblemParams& params);
double c2_constant(const ProblemParams& params);
ShiftedSetPair shifted_set_pair(const ProblemParams& params, double eta = kDefaultEta);

// f_m(alpha) = sum_{x in S_1} e(alpha (x + m)^k)
Complex f_m(Phase alpha, std::uint64_t m, const std::vector<std::uint64_t>& S1, unsigned k);
Complex F_alpha(Phase alpha, const ShiftedSetPair& sets, unsigned k);
// gamma_j(m) = alpha binom(k, j) m^{k-j}
Phase gamma_shift(Phase alpha, unsigned k, unsigned j, std::uint64_t m);
// nu^{(k-1)}(x) . gamma(m) = sum_{j=1}^{k-1} x^j gamma_j(m)
Phase binomial_cross_term(Phase alpha, unsigned k, std::uint64_t x, std::uint64_t m);

struct PrimeShiftedSets {
  double C3 = 0.0;
  double P3 = 0.0;
  SmoothPowerSumSet S;               // S_{xi_1}(P_3)
  std::vector<std::uint64_t> primes;  // (P/2, P]
};

double c3_constant(const ProblemParams& params);
PrimeShiftedSets prime_shifted_sets(const ProblemParams& params, double eta = kDefaultEta);
// G(alpha) = sum_{P/2 < p <= P} sum_{x in S} e(alpha (x + p^l)^k)
Complex G_alpha(Phase alpha, const PrimeShiftedSets& sets, unsigned k, unsigned l);

// g over X_1 < x <= 2 X_1 and h over primes p <= X.
Complex g_alpha(Phase alpha, unsigned k, std::uint64_t n);
Complex h_alpha(Phase alpha, unsigned k, std::uint64_t n);

struct SweepResult {
  double max_ratio = 0.0;
  Phase argmax_alpha;
  std::int64_t a = 0;
  std::uint64_t q = 1;
  std::uint64_t samples = 0;
};

// max |f(alpha) - U(alpha,q,a)| / (q P^{t-1} (1 + n|beta|)) over alpha = 0 and
// samples drawn from M(Q) stratified by q (q < P).
SweepResult major_residual_sweep(const ProblemParams& params, double Q,
                                 std::uint64_t sample_count, std::uint64_t seed);

// max |f(alpha)| / (P^t (q^{-1} + P^{-1} + q P^{-kl})^{2^{1-kl}}) with (a, q)
// the Dirichlet pair of bound floor(sqrt n).
SweepResult weyl_bound_sweep(const ProblemParams& params, std::uint64_t sample_count,
                             std::uint64_t seed);

inline constexpr std::uint64_t kVinogradovBudget = 20'000'000;

struct VinogradovResult {
  std::uint64_t count = 0;  // J_{s,r}^{(k)}(Y)
  std::uint64_t set_size = 0;
  std::uint64_t diagonal = 0;  // s! binom(|S|, s)
  double envelope = 0.0;       // |S|^{2s} Y^{-lk(k+1)/2 + l Delta_r}
  double ratio = 0.0;          // count / envelope
};

// Solutions of x_1^j + .. + x_s^j = x_{s+1}^j + .. + x_{2s}^j (1 <= j <= k)
// over the given set; hashes the s-fold power-vector sums.
std::uint64_t vinogradov_count(const std::vector<std::uint64_t>& set, unsigned s,
                               unsigned k, std::uint64_t budget = kVinogradovBudget);
VinogradovResult vinogradov_mean_value(unsigned s, unsigned k, unsigned r, unsigned l,
                                       std::uint64_t Y, double eta = kDefaultEta,
                                       std::uint64_t budget = kVinogradovBudget);

struct SpacingReport {
  double min_distance = 0.0;  // min ||gamma_{k-1}(x) - gamma_{k-1}(y)|| over S_2
  double constant = 0.0;      // min_distance * X^{k-1}
  std::uint64_t samples = 0;
  std::uint64_t minor_samples = 0;
};

double spacing_at(Phase alpha, const std::vector<std::uint64_t>& S2, unsigned k);
// Minimum over seeded alpha outside M(Q) of the spacing; Q defaults to P^{1/2}.
SpacingReport spacing_diagnostic(const ProblemParams& params, std::uint64_t sample_count,
                                 std::uint64_t seed, std::optional<double> Q = {});

}  // namespace wfc
