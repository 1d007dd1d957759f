#include "wfc/integral.hpp"

#include <cmath>
#include <random>

#include "wfc/convolution.hpp"
#include "wfc/errors.hpp"
#include "wfc/expsums.hpp"

namespace wfc {

namespace {

inline constexpr std::uint64_t kIntegralBudget = 1'000'000;

void check_budget(std::uint64_t n, std::uint64_t budget, const char* who) {
  if (n > budget)
    throw ResourceError(std::string(who) + ": n = " + std::to_string(n) +
                        " exceeds budget " + std::to_string(budget));
}

double dot_at(const std::vector<double>& a, const std::vector<double>& b,
              std::uint64_t n) {
  CompensatedSum sum;
  for (std::uint64_t m = 0; m <= n; ++m) {
    if (m >= a.size() || n - m >= b.size()) continue;
    if (a[m] != 0.0 && b[n - m] != 0.0) sum.add(a[m] * b[n - m]);
  }
  return sum.value();
}

}  // namespace

std::vector<double> power_weights(std::uint64_t n, double exponent, unsigned k) {
  check_budget(n, kWeightBudget, "power_weights");
  std::vector<double> w(n + 1, 0.0);
  for (std::uint64_t m = 1; m <= n; ++m)
    w[m] = std::pow(static_cast<double>(m), exponent) / k;
  return w;
}

UWeights::UWeights(std::uint64_t n, unsigned t, unsigned k, unsigned l)
    : n_(n),
      weights_(power_weights(n, static_cast<double>(t) / (k * l) - 1.0, k)) {
  require(n >= 1, "u_beta: n must be positive");
}

double UWeights::at_zero() const {
  CompensatedSum sum;
  for (double w : weights_) sum.add(w);
  return sum.value();
}

Complex u_beta(double beta, std::uint64_t n, unsigned t, unsigned k, unsigned l) {
  require(std::abs(beta) <= 0.5, "u_beta: need |beta| <= 1/2");
  return UWeights(n, t, k, l)(Phase::from_turns(beta));
}

double c_tl(double t, double l) {
  require(t >= 1 && l >= 1, "c_tl: need t, l >= 1");
  return std::exp(t * std::lgamma(1.0 + 1.0 / l) - std::lgamma(t / l));
}

double gamma_kl(unsigned t, unsigned k, unsigned l) {
  return std::min(1.0, static_cast<double>(t) / (k * l));
}

DecayCheck u_decay_check(std::uint64_t n, unsigned t, unsigned k, unsigned l,
                         std::uint64_t sample_count, std::uint64_t seed) {
  require(sample_count >= 10, "u_decay_check: need at least 10 samples");
  const UWeights u(n, t, k, l);
  const double Pt = std::pow(static_cast<double>(n), static_cast<double>(t) / (k * l));
  const double g = gamma_kl(t, k, l);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  DecayCheck out;
  for (std::uint64_t i = 0; i <= sample_count; ++i) {
    const double beta = i == 0 ? 0.0 : dist(rng);
    const double ratio = std::abs(u(Phase::from_turns(beta))) *
                         std::pow(1.0 + n * std::abs(beta), g) / Pt;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax_beta = beta;
    }
  }
  out.samples = sample_count + 1;
  return out;
}

Complex U_major(Phase alpha, std::int64_t a, std::uint64_t q, std::uint64_t n,
                unsigned k, unsigned l, unsigned t) {
  const Phase beta = alpha - Phase::from_fraction(a, q);
  const FormSumTable form(q, k, l, t);
  return c_tl(t, l) * form.normalized(a) * UWeights(n, t, k, l)(beta);
}

Complex U_major(double alpha, std::int64_t a, std::uint64_t q, std::uint64_t n,
                unsigned k, unsigned l, unsigned t) {
  return U_major(Phase::from_turns(alpha), a, q, n, k, l, t);
}

double x1_of(std::uint64_t n, unsigned k) {
  require(k >= 2, "X_1 needs k >= 2");
  const double X = std::pow(static_cast<double>(n), 1.0 / k);
  return 0.5 * std::pow(2.0 * k, -1.0 / (k - 1)) * X;
}

std::vector<double> v_weights(std::uint64_t n, unsigned k) {
  check_budget(n, kWeightBudget, "v_beta");
  const double x1 = x1_of(n, k);
  // X_1^k < x <= (2 X_1)^k
  const auto lo = static_cast<std::uint64_t>(std::floor(std::pow(x1, k))) + 1;
  const auto hi = static_cast<std::uint64_t>(std::floor(std::pow(2.0 * x1, k)));
  std::vector<double> w(std::max(hi, n) + 1, 0.0);
  for (std::uint64_t x = lo; x <= hi; ++x)
    w[x] = std::pow(static_cast<double>(x), 1.0 / k - 1.0) / k;
  return w;
}

std::vector<double> w_weights(std::uint64_t n, unsigned k) {
  check_budget(n, kWeightBudget, "w_beta");
  std::vector<double> w(n + 1, 0.0);
  for (std::uint64_t x = 2; x <= n; ++x) {
    const double xd = static_cast<double>(x);
    w[x] = std::pow(xd, 1.0 / k - 1.0) / (k * std::log(xd));
  }
  return w;
}

Complex v_beta(double beta, std::uint64_t n, unsigned k) {
  require(std::abs(beta) <= 0.5, "v_beta: need |beta| <= 1/2");
  return weighted_fourier_sum(v_weights(n, k), Phase::from_turns(beta));
}

Complex w_beta(double beta, std::uint64_t n, unsigned k) {
  require(std::abs(beta) <= 0.5, "w_beta: need |beta| <= 1/2");
  return weighted_fourier_sum(w_weights(n, k), Phase::from_turns(beta));
}

std::vector<double> j_prime_exact_all(std::uint64_t n, unsigned s, unsigned xi,
                                      unsigned k, unsigned l) {
  require(s >= 1, "j_prime: s must be positive");
  check_budget(n, kIntegralBudget, "j_prime_exact");
  const auto w = power_weights(n, static_cast<double>(xi) / (k * l) - 1.0, k);
  std::vector<double> acc = w;
  for (unsigned i = 1; i < s; ++i) acc = conv::real_convolve(acc, w, n);
  acc.resize(n + 1, 0.0);
  return acc;
}

double j_prime_exact(std::uint64_t n, unsigned s, unsigned xi, unsigned k, unsigned l) {
  require(s >= 2, "j_prime_exact: need s >= 2");
  check_budget(n, kIntegralBudget, "j_prime_exact");
  if (n < s) return 0.0;
  const auto w = power_weights(n, static_cast<double>(xi) / (k * l) - 1.0, k);
  std::vector<double> acc = w;
  for (unsigned i = 2; i < s; ++i) acc = conv::real_convolve(acc, w, n);
  return dot_at(acc, w, n);
}

MainTerm j_prime_main_term(std::uint64_t n, unsigned s, unsigned xi, unsigned k,
                           unsigned l) {
  require(s >= 2, "j_prime_main_term: need s >= 2");
  require(n >= 1, "j_prime_main_term: n must be positive");
  const double e = static_cast<double>(xi) / (k * l);
  const double nd = static_cast<double>(n);
  MainTerm out;
  out.main = std::exp((s * e - 1.0) * std::log(nd) - s * std::log(static_cast<double>(k)) +
                      s * std::lgamma(e) - std::lgamma(s * e));
  out.B = 1.0 / nd + std::pow(nd, -e);
  return out;
}

SingularIntegral j_singular_exact(std::uint64_t n, unsigned s, unsigned k, unsigned l,
                                  unsigned t) {
  check_budget(n, kIntegralBudget, "j_singular_exact");
  require(n >= 2, "j_singular_exact: n must be at least 2");
  auto v = v_weights(n, k);
  v.resize(n + 1);
  const auto w = w_weights(n, k);
  const auto vv = conv::real_convolve(v, v, n);
  const auto ww = conv::real_convolve(w, w, n);
  const auto vw = conv::real_convolve(vv, ww, n);
  SingularIntegral out;
  if (s == 0) {
    out.value = n < vw.size() ? vw[n] : 0.0;
  } else {
    const auto u = power_weights(n, static_cast<double>(t) / (k * l) - 1.0, k);
    std::vector<double> uu = u;
    for (unsigned i = 1; i < s; ++i) uu = conv::real_convolve(uu, u, n);
    out.value = dot_at(vw, uu, n);
  }
  const double nd = static_cast<double>(n);
  const double logn = std::log(nd);
  out.envelope = std::exp((static_cast<double>(s) * t / (k * l) + 4.0 / k - 1.0) *
                          logn) / (logn * logn);
  out.ratio = out.value / out.envelope;
  return out;
}

}  // namespace wfc
