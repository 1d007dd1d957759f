#include "wfc/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "wfc/errors.hpp"
#include "wfc/expsums.hpp"
#include "wfc/integral.hpp"
#include "wfc/parallel.hpp"

namespace wfc {

namespace {

constexpr long double kTwo64 = 18446744073709551616.0L;

// alpha - a/q as a signed real, through the exact phase difference.
double beta_of(Phase alpha, std::int64_t a, std::uint64_t q) {
  return (alpha - Phase::from_fraction(a, q)).signed_turns();
}

std::uint64_t floor_positive(double x) {
  return x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

Fraction dirichlet_approx(Phase alpha, std::uint64_t bound) {
  require(bound >= 1, "dirichlet_approx: bound must be positive");
  // Convergents of raw / 2^64.
  u128 num = alpha.raw();
  u128 den = static_cast<u128>(1) << 64;
  u128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (den != 0) {
    const u128 digit = num / den;
    const u128 p2 = digit * p1 + p0;
    const u128 q2 = digit * q1 + q0;
    if (q2 > bound) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const u128 rem = num % den;
    num = den;
    den = rem;
  }
  return {static_cast<std::int64_t>(p1), static_cast<std::uint64_t>(q1)};
}

Fraction dirichlet_approx(double alpha, std::uint64_t bound) {
  require(alpha >= 0.0 && alpha < 1.0, "dirichlet_approx: alpha must lie in [0, 1)");
  return dirichlet_approx(Phase::from_turns(alpha), bound);
}

ArcPoint classify_major(Phase alpha, std::uint64_t n, double Q) {
  require(n >= 1, "classify: n must be positive");
  require(Q >= 1.0, "classify: Q must be at least 1");
  ArcPoint out;
  out.alpha = alpha;
  const std::uint64_t qmax = floor_positive(Q);
  // |q alpha - a| <= Q/n, i.e. |residual raw| * n <= Q 2^64.
  const long double threshold = static_cast<long double>(Q) * kTwo64;
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    const Phase scaled = alpha * q;
    const auto signed_raw = static_cast<std::int64_t>(scaled.raw());
    const u128 dist = signed_raw < 0 ? static_cast<u128>(-(signed_raw + 1)) + 1
                                     : static_cast<u128>(signed_raw);
    if (static_cast<long double>(dist * n) <= threshold) {
      // Nearest numerator; the smallest q is automatically reduced.
      const u128 rounded = (static_cast<u128>(alpha.raw()) * q + (static_cast<u128>(1) << 63)) >> 64;
      out.q = q;
      out.a = static_cast<std::int64_t>(rounded);
      out.beta = beta_of(alpha, out.a, q);
      out.cls = ArcClass::major;
      return out;
    }
  }
  const Fraction f = dirichlet_approx(alpha, std::max<std::uint64_t>(qmax, 1));
  out.a = f.a;
  out.q = f.q;
  out.beta = beta_of(alpha, f.a, f.q);
  out.cls = ArcClass::minor;
  return out;
}

ArcPoint classify_mM(Phase alpha, std::uint64_t n, unsigned k, double M) {
  require(n >= 1 && k >= 1, "classify: n, k must be positive");
  const long double X = std::pow(static_cast<long double>(n), 1.0L / k);
  const auto bound = static_cast<std::uint64_t>(std::floor(2.0L * k * X));
  const Fraction f = dirichlet_approx(alpha, std::max<std::uint64_t>(bound, 1));
  ArcPoint out;
  out.alpha = alpha;
  out.a = f.a;
  out.q = f.q;
  out.beta = beta_of(alpha, f.a, f.q);
  const long double b = std::abs(static_cast<long double>(out.beta));
  bool member = f.q <= 2.0L * k * X && b <= 1.0L / (2.0L * k * f.q * X);
  if (f.q <= M) member = member && b >= static_cast<long double>(M) / (f.q * n);
  out.cls = member ? ArcClass::mM : ArcClass::outside_mM;
  return out;
}

double dissection_Q(Dissection d, const ProblemParams& params) {
  const double P = params.P();
  switch (d) {
    case Dissection::M:
      return params.X();
    case Dissection::N:
      return std::sqrt(P);
    case Dissection::P:
      return std::log(P);
    case Dissection::N_iota:
      return std::pow(P, 0.5 + kIota);
  }
  return 1.0;
}

Complex f_alpha(Phase alpha, const ProblemParams& params, const PowerSumTable& table) {
  const std::uint64_t cutoff = integer_root(params.n, params.k);
  if (table.l != params.l || table.t != params.t || table.limit < cutoff)
    throw PreconditionError("f_alpha: power-sum table does not cover floor(P^l) = " +
                            std::to_string(cutoff));
  ComplexSum sum;
  for (std::uint64_t m = 1; m <= cutoff; ++m) {
    if (table.rho[m] == 0) continue;
    sum.add(static_cast<double>(table.rho[m]) * power_phase(alpha, m, params.k).e());
  }
  return sum.value();
}

double c1_constant(const ProblemParams& params) {
  require(params.t1() >= 1, "C_1 needs t > l");
  const double k = params.k;
  return std::pow(k * (k + 1) * std::pow(2.0, k + 1) * std::pow(params.t1(), k),
                  -1.0 / (params.l * k));
}

double c2_constant(const ProblemParams& params) {
  const double k = params.k;
  const double l = params.l;
  return std::min(std::pow(2.0 * l * k, -1.0 / l),
                  std::pow(k * (k + 1) * std::pow(2.0, k + 1) * std::pow(l, k),
                           -1.0 / (l * k)));
}

ShiftedSetPair shifted_set_pair(const ProblemParams& params, double eta) {
  ShiftedSetPair out;
  out.C1 = c1_constant(params);
  out.C2 = c2_constant(params);
  const double P = params.P();
  out.P1 = floor_positive(out.C1 * P);
  out.P2 = floor_positive(out.C2 * P);
  // P_i < 1 leaves the set empty.
  if (out.P1 >= 1) out.S1 = restricted_power_sums(params.t1(), params.l, out.P1, eta);
  if (out.P2 >= 1) out.S2 = restricted_power_sums(params.l, params.l, out.P2, eta);
  return out;
}

Complex f_m(Phase alpha, std::uint64_t m, const std::vector<std::uint64_t>& S1, unsigned k) {
  ComplexSum sum;
  for (std::uint64_t x : S1) sum.add(power_phase(alpha, x + m, k).e());
  return sum.value();
}

Complex F_alpha(Phase alpha, const ShiftedSetPair& sets, unsigned k) {
  ComplexSum sum;
  for (std::uint64_t m : sets.S2.values) sum.add(f_m(alpha, m, sets.S1.values, k));
  return sum.value();
}

Phase gamma_shift(Phase alpha, unsigned k, unsigned j, std::uint64_t m) {
  require(j <= k, "gamma_shift: need j <= k");
  std::uint64_t binom = 1;
  for (unsigned i = 1; i <= j; ++i) binom = binom * (k - j + i) / i;
  return power_phase(alpha * binom, m, k - j);
}

Phase binomial_cross_term(Phase alpha, unsigned k, std::uint64_t x, std::uint64_t m) {
  Phase out;
  for (unsigned j = 1; j < k; ++j) out = out + power_phase(gamma_shift(alpha, k, j, m), x, j);
  return out;
}

double c3_constant(const ProblemParams& params) {
  require(params.xi1() >= 1, "C_3 needs xi >= 2");
  const double k = params.k;
  const double l = params.l;
  return std::pow(std::pow(2.0, k + 1) * k * (k + 1), -1.0 / (k * l)) *
         std::pow(params.xi1(), -1.0 / l);
}

PrimeShiftedSets prime_shifted_sets(const ProblemParams& params, double eta) {
  PrimeShiftedSets out;
  out.C3 = c3_constant(params);
  const double P = params.P();
  out.P3 = out.C3 * P;
  if (out.P3 >= 1.0)
    out.S = restricted_power_sums(params.xi1(), params.l, floor_positive(out.P3), eta);
  for (std::uint32_t p : primes_up_to(floor_positive(P)))
    if (p > P / 2) out.primes.push_back(p);
  return out;
}

Complex G_alpha(Phase alpha, const PrimeShiftedSets& sets, unsigned k, unsigned l) {
  ComplexSum sum;
  for (std::uint64_t p : sets.primes)
    sum.add(f_m(alpha, checked_pow(p, l), sets.S.values, k));
  return sum.value();
}

Complex g_alpha(Phase alpha, unsigned k, std::uint64_t n) {
  const double x1 = x1_of(n, k);
  ComplexSum sum;
  const std::uint64_t lo = floor_positive(x1) + 1;
  const std::uint64_t hi = floor_positive(2.0 * x1);
  for (std::uint64_t x = lo; x <= hi; ++x) sum.add(power_phase(alpha, x, k).e());
  return sum.value();
}

Complex h_alpha(Phase alpha, unsigned k, std::uint64_t n) {
  ComplexSum sum;
  for (std::uint32_t p : primes_up_to(integer_root(n, k)))
    sum.add(power_phase(alpha, p, k).e());
  return sum.value();
}

namespace {

SweepResult reduce(const std::vector<double>& ratios, const std::vector<Phase>& alphas,
                   const std::vector<Fraction>& fractions) {
  SweepResult out;
  out.samples = ratios.size();
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (i == 0 || ratios[i] > out.max_ratio) {
      out.max_ratio = ratios[i];
      out.argmax_alpha = alphas[i];
      out.a = fractions[i].a;
      out.q = fractions[i].q;
    }
  }
  return out;
}

}  // namespace

SweepResult major_residual_sweep(const ProblemParams& params, double Q,
                                 std::uint64_t sample_count, std::uint64_t seed) {
  params.validate();
  require(Q >= 1.0, "major_residual_sweep: Q must be at least 1");
  const std::uint64_t n = params.n;
  const double P = params.P();
  const PowerSumTable table =
      rep_count_table(params.l, params.t, integer_root(n, params.k));
  const UWeights u(n, params.t, params.k, params.l);
  const double c = c_tl(params.t, params.l);

  // q < P and q <= Q.
  std::uint64_t qmax = std::min<std::uint64_t>(floor_positive(Q),
                                               static_cast<std::uint64_t>(std::ceil(P)) - 1);
  qmax = std::max<std::uint64_t>(qmax, 1);
  std::vector<std::optional<FormSumTable>> forms(qmax + 1);
  parallel_for(1, qmax + 1, [&](std::size_t q) {
    forms[q].emplace(q, params.k, params.l, params.t);
  });

  std::mt19937_64 rng(seed);
  std::vector<Phase> alphas{Phase()};
  std::vector<Fraction> fractions{Fraction{0, 1}};
  for (std::uint64_t i = 1; i <= sample_count; ++i) {
    const std::uint64_t q = 1 + (i - 1) % qmax;
    std::vector<std::int64_t> units;
    for (std::uint64_t a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) units.push_back(static_cast<std::int64_t>(a));
    const std::int64_t a = units[rng() % units.size()];
    const double width = Q / (static_cast<double>(q) * n);
    const double beta = std::uniform_real_distribution<double>(-width, width)(rng);
    alphas.push_back(Phase::from_fraction(a, q) + Phase::from_turns(beta));
    fractions.push_back({a, q});
  }

  const double scale = std::pow(P, params.t - 1.0);
  std::vector<double> ratios(alphas.size());
  parallel_for(0, alphas.size(), [&](std::size_t i) {
    const auto [a, q] = fractions[i];
    const Phase beta = alphas[i] - Phase::from_fraction(a, q);
    const Complex U = c * forms[q]->normalized(a) * u(beta);
    const Complex f = f_alpha(alphas[i], params, table);
    ratios[i] = std::abs(f - U) /
                (q * scale * (1.0 + n * std::abs(beta.signed_turns())));
  });
  return reduce(ratios, alphas, fractions);
}

SweepResult weyl_bound_sweep(const ProblemParams& params, std::uint64_t sample_count,
                             std::uint64_t seed) {
  params.validate();
  const std::uint64_t n = params.n;
  const double P = params.P();
  const PowerSumTable table =
      rep_count_table(params.l, params.t, integer_root(n, params.k));
  const std::uint64_t bound = std::max<std::uint64_t>(integer_root(n, 2), 1);
  std::mt19937_64 rng(seed);
  std::vector<Phase> alphas{Phase()};
  for (std::uint64_t i = 1; i <= sample_count; ++i) alphas.push_back(Phase::from_raw(rng()));
  std::vector<Fraction> fractions(alphas.size());
  std::vector<double> ratios(alphas.size());
  const double kl = static_cast<double>(params.k) * params.l;
  const double exponent = std::pow(2.0, 1.0 - kl);
  parallel_for(0, alphas.size(), [&](std::size_t i) {
    fractions[i] = dirichlet_approx(alphas[i], bound);
    const double q = static_cast<double>(fractions[i].q);
    const double envelope =
        std::pow(P, params.t) * std::pow(1.0 / q + 1.0 / P + q * std::pow(P, -kl), exponent);
    ratios[i] = std::abs(f_alpha(alphas[i], params, table)) / envelope;
  });
  return reduce(ratios, alphas, fractions);
}

std::uint64_t vinogradov_count(const std::vector<std::uint64_t>& set, unsigned s,
                               unsigned k, std::uint64_t budget) {
  require(s >= 1 && k >= 1, "vinogradov: need s, k >= 1");
  const std::uint64_t N = set.size();
  if (N == 0) return 0;
  std::uint64_t tuples = 1;
  for (unsigned i = 0; i < s; ++i) {
    if (tuples > budget / N)
      throw ResourceError("vinogradov: |S|^s exceeds budget " + std::to_string(budget));
    tuples *= N;
  }
  const std::uint64_t largest = *std::max_element(set.begin(), set.end());
  if (std::log2(static_cast<double>(largest)) * k + std::log2(s) >= 126.0)
    throw OverflowError("vinogradov: power sums exceed 128 bits");

  // powers[i][j-1] = set[i]^j
  std::vector<std::vector<u128>> powers(N, std::vector<u128>(k));
  for (std::uint64_t i = 0; i < N; ++i) {
    u128 v = 1;
    for (unsigned j = 0; j < k; ++j) {
      v *= set[i];
      powers[i][j] = v;
    }
  }
  auto key_of = [&](std::uint64_t index) {
    std::vector<u128> key(k, 0);
    for (unsigned i = 0; i < s; ++i) {
      const auto& pw = powers[index % N];
      index /= N;
      for (unsigned j = 0; j < k; ++j) key[j] += pw[j];
    }
    return key;
  };
  auto mix = [](u128 v, std::uint64_t h) {
    const auto lo = static_cast<std::uint64_t>(v);
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    h ^= lo + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0xff51afd7ed558ccdULL;
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> hashed(tuples);
  parallel_for(0, tuples, [&](std::size_t index) {
    std::uint64_t h = 0;
    for (const u128& v : key_of(index)) h = mix(v, h);
    hashed[index] = {h, index};
  });
  std::sort(hashed.begin(), hashed.end());

  // Within each run of equal hashes, group by the exact key.
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < hashed.size();) {
    std::size_t j = i;
    while (j < hashed.size() && hashed[j].first == hashed[i].first) ++j;
    if (j - i == 1) {
      total += 1;
    } else {
      std::map<std::vector<u128>, std::uint64_t> groups;
      for (std::size_t m = i; m < j; ++m) ++groups[key_of(hashed[m].second)];
      for (const auto& [key, c] : groups) total += c * c;
    }
    i = j;
  }
  return total;
}

VinogradovResult vinogradov_mean_value(unsigned s, unsigned k, unsigned r, unsigned l,
                                       std::uint64_t Y, double eta, std::uint64_t budget) {
  VinogradovResult out;
  const SmoothPowerSumSet set = restricted_power_sums(r, l, Y, eta);
  out.set_size = set.values.size();
  out.count = vinogradov_count(set.values, s, k, budget);
  out.diagonal = 1;
  for (unsigned i = 0; i < s; ++i)
    out.diagonal = out.set_size > i ? out.diagonal * (out.set_size - i) : 0;
  const double kk = static_cast<double>(k) * (k + 1) / 2.0;
  const double Delta = delta_r(r, l) * kk;
  out.envelope = std::exp(2.0 * s * std::log(static_cast<double>(out.set_size)) +
                          (-1.0 * l * kk + l * Delta) * std::log(static_cast<double>(Y)));
  out.ratio = out.count / out.envelope;
  return out;
}

double spacing_at(Phase alpha, const std::vector<std::uint64_t>& S2, unsigned k) {
  require(S2.size() >= 2, "spacing: need at least two shifts");
  std::vector<std::uint64_t> raws;
  raws.reserve(S2.size());
  for (std::uint64_t m : S2) raws.push_back(gamma_shift(alpha, k, k - 1, m).raw());
  std::sort(raws.begin(), raws.end());
  std::uint64_t gap = raws.front() - raws.back();  // wrap-around gap, mod 2^64
  for (std::size_t i = 1; i < raws.size(); ++i) gap = std::min(gap, raws[i] - raws[i - 1]);
  return std::min(Phase::from_raw(gap).turns(), 1.0 - Phase::from_raw(gap).turns());
}

SpacingReport spacing_diagnostic(const ProblemParams& params, std::uint64_t sample_count,
                                 std::uint64_t seed, std::optional<double> Q) {
  const ShiftedSetPair sets = shifted_set_pair(params);
  const double dissection = Q.value_or(dissection_Q(Dissection::N, params));
  std::mt19937_64 rng(seed);
  SpacingReport out;
  out.min_distance = 1.0;
  for (std::uint64_t i = 0; i < sample_count; ++i) {
    const Phase alpha = Phase::from_raw(rng());
    ++out.samples;
    if (classify_major(alpha, params.n, std::max(dissection, 1.0)).cls == ArcClass::major)
      continue;
    ++out.minor_samples;
    out.min_distance = std::min(out.min_distance, spacing_at(alpha, sets.S2.values, params.k));
  }
  out.constant = out.min_distance * std::pow(params.X(), params.k - 1.0);
  return out;
}

}  // namespace wfc
