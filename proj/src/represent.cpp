#include "wfc/represent.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "wfc/arcs.hpp"
#include "wfc/convolution.hpp"
#include "wfc/errors.hpp"
#include "wfc/integral.hpp"

namespace wfc {

namespace {

void check_count_budget(std::uint64_t n_max) {
  if (n_max > kCountBudget)
    throw ResourceError("count: n_max = " + std::to_string(n_max) + " exceeds budget " +
                        std::to_string(kCountBudget));
}

// a[m^k] += rho_t[m] (weighted) or 1 when rho_t[m] > 0.
std::vector<u128> form_vector(std::uint64_t n_max, unsigned k, unsigned l, unsigned t,
                              bool weighted) {
  const std::uint64_t root = integer_root(n_max, k);
  const PowerSumTable table = rep_count_table(l, t, root);
  std::vector<u128> a(n_max + 1, 0);
  for (std::uint64_t m = 1; m <= root; ++m) {
    if (table.rho[m] == 0) continue;
    a[checked_pow(m, k)] = weighted ? table.rho[m] : 1;
  }
  return a;
}

std::vector<u128> power_vector(std::uint64_t n_max, unsigned k) {
  std::vector<u128> b(n_max + 1, 0);
  for (std::uint64_t x = 1, root = integer_root(n_max, k); x <= root; ++x)
    b[checked_pow(x, k)] = 1;
  return b;
}

std::vector<u128> combine(const std::vector<u128>& a, unsigned s, const std::vector<u128>& b,
                          unsigned r, std::uint64_t n_max) {
  auto out = conv::convolve_power(a, s, n_max);
  if (r > 0) out = conv::convolve(out, conv::convolve_power(b, r, n_max), n_max);
  out.resize(n_max + 1, 0);
  return out;
}

std::vector<std::uint8_t> support_power(std::span<const std::uint8_t> a, unsigned power,
                                        std::uint64_t n_max) {
  std::vector<std::uint8_t> acc(1, 1);
  std::vector<std::uint8_t> base(a.begin(), a.end());
  while (power > 0) {
    if (power & 1) acc = conv::support_convolve(acc, base, n_max);
    power >>= 1;
    if (power > 0) base = conv::support_convolve(base, base, n_max);
  }
  acc.resize(n_max + 1, 0);
  return acc;
}

double series_main(double C, double exponent, std::uint64_t n, double series) {
  return C * std::pow(static_cast<double>(n), exponent) * series;
}

}  // namespace

CountVector count_conje(std::uint64_t n_max, unsigned k, unsigned l, unsigned t, unsigned s,
                        unsigned r_extra) {
  check_count_budget(n_max);
  require(k >= 1 && l >= 1 && t >= 1, "count_conje: need k, l, t >= 1");
  CountVector out;
  out.counts = combine(form_vector(n_max, k, l, t, true), s, power_vector(n_max, k), r_extra,
                       n_max);
  out.provenance = "conje k=" + std::to_string(k) + " l=" + std::to_string(l) +
                   " t=" + std::to_string(t) + ": " + std::to_string(s) +
                   " form block(s) weighted by rho_t, " + std::to_string(r_extra) +
                   " plain k-th power(s)";
  return out;
}

CountVector count_theorem13(std::uint64_t n_max, unsigned k, unsigned l, unsigned xi,
                            unsigned s, bool weighted) {
  check_count_budget(n_max);
  require(k >= 1 && l >= 1 && xi >= 1, "count_theorem13: need k, l, xi >= 1");
  CountVector out;
  out.counts = combine(form_vector(n_max, k, l, xi, weighted), s, {}, 0, n_max);
  out.provenance = "thm13 k=" + std::to_string(k) + " l=" + std::to_string(l) +
                   " xi=" + std::to_string(xi) + ": " + std::to_string(s) + "-fold " +
                   (weighted ? "rho_xi-weighted" : "set-indicator") + " convolution";
  return out;
}

std::vector<std::uint8_t> support_conje(std::uint64_t n_max, unsigned k, unsigned l,
                                        unsigned t, unsigned s, unsigned r_extra) {
  check_count_budget(n_max);
  std::vector<std::uint8_t> a(n_max + 1, 0), b(n_max + 1, 0);
  const auto form = form_vector(n_max, k, l, t, false);
  const auto powers = power_vector(n_max, k);
  for (std::uint64_t i = 0; i <= n_max; ++i) {
    a[i] = form[i] != 0;
    b[i] = powers[i] != 0;
  }
  auto out = support_power(a, s, n_max);
  if (r_extra > 0) out = conv::support_convolve(out, support_power(b, r_extra, n_max), n_max);
  out.resize(n_max + 1, 0);
  return out;
}

PositivityWindow positivity_window(unsigned k, unsigned l, unsigned t, unsigned s,
                                   unsigned r_extra, std::uint64_t n_limit,
                                   std::uint64_t width) {
  require(width >= 1, "positivity_window: width must be positive");
  PositivityWindow out;
  // Grow the searched range until a window turns up.
  for (std::uint64_t n_max = std::min<std::uint64_t>(10'000, n_limit);;
       n_max = std::min(n_max * 10, n_limit)) {
    out.n_max = n_max;
    const auto support = support_conje(n_max, k, l, t, s, r_extra);
    std::uint64_t run = 0;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      run = support[n] ? run + 1 : 0;
      if (run == width) {
        out.N0 = n + 1 - width;
        return out;
      }
    }
    if (n_max == n_limit) return out;
  }
}

double C_klxi(unsigned k, unsigned l, unsigned xi, unsigned s) {
  const double e = static_cast<double>(xi) / (k * l);
  return std::exp(-1.0 * s * std::log(static_cast<double>(k)) +
                  s * std::log(c_tl(xi, l)) + s * std::lgamma(e) - std::lgamma(s * e));
}

MainTermPoint main_term_ratio(std::uint64_t n, unsigned k, unsigned l, unsigned xi,
                              unsigned s, std::uint64_t Q) {
  const CountVector counts = count_theorem13(n, k, l, xi, s, true);
  const SingularSeries series({k, l, xi, s}, SeriesKind::prime_variant, Q);
  MainTermPoint out;
  out.n = n;
  out.count = static_cast<double>(counts.counts[n]);
  out.series = series.truncated(n).value.real();
  out.main = series_main(C_klxi(k, l, xi, s), static_cast<double>(s) * xi / (k * l) - 1.0, n,
                         out.series);
  if (out.series > 0.0) out.ratio = out.count / out.main;
  return out;
}

WindowRatio window_ratio(const CountVector& counts, const SingularSeries& series,
                         std::uint64_t lo, std::uint64_t hi, unsigned k, unsigned l,
                         unsigned xi, unsigned s) {
  require(lo <= hi && hi < counts.counts.size(), "window_ratio: window outside counts");
  const double C = C_klxi(k, l, xi, s);
  const double exponent = static_cast<double>(s) * xi / (k * l) - 1.0;
  const auto values = series.values(lo, hi);
  WindowRatio out;
  out.lo = lo;
  out.hi = hi;
  CompensatedSum count_sum, main_sum;
  std::uint64_t used = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const double value = values[n - lo];
    if (value <= 0.0) {
      ++out.flagged;
      continue;
    }
    count_sum.add(static_cast<double>(counts.counts[n]));
    main_sum.add(series_main(C, exponent, n, value));
    ++used;
  }
  if (used > 0) {
    out.count_mean = count_sum.value() / used;
    out.main_mean = main_sum.value() / used;
    out.ratio = out.count_mean / out.main_mean;
  }
  return out;
}

MainTermTrend main_term_trend(std::uint64_t N, unsigned k, unsigned l, unsigned xi,
                              unsigned s, std::uint64_t Q) {
  const CountVector counts = count_theorem13(4 * N, k, l, xi, s, true);
  const SingularSeries series({k, l, xi, s}, SeriesKind::prime_variant, Q);
  MainTermTrend out;
  out.first = window_ratio(counts, series, N, 2 * N, k, l, xi, s);
  out.second = window_ratio(counts, series, 2 * N, 4 * N, k, l, xi, s);
  out.in_band = out.first.ratio >= 0.5 && out.first.ratio <= 2.0;
  out.deviation_ok = std::abs(out.second.ratio - 1.0) <= std::abs(out.first.ratio - 1.0);
  return out;
}

ScalingSlope scaling_slope(std::uint64_t N, unsigned k, unsigned l, unsigned xi, unsigned s) {
  const CountVector counts = count_theorem13(20 * N, k, l, xi, s, true);
  auto mean = [&](std::uint64_t lo) {
    CompensatedSum sum;
    for (std::uint64_t n = lo; n <= 2 * lo; ++n) sum.add(static_cast<double>(counts.counts[n]));
    return sum.value() / (lo + 1);
  };
  ScalingSlope out;
  out.slope = std::log(mean(10 * N) / mean(N)) / std::log(10.0);
  out.expected = static_cast<double>(s) * xi / (k * l) - 1.0;
  return out;
}

QmTable q_m_table(const ProblemParams& params, std::optional<unsigned> H, double eta) {
  params.validate();
  const unsigned k = params.k;
  const unsigned h = H.value_or(k * (k + 1));
  require(h >= 1, "q_m_table: H must be positive");
  const ShiftedSetPair sets = shifted_set_pair(params, eta);
  const auto& S1 = sets.S1.values;
  const auto& S2 = sets.S2.values;
  QmTable out;
  if (S1.empty() || S2.empty()) {
    out.Q.counts = {0};
    out.support_claim = true;
    out.mass_ok = true;
    out.Q.provenance = "qm: empty shifted set";
    return out;
  }
  const std::uint64_t top = checked_pow(S1.back() + S2.back(), k);
  out.support_bound = checked_mul(h, top);
  check_count_budget(out.support_bound);
  std::vector<u128> pair(top + 1, 0);
  for (std::uint64_t y : S1)
    for (std::uint64_t z : S2) pair[checked_pow(y + z, k)] += 1;
  out.Q.counts = conv::convolve_power(pair, h, out.support_bound);
  out.Q.counts.resize(out.support_bound + 1, 0);
  out.Q.provenance = "qm H=" + std::to_string(h) + ": pair-sum k-th powers over S_1 x S_2";

  u128 mass = 0;
  for (std::uint64_t m = 0; m < out.Q.counts.size(); ++m) {
    if (out.Q.counts[m] == 0) continue;
    mass += out.Q.counts[m];
    out.support_max = m;
  }
  u128 expected = 1;
  const u128 base = static_cast<u128>(S1.size()) * S2.size();
  for (unsigned i = 0; i < h; ++i) expected *= base;
  out.mass_ok = mass == expected;
  out.support_claim = 2 * out.support_max <= params.n;
  return out;
}

K2MeanValue k2_mean_value_for(const std::vector<std::uint64_t>& set, std::uint64_t x_lo,
                              std::uint64_t x_hi, std::uint64_t budget) {
  K2MeanValue out;
  out.set_size = set.size();
  out.x_count = x_hi >= x_lo ? x_hi - x_lo + 1 : 0;
  if (set.empty() || out.x_count == 0) return out;
  const u128 work = static_cast<u128>(set.size()) * set.size() * out.x_count;
  if (work > budget)
    throw ResourceError("k2_mean_value: |S|^2 * #x exceeds budget " + std::to_string(budget));

  // H[v] = #{(y_1, y_2) : y_1^2 + y_2^2 = v}
  std::unordered_map<std::uint64_t, std::uint64_t> H;
  for (std::uint64_t a : set)
    for (std::uint64_t b : set) ++H[checked_pow(a, 2) + checked_pow(b, 2)];
  std::uint64_t pairs = 0;
  for (const auto& [v, c] : H) pairs += c * c;
  out.diagonal = out.x_count * pairs;

  // A[w] = #{(x, y_1, y_2) : x^2 + y_1^2 + y_2^2 = w}; total = sum A[w]^2.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sums(H.begin(), H.end());
  std::sort(sums.begin(), sums.end());
  const std::uint64_t width = sums.back().first + checked_pow(x_hi, 2) + 1;
  std::vector<std::uint64_t> A(width, 0);
  for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
    const std::uint64_t x2 = x * x;
    for (const auto& [v, c] : sums) A[x2 + v] += c;
  }
  std::uint64_t total = 0;
  for (std::uint64_t a : A) total += a * a;
  out.offdiagonal = total - out.diagonal;
  return out;
}

K2MeanValue k2_mean_value(unsigned t, std::uint64_t X_cap, unsigned l, double eta,
                          std::uint64_t budget) {
  require(X_cap >= 1, "k2_mean_value: X must be positive");
  const std::uint64_t Y = integer_root(X_cap, l);
  const SmoothPowerSumSet set = restricted_power_sums(t, l, Y, eta);
  K2MeanValue out = k2_mean_value_for(set.values, (X_cap + 1) / 2, X_cap, budget);
  out.Y = Y;
  return out;
}

}  // namespace wfc
