#pragma once

// Exact ordered representation counts by integer convolution, and their
// comparison with the circle-method main terms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfc/arith.hpp"
#include "wfc/powersets.hpp"
#include "wfc/singular.hpp"

namespace wfc {

inline constexpr std::uint64_t kCountBudget = 1'000'000;

struct CountVector {
  std::vector<u128> counts;  // index n in [0, n_max]
  std::string provenance;
};

// n = sum_{i<=s} T_t(x_i)^k + sum_{i<=r} y_i^k, ordered solutions.
CountVector count_conje(std::uint64_t n_max, unsigned k, unsigned l, unsigned t, unsigned s,
                        unsigned r_extra);

// n = sum_{i<=s} x_i^k with x_i in T_xi; weighted by rho_xi or with T_xi as a set.
CountVector count_theorem13(std::uint64_t n_max, unsigned k, unsigned l, unsigned xi,
                            unsigned s, bool weighted = true);

// Support of count_conje only (entry nonzero or not).
std::vector<std::uint8_t> support_conje(std::uint64_t n_max, unsigned k, unsigned l,
                                        unsigned t, unsigned s, unsigned r_extra);

struct PositivityWindow {
  std::optional<std::uint64_t> N0;  // first N0 with [N0, N0 + width - 1] all positive
  std::uint64_t n_max = 0;          // range actually searched
};
inline constexpr std::uint64_t kWindowWidth = 1001;
PositivityWindow positivity_window(unsigned k, unsigned l, unsigned t, unsigned s,
                                   unsigned r_extra, std::uint64_t n_limit = 1'000'000,
                                   std::uint64_t width = kWindowWidth);

// k^{-s} c_{xi,l}^s Gamma(xi/lk)^s / Gamma(s xi/kl)
double C_klxi(unsigned k, unsigned l, unsigned xi, unsigned s);

struct MainTermPoint {
  std::uint64_t n = 0;
  double count = 0.0;
  double series = 0.0;  // truncated S'(n)
  double main = 0.0;    // C n^{s xi/kl - 1} S'(n)
  std::optional<double> ratio;  // absent when S'(n) <= 0 (flagged)
};

MainTermPoint main_term_ratio(std::uint64_t n, unsigned k, unsigned l, unsigned xi,
                              unsigned s, std::uint64_t Q = kDefaultSeriesQ);

struct WindowRatio {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  double count_mean = 0.0;
  double main_mean = 0.0;
  double ratio = 0.0;  // count_mean / main_mean over unflagged n
  std::uint64_t flagged = 0;
};

// Ratio of window sums from precomputed weighted counts and series.
WindowRatio window_ratio(const CountVector& counts, const SingularSeries& series,
                         std::uint64_t lo, std::uint64_t hi, unsigned k, unsigned l,
                         unsigned xi, unsigned s);

struct MainTermTrend {
  WindowRatio first;   // [N, 2N]
  WindowRatio second;  // [2N, 4N]
  bool in_band = false;        // first.ratio in [0.5, 2]
  bool deviation_ok = false;   // |second - 1| <= |first - 1|
};
MainTermTrend main_term_trend(std::uint64_t N, unsigned k, unsigned l, unsigned xi,
                              unsigned s, std::uint64_t Q = kDefaultSeriesQ);

struct ScalingSlope {
  double slope = 0.0;     // log(A(10N)/A(N)) / log 10, A = mean count over [M, 2M]
  double expected = 0.0;  // s xi/kl - 1
};
ScalingSlope scaling_slope(std::uint64_t N, unsigned k, unsigned l, unsigned xi, unsigned s);

struct QmTable {
  CountVector Q;
  std::uint64_t support_max = 0;  // largest m with Q(m) > 0
  std::uint64_t support_bound = 0;  // H (max S_1 + max S_2)^k
  bool support_claim = false;     // support_max <= n/2
  bool mass_ok = false;           // sum Q(m) = (|S_1||S_2|)^H
};
// Q(m) = #{(y_i, z_i) in (S_1 x S_2)^H : m = sum (y_i + z_i)^k}; H defaults to k(k+1).
QmTable q_m_table(const ProblemParams& params, std::optional<unsigned> H = {},
                  double eta = kDefaultEta);

inline constexpr std::uint64_t kK2Budget = 200'000'000;

struct K2MeanValue {
  std::uint64_t diagonal = 0;     // x_1 = x_2
  std::uint64_t offdiagonal = 0;  // x_1 != x_2
  std::uint64_t set_size = 0;     // |S_t|
  std::uint64_t x_count = 0;      // #{X/2 <= x <= X}
  std::uint64_t Y = 0;
};
// x_1^2 + y_1^2 + y_2^2 = x_2^2 + y_3^2 + y_4^2 with X/2 <= x_i <= X and
// y_i in S_t(Y), Y = floor(X^{1/l}).
K2MeanValue k2_mean_value(unsigned t, std::uint64_t X_cap, unsigned l,
                          double eta = kDefaultEta, std::uint64_t budget = kK2Budget);
// Same over an explicit set and x range.
K2MeanValue k2_mean_value_for(const std::vector<std::uint64_t>& set, std::uint64_t x_lo,
                              std::uint64_t x_hi, std::uint64_t budget = kK2Budget);

}  // namespace wfc
