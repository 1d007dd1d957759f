#pragma once

// Power-sum tables rho_t, smooth sets A(Y, R), restricted sets S_r(Y) and
// their empirical densities.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace wfc {

struct PowerSumTable {
  unsigned l = 0;
  unsigned t = 0;
  std::uint64_t limit = 0;
  // rho[m] = #{x in N^t, x_i >= 1 : x_1^l + ... + x_t^l = m}
  std::vector<std::uint64_t> rho;
};

inline constexpr std::uint64_t kTableBudget = 10'000'000;

// Built by t successive convolutions of the indicator of l-th powers.
PowerSumTable rep_count_table(unsigned l, unsigned t, std::uint64_t limit,
                              std::uint64_t budget = kTableBudget);

// #{1 <= m <= N : rho[m] > 0}
std::uint64_t distinct_count(const PowerSumTable& table, std::uint64_t N);

// Sorted n in [1, Y] with every prime factor <= R.
std::vector<std::uint64_t> smooth_set(std::uint64_t Y, std::uint64_t R);

// R = max(2, floor(Y^eta)).
std::uint64_t smoothness_bound(std::uint64_t Y, double eta);

struct SmoothPowerSumSet {
  unsigned r = 0;
  unsigned l = 0;
  std::uint64_t Y = 0;
  std::uint64_t R = 0;
  std::vector<std::uint64_t> values;  // sorted, distinct
};

inline constexpr double kDefaultEta = 0.25;
inline constexpr std::uint64_t kCombinationBudget = 50'000'000;

// S_r(Y) with smoothness bound R = smoothness_bound(Y, eta).
SmoothPowerSumSet restricted_power_sums(unsigned r, unsigned l, std::uint64_t Y,
                                        double eta = kDefaultEta,
                                        std::uint64_t budget = kCombinationBudget);
// Same with an explicit smoothness bound.
SmoothPowerSumSet restricted_power_sums_with_bound(
    unsigned r, unsigned l, std::uint64_t Y, std::uint64_t R,
    std::uint64_t budget = kCombinationBudget);

// exp(1 - 2r/l)
double delta_r(double r, unsigned l);
// ceil(l/2 (log l + log(k(k+1)) + 2))
unsigned xi0(unsigned k, unsigned l);
// l/2 (log l + log log l + 2), the o(1) term dropped.
double t0(unsigned l);

struct DensityRow {
  std::uint64_t Y = 0;
  std::uint64_t R = 0;
  std::uint64_t size = 0;
  double exponent = 0.0;  // log|S| / log Y, 0 when Y = 1
  // log(|S_i|/|S_{i-1}|) / log(Y_i/Y_{i-1}); absent on the first row.
  std::optional<double> pair_exponent;
  double reference = 0.0;  // l - l delta_r
};

std::vector<DensityRow> density_report(unsigned r, unsigned l, double eta,
                                       const std::vector<std::uint64_t>& grid,
                                       std::uint64_t budget = kCombinationBudget);
// Default grid used by the density diagnostics.
std::vector<std::uint64_t> default_density_grid();

// Binary cache: "WFC1", u32 version, u64 l, t, N, then N+1 u64 counts, all
// little-endian.
void write_table(const std::filesystem::path& path, const PowerSumTable& table);
PowerSumTable read_table(const std::filesystem::path& path);

}  // namespace wfc
