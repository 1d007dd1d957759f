#include "wfc/powersets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "wfc/arith.hpp"
#include "wfc/convolution.hpp"
#include "wfc/errors.hpp"

namespace wfc {

PowerSumTable rep_count_table(unsigned l, unsigned t, std::uint64_t limit,
                              std::uint64_t budget) {
  require(l >= 1, "rep_count_table: l must be positive");
  require(t >= 1 && t <= 64, "rep_count_table: need 1 <= t <= 64");
  if (limit > budget)
    throw ResourceError("rep_count_table: limit " + std::to_string(limit) +
                        " exceeds budget " + std::to_string(budget));
  std::vector<u128> powers(limit + 1, 0);
  for (std::uint64_t x = 1;; ++x) {
    const std::uint64_t v = checked_pow(x, l);
    if (v > limit) break;
    powers[v] = 1;
  }
  std::vector<u128> acc = powers;
  for (unsigned i = 1; i < t; ++i) acc = conv::convolve(acc, powers, limit);
  acc.resize(limit + 1, 0);

  PowerSumTable table{l, t, limit, std::vector<std::uint64_t>(limit + 1)};
  for (std::uint64_t m = 0; m <= limit; ++m) {
    if (acc[m] > UINT64_MAX)
      throw OverflowError("rep_count_table: rho[" + std::to_string(m) +
                          "] exceeds 64 bits");
    table.rho[m] = static_cast<std::uint64_t>(acc[m]);
  }
  return table;
}

std::uint64_t distinct_count(const PowerSumTable& table, std::uint64_t N) {
  require(N <= table.limit, "distinct_count: N beyond table limit");
  std::uint64_t count = 0;
  for (std::uint64_t m = 1; m <= N; ++m) count += table.rho[m] > 0;
  return count;
}

std::vector<std::uint64_t> smooth_set(std::uint64_t Y, std::uint64_t R) {
  require(Y >= 1 && R >= 1, "smooth_set: need Y >= 1 and R >= 1");
  if (Y > 4'000'000'000ULL) throw ResourceError("smooth_set: Y too large");
  // residual[n] starts at n and loses every prime factor <= R.
  std::vector<std::uint64_t> residual(Y + 1);
  for (std::uint64_t n = 0; n <= Y; ++n) residual[n] = n;
  for (std::uint32_t p : primes_up_to(std::min(R, Y))) {
    for (std::uint64_t m = p; m <= Y; m += p)
      while (residual[m] % p == 0) residual[m] /= p;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= Y; ++n)
    if (residual[n] == 1) out.push_back(n);
  return out;
}

std::uint64_t smoothness_bound(std::uint64_t Y, double eta) {
  require(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
  auto R = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(Y), eta) + 1e-9));
  return std::max<std::uint64_t>(2, R);
}

SmoothPowerSumSet restricted_power_sums(unsigned r, unsigned l, std::uint64_t Y,
                                        double eta, std::uint64_t budget) {
  return restricted_power_sums_with_bound(r, l, Y, smoothness_bound(Y, eta),
                                          budget);
}

SmoothPowerSumSet restricted_power_sums_with_bound(unsigned r, unsigned l,
                                                   std::uint64_t Y,
                                                   std::uint64_t R,
                                                   std::uint64_t budget) {
  require(r >= 1, "restricted_power_sums: r must be positive");
  require(l >= 1, "restricted_power_sums: l must be positive");
  require(Y >= 1, "restricted_power_sums: Y must be positive");
  // Every sum must be representable: r * Y^l < 2^64.
  try {
    checked_mul(r, checked_pow(Y, l));
  } catch (const OverflowError&) {
    throw ResourceError("restricted_power_sums: r*Y^l exceeds 64 bits");
  }
  const std::vector<std::uint64_t> base = smooth_set(Y, R);
  std::vector<std::uint64_t> powers;
  for (std::uint64_t x : base) powers.push_back(checked_pow(x, l));

  // Number of multisets of size r drawn from |A| elements.
  long double combos = 1;
  for (unsigned i = 0; i < r; ++i)
    combos = combos * static_cast<long double>(powers.size() + i) / (i + 1);
  if (combos > static_cast<long double>(budget))
    throw ResourceError("restricted_power_sums: " +
                        std::to_string(static_cast<double>(combos)) +
                        " combinations exceed budget");

  std::vector<std::uint64_t> sums;
  sums.reserve(static_cast<std::size_t>(combos));
  std::vector<std::size_t> index(r, 0);
  // Nondecreasing index tuples enumerate each multiset once.
  for (;;) {
    std::uint64_t total = 0;
    for (std::size_t i : index) total += powers[i];
    sums.push_back(total);
    int pos = static_cast<int>(r) - 1;
    while (pos >= 0 && index[pos] + 1 == powers.size()) --pos;
    if (pos < 0) break;
    ++index[pos];
    for (unsigned j = pos + 1; j < r; ++j) index[j] = index[pos];
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return {r, l, Y, R, std::move(sums)};
}

double delta_r(double r, unsigned l) {
  require(l >= 1, "delta_r: l must be positive");
  return std::exp(1.0 - 2.0 * r / l);
}

unsigned xi0(unsigned k, unsigned l) {
  const double value = 0.5 * l * (std::log(static_cast<double>(l)) +
                                  std::log(static_cast<double>(k) * (k + 1)) + 2.0);
  return static_cast<unsigned>(std::ceil(value - 1e-12));
}

double t0(unsigned l) {
  require(l >= 2, "t0: need l >= 2");
  const double ll = static_cast<double>(l);
  return 0.5 * ll * (std::log(ll) + std::log(std::log(ll)) + 2.0);
}

std::vector<DensityRow> density_report(unsigned r, unsigned l, double eta,
                                       const std::vector<std::uint64_t>& grid,
                                       std::uint64_t budget) {
  require(!grid.empty(), "density_report: empty grid");
  require(std::is_sorted(grid.begin(), grid.end()),
          "density_report: grid must be ascending");
  std::vector<DensityRow> rows;
  const double reference = l - l * delta_r(r, l);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto set = restricted_power_sums(r, l, grid[i], eta, budget);
    DensityRow row;
    row.Y = grid[i];
    row.R = set.R;
    row.size = set.values.size();
    row.reference = reference;
    row.exponent = grid[i] > 1 ? std::log(static_cast<double>(row.size)) /
                                     std::log(static_cast<double>(grid[i]))
                               : 0.0;
    if (i > 0 && grid[i] > grid[i - 1]) {
      const auto& prev = rows.back();
      row.pair_exponent = std::log(static_cast<double>(row.size) / prev.size) /
                          std::log(static_cast<double>(grid[i]) / grid[i - 1]);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::uint64_t> default_density_grid() { return {100, 1000, 10000}; }

namespace {

constexpr std::array<char, 4> kMagic{'W', 'F', 'C', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ResourceError("table cache: truncated file");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_table(const std::filesystem::path& path, const PowerSumTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  // Write to a sibling file first so readers never see a partial table.
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("table cache: cannot write " + tmp);
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint64_t>(out, table.l);
    put_le<std::uint64_t>(out, table.t);
    put_le<std::uint64_t>(out, table.limit);
    for (std::uint64_t c : table.rho) put_le<std::uint64_t>(out, c);
    if (!out) throw ResourceError("table cache: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

PowerSumTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("table cache: cannot open " + path.string());
  std::array<char, 4> magic;
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic)
    throw ResourceError("table cache: bad magic in " + path.string());
  const auto version = get_le<std::uint32_t>(in);
  if (version != kVersion)
    throw ResourceError("table cache: unsupported version " + std::to_string(version));
  PowerSumTable table;
  table.l = static_cast<unsigned>(get_le<std::uint64_t>(in));
  table.t = static_cast<unsigned>(get_le<std::uint64_t>(in));
  table.limit = get_le<std::uint64_t>(in);
  if (table.limit > kTableBudget * 100)
    throw ResourceError("table cache: implausible limit in " + path.string());
  table.rho.resize(table.limit + 1);
  for (auto& c : table.rho) c = get_le<std::uint64_t>(in);
  return table;
}

}  // namespace wfc
