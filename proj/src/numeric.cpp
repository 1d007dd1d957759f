#include "wfc/numeric.hpp"

#include <atomic>
#include <thread>

#include "wfc/parallel.hpp"

namespace wfc {

namespace {
std::atomic<unsigned> g_thread_count{0};
}

void set_thread_count(unsigned n) { g_thread_count.store(n); }

unsigned thread_count() {
  const unsigned n = g_thread_count.load();
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

Phase Phase::from_turns(double x) {
  x -= std::floor(x);
  // x in [0, 1]; scale by 2^64 through long double to keep 64 bits.
  const long double scaled = std::ldexp(static_cast<long double>(x), 64);
  if (scaled >= 18446744073709551616.0L) return Phase(0);
  return Phase(static_cast<std::uint64_t>(std::nearbyint(scaled)));
}

Phase Phase::from_fraction(std::int64_t a, std::uint64_t q) {
  const std::int64_t sq = static_cast<std::int64_t>(q);
  std::int64_t r = a % sq;
  if (r < 0) r += sq;
  // floor(r * 2^64 / q) with rounding.
  const unsigned __int128 num = (static_cast<unsigned __int128>(r) << 64) +
                                q / 2;
  return Phase(static_cast<std::uint64_t>(num / q));
}

double Phase::turns() const { return std::ldexp(static_cast<double>(raw_), -64); }

double Phase::signed_turns() const {
  return std::ldexp(static_cast<double>(static_cast<std::int64_t>(raw_)), -64);
}

RootTable::RootTable(std::uint64_t q) : q_(q), roots_(q) {
  for (std::uint64_t j = 0; j < q; ++j) {
    // Reduce to a symmetric representative before calling sin/cos.
    const double turns = (2 * j < q) ? static_cast<double>(j) / q
                                     : -static_cast<double>(q - j) / q;
    roots_[j] = unit_phase(turns);
  }
}

Complex weighted_fourier_sum(const std::vector<double>& weight, Phase beta) {
  constexpr std::size_t kBlock = 256;
  const Complex step = beta.e();
  ComplexSum total;
  for (std::size_t start = 1; start < weight.size(); start += kBlock) {
    const std::size_t stop = std::min(weight.size(), start + kBlock);
    Complex rotor = (beta * start).e();
    Complex block{0.0, 0.0};
    for (std::size_t m = start; m < stop; ++m) {
      block += weight[m] * rotor;
      rotor *= step;
    }
    total.add(block);
  }
  return total.value();
}

}  // namespace wfc
