#pragma once

// Exact integer convolution (schoolbook or multi-prime NTT with CRT) and
// floating-point convolution of nonnegative real sequences.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wfc/arith.hpp"

namespace wfc::conv {

// NTT-friendly primes c * 2^40 + 1 just below 2^62, with a generator each.
struct NttPrime {
  std::uint64_t modulus;
  std::uint64_t generator;
};
inline constexpr std::array<NttPrime, 5> kNttPrimes{{
    {4611615649683210241ULL, 11},
    {4611613450659954689ULL, 3},
    {4611549678985543681ULL, 19},
    {4611546380450660353ULL, 5},
    {4611524390218104833ULL, 3},
}};

enum class Method { automatic, schoolbook, ntt };

// c[i] = sum_j a[j] b[i-j] for 0 <= i <= limit (and i < |a|+|b|-1).
// Throws OverflowError if an entry does not fit in 128 bits.
std::vector<u128> convolve(std::span<const u128> a, std::span<const u128> b,
                           std::size_t limit, Method method = Method::automatic);

// a^{*power} truncated at limit; power 0 gives the unit vector.
std::vector<u128> convolve_power(std::span<const u128> a, unsigned power,
                                 std::size_t limit);

// Same shape as convolve, but only records whether each entry is nonzero.
std::vector<std::uint8_t> support_convolve(std::span<const std::uint8_t> a,
                                           std::span<const std::uint8_t> b,
                                           std::size_t limit);

// Floating convolution through FFTW for long inputs, direct otherwise.
std::vector<double> real_convolve(std::span<const double> a,
                                  std::span<const double> b, std::size_t limit);

// Forward/inverse transform over Z/pZ for one of kNttPrimes; exposed for tests.
void ntt_transform(std::vector<std::uint64_t>& values, const NttPrime& prime,
                   bool inverse);

}  // namespace wfc::conv
