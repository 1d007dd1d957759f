#include "wfc/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>

#include "wfc/errors.hpp"

namespace wfc::conv {

namespace {

// Montgomery arithmetic modulo an odd p < 2^62 with R = 2^64.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t p) : p_(p) {
    std::uint64_t inv = p;  // Newton iteration for p^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv_ = 0 - inv;
    const u128 r = (static_cast<u128>(1) << 64) % p;
    r2_ = static_cast<std::uint64_t>(r * r % p);
  }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t reduce(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const std::uint64_t u =
        static_cast<std::uint64_t>((t + static_cast<u128>(m) * p_) >> 64);
    return u >= p_ ? u - p_ : u;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<u128>(a) * b);
  }
  std::uint64_t to(std::uint64_t x) const { return mul(x % p_, r2_); }
  std::uint64_t from(std::uint64_t x) const { return reduce(x); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t pow(std::uint64_t base_mont, std::uint64_t e) const {
    std::uint64_t result = to(1);
    while (e > 0) {
      if (e & 1) result = mul(result, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return result;
  }

 private:
  std::uint64_t p_;
  std::uint64_t neg_inv_;
  std::uint64_t r2_;
};

// In-place transform of Montgomery-form values.
void transform_mont(std::vector<std::uint64_t>& a, const Montgomery& mont,
                    std::uint64_t generator, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const std::uint64_t p = mont.modulus();
  require(std::has_single_bit(n) && (p - 1) % n == 0,
          "ntt: length must be a power of two dividing p - 1");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::uint64_t root = mont.pow(mont.to(generator), (p - 1) / n);
  if (inverse) root = mont.pow(root, n - 1);
  // twiddle[j] = root^j for j < n/2
  std::vector<std::uint64_t> twiddle(n / 2);
  twiddle[0] = mont.to(1);
  for (std::size_t j = 1; j < n / 2; ++j)
    twiddle[j] = mont.mul(twiddle[j - 1], root);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint64_t u = a[start + j];
        const std::uint64_t v = mont.mul(a[start + j + half], twiddle[j * stride]);
        a[start + j] = mont.add(u, v);
        a[start + j + half] = mont.sub(u, v);
      }
    }
  }
  if (inverse) {
    const std::uint64_t n_inv = mont.to(inverse_mod(n % p, p));
    for (auto& x : a) x = mont.mul(x, n_inv);
  }
}

struct Shape {
  std::size_t la, lb, out;
};

Shape truncated_shape(std::size_t la, std::size_t lb, std::size_t limit) {
  Shape s{std::min(la, limit + 1), std::min(lb, limit + 1), 0};
  if (s.la == 0 || s.lb == 0) return s;
  s.out = std::min(s.la + s.lb - 1, limit + 1);
  return s;
}

long double entry_bound(std::span<const u128> a, std::span<const u128> b) {
  long double sum_a = 0, sum_b = 0, max_a = 0, max_b = 0;
  for (u128 x : a) {
    const auto v = static_cast<long double>(x);
    sum_a += v;
    max_a = std::max(max_a, v);
  }
  for (u128 x : b) {
    const auto v = static_cast<long double>(x);
    sum_b += v;
    max_b = std::max(max_b, v);
  }
  return std::min(sum_a * max_b, sum_b * max_a);
}

std::vector<u128> schoolbook(std::span<const u128> a, std::span<const u128> b,
                             std::size_t out_len, bool checked) {
  std::vector<u128> c(out_len, 0);
  // Iterate the sparser operand's nonzeros in the outer loop.
  const auto nnz = [](std::span<const u128> v) {
    return std::count_if(v.begin(), v.end(), [](u128 x) { return x != 0; });
  };
  if (nnz(a) > nnz(b)) std::swap(a, b);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    const u128 ai = a[i];
    if (ai == 0) continue;
    const std::size_t stop = std::min(b.size(), out_len - i);
    if (!checked) {
      for (std::size_t j = 0; j < stop; ++j) c[i + j] += ai * b[j];
      continue;
    }
    for (std::size_t j = 0; j < stop; ++j) {
      u128 product;
      if (__builtin_mul_overflow(ai, b[j], &product) ||
          __builtin_add_overflow(c[i + j], product, &c[i + j]))
        throw OverflowError("convolution entry exceeds 128 bits");
    }
  }
  return c;
}

std::vector<u128> ntt_convolve(std::span<const u128> a, std::span<const u128> b,
                               std::size_t out_len, std::size_t prime_count) {
  const std::size_t size = std::bit_ceil(a.size() + b.size() - 1);
  std::vector<std::vector<std::uint64_t>> residues(prime_count);
  for (std::size_t pi = 0; pi < prime_count; ++pi) {
    const NttPrime& prime = kNttPrimes[pi];
    const Montgomery mont(prime.modulus);
    std::vector<std::uint64_t> fa(size, 0), fb(size, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      fa[i] = mont.to(static_cast<std::uint64_t>(a[i] % prime.modulus));
    for (std::size_t i = 0; i < b.size(); ++i)
      fb[i] = mont.to(static_cast<std::uint64_t>(b[i] % prime.modulus));
    transform_mont(fa, mont, prime.generator, false);
    transform_mont(fb, mont, prime.generator, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = mont.mul(fa[i], fb[i]);
    transform_mont(fa, mont, prime.generator, true);
    fa.resize(out_len);
    for (auto& x : fa) x = mont.from(x);
    residues[pi] = std::move(fa);
  }

  // Garner reconstruction: x = d0 + d1 p0 + d2 p0 p1 + ...
  std::vector<std::vector<std::uint64_t>> inv(prime_count,
                                              std::vector<std::uint64_t>(prime_count));
  for (std::size_t i = 0; i < prime_count; ++i)
    for (std::size_t j = 0; j < i; ++j)
      inv[i][j] = inverse_mod(kNttPrimes[j].modulus % kNttPrimes[i].modulus,
                              kNttPrimes[i].modulus);
  std::vector<u128> c(out_len);
  std::vector<std::uint64_t> digit(prime_count);
  for (std::size_t idx = 0; idx < out_len; ++idx) {
    for (std::size_t i = 0; i < prime_count; ++i) {
      const std::uint64_t pi = kNttPrimes[i].modulus;
      std::uint64_t x = residues[i][idx];
      for (std::size_t j = 0; j < i; ++j) {
        const std::uint64_t dj = digit[j] % pi;
        x = mul_mod(x >= dj ? x - dj : x + pi - dj, inv[i][j], pi);
      }
      digit[i] = x;
    }
    u128 value = 0, radix = 1;
    for (std::size_t i = 0; i < prime_count; ++i) {
      if (digit[i] != 0) {
        u128 term;
        if (__builtin_mul_overflow(static_cast<u128>(digit[i]), radix, &term) ||
            __builtin_add_overflow(value, term, &value))
          throw OverflowError("convolution entry exceeds 128 bits");
      }
      if (i + 1 < prime_count) {
        u128 next;
        if (__builtin_mul_overflow(radix, static_cast<u128>(kNttPrimes[i].modulus),
                                   &next)) {
          // Remaining digits must vanish for the value to fit.
          for (std::size_t j = i + 1; j < prime_count; ++j)
            if (digit[j] != 0)
              throw OverflowError("convolution entry exceeds 128 bits");
          break;
        }
        radix = next;
      }
    }
    c[idx] = value;
  }
  return c;
}

}  // namespace

void ntt_transform(std::vector<std::uint64_t>& values, const NttPrime& prime,
                   bool inverse) {
  const Montgomery mont(prime.modulus);
  for (auto& x : values) x = mont.to(x);
  transform_mont(values, mont, prime.generator, inverse);
  for (auto& x : values) x = mont.from(x);
}

std::vector<u128> convolve(std::span<const u128> a, std::span<const u128> b,
                           std::size_t limit, Method method) {
  const Shape shape = truncated_shape(a.size(), b.size(), limit);
  if (shape.out == 0) return {};
  a = a.first(shape.la);
  b = b.first(shape.lb);

  const long double bound = entry_bound(a, b);
  // log2 of the product of the first m primes is just under 62 m.
  std::size_t prime_count = 1;
  while (prime_count <= kNttPrimes.size() &&
         std::log2(std::max(bound, 1.0L)) + 1 >= 61.99L * prime_count)
    ++prime_count;
  const bool wide = bound >= std::ldexp(1.0L, 127);

  if (method == Method::automatic) {
    const auto nnz_a = std::count_if(a.begin(), a.end(), [](u128 x) { return x != 0; });
    const auto nnz_b = std::count_if(b.begin(), b.end(), [](u128 x) { return x != 0; });
    const long double direct = static_cast<long double>(std::min(nnz_a, nnz_b)) *
                               static_cast<long double>(std::max(a.size(), b.size()));
    const auto size = static_cast<long double>(std::bit_ceil(a.size() + b.size() - 1));
    const long double fast =
        3.0L * std::min<std::size_t>(prime_count, kNttPrimes.size()) * size *
        std::log2(size) * 2.0L;
    method = direct <= fast ? Method::schoolbook : Method::ntt;
  }
  if (method == Method::schoolbook) return schoolbook(a, b, shape.out, wide);
  if (prime_count > kNttPrimes.size())
    throw OverflowError("convolution bound exceeds the CRT range");
  return ntt_convolve(a, b, shape.out, prime_count);
}

std::vector<u128> convolve_power(std::span<const u128> a, unsigned power,
                                 std::size_t limit) {
  std::vector<u128> result(1, 1);
  if (power == 0) return result;
  std::vector<u128> base(a.begin(), a.begin() + std::min(a.size(), limit + 1));
  bool first = true;
  while (power > 0) {
    if (power & 1) {
      result = first ? base : convolve(result, base, limit);
      first = false;
    }
    power >>= 1;
    if (power > 0) base = convolve(base, base, limit);
  }
  return result;
}

std::vector<std::uint8_t> support_convolve(std::span<const std::uint8_t> a,
                                           std::span<const std::uint8_t> b,
                                           std::size_t limit) {
  std::vector<u128> wa(a.begin(), a.end()), wb(b.begin(), b.end());
  for (auto& x : wa) x = x != 0;
  for (auto& x : wb) x = x != 0;
  const auto c = convolve(wa, wb, limit);
  std::vector<std::uint8_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] != 0;
  return out;
}

namespace {
std::mutex g_fftw_planner_mutex;
}

std::vector<double> real_convolve(std::span<const double> a,
                                  std::span<const double> b, std::size_t limit) {
  const Shape shape = truncated_shape(a.size(), b.size(), limit);
  if (shape.out == 0) return {};
  a = a.first(shape.la);
  b = b.first(shape.lb);
  std::vector<double> c(shape.out, 0.0);
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) <= 4.0e6) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      const std::size_t stop = std::min(b.size(), shape.out - i);
      for (std::size_t j = 0; j < stop; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  }

  const std::size_t size = std::bit_ceil(a.size() + b.size() - 1);
  const std::size_t bins = size / 2 + 1;
  double* in = fftw_alloc_real(size);
  fftw_complex* fa = fftw_alloc_complex(bins);
  fftw_complex* fb = fftw_alloc_complex(bins);
  fftw_plan forward_a, forward_b, backward;
  {
    std::lock_guard lock(g_fftw_planner_mutex);
    const int n = static_cast<int>(size);
    forward_a = fftw_plan_dft_r2c_1d(n, in, fa, FFTW_ESTIMATE);
    forward_b = fftw_plan_dft_r2c_1d(n, in, fb, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(n, fa, in, FFTW_ESTIMATE);
  }
  std::fill(in, in + size, 0.0);
  std::copy(a.begin(), a.end(), in);
  fftw_execute(forward_a);
  std::fill(in, in + size, 0.0);
  std::copy(b.begin(), b.end(), in);
  fftw_execute(forward_b);
  for (std::size_t i = 0; i < bins; ++i) {
    const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
    const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  fftw_execute(backward);
  for (std::size_t i = 0; i < shape.out; ++i) c[i] = in[i] / static_cast<double>(size);
  {
    std::lock_guard lock(g_fftw_planner_mutex);
    fftw_destroy_plan(forward_a);
    fftw_destroy_plan(forward_b);
    fftw_destroy_plan(backward);
  }
  fftw_free(in);
  fftw_free(fa);
  fftw_free(fb);
  return c;
}

}  // namespace wfc::conv
