#include "wfc/oracle.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "wfc/errors.hpp"

namespace wfc::oracle {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Calls visit(x) for every x in [lo, hi]^dims.
void for_each_tuple(unsigned dims, std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> x(dims, lo);
  if (hi < lo) return;
  for (;;) {
    visit(x);
    unsigned i = 0;
    while (i < dims && x[i] == hi) x[i++] = lo;
    if (i == dims) return;
    ++x[i];
  }
}

// Values T(x) for all x in N^t with T(x) <= limit, one entry per tuple.
std::vector<std::uint64_t> form_values(unsigned l, unsigned t, std::uint64_t limit,
                                       std::uint64_t budget) {
  std::vector<std::uint64_t> out;
  std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned left, std::uint64_t sum) {
    if (left == 0) {
      out.push_back(sum);
      if (out.size() > budget) throw ResourceError("oracle: enumeration budget exceeded");
      return;
    }
    for (std::uint64_t x = 1; sum + ipow(x, l) <= limit; ++x) rec(left - 1, sum + ipow(x, l));
  };
  rec(t, 0);
  return out;
}

}  // namespace

Complex s_form_direct(std::uint64_t q, std::int64_t a, unsigned k, unsigned l, unsigned t) {
  ComplexSum sum;
  const auto sq = static_cast<std::int64_t>(q);
  for_each_tuple(t, 1, q, [&](const std::vector<std::uint64_t>& r) {
    std::uint64_t T = 0;
    for (auto x : r) T = (T + pow_mod(x, l, q)) % q;
    const std::uint64_t Tk = pow_mod(T, k, q);
    const std::int64_t j = ((a % sq) * static_cast<std::int64_t>(Tk)) % sq;
    sum.add(unit_phase(static_cast<double>(j) / static_cast<double>(q)));
  });
  return sum.value();
}

std::vector<std::uint64_t> rho_direct(unsigned l, unsigned t, std::uint64_t limit) {
  std::vector<std::uint64_t> rho(limit + 1, 0);
  for (std::uint64_t v : form_values(l, t, limit, kEnumerationBudget)) ++rho[v];
  return rho;
}

namespace {

std::vector<std::uint64_t> local_direct(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                                        unsigned t, unsigned s, bool star) {
  const std::uint64_t q = ipow(p, h);
  const unsigned vars = star ? s * t : 4 + s * t;
  if (std::pow(static_cast<double>(q), vars) > kEnumerationBudget)
    throw ResourceError("oracle: local enumeration too large");
  std::vector<std::uint64_t> counts(q, 0);
  for_each_tuple(vars, 0, q - 1, [&](const std::vector<std::uint64_t>& x) {
    std::uint64_t n = 0;
    unsigned i = 0;
    if (!star) {
      if (std::gcd(x[0], q) != 1 || std::gcd(x[1], q) != 1) return;
      for (; i < 4; ++i) n += pow_mod(x[i], k, q);
    }
    for (unsigned b = 0; b < s; ++b) {
      std::uint64_t T = 0;
      for (unsigned j = 0; j < t; ++j) T += pow_mod(x[i + j], l, q);
      T %= q;
      if (star && b == 0 && (x[i] % p == 0 || T % p == 0)) return;
      n += pow_mod(T, k, q);
      i += t;
    }
    ++counts[n % q];
  });
  return counts;
}

}  // namespace

std::vector<std::uint64_t> m_n_direct(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                                      unsigned t, unsigned s) {
  return local_direct(p, h, k, l, t, s, false);
}

std::vector<std::uint64_t> m_star_n_direct(std::uint64_t p, unsigned h, unsigned k,
                                           unsigned l, unsigned t, unsigned s) {
  return local_direct(p, h, k, l, t, s, true);
}

namespace {

// Each block contributes one of `values` (with repetition for multiplicity).
std::vector<u128> enumerate_blocks(const std::vector<std::vector<std::uint64_t>>& blocks,
                                   std::uint64_t n_max, std::uint64_t budget) {
  std::vector<u128> out(n_max + 1, 0);
  std::uint64_t work = 0;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t b, std::uint64_t sum) {
    if (++work > budget) throw ResourceError("oracle: enumeration budget exceeded");
    if (b == blocks.size()) {
      ++out[sum];
      return;
    }
    for (std::uint64_t v : blocks[b])
      if (sum + v <= n_max) rec(b + 1, sum + v);
  };
  rec(0, 0);
  return out;
}

}  // namespace

std::vector<u128> count_conje_direct(std::uint64_t n_max, unsigned k, unsigned l, unsigned t,
                                     unsigned s, unsigned r_extra, std::uint64_t budget) {
  const std::uint64_t root = integer_root(n_max, k);
  std::vector<std::uint64_t> form;
  for (std::uint64_t v : form_values(l, t, root, budget)) form.push_back(ipow(v, k));
  std::vector<std::uint64_t> powers;
  for (std::uint64_t x = 1; x <= root; ++x) powers.push_back(ipow(x, k));
  std::vector<std::vector<std::uint64_t>> blocks(s, form);
  for (unsigned i = 0; i < r_extra; ++i) blocks.push_back(powers);
  return enumerate_blocks(blocks, n_max, budget);
}

std::vector<u128> count_theorem13_direct(std::uint64_t n_max, unsigned k, unsigned l,
                                         unsigned xi, unsigned s, bool weighted,
                                         std::uint64_t budget) {
  const std::uint64_t root = integer_root(n_max, k);
  std::vector<std::uint64_t> values = form_values(l, xi, root, budget);
  if (!weighted) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  for (auto& v : values) v = ipow(v, k);
  return enumerate_blocks(std::vector<std::vector<std::uint64_t>>(s, values), n_max, budget);
}

std::vector<u128> convolve_direct(const std::vector<u128>& a, const std::vector<u128>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

double j_prime_s2_direct(std::uint64_t n, unsigned xi, unsigned k, unsigned l) {
  const double e = static_cast<double>(xi) / (k * l) - 1.0;
  CompensatedSum sum;
  for (std::uint64_t m = 1; m < n; ++m)
    sum.add(std::pow(static_cast<double>(m), e) * std::pow(static_cast<double>(n - m), e));
  return sum.value() / (static_cast<double>(k) * k);
}

double j_prime_s2_quadrature(std::uint64_t n, unsigned xi, unsigned k, unsigned l,
                             std::uint64_t nodes) {
  const double e = static_cast<double>(xi) / (k * l) - 1.0;
  std::vector<double> w(n + 1, 0.0);
  for (std::uint64_t m = 1; m <= n; ++m) w[m] = std::pow(static_cast<double>(m), e) / k;
  CompensatedSum sum;
  for (std::uint64_t j = 0; j < nodes; ++j) {
    const double beta = static_cast<double>(j) / nodes;
    ComplexSum u;
    for (std::uint64_t m = 1; m <= n; ++m) u.add(w[m] * unit_phase(beta * m));
    const Complex term = u.value() * u.value() * unit_phase(-beta * static_cast<double>(n));
    sum.add(term.real());
  }
  return sum.value() / nodes;
}

double j_singular_s0_direct(std::uint64_t n, unsigned k) {
  const double X = std::pow(static_cast<double>(n), 1.0 / k);
  const double x1 = 0.5 * std::pow(2.0 * k, -1.0 / (k - 1)) * X;
  std::vector<double> v(n + 1, 0.0), w(n + 1, 0.0);
  for (std::uint64_t x = 1; x <= n; ++x) {
    const double xd = static_cast<double>(x);
    if (xd > std::pow(x1, k) && xd <= std::pow(2.0 * x1, k))
      v[x] = std::pow(xd, 1.0 / k - 1.0) / k;
    if (x >= 2) w[x] = std::pow(xd, 1.0 / k - 1.0) / (k * std::log(xd));
  }
  std::vector<double> vv(n + 1, 0.0), ww(n + 1, 0.0);
  for (std::uint64_t a = 0; a <= n; ++a)
    for (std::uint64_t x = 0; x <= a; ++x) {
      vv[a] += v[x] * v[a - x];
      ww[a] += w[x] * w[a - x];
    }
  CompensatedSum sum;
  for (std::uint64_t a = 0; a <= n; ++a) sum.add(vv[a] * ww[n - a]);
  return sum.value();
}

std::uint64_t vinogradov_direct(const std::vector<std::uint64_t>& set, unsigned s, unsigned k) {
  std::uint64_t count = 0;
  const std::uint64_t N = set.size();
  if (N == 0) return 0;
  for_each_tuple(2 * s, 0, N - 1, [&](const std::vector<std::uint64_t>& idx) {
    for (unsigned j = 1; j <= k; ++j) {
      u128 left = 0, right = 0;
      for (unsigned i = 0; i < s; ++i) {
        u128 a = 1, b = 1;
        for (unsigned e = 0; e < j; ++e) {
          a *= set[idx[i]];
          b *= set[idx[s + i]];
        }
        left += a;
        right += b;
      }
      if (left != right) return;
    }
    ++count;
  });
  return count;
}

K2Direct k2_direct(const std::vector<std::uint64_t>& set, std::uint64_t x_lo,
                   std::uint64_t x_hi) {
  K2Direct out;
  for (std::uint64_t x1 = x_lo; x1 <= x_hi; ++x1)
    for (std::uint64_t x2 = x_lo; x2 <= x_hi; ++x2)
      for (auto y1 : set)
        for (auto y2 : set)
          for (auto y3 : set)
            for (auto y4 : set)
              if (x1 * x1 + y1 * y1 + y2 * y2 == x2 * x2 + y3 * y3 + y4 * y4)
                ++(x1 == x2 ? out.diagonal : out.offdiagonal);
  return out;
}

Complex f_alpha_direct(Phase alpha, unsigned k, unsigned l, unsigned t, std::uint64_t cutoff) {
  require(t <= 3, "f_alpha_direct: t <= 3 only");
  ComplexSum sum;
  const std::uint64_t top = integer_root(cutoff, l);
  for_each_tuple(t, 1, top, [&](const std::vector<std::uint64_t>& x) {
    std::uint64_t T = 0;
    for (auto v : x) T += ipow(v, l);
    if (T > cutoff) return;
    Phase ph = alpha;
    for (unsigned i = 0; i < k; ++i) ph = ph * T;
    sum.add(ph.e());
  });
  return sum.value();
}

}  // namespace wfc::oracle
