#include "wfc/expsums.hpp"

#include <cmath>
#include <numeric>

#include "wfc/arith.hpp"
#include "wfc/errors.hpp"

namespace wfc {

namespace {

std::uint64_t reduce(std::int64_t a, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  std::int64_t r = a % sq;
  if (r < 0) r += sq;
  return static_cast<std::uint64_t>(r);
}

Complex ipow(Complex z, unsigned e) {
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

void require_unit(std::uint64_t q, std::int64_t a, const char* who) {
  require(q >= 1, std::string(who) + ": q must be positive");
  if (q == 1) return;
  require(std::gcd(reduce(a, q), q) == 1,
          std::string(who) + ": gcd(a, q) must be 1");
}

// hist[m] = #{r in [0, q) : r^k = m mod q}
std::vector<std::uint64_t> power_residue_counts(std::uint64_t q, unsigned k) {
  std::vector<std::uint64_t> hist(q, 0);
  for (std::uint64_t r = 0; r < q; ++r) ++hist[pow_mod(r, k, q)];
  return hist;
}

}  // namespace

Complex root_of_unity(std::int64_t j, std::uint64_t q) {
  require(q >= 1, "root_of_unity: q must be positive");
  const std::uint64_t r = reduce(j, q);
  const double turns = (2 * r < q) ? static_cast<double>(r) / q
                                   : -static_cast<double>(q - r) / q;
  return unit_phase(turns);
}

Complex s_k(std::uint64_t q, std::int64_t a, unsigned k) {
  require_unit(q, a, "s_k");
  return s_k_linear(q, a, 0, k);
}

Complex s_k_linear(std::uint64_t q, std::int64_t a, std::int64_t u, unsigned k) {
  require(q >= 1, "s_k_linear: q must be positive");
  const std::uint64_t ar = reduce(a, q), ur = reduce(u, q);
  ComplexSum sum;
  for (std::uint64_t r = 0; r < q; ++r) {
    const std::uint64_t phase =
        (mul_mod(ar, pow_mod(r, k, q), q) + q - mul_mod(ur, r, q)) % q;
    sum.add(root_of_unity(static_cast<std::int64_t>(phase), q));
  }
  return sum.value();
}

Complex w_q(std::uint64_t q, std::int64_t a, unsigned k) {
  require_unit(q, a, "w_q");
  const std::uint64_t ar = reduce(a, q);
  ComplexSum sum;
  for (std::uint64_t r = 1; r <= q; ++r) {
    if (std::gcd(r, q) != 1) continue;
    sum.add(root_of_unity(
        static_cast<std::int64_t>(mul_mod(ar, pow_mod(r, k, q), q)), q));
  }
  return sum.value();
}

FormSumTable::FormSumTable(std::uint64_t q, unsigned k, unsigned l, unsigned t)
    : q_(q), k_(k), t_(t), single_(q), weight_(q) {
  require(q >= 1, "FormSumTable: q must be positive");
  if (q > kFormSumBudget)
    throw ResourceError("s_form: q = " + std::to_string(q) + " exceeds budget " +
                        std::to_string(kFormSumBudget));
  const RootTable roots(q);
  const auto l_hist = power_residue_counts(q, l);
  for (std::uint64_t u = 0; u < q; ++u) {
    ComplexSum sum;
    for (std::uint64_t m = 0; m < q; ++m)
      if (l_hist[m]) sum.add(static_cast<double>(l_hist[m]) * roots[u * m % q]);
    single_[u] = sum.value();
  }
  std::vector<Complex> powered(q);
  for (std::uint64_t u = 0; u < q; ++u) powered[u] = ipow(single_[u], t);
  // G(r) = sum_u S_l(q,u)^t e_q(-u r), grouped by r^k mod q.
  for (std::uint64_t r = 0; r < q; ++r) {
    ComplexSum sum;
    for (std::uint64_t u = 0; u < q; ++u)
      sum.add(powered[u] * roots[(q - u * r % q) % q]);
    weight_[pow_mod(r, k, q)] += sum.value() / static_cast<double>(q);
  }
}

Complex FormSumTable::value(std::int64_t a) const {
  require_unit(q_, a, "s_form");
  const std::uint64_t ar = reduce(a, q_);
  ComplexSum sum;
  for (std::uint64_t m = 0; m < q_; ++m) {
    if (weight_[m] == Complex{}) continue;
    sum.add(weight_[m] *
            root_of_unity(static_cast<std::int64_t>(mul_mod(ar, m, q_)), q_));
  }
  return sum.value();
}

Complex FormSumTable::normalized(std::int64_t a) const {
  return value(a) / std::pow(static_cast<double>(q_), static_cast<double>(t_));
}

Complex s_form(std::uint64_t q, std::int64_t a, unsigned k, unsigned l, unsigned t) {
  require_unit(q, a, "s_form");
  if (q > kFormSumBudget)
    throw ResourceError("s_form: q = " + std::to_string(q) + " exceeds budget " +
                        std::to_string(kFormSumBudget));
  // Both factor tables, then the u-sum over a complete residue system.
  std::vector<Complex> single(q), twisted(q);
  for (std::uint64_t u = 0; u < q; ++u) {
    single[u] = s_k_linear(q, static_cast<std::int64_t>(u), 0, l);
    twisted[u] = s_k_linear(q, a, static_cast<std::int64_t>(u), k);
  }
  ComplexSum sum;
  for (std::uint64_t u = 0; u < q; ++u) sum.add(ipow(single[u], t) * twisted[u]);
  return sum.value() / static_cast<double>(q);
}

double w_k_weight(std::uint64_t q, unsigned k) {
  require(q >= 1 && k >= 1, "w_k_weight: need q >= 1 and k >= 1");
  double w = 1.0;
  for (const auto& [p, e] : factorize(q)) {
    const unsigned u = (e - 1) / k;
    const unsigned v = e - u * k;  // 1 <= v <= k
    const double pd = static_cast<double>(p);
    if (v == 1)
      w *= k * std::pow(pd, -static_cast<double>(u) - 0.5);
    else
      w *= std::pow(pd, -static_cast<double>(u) - 1.0);
  }
  return w;
}

ErrorTermReport e_error(std::uint64_t p, unsigned h, std::int64_t a, unsigned k,
                        unsigned l, unsigned t) {
  require(is_prime(p), "e_error: p must be prime");
  require(h >= 1, "e_error: h must be positive");
  const std::uint64_t q = checked_pow(p, h);
  ErrorTermReport report;
  const Complex full = s_form(q, a, k, l, t);
  const double scale = std::pow(static_cast<double>(q), static_cast<double>(t) - 1.0);
  report.E = full - scale * s_k(q, a, k);

  ComplexSum direct;
  for (std::uint64_t u = 1; u < q; ++u)
    direct.add(ipow(s_k_linear(q, static_cast<std::int64_t>(u), 0, l), t) *
               s_k_linear(q, a, static_cast<std::int64_t>(u), k));
  report.E_direct = direct.value() / static_cast<double>(q);
  report.magnitude = std::abs(report.E);
  const double hd = h, td = t;
  report.envelope = std::pow(static_cast<double>(p),
                             hd * td - hd / k - (td / l - 1.0));
  return report;
}

}  // namespace wfc
