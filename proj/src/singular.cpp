#include "wfc/singular.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "wfc/arith.hpp"
#include "wfc/errors.hpp"
#include "wfc/expsums.hpp"
#include "wfc/local.hpp"
#include "wfc/parallel.hpp"

namespace wfc {

namespace {

Complex ipow(Complex z, unsigned e) {
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

}  // namespace

std::vector<Complex> arithmetic_factor_table(std::uint64_t q, const SeriesParams& params,
                                             SeriesKind kind) {
  require(q >= 1, "arithmetic factor: q must be positive");
  const FormSumTable form(q, params.k, params.l, params.t);
  const double qd = static_cast<double>(q);
  const double phi = static_cast<double>(euler_phi(q));
  std::vector<std::uint64_t> units;
  std::vector<Complex> factor;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const auto sa = static_cast<std::int64_t>(a);
    Complex value = ipow(form.normalized(sa), params.s);
    if (kind == SeriesKind::standard) {
      const Complex sk = s_k(q, sa, params.k) / qd;
      const Complex w = w_q(q, sa, params.k) / phi;
      value *= sk * sk * w * w;
    }
    units.push_back(a);
    factor.push_back(value);
  }
  const RootTable roots(q);
  std::vector<Complex> table(q);
  for (std::uint64_t r = 0; r < q; ++r) {
    ComplexSum sum;
    for (std::size_t i = 0; i < units.size(); ++i)
      sum.add(factor[i] * roots[(q - units[i] * r % q) % q]);
    table[r] = sum.value();
  }
  return table;
}

Complex s_n_q(std::uint64_t q, std::uint64_t n, const SeriesParams& params) {
  return arithmetic_factor_table(q, params, SeriesKind::standard)[n % q];
}

Complex s_n_prime_q(std::uint64_t q, std::uint64_t n, const SeriesParams& params) {
  return arithmetic_factor_table(q, params, SeriesKind::prime_variant)[n % q];
}

SingularSeries::SingularSeries(const SeriesParams& params, SeriesKind kind,
                               std::uint64_t Q)
    : params_(params), kind_(kind), Q_(Q), tables_(Q + 1) {
  require(Q >= 1, "singular series: Q must be positive");
  if (Q > kFormSumBudget)
    throw ResourceError("singular series: Q exceeds the exponential-sum budget");
  // Largest moduli first so the slowest tasks start early.
  parallel_for(0, Q, [&](std::size_t i) {
    const std::uint64_t q = Q - i;
    tables_[q] = arithmetic_factor_table(q, params_, kind_);
  });
}

Complex SingularSeries::term(std::uint64_t q, std::uint64_t n) const {
  require(q >= 1 && q <= Q_, "singular series: q outside cached range");
  return tables_[q][n % q];
}

SeriesTruncation SingularSeries::truncated(std::uint64_t n) const {
  SeriesTruncation out;
  out.kind = kind_;
  out.summation = Summation::full;
  out.Q_cutoff = Q_;
  out.tail_estimate = std::pow(static_cast<double>(Q_), -1.0 / params_.k);
  ComplexSum sum;
  out.terms.reserve(Q_);
  for (std::uint64_t q = 1; q <= Q_; ++q) {
    out.terms.push_back(tables_[q][n % q]);
    sum.add(out.terms.back());
  }
  out.value = sum.value();
  return out;
}

SeriesTruncation SingularSeries::euler_product(std::uint64_t n,
                                               std::uint64_t prime_cutoff,
                                               std::uint64_t power_cutoff) const {
  require(power_cutoff <= Q_, "euler product: p^h cutoff beyond cached range");
  SeriesTruncation out;
  out.kind = kind_;
  out.summation = Summation::prime;
  out.prime_cutoff = prime_cutoff;
  out.h_cutoff = power_cutoff;
  out.Q_cutoff = power_cutoff;
  out.tail_estimate = std::pow(static_cast<double>(power_cutoff), -1.0 / params_.k);
  Complex product{1.0, 0.0};
  for (std::uint32_t p : primes_up_to(std::min(prime_cutoff, power_cutoff))) {
    ComplexSum local;
    local.add(Complex{1.0, 0.0});
    for (std::uint64_t q = p; q <= power_cutoff; q *= p) local.add(tables_[q][n % q]);
    out.terms.push_back(local.value());
    product *= local.value();
  }
  out.value = product;
  return out;
}

std::vector<double> SingularSeries::values(std::uint64_t lo, std::uint64_t hi) const {
  require(lo <= hi, "singular series: empty range");
  std::vector<double> out(hi - lo + 1);
  parallel_for(0, out.size(), [&](std::size_t i) {
    const std::uint64_t n = lo + i;
    CompensatedSum sum;
    for (std::uint64_t q = 1; q <= Q_; ++q) sum.add(tables_[q][n % q].real());
    out[i] = sum.value();
  });
  return out;
}

SeriesTruncation truncated_series(std::uint64_t n, std::uint64_t Q, Summation summation,
                                  SeriesKind kind, const SeriesParams& params,
                                  std::uint64_t prime_cutoff, std::uint64_t power_cutoff) {
  if (summation == Summation::full) return SingularSeries(params, kind, Q).truncated(n);
  return SingularSeries(params, kind, power_cutoff)
      .euler_product(n, prime_cutoff, power_cutoff);
}

std::vector<SnmCheck> snm_identity_all(std::uint64_t p, unsigned h,
                                       const SeriesParams& params) {
  require(is_prime(p), "snm: p must be prime");
  const std::uint64_t q = checked_pow(p, h);
  std::vector<std::vector<Complex>> tables;
  for (std::uint64_t d = 1; d <= q; d *= p)
    tables.push_back(arithmetic_factor_table(d, params, SeriesKind::standard));
  const auto counts = m_n_all(p, h, params.k, params.l, params.t, params.s);

  const double phi = static_cast<double>(euler_phi(q));
  const double exponent = static_cast<double>(h) * (params.s * params.t + 1.0);
  const double scale = std::pow(static_cast<double>(p), -exponent) / (phi * phi);
  std::vector<SnmCheck> out;
  for (std::uint64_t n = 0; n < q; ++n) {
    SnmCheck row;
    row.p = p;
    row.h = h;
    row.n = n;
    CompensatedSum left;
    std::uint64_t d = 1;
    for (const auto& table : tables) {
      left.add(table[n % d].real());
      d *= p;
    }
    row.left = left.value();
    row.right = counts[n].convert_to<double>() * scale;
    row.residual = std::abs(row.left - row.right);
    out.push_back(row);
  }
  return out;
}

double snm_identity_check(std::uint64_t p, unsigned h, std::uint64_t n,
                          const SeriesParams& params) {
  const auto rows = snm_identity_all(p, h, params);
  return rows[n % rows.size()].residual;
}

PositivityReport positivity_sweep(std::uint64_t n_lo, std::uint64_t n_hi,
                                  SeriesKind kind, const SeriesParams& params,
                                  std::uint64_t Q) {
  require(n_lo <= n_hi, "positivity_sweep: empty range");
  PositivityReport report;
  const LocalLemma lemma =
      kind == SeriesKind::standard ? LocalLemma::M_at_gamma : LocalLemma::Mstar_at_nu;
  for (std::uint32_t p : primes_up_to(std::max<std::uint64_t>(Q, 100))) {
    const auto hyp = lemma_hypotheses(p, params.k, params.l, params.t, params.s, lemma);
    if (hyp.satisfied) continue;
    report.hypotheses_ok = false;
    report.hypothesis_failures.push_back("p=" + std::to_string(p) + ": " + hyp.detail);
    if (report.obstructing_prime) continue;
    // Look for a residue class the range actually meets with no local solution.
    try {
      const auto counts = local_counts_at_level(p, params.k, params.l, params.t,
                                                params.s, lemma);
      for (std::uint64_t r = 0; r < counts.modulus; ++r) {
        if (counts.counts[r] != 0) continue;
        const std::uint64_t first = n_lo + (r + counts.modulus - n_lo % counts.modulus) %
                                               counts.modulus;
        if (first <= n_hi) {
          report.obstructing_prime = p;
          report.obstructed_residue = r;
          break;
        }
      }
    } catch (const ResourceError&) {
      // Level modulus too large to count; the failure is still listed.
    }
  }
  const SingularSeries series(params, kind, Q);
  const auto values = series.values(n_lo, n_hi);
  report.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < report.min_value) {
      report.min_value = values[i];
      report.argmin = n_lo + i;
    }
  }
  report.flagged = report.min_value <= kPositivityFloor;
  return report;
}

}  // namespace wfc
