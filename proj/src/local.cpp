#include "wfc/local.hpp"

#include <numeric>

#include "wfc/arith.hpp"
#include "wfc/errors.hpp"

namespace wfc {

BigCount ResidueHistogram::total() const {
  BigCount sum = 0;
  for (const auto& c : counts) sum += c;
  return sum;
}

ResidueHistogram cyclic_convolve(const ResidueHistogram& a, const ResidueHistogram& b) {
  require(a.modulus == b.modulus, "cyclic_convolve: moduli differ");
  const std::uint64_t m = a.modulus;
  ResidueHistogram out{m, std::vector<BigCount>(m, 0)};
  for (std::uint64_t i = 0; i < m; ++i) {
    if (a.counts[i] == 0) continue;
    for (std::uint64_t j = 0; j < m; ++j) {
      if (b.counts[j] == 0) continue;
      const std::uint64_t idx = i + j >= m ? i + j - m : i + j;
      out.counts[idx] += a.counts[i] * b.counts[j];
    }
  }
  return out;
}

namespace {

std::uint64_t checked_modulus(std::uint64_t p, unsigned h, std::uint64_t budget) {
  require(is_prime(p), "p must be prime");
  std::uint64_t m = 1;
  for (unsigned i = 0; i < h; ++i) {
    m *= p;
    if (m > budget)
      throw ResourceError("modulus " + std::to_string(p) + "^" + std::to_string(h) +
                          " exceeds budget " + std::to_string(budget));
  }
  return m;
}

ResidueHistogram unit_part(const ResidueHistogram& h, std::uint64_t p) {
  ResidueHistogram out = h;
  for (std::uint64_t m = 0; m < h.modulus; m += p) out.counts[m] = 0;
  return out;
}

ResidueHistogram delta_at_zero(std::uint64_t m) {
  ResidueHistogram out{m, std::vector<BigCount>(m, 0)};
  out.counts[0] = 1;
  return out;
}

ResidueHistogram repeat(const ResidueHistogram& h, unsigned times) {
  ResidueHistogram acc = delta_at_zero(h.modulus);
  for (unsigned i = 0; i < times; ++i) acc = cyclic_convolve(acc, h);
  return acc;
}

}  // namespace

ResidueHistogram power_histogram(std::uint64_t modulus, unsigned k, bool units_only) {
  require(modulus >= 1, "power_histogram: modulus must be positive");
  ResidueHistogram out{modulus, std::vector<BigCount>(modulus, 0)};
  for (std::uint64_t y = 0; y < modulus; ++y) {
    if (units_only && modulus > 1 && std::gcd(y, modulus) != 1) continue;
    out.counts[pow_mod(y, k, modulus)] += 1;
  }
  return out;
}

ResidueHistogram pushforward_power(const ResidueHistogram& h, unsigned k) {
  ResidueHistogram out{h.modulus, std::vector<BigCount>(h.modulus, 0)};
  for (std::uint64_t m = 0; m < h.modulus; ++m)
    if (h.counts[m] != 0) out.counts[pow_mod(m, k, h.modulus)] += h.counts[m];
  return out;
}

ResidueHistogram form_histogram(std::uint64_t p, unsigned h, unsigned l, unsigned t,
                                bool restrict_first_unit) {
  require(t >= 1, "form_histogram: t must be positive");
  const std::uint64_t m = checked_modulus(p, h, kHistogramBudget);
  const ResidueHistogram all = power_histogram(m, l, false);
  ResidueHistogram acc = restrict_first_unit ? power_histogram(m, l, true) : all;
  for (unsigned i = 1; i < t; ++i) acc = cyclic_convolve(acc, all);
  return acc;
}

std::vector<BigCount> m_n_all(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                              unsigned t, unsigned s) {
  const std::uint64_t m = checked_modulus(p, h, kLocalCountBudget);
  const ResidueHistogram unit_powers = power_histogram(m, k, true);
  const ResidueHistogram all_powers = power_histogram(m, k, false);
  ResidueHistogram acc = cyclic_convolve(unit_powers, unit_powers);
  acc = cyclic_convolve(acc, cyclic_convolve(all_powers, all_powers));
  if (s > 0) {
    const ResidueHistogram form_k = pushforward_power(form_histogram(p, h, l, t, false), k);
    acc = cyclic_convolve(acc, repeat(form_k, s));
  }
  return acc.counts;
}

BigCount m_n(std::uint64_t p, unsigned h, std::uint64_t n, unsigned k, unsigned l,
             unsigned t, unsigned s) {
  const auto counts = m_n_all(p, h, k, l, t, s);
  return counts[n % counts.size()];
}

std::vector<BigCount> m_star_n_all(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                                   unsigned t, unsigned s) {
  require(s >= 1, "m_star_n: s must be at least 1");
  checked_modulus(p, h, kLocalCountBudget);
  // First block: x_{1,1} a unit and T(x_1) a unit, split before the k-th power.
  const ResidueHistogram first =
      pushforward_power(unit_part(form_histogram(p, h, l, t, true), p), k);
  ResidueHistogram acc = first;
  if (s > 1) {
    const ResidueHistogram rest = pushforward_power(form_histogram(p, h, l, t, false), k);
    acc = cyclic_convolve(acc, repeat(rest, s - 1));
  }
  return acc.counts;
}

BigCount m_star_n(std::uint64_t p, unsigned h, std::uint64_t n, unsigned k, unsigned l,
                  unsigned t, unsigned s) {
  const auto counts = m_star_n_all(p, h, k, l, t, s);
  return counts[n % counts.size()];
}

LemmaHypotheses lemma_hypotheses(std::uint64_t p, unsigned k, unsigned l, unsigned t,
                                 unsigned s, LocalLemma which) {
  require(is_prime(p), "lemma_hypotheses: p must be prime");
  require(k >= 2 && l >= 2, "lemma_hypotheses: need k, l >= 2");
  LemmaHypotheses out;
  const unsigned tau = valuation(k, p);
  const unsigned gamma = gamma_exponent(p, k);
  out.level = which == LocalLemma::M_at_gamma ? gamma : nu_exponent(p, k, l);
  // M at gamma tests s + 3, M* at nu tests s.
  const std::uint64_t lhs = which == LocalLemma::M_at_gamma ? s + 3ULL : s;
  const std::string lhs_name = which == LocalLemma::M_at_gamma ? "s+3" : "s";

  bool ok = false;
  if (p == 2 && k == 2) {
    const unsigned need = which == LocalLemma::M_at_gamma ? 2 : 5;
    ok = s >= need;
    out.detail = "p=k=2: s=" + std::to_string(s) + " >= " + std::to_string(need);
  } else if (gamma == tau + 1) {
    std::uint64_t ptau = 1;
    for (unsigned i = 0; i < tau; ++i) ptau *= p;
    const std::uint64_t g = std::gcd<std::uint64_t>(k, ptau * (p - 1));
    // lhs >= p/(p-1) * g, compared exactly.
    ok = static_cast<u128>(lhs) * (p - 1) >= static_cast<u128>(p) * g;
    out.detail = "gamma=tau+1: " + lhs_name + "=" + std::to_string(lhs) + " vs " +
                 std::to_string(p) + "/" + std::to_string(p - 1) + "*" +
                 std::to_string(g);
  } else {
    // gamma = tau + 2 forces p = 2 and tau > 0; here k > 2.
    const std::uint64_t need = 1ULL << (tau + 2);
    ok = lhs >= need;
    out.detail = "gamma=tau+2, k>2: " + lhs_name + "=" + std::to_string(lhs) +
                 " vs " + std::to_string(need);
  }
  if (t < 4 * l) {
    ok = false;
    out.detail += "; t=" + std::to_string(t) + " < 4l";
  }
  out.satisfied = ok;
  out.detail = (ok ? "holds: " : "fails: ") + out.detail;
  return out;
}

SolubilityReport local_counts_at_level(std::uint64_t p, unsigned k, unsigned l,
                                       unsigned t, unsigned s, LocalLemma which) {
  require(is_prime(p), "local solubility: p must be prime");
  SolubilityReport report;
  report.p = p;
  report.which = which;
  report.level = which == LocalLemma::M_at_gamma ? gamma_exponent(p, k)
                                                 : nu_exponent(p, k, l);
  report.modulus = checked_modulus(p, report.level, kLocalCountBudget);
  if (report.level == 0) {
    report.counts = {BigCount(1)};
  } else if (which == LocalLemma::M_at_gamma) {
    report.counts = m_n_all(p, report.level, k, l, t, s);
  } else {
    report.counts = m_star_n_all(p, report.level, k, l, t, s);
  }
  report.all_positive = true;
  for (const auto& c : report.counts) report.all_positive &= c > 0;
  return report;
}

SolubilityReport verify_local_solubility(std::uint64_t p, unsigned k, unsigned l,
                                         unsigned t, unsigned s, LocalLemma which) {
  const LemmaHypotheses hyp = lemma_hypotheses(p, k, l, t, s, which);
  if (!hyp.satisfied)
    throw PreconditionError("local solubility lemma hypotheses unmet at p=" +
                            std::to_string(p) + " (" + hyp.detail + ")");
  return local_counts_at_level(p, k, l, t, s, which);
}

}  // namespace wfc
