#pragma once

// Exact p-adic solution counts M_n(p^h), M*_n(p^h) by residue-histogram
// convolution, and the local-solubility lemmas.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace wfc {

// Counts reach p^{h(st+4)}, far beyond 128 bits at t = 8.
using BigCount = boost::multiprecision::cpp_int;

struct ResidueHistogram {
  std::uint64_t modulus = 1;
  std::vector<BigCount> counts;  // length modulus

  BigCount total() const;
};

inline constexpr std::uint64_t kHistogramBudget = 100'000;
inline constexpr std::uint64_t kLocalCountBudget = 10'000;

// Cyclic convolution modulo the common modulus.
ResidueHistogram cyclic_convolve(const ResidueHistogram& a, const ResidueHistogram& b);
// Histogram of y^k mod m over y in [0, m), optionally units only.
ResidueHistogram power_histogram(std::uint64_t modulus, unsigned k, bool units_only);
// Image of a histogram under x -> x^k mod m.
ResidueHistogram pushforward_power(const ResidueHistogram& h, unsigned k);
// Counts of T(x) = x_1^l + ... + x_t^l mod p^h over x in [0, p^h)^t; with
// restrict_first_unit the first variable runs over units only.
ResidueHistogram form_histogram(std::uint64_t p, unsigned h, unsigned l, unsigned t,
                                bool restrict_first_unit);

// M_n(p^h) for every residue n in [0, p^h).
std::vector<BigCount> m_n_all(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                              unsigned t, unsigned s);
BigCount m_n(std::uint64_t p, unsigned h, std::uint64_t n, unsigned k, unsigned l,
             unsigned t, unsigned s);
// M*_n(p^h) for every residue; requires s >= 1.
std::vector<BigCount> m_star_n_all(std::uint64_t p, unsigned h, unsigned k, unsigned l,
                                   unsigned t, unsigned s);
BigCount m_star_n(std::uint64_t p, unsigned h, std::uint64_t n, unsigned k, unsigned l,
                  unsigned t, unsigned s);

enum class LocalLemma { M_at_gamma, Mstar_at_nu };

struct LemmaHypotheses {
  bool satisfied = false;
  unsigned level = 0;  // gamma or nu
  std::string detail;  // which clause applied and why it holds or fails
};

// The hypotheses exactly as printed: case on gamma = tau+1 / tau+2, the
// p = k = 2 clause, and t >= 4l.
LemmaHypotheses lemma_hypotheses(std::uint64_t p, unsigned k, unsigned l, unsigned t,
                                 unsigned s, LocalLemma which);

struct SolubilityReport {
  std::uint64_t p = 0;
  LocalLemma which = LocalLemma::M_at_gamma;
  unsigned level = 0;
  std::uint64_t modulus = 1;
  std::vector<BigCount> counts;  // one per residue class
  bool all_positive = false;
};

// Throws PreconditionError when the lemma's hypotheses fail.
SolubilityReport verify_local_solubility(std::uint64_t p, unsigned k, unsigned l,
                                         unsigned t, unsigned s, LocalLemma which);
// Same counts without the hypothesis check (used by diagnostics that look
// for obstructions).
SolubilityReport local_counts_at_level(std::uint64_t p, unsigned k, unsigned l,
                                       unsigned t, unsigned s, LocalLemma which);

}  // namespace wfc
