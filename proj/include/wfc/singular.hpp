#pragma once

// Arithmetic factors S_n(q), S'_n(q), truncated singular series and Euler
// products, the identity relating S_n(p^j) to M_n(p^h), and positivity
// sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfc/numeric.hpp"

namespace wfc {

struct SeriesParams {
  unsigned k = 2;
  unsigned l = 2;
  unsigned t = 8;
  unsigned s = 1;
};

// S_n(q) carries the extra (q^{-1}S_k)^2 (phi^{-1}W)^2 factors; S'_n(q) does not.
enum class SeriesKind { standard, prime_variant };
// Sum over q <= Q, or product over p <= prime_cutoff of sum_{p^h <= h_cutoff}.
enum class Summation { full, prime };

// S_n(q) as a function of n mod q: table[r] = S_r(q).
std::vector<Complex> arithmetic_factor_table(std::uint64_t q, const SeriesParams& params,
                                             SeriesKind kind);

Complex s_n_q(std::uint64_t q, std::uint64_t n, const SeriesParams& params);
Complex s_n_prime_q(std::uint64_t q, std::uint64_t n, const SeriesParams& params);

struct SeriesTruncation {
  Complex value;
  Summation summation = Summation::full;
  SeriesKind kind = SeriesKind::standard;
  std::uint64_t Q_cutoff = 0;
  std::uint64_t prime_cutoff = 0;
  std::uint64_t h_cutoff = 0;  // bound on p^h in the Euler variant
  std::vector<Complex> terms;  // per q (full) or per-prime factors (prime)
  double tail_estimate = 0.0;  // Q^{-1/k}
};

inline constexpr std::uint64_t kDefaultSeriesQ = 200;
inline constexpr std::uint64_t kDefaultPrimeCutoff = 50;
inline constexpr std::uint64_t kDefaultPowerCutoff = 200;

// Caches the residue tables so that many n can be evaluated cheaply.
class SingularSeries {
 public:
  SingularSeries(const SeriesParams& params, SeriesKind kind, std::uint64_t Q);

  SeriesKind kind() const { return kind_; }
  std::uint64_t cutoff() const { return Q_; }
  Complex term(std::uint64_t q, std::uint64_t n) const;
  SeriesTruncation truncated(std::uint64_t n) const;
  // Euler variant from the cached tables; every p^h <= power_cutoff must be <= Q.
  SeriesTruncation euler_product(std::uint64_t n, std::uint64_t prime_cutoff,
                                 std::uint64_t power_cutoff) const;
  // Re of the truncated q-sum for each n in [lo, hi].
  std::vector<double> values(std::uint64_t lo, std::uint64_t hi) const;

 private:
  SeriesParams params_;
  SeriesKind kind_;
  std::uint64_t Q_;
  std::vector<std::vector<Complex>> tables_;  // index q
};

SeriesTruncation truncated_series(std::uint64_t n, std::uint64_t Q, Summation summation,
                                  SeriesKind kind, const SeriesParams& params,
                                  std::uint64_t prime_cutoff = kDefaultPrimeCutoff,
                                  std::uint64_t power_cutoff = kDefaultPowerCutoff);

struct SnmCheck {
  std::uint64_t p = 0;
  unsigned h = 0;
  std::uint64_t n = 0;
  double left = 0.0;   // Re sum_{j<=h} S_n(p^j)
  double right = 0.0;  // M_n(p^h) p^{-h(st+1)} phi(p^h)^{-2}
  double residual = 0.0;
};

double snm_identity_check(std::uint64_t p, unsigned h, std::uint64_t n,
                          const SeriesParams& params);
// Every residue n mod p^h at once.
std::vector<SnmCheck> snm_identity_all(std::uint64_t p, unsigned h,
                                       const SeriesParams& params);

struct PositivityReport {
  double min_value = 0.0;
  std::uint64_t argmin = 0;
  bool flagged = false;  // some value <= 0.01
  bool hypotheses_ok = true;
  std::vector<std::string> hypothesis_failures;
  std::optional<std::uint64_t> obstructing_prime;
  std::optional<std::uint64_t> obstructed_residue;
};

inline constexpr double kPositivityFloor = 0.01;

PositivityReport positivity_sweep(std::uint64_t n_lo, std::uint64_t n_hi,
                                  SeriesKind kind, const SeriesParams& params,
                                  std::uint64_t Q = kDefaultSeriesQ);

}  // namespace wfc
