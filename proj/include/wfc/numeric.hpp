#pragma once

// Floating-point building blocks shared by the exponential-sum modules:
// compensated accumulation, exact phases, tables of roots of unity.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace wfc {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Neumaier-compensated sum of real terms.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class ComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// e(x) = exp(2 pi i x) for x given in turns.
inline Complex unit_phase(double turns) {
  turns -= std::nearbyint(turns);
  return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)};
}

// A point of R/Z stored as a 64-bit binary fraction. Products with integers
// are reduced mod 1 exactly by wrapping arithmetic, so e(alpha x^k) stays
// accurate for arguments far beyond double precision.
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase from_raw(std::uint64_t raw) { return Phase(raw); }
  // Nearest representable phase to x mod 1 (exact for dyadic x).
  static Phase from_turns(double x);
  // a/q mod 1 rounded to the 2^-64 grid.
  static Phase from_fraction(std::int64_t a, std::uint64_t q);

  constexpr std::uint64_t raw() const { return raw_; }
  // Representative in [0, 1).
  double turns() const;
  // Representative in [-1/2, 1/2).
  double signed_turns() const;
  Complex e() const { return unit_phase(signed_turns()); }

  constexpr Phase operator*(std::uint64_t x) const { return Phase(raw_ * x); }
  constexpr Phase operator+(Phase o) const { return Phase(raw_ + o.raw_); }
  constexpr Phase operator-(Phase o) const { return Phase(raw_ - o.raw_); }
  constexpr Phase operator-() const { return Phase(0 - raw_); }
  constexpr bool operator==(const Phase&) const = default;

 private:
  constexpr explicit Phase(std::uint64_t raw) : raw_(raw) {}
  std::uint64_t raw_ = 0;
};

// ||x||: distance to the nearest integer.
inline double distance_to_integer(Phase x) { return std::abs(x.signed_turns()); }

// e_q(j) for j in [0, q).
class RootTable {
 public:
  explicit RootTable(std::uint64_t q);
  std::uint64_t modulus() const { return q_; }
  const Complex& operator[](std::uint64_t j) const { return roots_[j]; }

 private:
  std::uint64_t q_;
  std::vector<Complex> roots_;
};

// sum_{m=1}^{N} weight[m] e(beta m), evaluated with exact phases at the start
// of each block and a short multiplicative recurrence inside it.
Complex weighted_fourier_sum(const std::vector<double>& weight, Phase beta);

}  // namespace wfc
