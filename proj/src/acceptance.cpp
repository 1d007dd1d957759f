#include "wfc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "wfc/arcs.hpp"
#include "wfc/convolution.hpp"
#include "wfc/errors.hpp"
#include "wfc/expsums.hpp"
#include "wfc/integral.hpp"
#include "wfc/local.hpp"
#include "wfc/oracle.hpp"
#include "wfc/powersets.hpp"
#include "wfc/report.hpp"
#include "wfc/represent.hpp"
#include "wfc/singular.hpp"

namespace wfc::acceptance {

namespace {

std::string fmt(double x) { return format_double(x); }

std::vector<std::uint64_t> units_of(std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) out.push_back(a);
  return out;
}

// At most `count` units spread across [1, q].
std::vector<std::uint64_t> some_units(std::uint64_t q, std::size_t count) {
  const auto all = units_of(q);
  if (all.size() <= count) return all;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

CriterionResult snm_identity() {
  CriterionResult r{1, "Snm exact identity", false, "", 0.0, 300.0};
  const SeriesParams grid[] = {{2, 2, 8, 1}, {2, 2, 8, 2}, {3, 2, 8, 1}};
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& params : grid)
    for (std::uint64_t p : {2, 3, 5, 7})
      for (unsigned h = 1; h <= 3; ++h) {
        if (checked_pow(p, h) > 200) break;
        for (const auto& row : snm_identity_all(p, h, params)) {
          worst = std::max(worst, row.residual);
          ++checked;
        }
      }
  r.passed = worst <= 1e-8;
  r.detail = std::to_string(checked) + " residues, max residual " + fmt(worst);
  return r;
}

CriterionResult orthogonality() {
  CriterionResult r{2, "Orthogonality reduction", false, "", 0.0, 60.0};
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t q = 1; q <= 5; ++q)
    for (unsigned t = 1; t <= 3; ++t)
      for (unsigned k = 1; k <= 3; ++k)
        for (unsigned l = 1; l <= 3; ++l)
          for (std::uint64_t a : units_of(q)) {
            const auto sa = static_cast<std::int64_t>(a);
            const Complex fast = s_form(q, sa, k, l, t);
            const Complex slow = oracle::s_form_direct(q, sa, k, l, t);
            worst = std::max(worst, std::abs(fast - slow));
            ++checked;
          }
  r.passed = worst <= 1e-9;
  r.detail = std::to_string(checked) + " sums, max deviation " + fmt(worst);
  return r;
}

CriterionResult multiplicativity() {
  CriterionResult r{3, "CRT multiplicativity", false, "", 0.0, 0.0};
  double worst_sk = 0.0, worst_w = 0.0, worst_form = 0.0, worst_sn = 0.0;
  const SeriesParams params{2, 2, 8, 1};
  const std::uint64_t residues[] = {0, 1, 2, 7, 100, 12345};
  for (std::uint64_t q1 = 2; q1 <= 30; ++q1)
    for (std::uint64_t q2 = q1 + 1; q2 <= 30; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      const std::uint64_t q = q1 * q2;
      const FormSumTable f1(q1, 2, 2, 8), f2(q2, 2, 2, 8), f(q, 2, 2, 8);
      for (std::uint64_t a1 : some_units(q1, 4))
        for (std::uint64_t a2 : some_units(q2, 4)) {
          const auto a = static_cast<std::int64_t>((a1 * q2 + a2 * q1) % q);
          const auto s1 = static_cast<std::int64_t>(a1), s2 = static_cast<std::int64_t>(a2);
          for (unsigned k : {2u, 3u}) {
            worst_sk = std::max(worst_sk, std::abs(s_k(q, a, k) - s_k(q1, s1, k) * s_k(q2, s2, k)));
            worst_w = std::max(worst_w, std::abs(w_q(q, a, k) - w_q(q1, s1, k) * w_q(q2, s2, k)));
          }
          worst_form = std::max(worst_form,
                                std::abs(f.normalized(a) - f1.normalized(s1) * f2.normalized(s2)));
        }
      for (SeriesKind kind : {SeriesKind::standard, SeriesKind::prime_variant}) {
        const auto t1 = arithmetic_factor_table(q1, params, kind);
        const auto t2 = arithmetic_factor_table(q2, params, kind);
        const auto t12 = arithmetic_factor_table(q, params, kind);
        for (std::uint64_t n : residues)
          worst_sn = std::max(worst_sn, std::abs(t12[n % q] - t1[n % q1] * t2[n % q2]));
      }
    }
  r.passed = std::max({worst_sk, worst_w, worst_form, worst_sn}) <= 1e-9;
  r.detail = "max deviation S_k " + fmt(worst_sk) + ", W " + fmt(worst_w) + ", q^-t S " +
             fmt(worst_form) + ", S_n/S'_n " + fmt(worst_sn);
  return r;
}

CriterionResult gauss_magnitude() {
  CriterionResult r{4, "Gauss magnitude", false, "", 0.0, 0.0};
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint32_t p : primes_up_to(200)) {
    if (p == 2) continue;
    for (std::uint64_t a = 1; a < p; ++a) {
      const double mag = std::abs(s_k(p, static_cast<std::int64_t>(a), 2));
      worst = std::max(worst, std::abs(mag - std::sqrt(static_cast<double>(p))));
      ++checked;
    }
  }
  r.passed = worst <= 1e-9;
  r.detail = std::to_string(checked) + " sums, max | |S| - sqrt p | " + fmt(worst);
  return r;
}

CriterionResult singular_integral() {
  CriterionResult r{5, "Singular integral main term", false, "", 0.0, 120.0};
  struct Triple {
    unsigned k, l, xi;
  };
  const Triple triples[] = {{2, 2, 5}, {2, 2, 8}, {3, 2, 9}};
  double worst = 0.0;
  for (const auto& [k, l, xi] : triples)
    for (unsigned s : {2u, 3u})
      for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL}) {
        const double exact = j_prime_exact(n, s, xi, k, l);
        const MainTerm m = j_prime_main_term(n, s, xi, k, l);
        worst = std::max(worst, std::abs(exact - m.main) / m.main / m.B);
      }
  bool closed_form = true;
  for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL})
    closed_form &= j_prime_exact(n, 2, 4, 2, 2) == (n - 1) / 4.0;
  r.passed = worst <= 5.0 && closed_form;
  r.detail = "max |exact-main|/(main B) = " + fmt(worst) + " (bound 5); closed form " +
             (closed_form ? "exact" : "mismatch");
  return r;
}

CriterionResult local_solubility() {
  CriterionResult r{6, "Local solubility", false, "", 0.0, 300.0};
  const unsigned k = 2, l = 2, t = 8;
  bool ok = true;
  std::ostringstream detail;
  for (LocalLemma which : {LocalLemma::M_at_gamma, LocalLemma::Mstar_at_nu}) {
    // Smallest s meeting the hypotheses at every p <= 13.
    unsigned s_all = 0;
    for (std::uint32_t p : primes_up_to(13)) {
      unsigned s = 0;
      while (!lemma_hypotheses(p, k, l, t, s, which).satisfied) ++s;
      s_all = std::max(s_all, s);
      const auto rep = verify_local_solubility(p, k, l, t, s, which);
      ok &= rep.all_positive;
    }
    for (std::uint32_t p : primes_up_to(13))
      ok &= verify_local_solubility(p, k, l, t, s_all, which).all_positive;
    detail << (which == LocalLemma::M_at_gamma ? "M(p^gamma)" : "M*(p^nu)") << " s=" << s_all
           << "; ";
  }
  r.passed = ok;
  r.detail = detail.str() + (ok ? "all residue classes positive" : "a residue class has no solution");
  return r;
}

CriterionResult oracle_equivalence() {
  CriterionResult r{7, "Counting oracle equivalence", false, "", 0.0, 0.0};
  struct Conje {
    unsigned k, l, t, s, r;
  };
  const Conje conje[] = {{2, 2, 2, 1, 0}, {2, 2, 4, 2, 0}, {2, 2, 8, 1, 1}, {2, 2, 8, 2, 0},
                         {3, 2, 4, 2, 1}, {2, 3, 2, 3, 1}, {2, 2, 4, 4, 0}, {2, 2, 1, 16, 0}};
  struct Thm {
    unsigned k, l, xi, s;
  };
  const Thm thm[] = {{2, 2, 5, 2}, {2, 2, 3, 3}, {3, 2, 4, 2}, {2, 2, 8, 2}};
  bool ok = true;
  std::size_t instances = 0;
  std::uint64_t smallest_n = 5000;
  auto run = [&](auto&& fast, auto&& slow) {
    for (std::uint64_t n = 5000; n >= 50; n /= 2) {
      try {
        const auto expected = slow(n);
        ok &= fast(n) == expected;
        ++instances;
        smallest_n = std::min(smallest_n, n);
        return;
      } catch (const ResourceError&) {
      }
    }
    ok = false;
  };
  for (const auto& c : conje)
    run([&](std::uint64_t n) { return count_conje(n, c.k, c.l, c.t, c.s, c.r).counts; },
        [&](std::uint64_t n) { return oracle::count_conje_direct(n, c.k, c.l, c.t, c.s, c.r); });
  for (const auto& c : thm)
    for (bool weighted : {true, false})
      run([&](std::uint64_t n) { return count_theorem13(n, c.k, c.l, c.xi, c.s, weighted).counts; },
          [&](std::uint64_t n) {
            return oracle::count_theorem13_direct(n, c.k, c.l, c.xi, c.s, weighted);
          });

  std::mt19937_64 rng(7);
  std::size_t vectors = 0;
  for (std::size_t len : {1, 2, 17, 256, 1000, 2048}) {
    for (int bits : {1, 20, 40, 58}) {  // 2048 products of 2^116 still fit
      std::vector<u128> a(len), b(len);
      for (auto& x : a) x = rng() >> (64 - bits);
      for (auto& x : b) x = rng() >> (64 - bits);
      const auto limit = 2 * len;
      ok &= conv::convolve(a, b, limit, conv::Method::ntt) ==
            conv::convolve(a, b, limit, conv::Method::schoolbook);
      ++vectors;
    }
  }
  r.passed = ok;
  r.detail = std::to_string(instances) + " counting instances (smallest n_max " +
             std::to_string(smallest_n) + "), " + std::to_string(vectors) +
             " NTT/schoolbook pairs";
  return r;
}

CriterionResult main_term_tracking() {
  CriterionResult r{8, "Main-term tracking", false, "", 0.0, 600.0};
  const MainTermTrend trend = main_term_trend(100'000, 2, 2, 5, 6);
  r.passed = trend.in_band && trend.deviation_ok;
  r.detail = "window ratio [1e5,2e5] = " + fmt(trend.first.ratio) + ", [2e5,4e5] = " +
             fmt(trend.second.ratio) + "; band [0.5,2] " + (trend.in_band ? "met" : "missed") +
             ", deviation " + (trend.deviation_ok ? "non-increasing" : "increasing");
  return r;
}

double ratio_change(double a, double b) { return std::max(a, b) / std::min(a, b); }

CriterionResult stability() {
  CriterionResult r{9, "Stability of diagnostics", false, "", 0.0, 0.0};
  std::ostringstream detail;
  bool ok = true;

  // q^{-1}|S_k| / w_k and phi^{-1}|W| / w_k over q <= Q, for Q = 250 and 500.
  for (unsigned k : {2u, 3u}) {
    double sk[2] = {0, 0}, w[2] = {0, 0};
    for (std::uint64_t q = 1; q <= 500; ++q) {
      const double weight = w_k_weight(q, k);
      const double phi = static_cast<double>(euler_phi(q));
      double best_sk = 0.0, best_w = 0.0;
      for (std::uint64_t a : units_of(q)) {
        const auto sa = static_cast<std::int64_t>(a);
        best_sk = std::max(best_sk, std::abs(s_k(q, sa, k)) / q / weight);
        best_w = std::max(best_w, std::abs(w_q(q, sa, k)) / phi / weight);
      }
      for (int i = 0; i < 2; ++i)
        if (q <= 250u * (i + 1)) {
          sk[i] = std::max(sk[i], best_sk);
          w[i] = std::max(w[i], best_w);
        }
    }
    const double c1 = ratio_change(sk[0], sk[1]), c2 = ratio_change(w[0], w[1]);
    ok &= c1 < 2.0 && c2 < 2.0;
    detail << "k=" << k << " S_k const " << fmt(sk[0]) << "->" << fmt(sk[1]) << ", W const "
           << fmt(w[0]) << "->" << fmt(w[1]) << "; ";
  }

  // Major-arc residual and Weyl envelope at P = 16 and 32 (n = P^{kl}).
  double residual[2], weyl[2];
  for (int i = 0; i < 2; ++i) {
    ProblemParams params;
    params.k = 2;
    params.l = 2;
    params.t = 8;
    const std::uint64_t P = 16u << i;
    params.n = P * P * P * P;
    const double Q = std::ceil(std::sqrt(static_cast<double>(P)));
    residual[i] = major_residual_sweep(params, Q, 128, 0).max_ratio;
    weyl[i] = weyl_bound_sweep(params, 256, 0).max_ratio;
  }
  ok &= ratio_change(residual[0], residual[1]) < 2.0;
  ok &= ratio_change(weyl[0], weyl[1]) < 2.0;
  detail << "major residual " << fmt(residual[0]) << "->" << fmt(residual[1]) << ", Weyl "
         << fmt(weyl[0]) << "->" << fmt(weyl[1]);
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult density_trend() {
  CriterionResult r{10, "Density lower-bound trend", false, "", 0.0, 0.0};
  std::ostringstream detail;
  bool ok = true;
  for (auto [rr, l] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) {
    const auto rows = density_report(rr, l, kDefaultEta, default_density_grid());
    double exponent = INFINITY;
    for (const auto& row : rows)
      if (row.pair_exponent) exponent = std::min(exponent, *row.pair_exponent);
    const double target = rows.back().reference - 0.5;
    ok &= exponent >= target;
    if (detail.tellp() > 0) detail << "; ";
    detail << "(r=" << rr << ",l=" << l << ") " << fmt(exponent) << " >= " << fmt(target);
  }
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

}  // namespace

bool known_shortfall(int id) { return id == 8; }

CriterionResult run_criterion(int id) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = snm_identity(); break;
      case 2: r = orthogonality(); break;
      case 3: r = multiplicativity(); break;
      case 4: r = gauss_magnitude(); break;
      case 5: r = singular_integral(); break;
      case 6: r = local_solubility(); break;
      case 7: r = oracle_equivalence(); break;
      case 8: r = main_term_tracking(); break;
      case 9: r = stability(); break;
      case 10: r = density_trend(); break;
      default: throw PreconditionError("no acceptance criterion " + std::to_string(id));
    }
  } catch (const ResourceError& e) {
    static const char* const names[] = {
        "",
        "Snm exact identity",
        "Orthogonality reduction",
        "CRT multiplicativity",
        "Gauss magnitude",
        "Singular integral main term",
        "Local solubility",
        "Counting oracle equivalence",
        "Main-term tracking",
        "Stability of diagnostics",
        "Density lower-bound trend"};
    r.id = id;
    r.name = names[id];
    r.passed = false;
    r.detail = std::string("resource error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.time_limit > 0.0 && r.seconds > r.time_limit) {
    r.passed = false;
    r.detail += "; over time limit " + fmt(r.time_limit) + " s";
  }
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace wfc::acceptance
