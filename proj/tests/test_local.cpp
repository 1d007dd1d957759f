#include <doctest.h>

#include "wfc/errors.hpp"
#include "wfc/local.hpp"
#include "wfc/oracle.hpp"

using namespace wfc;

namespace {

std::vector<std::uint64_t> as_u64(const std::vector<BigCount>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(x.convert_to<std::uint64_t>());
  return out;
}

BigCount big_pow(std::uint64_t b, unsigned e) {
  BigCount r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("form histogram examples and mass") {
  CHECK(as_u64(form_histogram(2, 1, 1, 1, false).counts) == std::vector<std::uint64_t>{1, 1});
  CHECK(as_u64(form_histogram(3, 1, 2, 1, false).counts) == std::vector<std::uint64_t>{1, 2, 0});
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
    for (unsigned h = 1; h <= 3; ++h)
      for (unsigned l = 1; l <= 3; ++l)
        for (unsigned t = 1; t <= 4; ++t) {
          const auto hist = form_histogram(p, h, l, t, false);
          CHECK(hist.total() == big_pow(p, h * t));
        }
}

TEST_CASE("M_n matches nested-loop enumeration") {
  int compared = 0;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
    for (unsigned h = 1; h <= 3; ++h) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < h; ++i) q *= p;
      if (q > 27) continue;
      for (unsigned k : {2u, 3u})
        for (unsigned t = 1; t <= 2; ++t)
          for (unsigned s = 0; s <= 2; ++s) {
            std::vector<std::uint64_t> direct;
            try {
              direct = oracle::m_n_direct(p, h, k, 2, t, s);
            } catch (const ResourceError&) {
              continue;
            }
            CHECK(as_u64(m_n_all(p, h, k, 2, t, s)) == direct);
            if (s >= 1) CHECK(as_u64(m_star_n_all(p, h, k, 2, t, s)) == oracle::m_star_n_direct(p, h, k, 2, t, s));
            ++compared;
          }
    }
  CHECK(compared >= 20);
}

TEST_CASE("s = 0 at p = 3 is the 81-point count") {
  const auto counts = m_n_all(3, 1, 2, 2, 8, 0);
  std::uint64_t zero = 0;
  for (unsigned y1 = 1; y1 < 3; ++y1)
    for (unsigned y2 = 1; y2 < 3; ++y2)
      for (unsigned y3 = 0; y3 < 3; ++y3)
        for (unsigned y4 = 0; y4 < 3; ++y4)
          zero += (y1 * y1 + y2 * y2 + y3 * y3 + y4 * y4) % 3 == 0;
  CHECK(counts[0] == zero);
}

TEST_CASE("M_n at p = 2 follows parity counting") {
  // Mod 2, x^k = x, so only the number of odd variables matters.
  for (unsigned t = 1; t <= 4; ++t)
    for (unsigned s = 0; s <= 2; ++s) {
      const auto counts = m_n_all(2, 1, 2, 2, t, s);
      std::uint64_t odd = 0, even = 0;
      const unsigned vars = 2 + s * t;  // two free y plus the forms; y1, y2 are forced odd
      for (std::uint64_t mask = 0; mask < (1ULL << vars); ++mask) {
        unsigned parity = 2;  // y1 = y2 = 1
        parity += mask & 1;
        parity += (mask >> 1) & 1;
        for (unsigned b = 0; b < s; ++b) {
          unsigned T = 0;
          for (unsigned j = 0; j < t; ++j) T += (mask >> (2 + b * t + j)) & 1;
          parity += T & 1;
        }
        ++(parity % 2 ? odd : even);
      }
      CHECK(counts[0] == even);
      CHECK(counts[1] == odd);
    }
}

TEST_CASE("histogram totals match the parameter-space sizes") {
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
    for (unsigned s = 1; s <= 2; ++s) {
      const auto full = m_n_all(p, 2, 2, 2, 3, s);
      const auto star = m_star_n_all(p, 2, 2, 2, 3, s);
      BigCount star_total = 0;
      for (const auto& c : star) star_total += c;
      CHECK(star_total <= big_pow(p, 2 * 3 * s));
      BigCount total = 0;
      for (const auto& c : full) total += c;
      CHECK(total == big_pow(p, 2 * (3 * s + 2)) * euler_phi(p * p) * euler_phi(p * p));
    }
}

TEST_CASE("lemma examples") {
  const auto m3 = verify_local_solubility(3, 2, 2, 8, 1, LocalLemma::M_at_gamma);
  CHECK(m3.level == 1);
  CHECK(m3.counts.size() == 3);
  CHECK(m3.all_positive);

  const auto star2 = verify_local_solubility(2, 2, 2, 8, 5, LocalLemma::Mstar_at_nu);
  CHECK(star2.level == 5);
  CHECK(star2.counts.size() == 32);
  CHECK(star2.all_positive);

  CHECK_FALSE(lemma_hypotheses(2, 2, 2, 8, 4, LocalLemma::Mstar_at_nu).satisfied);
  CHECK_THROWS_AS(verify_local_solubility(2, 2, 2, 8, 4, LocalLemma::Mstar_at_nu),
                  PreconditionError);
}

TEST_CASE("positivity at gamma persists to higher levels") {
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    const unsigned gamma = gamma_exponent(p, 2);
    const auto base = m_n_all(p, gamma, 2, 2, 4, 1);
    std::uint64_t q = 1;
    for (unsigned i = 0; i < gamma; ++i) q *= p;
    for (unsigned h = gamma + 1; h <= gamma + 2; ++h) {
      const auto up = m_n_all(p, h, 2, 2, 4, 1);
      for (std::size_t n = 0; n < up.size(); ++n)
        if (base[n % q] > 0) CHECK(up[n] > 0);
    }
  }
}
