#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "support/fixtures.hpp"
#include "ursc/cbp.hpp"
#include "ursc/matrix.hpp"
#include "ursc/oracle.hpp"
#include "ursc/params.hpp"
#include "ursc/rational.hpp"

using ursc::CodeMatrix;
using ursc::OracleOptions;
using ursc::OracleReport;
using ursc::Rational;
using ursc::UrscWitness;
using ursc::make_params;
using ursc::verify_classic;
using ursc::verify_ursc_bruteforce;

namespace {

// Fully independent re-derivation of the brute-force search on vector<bool>,
// same canonical enumeration order: k ascending, participant set
// lexicographic, designated by position, shift odometer with the last
// coordinate fastest.
struct DirectWitness {
  std::int64_t k = 0;
  std::vector<std::int64_t> T;
  std::int64_t designated = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> shifts;
  std::int64_t lhs = 0;
};

struct DirectReport {
  bool passed = true;
  std::optional<DirectWitness> witness;
  std::int64_t configs = 0;
};

DirectReport direct_oracle(const CodeMatrix& m, const Rational& alpha,
                           std::int64_t tau, std::int64_t k_max) {
  const std::int64_t n = static_cast<std::int64_t>(m.columns.size());
  const std::int64_t t = m.t;
  std::vector<std::vector<bool>> cols(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(t)));
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t r = 0; r < t; ++r)
      cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          m.columns[static_cast<std::size_t>(j)].get(static_cast<std::size_t>(r));

  DirectReport rep;
  std::vector<std::int64_t> comb;
  for (std::int64_t k = 2; k <= k_max; ++k) {
    comb.resize(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      for (std::int64_t d = 0; d < k; ++d) {
        const std::int64_t des = comb[static_cast<std::size_t>(d)];
        std::vector<std::int64_t> others;
        for (std::int64_t i = 0; i < k; ++i)
          if (i != d) others.push_back(comb[static_cast<std::size_t>(i)]);
        std::int64_t prefix_w = 0;
        for (std::int64_t r = 0; r <= tau; ++r)
          prefix_w += cols[static_cast<std::size_t>(des)]
                          [static_cast<std::size_t>(r)];

        std::vector<std::int64_t> sh(others.size(), 0);
        while (true) {
          ++rep.configs;
          // z[r] = OR over others of col[(r + shift) mod t]; slip widens by 1.
          std::vector<bool> z(static_cast<std::size_t>(t), false);
          for (std::size_t o = 0; o < others.size(); ++o)
            for (std::int64_t r = 0; r < t; ++r)
              if (cols[static_cast<std::size_t>(others[o])]
                      [static_cast<std::size_t>((r + sh[o]) % t)])
                z[static_cast<std::size_t>(r)] = true;
          std::vector<bool> star(static_cast<std::size_t>(t), false);
          for (std::int64_t r = 0; r < t; ++r)
            if (z[static_cast<std::size_t>(r)])
              for (std::int64_t d2 = -1; d2 <= 1; ++d2)
                star[static_cast<std::size_t>(((r - d2) % t + t) % t)] = true;
          std::int64_t lhs = 0;
          for (std::int64_t r = 0; r <= tau; ++r)
            if (cols[static_cast<std::size_t>(des)]
                    [static_cast<std::size_t>(r)] &&
                star[static_cast<std::size_t>(r)])
              ++lhs;
          // Violation when lhs >= alpha * prefix_w.
          if (static_cast<__int128>(lhs) * alpha.den() >=
              static_cast<__int128>(alpha.num()) * prefix_w) {
            DirectWitness w;
            w.k = k;
            w.T = comb;
            w.designated = des;
            for (std::size_t o = 0; o < others.size(); ++o)
              w.shifts.emplace_back(others[o], sh[o]);
            w.lhs = lhs;
            rep.passed = false;
            rep.witness = w;
            return rep;
          }
          // Odometer, last coordinate fastest.
          bool wrapped = true;
          std::size_t pos = sh.size();
          while (pos > 0) {
            --pos;
            if (++sh[pos] < t) {
              wrapped = false;
              break;
            }
            sh[pos] = 0;
          }
          if (wrapped) break;
        }
      }
      // next lexicographic combination
      std::int64_t i = k - 1;
      while (i >= 0 &&
             comb[static_cast<std::size_t>(i)] == n - k + i)
        --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (std::int64_t q = i + 1; q < k; ++q)
        comb[static_cast<std::size_t>(q)] =
            comb[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return rep;
}

}  // namespace

TEST_CASE("well separated fixture passes the definition check") {
  const CodeMatrix m = fixtures::t16_pass();
  for (std::int64_t tau : {13, 15}) {
    const OracleReport rep =
        verify_ursc_bruteforce(m, Rational(1, 1), tau);
    INFO("tau=" << tau);
    REQUIRE(rep.passed);
    REQUIRE_FALSE(rep.witness.has_value());
    REQUIRE_FALSE(rep.budget_exhausted);
    // 1 participant set, 2 designated choices, 16 shifts of the other column.
    REQUIRE(rep.configs_checked == 32);
  }
}

TEST_CASE("adjacent-offset fixture yields the first canonical witness") {
  const CodeMatrix m = fixtures::t16_fail();
  const OracleReport rep =
      verify_ursc_bruteforce(m, Rational(1, 1), 15);
  REQUIRE_FALSE(rep.passed);
  REQUIRE(rep.configs_checked == 1);
  REQUIRE(rep.witness.has_value());
  const UrscWitness& w = *rep.witness;
  REQUIRE(w.k == 2);
  REQUIRE((w.T == std::vector<std::int64_t>{0, 1}));
  REQUIRE(w.designated == 0);
  REQUIRE((w.shifts ==
           std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 0}}));
  REQUIRE(w.lhs == 2);
  REQUIRE(w.rhs_threshold == Rational(2, 1));
}

TEST_CASE("budget stops the search deterministically") {
  const CodeMatrix m = fixtures::t16_pass();
  const OracleReport rep = verify_ursc_bruteforce(
      m, Rational(1, 1), 15, OracleOptions{0, 10});
  REQUIRE(rep.budget_exhausted);
  REQUIRE(rep.configs_checked == 10);
  REQUIRE_FALSE(rep.witness.has_value());
}

TEST_CASE("prefix bound validation") {
  const CodeMatrix m = fixtures::t16_pass();
  REQUIRE_THROWS_AS(verify_ursc_bruteforce(m, Rational(1, 1), 16),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(verify_ursc_bruteforce(m, Rational(1, 1), -1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      verify_ursc_bruteforce(m, Rational(1, 1), 15, OracleOptions{5, 0}),
      std::invalid_argument);  // k_max beyond n
}

TEST_CASE("unlimited runs are refused when the space is astronomical") {
  const auto p = make_params(5, Rational(1, 1), Rational(1, 2), Rational(1, 1),
                             std::nullopt);
  CodeMatrix m = fixtures::positions_matrix(p, 1000,
                                            {{0}, {10}, {20}, {30}, {40}});
  // ~5e12 configurations at k=5; an unlimited run must be rejected up front.
  REQUIRE_THROWS_AS(
      verify_ursc_bruteforce(m, Rational(1, 1), 999, OracleOptions{0, 0}),
      std::invalid_argument);
}

TEST_CASE("oracle agrees with a direct reimplementation on random inputs") {
  std::mt19937_64 eng(424242);
  for (int round = 0; round < 25; ++round) {
    CAPTURE(round);
    const std::int64_t t = 4 + static_cast<std::int64_t>(eng() % 3);  // 4..6
    const auto p = make_params(3, Rational(1, 2), Rational(1, 1),
                               Rational(1, 1), std::nullopt);
    CodeMatrix m;
    m.params = p;
    m.t = t;
    for (int j = 0; j < 3; ++j) {
      ursc::BitVector col(static_cast<std::size_t>(t));
      for (std::int64_t r = 0; r < t; ++r)
        if (eng() % 2 == 0) col.set(static_cast<std::size_t>(r), true);
      m.columns.push_back(col);
    }
    const Rational alpha = (eng() % 2 == 0) ? Rational(1, 2) : Rational(1, 1);
    const std::int64_t tau = static_cast<std::int64_t>(eng() % t);

    const DirectReport want = direct_oracle(m, alpha, tau, 3);
    const OracleReport got =
        verify_ursc_bruteforce(m, alpha, tau, OracleOptions{3, 0});

    REQUIRE(got.passed == want.passed);
    REQUIRE(got.configs_checked == want.configs);
    REQUIRE(got.witness.has_value() == want.witness.has_value());
    if (want.witness.has_value()) {
      REQUIRE(got.witness->k == want.witness->k);
      REQUIRE(got.witness->T == want.witness->T);
      REQUIRE(got.witness->designated == want.witness->designated);
      REQUIRE(got.witness->shifts == want.witness->shifts);
      REQUIRE(got.witness->lhs == want.witness->lhs);
    }
  }
}

TEST_CASE("collision-bound pass at alpha/2 implies definition pass at alpha") {
  // Two spread columns over 64 rows: all 16 cross differences are distinct
  // multiples of 4, so the slipped cover is at most 1 at every shift.
  const auto p = make_params(2, Rational(1, 2), Rational(1, 1), Rational(1, 1),
                             std::nullopt);
  const CodeMatrix m = fixtures::positions_matrix(
      p, 64, {{0, 16, 32, 48}, {0, 4, 8, 12}});
  const auto window = [](std::int64_t) {
    return ursc::ElongationPair{0, 63};
  };
  const auto cbp = ursc::check_cbp(m, Rational(1, 2), window, {});
  REQUIRE(cbp.passed);
  const OracleReport oracle =
      verify_ursc_bruteforce(m, Rational(1, 1), 63);
  REQUIRE(oracle.passed);
  REQUIRE(oracle.configs_checked == 2 * 64);
}

TEST_CASE("classic verifier finds unseparable columns") {
  const CodeMatrix eq = fixtures::equal_columns();
  const auto rep = verify_classic(eq, 2);
  REQUIRE_FALSE(rep.passed);
  REQUIRE(rep.configs_checked == 1);
  REQUIRE(rep.witness.has_value());
  REQUIRE((rep.witness->T == std::vector<std::int64_t>{0, 1}));
  REQUIRE(rep.witness->designated == 0);

  const CodeMatrix ok = fixtures::t16_pass();
  const auto pass = verify_classic(ok, 2);
  REQUIRE(pass.passed);
  REQUIRE(pass.configs_checked == 2);
  REQUIRE_FALSE(pass.witness.has_value());

  const auto budget = verify_classic(ok, 2, 1);
  REQUIRE(budget.budget_exhausted);
  REQUIRE(budget.configs_checked == 1);

  REQUIRE_THROWS_AS(verify_classic(ok, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(verify_classic(ok, 3), std::invalid_argument);
}
