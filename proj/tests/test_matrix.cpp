#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "support/fixtures.hpp"
#include "ursc/matrix.hpp"
#include "ursc/params.hpp"
#include "ursc/rational.hpp"

using ursc::CodeMatrix;
using ursc::Rational;
using ursc::make_params;
using ursc::matrix_from_string;
using ursc::matrix_to_string;
using ursc::sample_matrix;
using ursc::sample_matrix_rows;

TEST_CASE("sampling is a pure function of params and seed") {
  const auto p = make_params(4, Rational(1, 2), Rational(1, 1),
                             Rational(1, 1), 12345);
  const CodeMatrix a = sample_matrix(p);
  const CodeMatrix b = sample_matrix(p);
  REQUIRE(a.t == p.rows);
  REQUIRE(a.columns.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) REQUIRE(a.columns[j] == b.columns[j]);

  auto p2 = p;
  p2.seed = 12346;
  const CodeMatrix c = sample_matrix(p2);
  bool any_difference = false;
  for (std::size_t j = 0; j < 4; ++j) {
    if (c.columns[j] != a.columns[j]) any_difference = true;
  }
  REQUIRE(any_difference);
}

TEST_CASE("block zero rows are always one") {
  const auto p = make_params(16, Rational(1, 1), Rational(1, 1),
                             Rational(1, 1), 7);
  const CodeMatrix m = sample_matrix(p);
  REQUIRE(p.block_len == 3);
  for (const auto& col : m.columns) {
    for (std::size_t r = 0; r < 3; ++r) REQUIRE(col.get(r));
  }
}

TEST_CASE("length-limited sampling shares the first column prefix") {
  // One seeded stream feeds bits column by column, so only column 0 of a
  // shorter sample is a prefix of the full-length sample.
  const auto p = make_params(4, Rational(1, 2), Rational(1, 1),
                             Rational(1, 1), 99);
  const CodeMatrix full = sample_matrix(p);
  const CodeMatrix part = sample_matrix_rows(p, p.rows / 2);
  REQUIRE(part.t == p.rows / 2);
  for (std::int64_t r = 0; r < part.t; ++r) {
    REQUIRE(part.columns[0].get(static_cast<std::size_t>(r)) ==
            full.columns[0].get(static_cast<std::size_t>(r)));
  }

  REQUIRE_THROWS_AS(sample_matrix_rows(p, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(sample_matrix_rows(p, p.rows + 1), std::invalid_argument);

  auto seedless = p;
  seedless.seed = std::nullopt;
  REQUIRE_THROWS_AS(sample_matrix(seedless), std::invalid_argument);
}

TEST_CASE("column accessor bounds") {
  const CodeMatrix m = fixtures::t16_pass();
  REQUIRE(m.column(0).get(4));
  REQUIRE_THROWS_AS(m.column(-1), std::out_of_range);
  REQUIRE_THROWS_AS(m.column(2), std::out_of_range);
}

TEST_CASE("canonical text form") {
  const CodeMatrix m = fixtures::t16_pass();
  const std::string expected =
      "URSC 1\n"
      "n=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=none\n"
      "1000100000000000\n"
      "1000000010000000\n";
  REQUIRE(matrix_to_string(m) == expected);

  // Round trip: parse then re-serialize byte for byte.
  const CodeMatrix back = matrix_from_string(expected);
  REQUIRE(back.t == 16);
  REQUIRE(back.params.n == 2);
  REQUIRE(back.params.alpha == Rational(1, 1));
  REQUIRE(back.params.eps == Rational(1, 2));
  REQUIRE(back.params.c == Rational(5, 1));
  REQUIRE_FALSE(back.params.seed.has_value());
  REQUIRE(matrix_to_string(back) == expected);
}

TEST_CASE("seed field round trip") {
  const auto p = make_params(2, Rational(1, 1), Rational(1, 2),
                             Rational(5, 1), 42);
  const CodeMatrix m = sample_matrix(p);
  const std::string text = matrix_to_string(m);
  REQUIRE(text.find("seed=42\n") != std::string::npos);
  const CodeMatrix back = matrix_from_string(text);
  REQUIRE(back.params.seed == std::optional<std::uint64_t>(42));
  REQUIRE(matrix_to_string(back) == text);
}

TEST_CASE("parser rejects malformed input") {
  const std::string good =
      "URSC 1\n"
      "n=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=none\n"
      "1000100000000000\n"
      "1000000010000000\n";
  REQUIRE_NOTHROW(matrix_from_string(good));

  auto expect_reject = [](const std::string& text) {
    REQUIRE_THROWS_AS(matrix_from_string(text), std::runtime_error);
  };

  // Bad magic line.
  expect_reject("URSC 2\nn=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=none\n");
  // Missing header line.
  expect_reject("URSC 1\n");
  // Missing field.
  expect_reject(
      "URSC 1\n"
      "n=2 alpha=1/1 eps=1/2 c=5/1 seed=none\n");
  // Nonpositive length.
  expect_reject(
      "URSC 1\n"
      "n=2 t=0 alpha=1/1 eps=1/2 c=5/1 seed=none\n");
  // Bad seed.
  expect_reject(
      "URSC 1\n"
      "n=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=abc\n"
      "1000100000000000\n"
      "1000000010000000\n");
  // Too few column lines.
  expect_reject(
      "URSC 1\n"
      "n=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=none\n"
      "1000100000000000\n");
  // Wrong column length.
  expect_reject(
      "URSC 1\n"
      "n=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=none\n"
      "10001000000000000\n"
      "1000000010000000\n");
  // Characters outside {0,1}.
  expect_reject(
      "URSC 1\n"
      "n=2 t=16 alpha=1/1 eps=1/2 c=5/1 seed=none\n"
      "100010000000000x\n"
      "1000000010000000\n");
  // Trailing non-empty content.
  expect_reject(good + "extra\n");
  // Invalid derived parameters (alpha > 1) fail parameter validation.
  REQUIRE_THROWS_AS(matrix_from_string(
                        "URSC 1\n"
                        "n=2 t=16 alpha=3/2 eps=1/2 c=5/1 seed=none\n"
                        "1000100000000000\n"
                        "1000000010000000\n"),
                    std::invalid_argument);
}
