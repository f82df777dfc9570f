// Calibration harness for the construction's length multiplier c: for each
// candidate c it runs the Las Vegas construction over a block of consecutive
// seeds with a fixed iteration budget and reports how many seeds succeed and
// how many sampling attempts they used.  A chosen (c, seed) can then be
// pinned: the tool writes the code file and prints its FNV-1a hash so reruns
// can be compared byte-for-byte.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ursc/cbp.hpp"
#include "ursc/hash.hpp"
#include "ursc/matrix.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Grid-search the construction multiplier c and pin fixtures"};

  std::int64_t n = 8;
  std::string alpha = "1/1";
  std::string eps = "1/2";
  std::string c_grid;
  std::uint64_t base_seed = 1;
  int seeds = 10;
  std::int64_t max_iters = 20;
  int parallelism = 1;
  std::string pin_c;
  std::optional<std::uint64_t> pin_seed;
  std::string pin_out;

  app.add_option("--n", n, "Number of codewords");
  app.add_option("--alpha", alpha, "Collision budget p/q");
  app.add_option("--eps", eps, "Elongation slack p/q");
  app.add_option("--c-grid", c_grid, "Comma-separated c candidates (p/q each)");
  app.add_option("--base-seed", base_seed, "First seed of the block");
  app.add_option("--seeds", seeds, "Seeds per candidate");
  app.add_option("--max-iters", max_iters, "Iteration budget per seed");
  app.add_option("--parallelism", parallelism, "Worker count");
  app.add_option("--pin-c", pin_c, "Write a fixture at this c (p/q)");
  app.add_option("--pin-seed", pin_seed, "Seed for the pinned fixture");
  app.add_option("--pin-out", pin_out, "Output path for the pinned fixture");

  CLI11_PARSE(app, argc, argv);

  const auto a = ursc::Rational::parse(alpha);
  const auto e = ursc::Rational::parse(eps);

  if (!c_grid.empty()) {
    std::cout << "c,successes,seeds,iterations\n";
    std::stringstream grid(c_grid);
    std::string tok;
    while (std::getline(grid, tok, ',')) {
      const auto c = ursc::Rational::parse(tok);
      int ok = 0;
      std::string iters;
      for (int si = 0; si < seeds; ++si) {
        const auto params = ursc::make_params(n, a, e, c, base_seed + si);
        const auto res = ursc::construct_ursc(params, max_iters, parallelism);
        if (!iters.empty()) iters += ';';
        if (res.matrix.has_value()) {
          ++ok;
          iters += std::to_string(res.iterations);
        } else {
          iters += "x";
        }
      }
      std::cout << c.to_string() << "," << ok << "," << seeds << "," << iters
                << std::endl;
    }
  }

  if (!pin_c.empty()) {
    if (!pin_seed.has_value() || pin_out.empty()) {
      std::cerr << "pinning needs --pin-seed and --pin-out\n";
      return 2;
    }
    const auto c = ursc::Rational::parse(pin_c);
    const auto params = ursc::make_params(n, a, e, c, *pin_seed);
    const auto res = ursc::construct_ursc(params, max_iters, parallelism);
    if (!res.matrix.has_value()) {
      std::cerr << "pin failed: construction did not converge\n";
      return 1;
    }
    const std::string text = ursc::matrix_to_string(*res.matrix);
    std::ofstream out(pin_out, std::ios::binary);
    out << text;
    out.close();
    std::ostringstream hex;
    hex << std::hex << ursc::fnv1a64(text);
    std::cout << "pin,c," << c.to_string() << ",seed," << *pin_seed
              << ",iterations," << res.iterations << ",t," << res.matrix->t
              << ",fnv1a64," << hex.str() << "\n";
  }
  return 0;
}
