// Operation-count sweep over (N, M, variant) with a log-log cost fit.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "bidiag/bench.hpp"

using namespace bidiag;

int main(int argc, char** argv) {
  std::vector<std::size_t> ns{100, 200, 400};
  std::vector<int> ms{8, 16, 32};
  std::vector<std::string> variant_names{"type1", "type2", "fast2"};
  std::uint64_t seed = bench::kDefaultSeed;
  bool fit = false;

  CLI::App app{"Counted-operation sweep for the trace kernels", "bidiag_bench"};
  app.add_option("--n", ns, "Matrix sizes")->take_all();
  app.add_option("--m", ms, "Trace orders (ignored by fast2)")->take_all();
  app.add_option("--variant", variant_names, "Kernels to run")
      ->take_all()
      ->check(CLI::IsMember({"type1", "type2", "fast2"}));
  app.add_option("--seed", seed, "Seed of the matrix generator");
  app.add_flag("--fit", fit, "Print fitted exponents ops ~ c M^a N^b per variant to stderr");
  CLI11_PARSE(app, argc, argv);

  std::vector<Variant> variants;
  for (const auto& v : variant_names) variants.push_back(*parse_variant(v));

  const auto records = bench::count_sweep(ns, ms, variants, seed);
  bench::write_csv(std::cout, records);

  if (fit) {
    for (Variant v : variants) {
      std::vector<bench::CostRecord> subset;
      for (const auto& r : records)
        if (r.variant == v && !r.overflow) subset.push_back(r);
      try {
        const auto f = bench::fit_cost_model(subset);
        if (f.a) {
          std::fprintf(stderr, "%s: a = %.4f  b = %.4f  rms = %.3g\n", std::string(to_string(v)).c_str(), *f.a, f.b,
                       f.residual);
        } else {
          std::fprintf(stderr, "%s: a = n/a  b = %.4f  rms = %.3g\n", std::string(to_string(v)).c_str(), f.b,
                       f.residual);
        }
      } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s: %s\n", std::string(to_string(v)).c_str(), e.what());
      }
    }
  }
  return 0;
}
