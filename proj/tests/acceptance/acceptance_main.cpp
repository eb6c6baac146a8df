// Runs the eleven acceptance criteria and prints one line per criterion.
// Exit status is 0 only when every selected criterion passes.

#include <CLI11.hpp>
#include <iostream>

#include "symrmt/acceptance.hpp"
#include "symrmt/errors.hpp"

using namespace symrmt;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  AcceptanceOptions options;
  std::vector<int> only;
  std::string json;
  bool verbose = false;
  app.add_option("--seed", options.seed, "base seed");
  app.add_option("--workers", options.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--only", only, "criterion ids")->delimiter(',');
  app.add_option("--json", json, "write a JSON summary here");
  app.add_flag("-v,--verbose", verbose, "print failing items and notes");
  CLI11_PARSE(app, argc, argv);
  options.only.insert(only.begin(), only.end());

  try {
    const auto results = run_acceptance(options, [&](const CriterionResult& r) {
      std::cout << format_result_line(r) << std::endl;
      if (verbose || !r.pass)
        for (const auto& d : r.details) std::cout << "    " << d << "\n";
    });
    if (!json.empty()) write_text_file(json, to_json(results, options).dump(2) + "\n");
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
