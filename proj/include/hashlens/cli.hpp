#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace hashlens {

/// Everything a subcommand may read. JSON keys are the long flag names
/// without the leading dashes, so a config file and the command line
/// describe the same settings (flags win).
struct RunConfig {
  std::string corpus;
  std::string format = "jsonl";
  std::string taxonomy;
  std::string stopwords;   // empty -> shipped default list
  std::string exclusions;
  std::string lexicon;     // empty -> shipped default valence list
  std::string parses;
  std::string scores;
  std::string seed_file;
  std::string model;        // empty -> <out>/model.json
  std::string predictions;  // empty -> <out>/predictions.csv
  std::string out = "out";

  double alpha = 0.01;
  double beta = 0.0001;
  double mu = 0.5;
  std::uint64_t iters = 2000;
  std::uint64_t unseeded = 2;
  std::uint64_t rng_seed = 20200314;

  std::uint64_t top_n = 10;
  std::uint64_t min_count = 5;
  std::uint64_t min_groups = 2;
  std::uint64_t pair_verbs = 5;  // top verbs per category used by `pairs`
  std::vector<std::string> verb;  // explicit verbs for `pairs`
  std::string relations = "clear";  // clear | universal
  bool subtree = false;
  bool stem = true;
  std::string gold_policy = "rarest";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const RunConfig& config);
/// Keys absent from `j` keep their defaults; unknown keys are rejected
/// with std::invalid_argument.
RunConfig config_from_json(const nlohmann::json& j);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand. `args` excludes the program name. Prints a one
/// line summary to `out` and diagnostics to `err`.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hashlens
