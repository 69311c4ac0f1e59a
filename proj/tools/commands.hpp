#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sumgraph::cli {

enum ExitCode : int { kOk = 0, kBadConfig = 1, kSizeExceeded = 2, kCheckFailed = 3 };

struct ExperimentConfig {
  std::string family = "kloosterman";
  std::vector<std::int64_t> p;
  /// Field degree; vertex count for the er family.
  std::optional<std::int64_t> n;
  double t = 0.5;
  std::uint64_t seed = 1;
  std::size_t bins = 60;
  std::filesystem::path out;
  std::string format = "csv";
  std::vector<std::string> checks;
  bool oracle = false;
  bool svg = false;
  bool allow_large = false;
  bool include_trivial = false;
  std::string law;
  std::uint64_t samples = 0;
  double degree = 0.0;
  std::uint64_t H = 0;
  std::vector<unsigned> mixed;
  std::string sum;
  bool column = false;

  bool wants(const std::string& check) const;
};

/// Default output directory: $SUMGRAPH_OUT, else ./sumgraph_out.
std::filesystem::path default_output_dir();

/// Each command prints a JSON report on `report` and returns an exit code.
int cmd_build(const ExperimentConfig& config, std::ostream& report);
int cmd_spectrum(const ExperimentConfig& config, std::ostream& report);
int cmd_dist(const ExperimentConfig& config, std::ostream& report);
int cmd_table(const ExperimentConfig& config, std::ostream& report);
int cmd_reproduce_figures(const ExperimentConfig& config, std::ostream& report);

/// SHA-256 of the bytes, with SVG generator comment lines removed first.
std::string content_digest(const std::string& bytes);

}  // namespace sumgraph::cli
