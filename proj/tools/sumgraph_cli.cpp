#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "sumgraph/error.hpp"

namespace {

using sumgraph::cli::ExperimentConfig;

void add_common(CLI::App& cmd, ExperimentConfig& c) {
  cmd.add_option("--family", c.family, "kloosterman, birch, kt, kplus or er")
      ->check(CLI::IsMember({"kloosterman", "birch", "kt", "kplus", "er"}));
  cmd.add_option("--p", c.p, "characteristic (a list for dist sweeps)")->delimiter(',');
  cmd.add_option("--n", c.n, "field degree; vertex count for er");
  cmd.add_option("--t", c.t, "range parameter of kt, in (0, 1]");
  cmd.add_option("--seed", c.seed, "random seed");
  cmd.add_option("--bins", c.bins, "histogram bins");
  cmd.add_option("--out", c.out, "output directory (default $SUMGRAPH_OUT or ./sumgraph_out)");
  cmd.add_option("--format", c.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd.add_flag("--allow-large", c.allow_large, "lift the default size ceilings");
  cmd.add_option("--degree", c.degree, "er expected degree; Kesten-McKay degree");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and subgraph checks for Cayley sum graphs over finite fields"};
  app.set_version_flag("--version", std::string("sumgraph ") + SUMGRAPH_VERSION);
  app.require_subcommand(1);
  ExperimentConfig c;

  auto* build = app.add_subcommand("build", "construct a graph and run combinatorial checks");
  add_common(*build, c);
  build->add_option("--check", c.checks, "sidon, subgraphs, weil, oracle")
      ->delimiter(',')
      ->check(CLI::IsMember({"sidon", "subgraphs", "weil", "oracle"}));
  build->add_flag("--oracle", c.oracle, "compare with the dense eigensolver");

  auto* spectrum = app.add_subcommand("spectrum", "character-route spectrum");
  add_common(*spectrum, c);
  spectrum->add_flag("--oracle", c.oracle, "compare with the dense eigensolver (q^2 <= 4096)");
  spectrum->add_flag("--svg", c.svg, "write a histogram with the limit density");
  spectrum->add_flag("--include-trivial", c.include_trivial, "keep the trivial eigenvalue");

  auto* dist = app.add_subcommand("dist", "Wasserstein distance and moments against a limit law");
  add_common(*dist, c);
  dist->add_option("--law", c.law, "semicircle, kesten-mckay, salie-modulus, kt-series or sc-plus-sa")
      ->check(CLI::IsMember({"semicircle", "kesten-mckay", "salie-modulus", "kt-series", "sc-plus-sa"}));
  dist->add_option("--samples", c.samples, "sampler size for a two-sample comparison");
  dist->add_option("--H", c.H, "truncation of the kt series");
  dist->add_option("--mixed", c.mixed, "alpha,beta mixed moment (kplus)")->delimiter(',');

  auto* table = app.add_subcommand("table", "dump an exponential-sum table");
  add_common(*table, c);
  table->add_option("--sum", c.sum, "kloosterman, birch, salie or partial");
  table->add_flag("--column", c.column, "reduced column m -> S(m, 1) only");

  auto* figures = app.add_subcommand("reproduce-figures", "normalized spectra for the reference panels");
  figures->add_option("--out", c.out, "output directory");
  figures->add_option("--bins", c.bins, "histogram bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sumgraph::cli::kBadConfig;
  }
  if (c.out.empty()) c.out = sumgraph::cli::default_output_dir();

  try {
    if (*build) return sumgraph::cli::cmd_build(c, std::cout);
    if (*spectrum) return sumgraph::cli::cmd_spectrum(c, std::cout);
    if (*dist) return sumgraph::cli::cmd_dist(c, std::cout);
    if (*table) return sumgraph::cli::cmd_table(c, std::cout);
    return sumgraph::cli::cmd_reproduce_figures(c, std::cout);
  } catch (const sumgraph::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == sumgraph::Errc::SizeExceeded ? sumgraph::cli::kSizeExceeded : sumgraph::cli::kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sumgraph::cli::kBadConfig;
  }
}
