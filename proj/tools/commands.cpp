#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>

#include "sumgraph/cayley.hpp"
#include "sumgraph/dist.hpp"
#include "sumgraph/error.hpp"
#include "sumgraph/expsum.hpp"
#include "sumgraph/ffield.hpp"
#include "sumgraph/io.hpp"
#include "sumgraph/sidon.hpp"
#include "sumgraph/spectrum.hpp"

namespace sumgraph::cli {

namespace {

using json = nlohmann::json;

// Parameter ceilings that keep every command well under five minutes;
// --allow-large lifts them (module limits still apply).
constexpr std::uint64_t kDefaultMaxField = 2048;
constexpr std::uint64_t kDefaultMaxSubgraphField = 128;
constexpr std::uint64_t kDefaultMaxErVertices = 1024;
constexpr std::uint64_t kDefaultMaxSamples = 2'000'000;
constexpr double kDefaultMaxSemicircleDraws = 4.5e9;
constexpr std::uint64_t kStructureWork = std::uint64_t{1} << 26;

void require(bool ok, Errc code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Collects output files, digests and timings, then writes manifest.json.
class Run {
 public:
  Run(std::string command, const ExperimentConfig& config) : command_(std::move(command)), config_(config) {
    std::filesystem::create_directories(config_.out);
  }

  template <class F>
  auto stage(const std::string& name, F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(name, start);
    } else {
      auto result = fn();
      record(name, start);
      return result;
    }
  }

  std::string write(const std::string& name, const std::string& content, bool append = false) {
    const auto path = config_.out / name;
    {
      std::ofstream f(path, append ? std::ios::binary | std::ios::app : std::ios::binary | std::ios::trunc);
      require(static_cast<bool>(f), Errc::BadParameter, "cannot write " + path.string());
      f << content;
    }
    std::ifstream in(path, std::ios::binary);
    std::stringstream all;
    all << in.rdbuf();
    files_[name] = content_digest(all.str());
    return path.string();
  }

  json& stats() { return stats_; }

  void finish() {
    json files = json::array();
    for (const auto& [name, digest] : files_) files.push_back({{"path", name}, {"sha256", digest}});
    json manifest{{"command", command_},
                  {"version", SUMGRAPH_VERSION},
                  {"config", echo()},
                  {"timing_seconds", timings_},
                  {"statistics", stats_},
                  {"files", files}};
    std::ofstream(config_.out / "manifest.json", std::ios::binary | std::ios::trunc) << manifest.dump(2) << '\n';
  }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point start) {
    timings_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  json echo() const {
    return {{"family", config_.family}, {"p", config_.p},         {"n", config_.n ? json(*config_.n) : json(nullptr)},
            {"t", config_.t},           {"seed", config_.seed},   {"bins", config_.bins},
            {"format", config_.format}, {"checks", config_.checks}, {"oracle", config_.oracle},
            {"svg", config_.svg},       {"allow_large", config_.allow_large}, {"law", config_.law},
            {"samples", config_.samples}, {"degree", config_.degree}, {"H", config_.H},
            {"mixed", config_.mixed},   {"sum", config_.sum}};
  }

  std::string command_;
  const ExperimentConfig& config_;
  json stats_ = json::object();
  json timings_ = json::object();
  std::map<std::string, std::string> files_;
};

// ---- configuration ----

bool is_field_family(const std::string& f) { return f == "kloosterman" || f == "birch" || f == "kt" || f == "kplus"; }

void validate_family(const ExperimentConfig& c) {
  require(is_field_family(c.family) || c.family == "er", Errc::BadParameter, "unknown family '" + c.family + "'");
  require(c.format == "csv" || c.format == "json" || c.format == "svg", Errc::BadParameter,
          "format must be csv, json or svg");
  require(c.bins >= 1, Errc::BadParameter, "--bins must be at least 1");
  if (c.family == "er") {
    require(c.n.has_value() && *c.n >= 2, Errc::BadParameter, "er needs --n (vertex count) >= 2");
    require(c.degree > 0.0 && c.degree <= static_cast<double>(*c.n - 1), Errc::BadParameter,
            "er needs 0 < --degree <= n - 1");
    require(c.allow_large || static_cast<std::uint64_t>(*c.n) <= kDefaultMaxErVertices, Errc::SizeExceeded,
            "er graphs above 1024 vertices need --allow-large");
    return;
  }
  require(!c.p.empty(), Errc::BadParameter, "--p is required for family " + c.family);
  const std::int64_t n = c.n.value_or(1);
  require(n >= 1, Errc::BadParameter, "--n must be at least 1");
  for (auto p : c.p) {
    require(p >= 2 && is_prime(static_cast<std::uint64_t>(p)), Errc::CompositeModulus,
            "--p must be prime, got " + std::to_string(p));
    double q = std::pow(static_cast<double>(p), static_cast<double>(n));
    require(q <= static_cast<double>(kMaxFieldSize), Errc::SizeExceeded, "field size exceeds 2^20");
    require(c.allow_large || q <= static_cast<double>(kDefaultMaxField), Errc::SizeExceeded,
            "fields above 2048 elements need --allow-large");
    if (c.family == "kt" || c.family == "kplus") {
      require(n == 1, Errc::BadParameter, c.family + " is defined over prime fields only");
    }
    if (c.family == "kplus") require(p % 4 == 3, Errc::BadCongruence, "kplus needs p = 3 mod 4");
  }
  if (c.family == "kt") require(c.t > 0.0 && c.t <= 1.0, Errc::BadParameter, "--t must lie in (0, 1]");
}

SumSet make_set(const ExperimentConfig& c, std::int64_t p) {
  const auto n = static_cast<std::uint32_t>(c.n.value_or(1));
  if (c.family == "kloosterman") return make_K(make_field(static_cast<std::uint32_t>(p), n));
  if (c.family == "birch") return make_B(make_field(static_cast<std::uint32_t>(p), n));
  if (c.family == "kt") return make_Kt(p, c.t);
  return make_Kplus(p);
}

std::string tag(const ExperimentConfig& c, std::int64_t p) {
  if (c.family == "er") {
    std::ostringstream s;
    s << "er_n" << *c.n << "_d" << format_double(c.degree) << "_s" << c.seed;
    return s.str();
  }
  std::string t = c.family + "_p" + std::to_string(p);
  if (c.n.value_or(1) > 1) t += "_n" + std::to_string(*c.n);
  if (c.family == "kt") t += "_t" + format_double(c.t);
  return t;
}

double er_edge_probability(const ExperimentConfig& c) { return c.degree / static_cast<double>(*c.n - 1); }

// Non-trivial ER eigenvalues scaled by the bulk standard deviation sqrt((n-1) p (1-p)).
SpectralMeasure er_normalized_spectrum(const RandomGraph& g) {
  auto raw = measure_from_eigenvalues(dense_eigenvalues(g.adjacency), 1e-9 * static_cast<double>(g.n));
  const double sigma = std::sqrt(static_cast<double>(g.n - 1) * g.p_edge * (1.0 - g.p_edge));
  return rescaled_spectrum(raw, sigma, true);
}

bool expects_semicircle(const std::string& family) {
  return family == "kloosterman" || family == "birch" || family == "er";
}

std::string render_svg(const EmpiricalMeasure& emp, const ExperimentConfig& c, const std::string& title,
                       const std::string& family) {
  const bool fixed = expects_semicircle(family);
  const auto hist = fixed ? histogram(emp, c.bins, -2.5, 2.5) : histogram(emp, c.bins);
  const LimitLaw law = LimitLaw::semicircle();
  SvgOptions opt;
  opt.title = title;
  opt.overlay = fixed ? &law : nullptr;
  return svg_histogram(hist, opt);
}

template <class T>
std::string to_text(const T& value, void (*writer)(std::ostream&, const T&)) {
  std::ostringstream s;
  writer(s, value);
  return s.str();
}

}  // namespace

bool ExperimentConfig::wants(const std::string& check) const {
  return std::any_of(checks.begin(), checks.end(), [&](const std::string& c) { return lowercase(c) == check; });
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("SUMGRAPH_OUT"); env != nullptr && *env != '\0') return env;
  return "sumgraph_out";
}

std::string content_digest(const std::string& bytes) {
  std::string filtered;
  filtered.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    end = end == std::string::npos ? bytes.size() : end + 1;
    if (bytes.compare(pos, 15, "<!-- generator:") != 0) filtered.append(bytes, pos, end - pos);
    pos = end;
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(filtered.data(), filtered.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

// ---- build ----

int cmd_build(const ExperimentConfig& config, std::ostream& report) {
  validate_family(config);
  Run run("build", config);
  bool failed = false;
  json out;

  if (config.family == "er") {
    const auto g = run.stage("sample", [&] { return sample_er(*config.n, er_edge_probability(config), config.seed); });
    GraphSummary summary;
    summary.n = g.n;
    summary.degree = static_cast<std::uint64_t>(std::llround(config.degree));
    if (config.wants("subgraphs")) {
      const auto stats = run.stage("subgraphs", [&] { return codegree_stats(g.adjacency); });
      summary.c4 = stats.c4;
      summary.k23 = stats.k23;
    }
    summary.structure = structure_report(g.adjacency);
    out = to_json(summary);
    out["edges"] = g.adjacency.edge_count();
    out["family"] = "er";
    run.write("edges_" + tag(config, 0) + ".csv", to_text<AdjacencyList>(g.adjacency, write_edge_list_csv));
    run.write("build_" + tag(config, 0) + ".json", out.dump(2) + "\n");
  } else {
    const std::int64_t p = config.p.front();
    const SumSet set = run.stage("construct", [&] { return make_set(config, p); });
    const CayleySumGraph graph(set);
    const auto q = set.field().size();
    const bool birch_generic = config.family != "birch" || set.field().characteristic() >= 5;
    const bool sidon_like = config.family == "kplus" || (config.family == "kt" && config.t <= 0.5);

    GraphSummary summary;
    summary.n = graph.vertex_count();
    summary.degree = graph.degree();
    summary.loops = loop_count(graph);
    json checks = json::object();

    if (config.wants("sidon")) {
      run.stage("sidon", [&] {
        const bool symmetric_family = config.family == "kloosterman" || config.family == "birch";
        const auto verdict = symmetric_family ? is_symmetric_sidon(set, GroupPoint{0, 0}) : is_sidon(set);
        const std::string key = symmetric_family ? "symmetric_sidon" : "sidon";
        const bool expected = symmetric_family ? birch_generic : sidon_like;
        json c{{"holds", verdict.holds}, {"expected", expected}};
        if (verdict.witness) {
          json w = json::array();
          for (const auto& x : *verdict.witness) w.push_back({x.u, x.v});
          c["witness"] = w;
        }
        out[key] = verdict.holds;
        checks[key] = c;
        failed = failed || (expected && !verdict.holds);
      });
    }
    if (config.wants("subgraphs")) {
      require(config.allow_large || q <= kDefaultMaxSubgraphField, Errc::SizeExceeded,
              "subgraph counts above q = 128 need --allow-large");
      run.stage("subgraphs", [&] {
        const auto stats = codegree_stats(graph.simple());
        summary.c4 = stats.c4;
        summary.k23 = stats.k23;
        const bool k23_expected = (config.family == "kloosterman" || config.family == "birch") && birch_generic;
        const bool c4_expected = sidon_like;
        checks["subgraphs"] = {{"k23_free_expected", k23_expected},
                               {"c4_free_expected", c4_expected},
                               {"max_codegree", stats.max_codegree}};
        failed = failed || (k23_expected && stats.k23 != 0) || (c4_expected && stats.c4 != 0);
      });
    }
    if (graph.vertex_count() * graph.degree() <= kStructureWork) {
      summary.structure = run.stage("structure", [&] { return structure_report(graph.simple()); });
    }
    if (config.wants("weil")) {
      run.stage("weil", [&] {
        const auto m = spectrum_from_characters(set);
        const double bound = 2.0 * std::sqrt(static_cast<double>(q)) + 1e-6;
        const bool expected = config.family == "kloosterman" ||
                              (config.family == "birch" && set.field().characteristic() != 3);
        const bool holds = m.max_nontrivial_abs <= bound;
        checks["weil"] = {{"max_nontrivial_abs", m.max_nontrivial_abs}, {"bound", bound}, {"holds", holds},
                          {"expected", expected}};
        failed = failed || (expected && !holds);
      });
    }
    if (config.wants("oracle") || config.oracle) {
      run.stage("oracle", [&] {
        const auto chars = spectrum_from_characters(set).expanded();
        const auto dense = spectrum_dense_oracle(graph);
        double dev = 0.0;
        for (std::size_t i = 0; i < chars.size(); ++i) dev = std::max(dev, std::abs(chars[i] - dense[i]));
        checks["oracle"] = {{"max_deviation", dev}, {"holds", dev <= 1e-6}};
        failed = failed || dev > 1e-6;
      });
    }
    json base = to_json(summary);
    for (auto& [k, v] : base.items()) out[k] = v;
    out["family"] = config.family;
    out["field"] = to_json(set.field());
    out["set_size"] = set.size();
    out["checks"] = checks;
    const std::string name = tag(config, p);
    run.write("build_" + name + ".json", out.dump(2) + "\n");
    run.write("set_" + name + ".json", to_json(set).dump() + "\n");
    if (config.format == "csv") run.write("edges_" + name + ".csv", to_text<CayleySumGraph>(graph, write_edge_list_csv));
  }
  out["status"] = failed ? "check_failed" : "ok";
  run.stats() = out;
  run.finish();
  report << out.dump(2) << '\n';
  return failed ? kCheckFailed : kOk;
}

// ---- spectrum ----

int cmd_spectrum(const ExperimentConfig& config, std::ostream& report) {
  validate_family(config);
  Run run("spectrum", config);
  bool failed = false;
  json out;
  SpectralMeasure normalized;
  std::string name;

  if (config.family == "er") {
    name = tag(config, 0);
    const auto g = run.stage("sample", [&] { return sample_er(*config.n, er_edge_probability(config), config.seed); });
    normalized = run.stage("spectrum", [&] { return er_normalized_spectrum(g); });
    out["family"] = "er";
    out["n"] = g.n;
    out["edges"] = g.adjacency.edge_count();
  } else {
    const std::int64_t p = config.p.front();
    name = tag(config, p);
    const SumSet set = make_set(config, p);
    const auto raw = run.stage("spectrum", [&] { return spectrum_from_characters(set); });
    const double n_s = static_cast<double>(raw.q) * static_cast<double>(raw.q) * static_cast<double>(raw.set_size);
    out = spectrum_metadata(raw);
    out["trace_sum"] = raw.trace_sum();
    out["trace_identity"] = std::abs(raw.trace_sum() - static_cast<double>(raw.loops)) <= 1e-6 * n_s;
    out["square_sum"] = raw.square_sum();
    out["square_identity"] = std::abs(raw.square_sum() - n_s) <= 1e-6 * n_s;
    if (config.oracle) {
      run.stage("oracle", [&] {
        const auto chars = raw.expanded();
        const auto dense = spectrum_dense_oracle(CayleySumGraph(set));
        double dev = 0.0;
        for (std::size_t i = 0; i < chars.size(); ++i) dev = std::max(dev, std::abs(chars[i] - dense[i]));
        out["oracle"] = {{"max_deviation", dev}, {"holds", dev <= 1e-6}};
        failed = dev > 1e-6;
      });
    }
    normalized = normalized_spectrum(raw, !config.include_trivial);
  }
  out["normalized_distinct"] = normalized.distinct_count();
  out["normalized_max_nontrivial_abs"] = normalized.max_nontrivial_abs;
  out["trivial_included"] = normalized.trivial_included;

  json files = json::array();
  files.push_back(run.write("spectrum_" + name + ".csv", to_text<SpectralMeasure>(normalized, write_spectrum_csv)));
  if (config.format == "json") {
    json j = spectrum_metadata(normalized);
    json atoms = json::array();
    for (const auto& a : normalized.atoms) atoms.push_back({a.value, a.multiplicity});
    j["atoms"] = atoms;
    files.push_back(run.write("spectrum_" + name + ".json", j.dump() + "\n"));
  }
  if (config.svg || config.format == "svg") {
    const auto emp = spectral_to_empirical(normalized, false);
    files.push_back(run.write("spectrum_" + name + ".svg", render_svg(emp, config, name, config.family)));
  }
  out["files"] = files;
  out["status"] = failed ? "check_failed" : "ok";
  run.stats() = out;
  run.finish();
  report << out.dump(2) << '\n';
  return failed ? kCheckFailed : kOk;
}

// ---- dist ----

namespace {

LimitLaw resolve_law(const ExperimentConfig& c) {
  std::string law = c.law;
  if (law.empty()) {
    if (c.family == "kt") law = "kt-series";
    else if (c.family == "kplus") law = "sc-plus-sa";
    else law = "semicircle";
  }
  if (law == "semicircle") return LimitLaw::semicircle();
  if (law == "kesten-mckay") {
    require(c.degree >= 2.0, Errc::BadParameter, "kesten-mckay needs --degree >= 2");
    return LimitLaw::kesten_mckay(c.degree);
  }
  if (law == "salie-modulus") return LimitLaw::salie_modulus();
  if (law == "kt-series") return LimitLaw::kt_series(c.family == "kt" ? c.t : (c.t > 0 ? c.t : 0.5), c.H);
  if (law == "sc-plus-sa") return LimitLaw::sc_plus_sa();
  throw Error(Errc::BadParameter, "unknown law '" + law + "'");
}

}  // namespace

int cmd_dist(const ExperimentConfig& config, std::ostream& report) {
  validate_family(config);
  const LimitLaw law = resolve_law(config);
  std::uint64_t samples = config.samples;
  if (samples == 0 && !law.has_cdf()) samples = law.kind() == LawKind::KtSeries ? 100'000 : 1'000'000;
  if (!config.allow_large) {
    require(samples <= kDefaultMaxSamples, Errc::SizeExceeded, "more than 2e6 samples needs --allow-large");
    if (law.kind() == LawKind::KtSeries) {
      require(static_cast<double>(samples) * 2.0 * static_cast<double>(law.truncation()) <= kDefaultMaxSemicircleDraws,
              Errc::SizeExceeded, "samples x truncation too large; lower --samples or --H, or pass --allow-large");
    }
  }
  require(config.mixed.empty() || config.mixed.size() == 2, Errc::BadParameter, "--mixed takes alpha,beta");
  require(config.mixed.empty() || config.family == "kplus", Errc::BadParameter, "--mixed applies to kplus only");
  Run run("dist", config);

  json rows = json::array();
  std::ostringstream csv;
  const auto csv_path = config.out / ("dist_" + config.family + ".csv");
  const bool fresh = !std::filesystem::exists(csv_path);
  if (fresh) csv << "family,p,n,law,method,w1,m4,samples,seed\n";

  const std::vector<std::int64_t> ps = config.family == "er" ? std::vector<std::int64_t>{0} : config.p;
  for (const auto p : ps) {
    json row{{"family", config.family}, {"law", law.name()}};
    SpectralMeasure normalized;
    if (config.family == "er") {
      const auto g = sample_er(*config.n, er_edge_probability(config), config.seed);
      normalized = er_normalized_spectrum(g);
      row["n"] = g.n;
      row["k23"] = count_K23(g.adjacency);
    } else {
      const SumSet set = make_set(config, p);
      normalized = run.stage("spectrum_p" + std::to_string(p),
                             [&] { return normalized_spectrum(spectrum_from_characters(set), true); });
      row["p"] = p;
      row["q"] = set.field().size();
      if (config.family == "kloosterman" && set.field().is_prime_field()) row["m4"] = m4_check(set.field());
      if (!config.mixed.empty()) {
        const auto mm = mixed_moment_check(set.field(), config.mixed[0], config.mixed[1]);
        row["mixed"] = {{"alpha", config.mixed[0]}, {"beta", config.mixed[1]}, {"re", mm.value.real()},
                        {"im", mm.value.imag()}, {"prediction", mm.prediction}};
      }
    }
    const auto emp = spectral_to_empirical(normalized, false);
    double w1 = 0.0;
    std::string method;
    run.stage("w1_p" + std::to_string(p), [&] {
      if (samples > 0) {
        method = "two-sample";
        w1 = w1_two_sample(emp, law.sample(samples, config.seed));
      } else {
        method = "cdf";
        w1 = w1_vs_law(emp, law);
      }
    });
    row["w1"] = w1;
    row["method"] = method;
    row["samples"] = samples;
    if (law.kind() == LawKind::KtSeries) {
      row["H"] = law.truncation();
      row["tail_bound"] = kt_tail_bound(law.t(), law.truncation());
    }
    csv << config.family << ',' << (config.family == "er" ? *config.n : p) << ','
        << (config.family == "er" ? *config.n : config.n.value_or(1)) << ',' << law.name() << ',' << method << ','
        << format_double(w1) << ',' << (row.contains("m4") ? format_double(row["m4"].get<double>()) : "") << ','
        << samples << ',' << config.seed << '\n';
    rows.push_back(row);
  }
  run.write(csv_path.filename().string(), csv.str(), !fresh);
  json out{{"rows", rows}, {"seed", config.seed}, {"law", law.name()}};
  run.stats() = out;
  run.finish();
  report << out.dump(2) << '\n';
  return kOk;
}

// ---- table ----

int cmd_table(const ExperimentConfig& config, std::ostream& report) {
  validate_family(config);
  require(config.family != "er", Errc::BadParameter, "tables need a field family");
  Run run("table", config);
  const std::int64_t p = config.p.front();
  const auto field = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(config.n.value_or(1)));
  std::string sum = config.sum;
  if (sum.empty()) {
    if (config.family == "birch") sum = "birch";
    else if (config.family == "kt") sum = "partial";
    else if (config.family == "kplus") sum = "salie";
    else sum = "kloosterman";
  }
  const SumTable table = run.stage("table", [&] {
    if (sum == "kloosterman") return kloosterman_table(field);
    if (sum == "birch") return birch_table(field);
    if (sum == "salie") return salie_table(field);
    if (sum == "partial") return partial_kloosterman_table(field, config.t);
    throw Error(Errc::BadParameter, "--sum must be kloosterman, birch, salie or partial");
  });
  require(!config.column || sum == "kloosterman" || sum == "salie", Errc::BadParameter,
          "--column applies to kloosterman and salie tables");
  const std::string name = "table_" + sum + "_" + tag(config, p) + (config.column ? "_column" : "");
  const auto path = run.write(name + ".csv", config.column ? to_text<SumTable>(table, write_column_csv)
                                                          : to_text<SumTable>(table, write_table_csv));
  json out{{"sum", sum}, {"field", to_json(field)}, {"max_nontrivial_abs", max_nontrivial_abs(table)},
           {"weil_bound", 2.0 * std::sqrt(static_cast<double>(field.size()))}, {"file", path}};
  run.stats() = out;
  run.finish();
  report << out.dump(2) << '\n';
  return kOk;
}

// ---- reproduce-figures ----

int cmd_reproduce_figures(const ExperimentConfig& config, std::ostream& report) {
  require(config.bins >= 1, Errc::BadParameter, "--bins must be at least 1");
  Run run("reproduce-figures", config);
  struct Panel {
    std::string family;
    std::uint32_t p;
    std::uint32_t n;
  };
  std::vector<Panel> panels;
  for (const std::string family : {"kloosterman", "birch"}) {
    for (std::uint32_t p : {127U, 251U, 601U, 1117U}) panels.push_back({family, p, 1});
  }
  panels.push_back({"birch", 5, 4});
  panels.push_back({"birch", 2, 10});

  json rows = json::array();
  for (const auto& panel : panels) {
    const auto field = make_field(panel.p, panel.n);
    const SumSet set = panel.family == "kloosterman" ? make_K(field) : make_B(field);
    const std::string name = panel.family + "_q" + std::to_string(field.size());
    const auto normalized = run.stage(name, [&] { return normalized_spectrum(spectrum_from_characters(set), true); });
    const auto emp = spectral_to_empirical(normalized, false);
    run.write(name + ".csv", to_text<SpectralMeasure>(normalized, write_spectrum_csv));
    run.write(name + ".svg", render_svg(emp, config, name, panel.family));
    rows.push_back({{"panel", name},
                    {"q", field.size()},
                    {"distinct", normalized.distinct_count()},
                    {"w1_semicircle", w1_vs_law(emp, LimitLaw::semicircle())},
                    {"max_nontrivial_abs", normalized.max_nontrivial_abs}});
  }
  json out{{"panels", rows}};
  run.stats() = out;
  run.finish();
  report << out.dump(2) << '\n';
  return kOk;
}

}  // namespace sumgraph::cli
