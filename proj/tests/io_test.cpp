#include "sumgraph/io.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <sstream>

using namespace sumgraph;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.0, -1.0, 0.1, 1.0 / 3.0, 2.0 * std::sqrt(7.0), 1e-300, -6.02e23}) {
    const auto s = format_double(x);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(Json, FieldAndSet) {
  const auto f = make_field(3, 2);
  const auto jf = to_json(f);
  EXPECT_EQ(jf["p"], 3);
  EXPECT_EQ(jf["n"], 2);
  EXPECT_EQ(jf["modulus"], nlohmann::json::array({1, 0, 1}));
  const auto js = to_json(make_K(make_field(5)));
  EXPECT_EQ(js["family"], "kloosterman");
  EXPECT_EQ(js["points"].size(), 4U);
  EXPECT_EQ(js["points"][0], nlohmann::json::array({1, 1}));
  const auto jt = to_json(make_Kt(7, 0.5));
  EXPECT_DOUBLE_EQ(jt["t"].get<double>(), 0.5);
}

TEST(Json, GraphSummary) {
  const auto g = build(make_B(make_field(3)));
  GraphSummary s{g.vertex_count(), g.degree(), loop_count(g), std::nullopt, 6, structure_report(g.simple())};
  const auto j = to_json(s);
  EXPECT_EQ(j["n"], 9);
  EXPECT_EQ(j["degree"], 3);
  EXPECT_EQ(j["loops"], 3);
  EXPECT_TRUE(j["c4"].is_null());
  EXPECT_EQ(j["k23"], 6);
  ASSERT_EQ(j["components"].size(), 2U);
  EXPECT_EQ(j["components"][0]["label"], "K_{3,3}");
  EXPECT_EQ(j["components"][0]["size"], 6);
  EXPECT_EQ(j["components"][0]["edges"], 9);
  EXPECT_EQ(j["structure"], "1×K_{3,3}+1×K_3");
}

TEST(Json, SpectrumMetadata) {
  const auto m = spectrum_from_characters(make_K(make_field(7)));
  const auto j = spectrum_metadata(m);
  EXPECT_EQ(j["family"], "kloosterman");
  EXPECT_EQ(j["q"], 7);
  EXPECT_EQ(j["set_size"], 6);
  EXPECT_EQ(j["loops"], 6);
  EXPECT_DOUBLE_EQ(j["trivial"].get<double>(), 6.0);
  EXPECT_EQ(j["distinct"], m.distinct_count());
}

TEST(Csv, EdgeList) {
  const auto g = build(make_K(make_field(3)));
  std::ostringstream out;
  write_edge_list_csv(out, g);
  const auto l = lines(out.str());
  EXPECT_EQ(l[0], "u,v");
  EXPECT_EQ(l.size(), 1 + edge_list(g).size());
  const auto er = sample_er(5, 1.0, 1);
  std::ostringstream out2;
  write_edge_list_csv(out2, er.adjacency);
  EXPECT_EQ(lines(out2.str()).size(), 11U);
}

TEST(Csv, TablesAndColumn) {
  const auto t = kloosterman_table(make_field(3));
  std::ostringstream out;
  write_table_csv(out, t);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 10U);
  EXPECT_EQ(l[0], "a,b,re,im");
  EXPECT_EQ(l[1].rfind("0,0,2,", 0), 0U);
  std::ostringstream col;
  write_column_csv(col, t);
  const auto c = lines(col.str());
  ASSERT_EQ(c.size(), 4U);
  EXPECT_EQ(c[0], "m,re,im");
}

TEST(Csv, SpectrumHeadersFollowScale) {
  const auto m = spectrum_from_characters(make_K(make_field(3)));
  std::ostringstream raw;
  write_spectrum_csv(raw, m);
  EXPECT_EQ(lines(raw.str())[0], "eigenvalue,multiplicity");
  EXPECT_EQ(lines(raw.str()).size(), 5U);
  std::ostringstream norm;
  write_spectrum_csv(norm, normalized_spectrum(m, true));
  EXPECT_EQ(lines(norm.str())[0], "normalized,multiplicity");
}

TEST(Csv, MeasureAndHistogram) {
  const auto e = EmpiricalMeasure::from_samples({1.0, 1.0, 2.0, 4.0});
  std::ostringstream out;
  write_measure_csv(out, e);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 4U);
  EXPECT_EQ(l[0], "value,weight");
  EXPECT_EQ(l[1], "1,0.5");
  std::ostringstream h;
  write_histogram_csv(h, histogram(e, 3, 1, 4));
  const auto hl = lines(h.str());
  ASSERT_EQ(hl.size(), 4U);
  EXPECT_EQ(hl[0], "bin_left,bin_right,count");
  EXPECT_EQ(hl[1], "1,2,2");
  EXPECT_EQ(hl[3], "3,4,1");
}

TEST(Csv, Deterministic) {
  auto render = [] {
    std::ostringstream out;
    write_spectrum_csv(out, normalized_spectrum(spectrum_from_characters(make_B(make_field(31))), true));
    return out.str();
  };
  EXPECT_EQ(render(), render());
}
