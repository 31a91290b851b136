// Copyright 2026 The dpca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <unistd.h>

#include "cli/capi.hpp"
#include "cli/commands.hpp"
#include "cli/csv.hpp"
#include "cli/svg.hpp"

namespace dpca::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dpca");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

int error_lines(const std::string& err) { return count_of(err, "\n"); }

int code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const CliError& e) {
    return e.exit_code();
  }
  return kExitOk;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpca_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { write_text(dir_ / name, text); }

  // Small synthetic pair with a balanced two-group target.
  void synth(const std::string& prefix, int dim = 10, int m = 400, int n = 600) {
    const Outcome r = invoke({"synth", "--dim", std::to_string(dim), "--m", std::to_string(m), "--n",
                              std::to_string(n), "--seed", "3", "--out", path(prefix)});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path dir_;
};

TEST(GridSpecTest, Parses) {
  const GridSpec g = parse_grid("0.001:1000:15log");
  EXPECT_EQ(g.lo, 0.001);
  EXPECT_EQ(g.hi, 1000.0);
  EXPECT_EQ(g.count, 15);
  for (const char* bad : {"", "1:2", "1:2:3", "1:2:3lin", "a:2:3log", "0:2:3log", "2:1:3log", "1:2:0log", "1:2:log"}) {
    EXPECT_EQ(code_of([&] { parse_grid(bad); }), kExitUsage) << bad;
  }
}

TEST(CsvTest, HeaderLabelsAndBom) {
  const CsvTable t = parse_csv("\xEF\xBB\xBFx1,x2,label\n1,2,0\n3.5,-4e-3,1\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"x1", "x2"}));  // value columns only
  EXPECT_EQ(t.rows, 2u);
  EXPECT_EQ(t.cols, 2u);
  EXPECT_EQ(t.values, (std::vector<double>{1, 2, 3.5, -4e-3}));
  ASSERT_TRUE(t.labels.has_value());
  EXPECT_EQ(*t.labels, (std::vector<std::int64_t>{0, 1}));
}

TEST(CsvTest, HeaderlessNoLabels) {
  const CsvTable t = parse_csv("1,2\r\n3,4\r\n");
  EXPECT_TRUE(t.header.empty());
  EXPECT_EQ(t.values, (std::vector<double>{1, 2, 3, 4}));
  EXPECT_FALSE(t.labels.has_value());
}

TEST(CsvTest, RejectsMalformedInput) {
  for (const char* bad : {"1,2\n3\n", "a,b\n1,x\n", "1,nan\n", "1,inf\n", "", "a,b\n", "x,label\n1,0.5\n"}) {
    EXPECT_EQ(code_of([&] { parse_csv(bad, "f.csv"); }), kExitData) << bad;
  }
  try {
    parse_csv("a,b\n1,2\n3\n", "f.csv");
  } catch (const CliError& e) {
    EXPECT_NE(std::string(e.what()).find("f.csv:3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { read_csv("/nonexistent/x.csv"); }), kExitData);
}

TEST(CsvTest, RoundTripsSeventeenDigits) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> v(60);
  for (double& x : v) x = normal(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
  v[0] = 0.1 + 0.2;
  const std::string text = format_csv({"a", "b", "c"}, v, 20, 3, std::vector<std::int64_t>(20, 7));
  const CsvTable t = parse_csv(text);
  EXPECT_EQ(t.values, v);
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(text.substr(0, text.find('\n')), "a,b,c,label");
  EXPECT_EQ(t.labels->front(), 7);
}

TEST(SvgTest, TwoPointsTwoCircles) {
  const std::string svg = render_scatter_svg(parse_csv("c1,c2\n0,0\n1,1\n"));
  EXPECT_EQ(count_of(svg, "<circle"), 2);
  EXPECT_NE(svg.find("component 1"), std::string::npos);
  EXPECT_NE(svg.find("component 2"), std::string::npos);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
}

TEST(SvgTest, TwoClassesTwoColorsAndLegend) {
  const std::string svg = render_scatter_svg(parse_csv("c1,c2,label\n0,0,0\n1,1,1\n2,0,1\n0,2,0\n"));
  std::set<std::string> fills;
  const std::regex circle("<circle[^>]*fill=\"([^\"]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it) {
    fills.insert((*it)[1]);
  }
  EXPECT_EQ(fills.size(), 2u);
  EXPECT_EQ(count_of(svg, "<rect") - 1, 2);  // one background rect plus one swatch per class
  EXPECT_EQ(count_of(svg, ">label "), 2);
}

TEST(SvgTest, DeterministicAndNeedsTwoColumns) {
  const CsvTable t = parse_csv("c1,c2,label\n0.5,0,0\n1,-1,1\n");
  EXPECT_EQ(render_scatter_svg(t, "x"), render_scatter_svg(t, "x"));
  EXPECT_EQ(code_of([] { render_scatter_svg(parse_csv("c1\n1\n2\n")); }), kExitUsage);
}

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"fit", "--help"}).code, 0);
  Outcome r = invoke({});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_lines(r.err), 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"fit", "dpca"}).code, 2);
  EXPECT_EQ(invoke({"fit", "dpca", "t.csv", "-d", "two"}).code, 2);
}

TEST_F(CliTest, SynthIsByteReproducible) {
  std::string first[3];
  for (int run = 0; run < 3; ++run) {
    const std::string prefix = "s" + std::to_string(run);
    synth(prefix);
    first[run] = slurp(path(prefix + "_target.csv")) + slurp(path(prefix + "_background.csv")) +
                 slurp(path(prefix + "_truth.json"));
  }
  EXPECT_EQ(first[0], first[1]);
  EXPECT_EQ(first[1], first[2]);
  const CsvTable t = read_csv(path("s0_target.csv"));
  EXPECT_EQ(t.rows, 400u);
  EXPECT_EQ(t.cols, 10u);
  EXPECT_TRUE(t.labels.has_value());
  EXPECT_FALSE(read_csv(path("s0_background.csv")).labels.has_value());
}

TEST_F(CliTest, SynthPopulationCovariance) {
  // Noise-free background with stds (10, 8, 6) on a rank-3 subspace.
  const Outcome r = invoke({"synth", "--dim", "8", "--n", "20000", "--m", "10", "--noise", "0", "--seed", "4",
                            "--out", path("big")});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable y = read_csv(path("big_background.csv"));
  const std::string truth = slurp(path("big_truth.json"));
  dpca_factor_spec* raw = nullptr;
  ASSERT_EQ(dpca_factor_spec_load(path("big_truth.json").c_str(), &raw), DPCA_OK);
  SpecHandle spec(raw);
  std::vector<double> ub(8 * 3);
  ASSERT_EQ(dpca_factor_spec_shared_basis(spec.get(), ub.data(), ub.size()), DPCA_OK);
  const double stds[3] = {10, 8, 6};
  dpca_data* data = nullptr;
  ASSERT_EQ(dpca_data_create(y.rows, y.cols, y.values.data(), nullptr, &data), DPCA_OK);
  DataHandle d(data);
  dpca_covariance* c = nullptr;
  ASSERT_EQ(dpca_covariance_from_data(d.get(), 0.0, &c), DPCA_OK);
  CovarianceHandle cov(c);
  std::vector<double> sample(64);
  ASSERT_EQ(dpca_covariance_matrix(cov.get(), sample.data(), 64), DPCA_OK);
  double diff = 0, norm = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      double pop = 0;
      for (int k = 0; k < 3; ++k) pop += ub[i * 3 + k] * stds[k] * stds[k] * ub[j * 3 + k];
      diff += std::pow(sample[i * 8 + j] - pop, 2);
      norm += pop * pop;
    }
  }
  EXPECT_LE(std::sqrt(diff / norm), 0.05);
}

TEST_F(CliTest, SynthRejectsBadRanks) {
  Outcome r = invoke({"synth", "--dim", "3", "--shared", "3", "--specific", "1", "--out", path("x")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_lines(r.err), 1);
  EXPECT_FALSE(fs::exists(path("x_target.csv")));
  EXPECT_EQ(invoke({"synth", "--shared-std", "1,2", "--out", path("x")}).code, 2);
}

TEST_F(CliTest, FitDpcaHappyPath) {
  synth("s");
  const Outcome r = invoke({"fit", "dpca", path("s_target.csv"), path("s_background.csv"), "-d", "2", "--out",
                            path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("eigenvalues:"), std::string::npos);
  EXPECT_NE(r.out.find("wall time:"), std::string::npos);
  dpca_model* raw = nullptr;
  ASSERT_EQ(dpca_model_load(path("m.json").c_str(), &raw), DPCA_OK);
  ModelHandle m(raw);
  EXPECT_EQ(dpca_model_method(m.get()), DPCA_METHOD_DPCA);
  EXPECT_EQ(dpca_model_count(m.get()), 2u);
  EXPECT_STREQ(dpca_model_provenance(m.get(), "target"), path("s_target.csv").c_str());
  EXPECT_STREQ(dpca_model_provenance(m.get(), "timestamp"), "2023-11-14T22:13:20Z");
}

TEST_F(CliTest, FitAutoAlphaWritesOneModelPerSelection) {
  synth("s");
  const Outcome r = invoke({"fit", "cpca", path("s_target.csv"), path("s_background.csv"), "--auto-alpha", "--grid",
                            "0.001:1000:15log", "--select", "4", "--out", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::set<double> alphas;
  for (int i = 1; i <= 4; ++i) {
    const std::string p = path("c.alpha" + std::to_string(i) + ".json");
    dpca_model* raw = nullptr;
    ASSERT_EQ(dpca_model_load(p.c_str(), &raw), DPCA_OK) << p;
    ModelHandle m(raw);
    double a = 0;
    ASSERT_EQ(dpca_model_alpha(m.get(), &a), DPCA_OK);
    alphas.insert(a);
  }
  EXPECT_EQ(alphas.size(), 4u);
  EXPECT_FALSE(fs::exists(path("c.alpha5.json")));
}

TEST_F(CliTest, FitContractViolations) {
  synth("s");
  const std::string t = path("s_target.csv"), b = path("s_background.csv");
  EXPECT_EQ(invoke({"fit", "dpca", t}).code, 2);
  EXPECT_EQ(invoke({"fit", "cpca", t, b}).code, 2);
  EXPECT_EQ(invoke({"fit", "cpca", t, b, "--alpha", "1", "--auto-alpha"}).code, 2);
  EXPECT_EQ(invoke({"fit", "pca", t, b}).code, 2);
  EXPECT_EQ(invoke({"fit", "lda", t, b}).code, 2);
  EXPECT_EQ(invoke({"fit", "dpca", t, b, "-d", "11"}).code, 2);
  EXPECT_EQ(invoke({"fit", "cpca", t, b, "--auto-alpha", "--select", "16"}).code, 2);
  EXPECT_EQ(invoke({"fit", "cpca", t, b, "--auto-alpha", "--grid", "1:0"}).code, 2);
  EXPECT_EQ(invoke({"fit", "cpca", t, b, "--alpha", "-1", "--out", path("neg.json")}).code, 3);

  write("narrow.csv", "a,b\n1,2\n3,4\n");
  Outcome r = invoke({"fit", "dpca", t, path("narrow.csv")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(error_lines(r.err), 1);
  EXPECT_EQ(invoke({"fit", "dpca", t, path("missing.csv")}).code, 3);

  // Constant background: zero covariance cannot be whitened.
  std::string flat = "x1,x2,x3,x4,x5,x6,x7,x8,x9,x10\n";
  for (int i = 0; i < 5; ++i) flat += "1,1,1,1,1,1,1,1,1,1\n";
  write("flat.csv", flat);
  r = invoke({"fit", "dpca", t, path("flat.csv"), "--out", path("flat.json")});
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(error_lines(r.err), 1);
  // A ridge turns the same background into a usable one.
  EXPECT_EQ(invoke({"fit", "dpca", t, path("flat.csv"), "--ridge", "0.1", "--out", path("flat.json")}).code, 0);
}

TEST_F(CliTest, MultipleBackgroundsAreConcatenated) {
  synth("s");
  const std::string t = path("s_target.csv"), b = path("s_background.csv");
  ASSERT_EQ(invoke({"fit", "dpca", t, b, b, "--out", path("two.json")}).code, 0);
  ASSERT_EQ(invoke({"fit", "dpca", t, b, "--out", path("one.json")}).code, 0);
  // Duplicating every row leaves the covariance and therefore the model unchanged.
  dpca_model *x = nullptr, *y = nullptr;
  ASSERT_EQ(dpca_model_load(path("two.json").c_str(), &x), DPCA_OK);
  ASSERT_EQ(dpca_model_load(path("one.json").c_str(), &y), DPCA_OK);
  ModelHandle mx(x), my(y);
  std::vector<double> cx(20), cy(20);
  dpca_model_components(mx.get(), cx.data(), 20);
  dpca_model_components(my.get(), cy.data(), 20);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(cx[i], cy[i], 1e-9);
}

TEST_F(CliTest, TransformIdentityModelGivesCenteredInput) {
  write("x.csv", "a,b\n1,10\n3,14\n8,0\n");
  write("id.json", R"({"format_version": 1, "method": "pca", "D": 2, "d": 2, "alpha": null,
    "target_mean": [4, 8], "background_mean": null, "components": [[1, 0], [0, 1]],
    "eigenvalues": [2, 1], "orthonormalized": false,
    "regularization": {"floor_rel": 0, "floor_applied": false, "target_ridge": 0, "background_ridge": 0},
    "feature_scale": null, "provenance": {}})");
  const Outcome r = invoke({"transform", path("id.json"), path("x.csv"), "--out", path("e.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable e = read_csv(path("e.csv"));
  EXPECT_EQ(e.values, (std::vector<double>{-3, 2, -1, 6, 4, -8}));
  EXPECT_FALSE(e.labels.has_value());
  EXPECT_EQ(slurp(path("e.csv")).find("label"), std::string::npos);
}

TEST_F(CliTest, TransformVarianceMatchesEigenvalues) {
  synth("s");
  ASSERT_EQ(invoke({"fit", "pca", path("s_target.csv"), "-d", "3", "--out", path("p.json")}).code, 0);
  ASSERT_EQ(invoke({"transform", path("p.json"), path("s_target.csv"), "--out", path("e.csv")}).code, 0);
  const CsvTable e = read_csv(path("e.csv"));
  ASSERT_EQ(e.cols, 3u);
  ASSERT_TRUE(e.labels.has_value());
  dpca_model* raw = nullptr;
  ASSERT_EQ(dpca_model_load(path("p.json").c_str(), &raw), DPCA_OK);
  ModelHandle m(raw);
  const std::vector<double> ev = eigenvalues_of(m.get());
  for (std::size_t j = 0; j < 3; ++j) {
    double var = 0;
    for (std::size_t i = 0; i < e.rows; ++i) var += e.values[i * 3 + j] * e.values[i * 3 + j];
    var /= static_cast<double>(e.rows);
    EXPECT_NEAR(var, ev[j], 1e-9 * ev[j]);
  }
}

TEST_F(CliTest, TransformDimensionMismatch) {
  synth("s");
  ASSERT_EQ(invoke({"fit", "pca", path("s_target.csv"), "--out", path("p.json")}).code, 0);
  write("narrow.csv", "1,2\n3,4\n");
  const Outcome r = invoke({"transform", path("p.json"), path("narrow.csv"), "--out", path("e.csv")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(error_lines(r.err), 1);
  write("broken.json", "{");
  EXPECT_EQ(invoke({"transform", path("broken.json"), path("narrow.csv")}).code, 3);
}

TEST_F(CliTest, WhiteNoiseBackgroundMakesDpcaMatchPca) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const double scales[5] = {5, 4, 3, 2, 1};
  std::string target = "a,b,c,d,e\n", background = "a,b,c,d,e\n";
  char buf[64];
  for (int i = 0; i < 2000; ++i) {
    for (int j = 0; j < 5; ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g", j ? "," : "", scales[j] * normal(rng));
      target += buf;
    }
    target += "\n";
  }
  for (int i = 0; i < 100000; ++i) {
    for (int j = 0; j < 5; ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g", j ? "," : "", normal(rng));
      background += buf;
    }
    background += "\n";
  }
  write("t.csv", target);
  write("b.csv", background);
  ASSERT_EQ(invoke({"fit", "dpca", path("t.csv"), path("b.csv"), "-d", "2", "--out", path("d.json")}).code, 0);
  ASSERT_EQ(invoke({"fit", "pca", path("t.csv"), "-d", "2", "--out", path("p.json")}).code, 0);
  ASSERT_EQ(invoke({"transform", path("d.json"), path("t.csv"), "--out", path("de.csv")}).code, 0);
  ASSERT_EQ(invoke({"transform", path("p.json"), path("t.csv"), "--out", path("pe.csv")}).code, 0);
  const CsvTable de = read_csv(path("de.csv")), pe = read_csv(path("pe.csv"));
  for (std::size_t j = 0; j < 2; ++j) {
    double dot = 0, nd = 0, np = 0;
    for (std::size_t i = 0; i < de.rows; ++i) {
      dot += de.values[i * 2 + j] * pe.values[i * 2 + j];
      nd += de.values[i * 2 + j] * de.values[i * 2 + j];
      np += pe.values[i * 2 + j] * pe.values[i * 2 + j];
    }
    EXPECT_GE(std::abs(dot) / std::sqrt(nd * np), 0.99) << "column " << j;
  }
}

TEST_F(CliTest, ZscoreStoresScaleAndTransformUsesIt) {
  write("t.csv", "a,b\n1,100\n2,300\n3,200\n4,500\n");
  write("b.csv", "a,b\n0,10\n1,50\n2,20\n0,70\n");
  ASSERT_EQ(invoke({"fit", "dpca", path("t.csv"), path("b.csv"), "--zscore", "--out", path("z.json")}).code, 0);
  dpca_model* raw = nullptr;
  ASSERT_EQ(dpca_model_load(path("z.json").c_str(), &raw), DPCA_OK);
  ModelHandle m(raw);
  ASSERT_EQ(dpca_model_has_feature_scale(m.get()), 1);
  double scale[2];
  ASSERT_EQ(dpca_model_feature_scale(m.get(), scale, 2), DPCA_OK);
  EXPECT_NEAR(scale[0], std::sqrt(1.25), 1e-12);
  EXPECT_STREQ(dpca_model_provenance(m.get(), "zscore"), "true");
  ASSERT_EQ(invoke({"transform", path("z.json"), path("t.csv"), "--out", path("e.csv")}).code, 0);
  // Centered scaled data has zero column means in the embedding.
  const CsvTable e = read_csv(path("e.csv"));
  double mean = 0;
  for (std::size_t i = 0; i < e.rows; ++i) mean += e.values[i * e.cols];
  EXPECT_NEAR(mean, 0.0, 1e-12);
}

TEST_F(CliTest, CompareReportsAllMethods) {
  synth("s", 20, 500, 800);
  const Outcome r = invoke({"compare", path("s_target.csv"), path("s_background.csv"), "-d", "2", "--out",
                            path("cmp"), "--plots"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("runtime ratio cpca_auto/dpca"), std::string::npos);
  for (const char* f : {"cmp_pca.csv", "cmp_dpca.csv", "cmp_cpca_alpha1.csv", "cmp_cpca_alpha4.csv",
                        "cmp_metrics.csv", "cmp_dpca.svg"}) {
    EXPECT_TRUE(fs::exists(path(f))) << f;
  }
  for (const char* f : {"cmp_pca.csv", "cmp_dpca.csv", "cmp_cpca_alpha2.csv"}) {
    const CsvTable t = read_csv(path(f));
    EXPECT_EQ(t.rows, 500u);
    EXPECT_EQ(t.cols, 2u);
    EXPECT_TRUE(t.labels.has_value());
  }
  const std::string metrics = slurp(path("cmp_metrics.csv"));
  EXPECT_EQ(metrics.rfind("method,alpha,accuracy,silhouette,seconds\n", 0), 0u);
  EXPECT_NE(metrics.find("\ndpca,"), std::string::npos);
  EXPECT_NE(metrics.find("\ncpca_auto,"), std::string::npos);
  EXPECT_EQ(invoke({"compare", path("s_target.csv")}).code, 2);
}

TEST_F(CliTest, CompareApiSeparatesSubgroups) {
  synth("s", 100, 2000, 3000);
  CompareOptions o;
  o.target = path("s_target.csv");
  o.backgrounds = {path("s_background.csv")};
  o.out = path("cmp");
  std::ostringstream sink;
  const CompareReport report = run_compare(o, sink);
  ASSERT_GE(report.rows.size(), 2u);
  EXPECT_EQ(report.rows[0].method, "pca");
  EXPECT_EQ(report.rows[1].method, "dpca");
  EXPECT_LE(*report.rows[0].accuracy, 0.6);
  EXPECT_GE(*report.rows[1].accuracy, 0.95);
  EXPECT_EQ(report.dpca_pencil_solves, 1u);
  EXPECT_EQ(report.selected_alphas.size(), 4u);
}

TEST_F(CliTest, PlotCommand) {
  write("e.csv", "c1,c2,label\n0,0,0\n1,1,1\n");
  ASSERT_EQ(invoke({"plot", path("e.csv"), "--out", path("e.svg"), "--title", "dPCA"}).code, 0);
  EXPECT_EQ(count_of(slurp(path("e.svg")), "<circle"), 2);
  write("one.csv", "c1\n0\n1\n");
  const Outcome r = invoke({"plot", path("one.csv"), "--out", path("one.svg")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_lines(r.err), 1);
}

TEST_F(CliTest, PipelineIsDeterministic) {
  std::string outputs[2];
  for (int run = 0; run < 2; ++run) {
    const std::string p = "r" + std::to_string(run);
    ASSERT_EQ(invoke({"synth", "--dim", "12", "--m", "300", "--n", "300", "--seed", "9", "--out", path(p)}).code, 0);
    ASSERT_EQ(invoke({"fit", "cpca", path(p + "_target.csv"), path(p + "_background.csv"), "--auto-alpha",
                      "--seed", "2", "--out", path(p + ".json")})
                  .code,
              0);
    ASSERT_EQ(invoke({"transform", path(p + ".alpha1.json"), path(p + "_target.csv"), "--out", path(p + "_e.csv")})
                  .code,
              0);
    ASSERT_EQ(invoke({"plot", path(p + "_e.csv"), "--out", path(p + ".svg")}).code, 0);
    std::string model = slurp(path(p + ".alpha1.json"));
    // Provenance names the input files, which differ between the two runs.
    model = std::regex_replace(model, std::regex(p + "_"), "X_");
    outputs[run] = model + slurp(path(p + "_e.csv")) + slurp(path(p + ".svg"));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
}

TEST(ExitCodeTest, StatusMapping) {
  EXPECT_EQ(exit_code_for(DPCA_OK), 0);
  EXPECT_EQ(exit_code_for(DPCA_ERR_SELECTION), 2);
  EXPECT_EQ(exit_code_for(DPCA_ERR_WRONG_METHOD), 2);
  for (dpca_status s : {DPCA_ERR_NULL_ARGUMENT, DPCA_ERR_INVALID_INPUT, DPCA_ERR_SYMMETRY, DPCA_ERR_DIMENSION,
                        DPCA_ERR_IO, DPCA_ERR_PARSE}) {
    EXPECT_EQ(exit_code_for(s), 3);
  }
  EXPECT_EQ(exit_code_for(DPCA_ERR_RANK_ZERO), 4);
  EXPECT_EQ(exit_code_for(DPCA_ERR_NON_CONVERGENCE), 4);
  EXPECT_EQ(exit_code_for(DPCA_ERR_INTERNAL), 1);
}

}  // namespace
}  // namespace dpca::cli
