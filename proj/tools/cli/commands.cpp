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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "capi.hpp"
#include "csv.hpp"
#include "svg.hpp"

namespace dpca::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

[[noreturn]] void usage_error(const std::string& what) { throw CliError(kExitUsage, what); }

// ISO-8601 UTC; SOURCE_DATE_EPOCH pins it for reproducible builds of outputs.
std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::atoll(epoch));
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

DataHandle make_data(const CsvTable& table) {
  dpca_data* raw = nullptr;
  check(dpca_data_create(table.rows, table.cols, table.values.data(),
                         table.labels ? table.labels->data() : nullptr, &raw));
  return DataHandle(raw);
}

// Population standard deviation per feature; constant features keep scale 1.
std::vector<double> feature_scales(const CsvTable& table) {
  std::vector<double> scale(table.cols, 0.0);
  for (std::size_t j = 0; j < table.cols; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < table.rows; ++i) mean += table.values[i * table.cols + j];
    mean /= static_cast<double>(table.rows);
    double var = 0.0;
    for (std::size_t i = 0; i < table.rows; ++i) {
      const double dev = table.values[i * table.cols + j] - mean;
      var += dev * dev;
    }
    const double sd = std::sqrt(var / static_cast<double>(table.rows));
    scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return scale;
}

void apply_scale(CsvTable& table, const std::vector<double>& scale) {
  for (std::size_t i = 0; i < table.rows; ++i) {
    for (std::size_t j = 0; j < table.cols; ++j) table.values[i * table.cols + j] /= scale[j];
  }
}

struct Inputs {
  CsvTable target_table;
  DataHandle target;
  DataHandle background;  // null when no background files were given
  std::optional<std::vector<double>> scale;
};

Inputs load_inputs(const std::string& target, const std::vector<std::string>& backgrounds, bool zscore) {
  Inputs in;
  in.target_table = read_csv(target);
  std::vector<CsvTable> tables;
  for (const std::string& path : backgrounds) {
    tables.push_back(read_csv(path));
    if (tables.back().cols != in.target_table.cols) {
      std::ostringstream msg;
      msg << path << " has " << tables.back().cols << " features but " << target << " has "
          << in.target_table.cols;
      throw CliError(kExitData, msg.str());
    }
  }
  if (zscore) {
    in.scale = feature_scales(in.target_table);
    apply_scale(in.target_table, *in.scale);
    for (CsvTable& t : tables) apply_scale(t, *in.scale);
  }
  in.target = make_data(in.target_table);
  if (!tables.empty()) {
    std::vector<DataHandle> parts;
    std::vector<const dpca_data*> raw;
    for (const CsvTable& t : tables) {
      parts.push_back(make_data(t));
      raw.push_back(parts.back().get());
    }
    dpca_data* merged = nullptr;
    check(dpca_data_concat(raw.data(), raw.size(), &merged));
    in.background = DataHandle(merged);
  }
  return in;
}

CovarianceHandle covariance(const dpca_data* data, double ridge) {
  dpca_covariance* cov = nullptr;
  check(dpca_covariance_from_data(data, ridge, &cov));
  return CovarianceHandle(cov);
}

std::vector<double> grid_values(const GridSpec& spec) {
  std::vector<double> grid(static_cast<std::size_t>(spec.count));
  check(dpca_log_grid(spec.lo, spec.hi, grid.size(), grid.data()));
  return grid;
}

void annotate(dpca_model* model, const Inputs& in, const std::string& target,
              const std::vector<std::string>& backgrounds, std::uint64_t seed, bool zscore) {
  if (in.scale) check(dpca_model_set_feature_scale(model, in.scale->data(), in.scale->size()));
  check(dpca_model_set_provenance(model, "tool", (std::string("dpca ") + dpca_version()).c_str()));
  check(dpca_model_set_provenance(model, "target", target.c_str()));
  check(dpca_model_set_provenance(model, "background", join(backgrounds, ";").c_str()));
  check(dpca_model_set_provenance(model, "seed", std::to_string(seed).c_str()));
  check(dpca_model_set_provenance(model, "zscore", zscore ? "true" : "false"));
  check(dpca_model_set_provenance(model, "timestamp", timestamp().c_str()));
}

std::string numbered_path(const std::string& base, const std::string& tag) {
  const fs::path p(base);
  fs::path out = p.parent_path() / (p.stem().string() + "." + tag + p.extension().string());
  return out.string();
}

void print_eigenvalues(std::ostream& out, const dpca_model* model) {
  out << "eigenvalues:";
  for (double v : eigenvalues_of(model)) out << ' ' << std::setprecision(10) << v;
  out << '\n';
}

std::string embedding_csv(const dpca_data* embedding) {
  const std::size_t rows = dpca_data_rows(embedding);
  const std::size_t cols = dpca_data_cols(embedding);
  std::vector<std::string> header;
  for (std::size_t j = 0; j < cols; ++j) header.push_back("component_" + std::to_string(j + 1));
  std::optional<std::vector<std::int64_t>> labels;
  if (dpca_data_has_labels(embedding)) {
    labels.emplace(rows);
    check(dpca_data_labels(embedding, labels->data(), rows));
  }
  return format_csv(header, values_of(embedding), rows, cols, labels);
}

DataHandle project(const dpca_model* model, const dpca_data* data) {
  dpca_data* coords = nullptr;
  check(dpca_transform(model, data, &coords));
  return DataHandle(coords);
}

void check_components(int d, std::size_t dim) {
  if (d < 1 || static_cast<std::size_t>(d) > dim) {
    std::ostringstream msg;
    msg << "-d must be between 1 and the feature count " << dim << ", got " << d;
    usage_error(msg.str());
  }
}

std::string format_optional(const std::optional<double>& v, const char* pattern) {
  if (!v) return "-";
  char buf[48];
  std::snprintf(buf, sizeof buf, pattern, *v);
  return buf;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  const std::size_t a = text.find(':');
  const std::size_t b = a == std::string::npos ? a : text.find(':', a + 1);
  auto bad = [&]() -> GridSpec { usage_error("grid must look like lo:hi:Nlog, got '" + text + "'"); };
  if (b == std::string::npos) return bad();
  GridSpec spec;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, a);
    const std::string hi = text.substr(a + 1, b - a - 1);
    std::string count = text.substr(b + 1);
    spec.lo = std::stod(lo, &used);
    if (used != lo.size()) return bad();
    spec.hi = std::stod(hi, &used);
    if (used != hi.size()) return bad();
    if (count.size() <= 3 || count.substr(count.size() - 3) != "log") return bad();
    count.resize(count.size() - 3);
    spec.count = std::stoi(count, &used);
    if (used != count.size()) return bad();
  } catch (const std::logic_error&) {
    return bad();
  }
  if (!(spec.lo > 0.0) || !(spec.hi >= spec.lo) || spec.count < 1) {
    usage_error("grid needs 0 < lo <= hi and at least one value");
  }
  return spec;
}

std::vector<std::string> run_fit(const FitOptions& o, std::ostream& out) {
  const bool is_pca = o.method == "pca";
  if (!is_pca && o.method != "cpca" && o.method != "dpca") {
    usage_error("unknown method '" + o.method + "' (expected pca, cpca or dpca)");
  }
  if (is_pca && !o.backgrounds.empty()) usage_error("pca does not take background data");
  if (!is_pca && o.backgrounds.empty()) usage_error(o.method + " requires background data");
  if (o.method == "cpca") {
    if (o.alpha && o.auto_alpha) usage_error("give either --alpha or --auto-alpha, not both");
    if (!o.alpha && !o.auto_alpha) usage_error("cpca requires --alpha or --auto-alpha");
  } else if (o.alpha || o.auto_alpha) {
    usage_error("--alpha/--auto-alpha only apply to cpca");
  }
  const GridSpec grid_spec = parse_grid(o.grid);
  if (o.auto_alpha && (o.select < 1 || o.select > grid_spec.count)) {
    usage_error("--select must be between 1 and the grid size");
  }

  Inputs in = load_inputs(o.target, o.backgrounds, o.zscore);
  check_components(o.components, in.target_table.cols);
  const auto d = static_cast<std::size_t>(o.components);

  const auto start = Clock::now();
  CovarianceHandle cxx = covariance(in.target.get(), 0.0);
  CovarianceHandle cyy = in.background ? covariance(in.background.get(), o.ridge) : nullptr;

  std::vector<std::pair<ModelHandle, std::string>> models;
  if (is_pca) {
    dpca_model* m = nullptr;
    check(dpca_fit_pca(cxx.get(), d, &m));
    models.emplace_back(ModelHandle(m), o.out);
  } else if (o.method == "dpca") {
    dpca_model* m = nullptr;
    check(dpca_fit_dpca(cxx.get(), cyy.get(), d, o.floor, o.orthonormalize ? 1 : 0, &m));
    models.emplace_back(ModelHandle(m), o.out);
  } else if (o.alpha) {
    dpca_model* m = nullptr;
    check(dpca_fit_cpca(cxx.get(), cyy.get(), *o.alpha, d, &m));
    models.emplace_back(ModelHandle(m), o.out);
  } else {
    const std::vector<double> grid = grid_values(grid_spec);
    dpca_alpha_selection* raw = nullptr;
    check(dpca_select_alphas(cxx.get(), cyy.get(), grid.data(), grid.size(), d,
                             static_cast<std::size_t>(o.select), o.seed, &raw));
    SelectionHandle selection(raw);
    std::vector<double> alphas(dpca_alpha_selection_count(selection.get()));
    check(dpca_alpha_selection_selected(selection.get(), alphas.data(), alphas.size()));
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      dpca_model* m = nullptr;
      check(dpca_fit_cpca(cxx.get(), cyy.get(), alphas[i], d, &m));
      models.emplace_back(ModelHandle(m), numbered_path(o.out, "alpha" + std::to_string(i + 1)));
    }
  }
  const double elapsed = seconds_since(start);

  std::vector<std::string> written;
  for (auto& [model, path] : models) {
    annotate(model.get(), in, o.target, o.backgrounds, o.seed, o.zscore);
    check(dpca_model_save(model.get(), path.c_str()));
    out << o.method;
    double alpha = 0.0;
    if (dpca_model_alpha(model.get(), &alpha) == DPCA_OK) out << " (alpha " << std::setprecision(10) << alpha << ")";
    out << ", d=" << d << "\n";
    print_eigenvalues(out, model.get());
    out << "wrote " << path << "\n";
    written.push_back(path);
  }
  out << "wall time: " << std::setprecision(6) << elapsed << " s\n";
  return written;
}

void run_transform(const std::string& model_path, const std::string& data_path, const std::string& out_path,
                   std::ostream& out) {
  dpca_model* raw = nullptr;
  check(dpca_model_load(model_path.c_str(), &raw));
  ModelHandle model(raw);
  const CsvTable table = read_csv(data_path);
  if (table.cols != dpca_model_dim(model.get())) {
    std::ostringstream msg;
    msg << data_path << " has " << table.cols << " features but the model expects " << dpca_model_dim(model.get());
    throw CliError(kExitData, msg.str());
  }
  DataHandle data = make_data(table);
  DataHandle coords = project(model.get(), data.get());
  write_text(out_path, embedding_csv(coords.get()));
  out << "wrote " << dpca_data_rows(coords.get()) << "x" << dpca_data_cols(coords.get()) << " embedding to "
      << out_path << "\n";
}

CompareReport run_compare(const CompareOptions& o, std::ostream& out) {
  if (o.backgrounds.empty()) usage_error("compare requires background data");
  const GridSpec grid_spec = parse_grid(o.grid);
  if (o.select < 1 || o.select > grid_spec.count) usage_error("--select must be between 1 and the grid size");

  Inputs in = load_inputs(o.target, o.backgrounds, o.zscore);
  check_components(o.components, in.target_table.cols);
  const auto d = static_cast<std::size_t>(o.components);
  const bool labeled = in.target_table.labels.has_value();

  CompareReport report;
  auto start = Clock::now();
  CovarianceHandle cxx = covariance(in.target.get(), 0.0);
  CovarianceHandle cyy = covariance(in.background.get(), o.ridge);
  report.preprocess_seconds = seconds_since(start);

  auto record = [&](const std::string& method, const dpca_model* model, std::optional<double> alpha,
                    std::optional<double> seconds, const std::string& suffix) {
    DataHandle coords = project(model, in.target.get());
    CompareRow row{method, alpha, std::nullopt, std::nullopt, seconds, o.out + "_" + suffix + ".csv"};
    if (labeled) {
      double acc = 0.0;
      check(dpca_kmeans_accuracy(coords.get(), o.seed, &acc));
      row.accuracy = acc;
      double sil = 0.0;
      if (dpca_silhouette(coords.get(), &sil) == DPCA_OK) row.silhouette = sil;
    }
    write_text(row.embedding_path, embedding_csv(coords.get()));
    if (o.plots && d >= 2) {
      const CsvTable table = parse_csv(embedding_csv(coords.get()));
      write_text(o.out + "_" + suffix + ".svg", render_scatter_svg(table, method));
    }
    report.rows.push_back(std::move(row));
  };

  start = Clock::now();
  dpca_model* raw = nullptr;
  check(dpca_fit_pca(cxx.get(), d, &raw));
  ModelHandle pca(raw);
  report.pca_seconds = seconds_since(start);

  const std::uint64_t solves_before = dpca_pencil_solve_count();
  start = Clock::now();
  check(dpca_fit_dpca(cxx.get(), cyy.get(), d, o.floor, 0, &raw));
  ModelHandle dpca(raw);
  report.dpca_seconds = seconds_since(start);
  report.dpca_pencil_solves = dpca_pencil_solve_count() - solves_before;

  start = Clock::now();
  const std::vector<double> grid = grid_values(grid_spec);
  dpca_alpha_selection* sel = nullptr;
  check(dpca_select_alphas(cxx.get(), cyy.get(), grid.data(), grid.size(), d, static_cast<std::size_t>(o.select),
                           o.seed, &sel));
  SelectionHandle selection(sel);
  report.selected_alphas.resize(dpca_alpha_selection_count(selection.get()));
  check(dpca_alpha_selection_selected(selection.get(), report.selected_alphas.data(), report.selected_alphas.size()));
  std::vector<ModelHandle> cpca;
  for (double alpha : report.selected_alphas) {
    check(dpca_fit_cpca(cxx.get(), cyy.get(), alpha, d, &raw));
    cpca.emplace_back(raw);
  }
  report.cpca_auto_seconds = seconds_since(start);
  report.runtime_ratio = report.dpca_seconds > 0.0 ? report.cpca_auto_seconds / report.dpca_seconds : 0.0;

  record("pca", pca.get(), std::nullopt, report.pca_seconds, "pca");
  record("dpca", dpca.get(), std::nullopt, report.dpca_seconds, "dpca");
  for (std::size_t i = 0; i < cpca.size(); ++i) {
    record("cpca", cpca[i].get(), report.selected_alphas[i], std::nullopt, "cpca_alpha" + std::to_string(i + 1));
  }
  report.rows.push_back(CompareRow{"cpca_auto", std::nullopt, std::nullopt, std::nullopt, report.cpca_auto_seconds, ""});

  std::string metrics = "method,alpha,accuracy,silhouette,seconds\n";
  out << std::left << std::setw(11) << "method" << std::setw(14) << "alpha" << std::setw(11) << "accuracy"
      << std::setw(12) << "silhouette" << "seconds\n";
  for (const CompareRow& row : report.rows) {
    const std::string alpha = format_optional(row.alpha, "%.6g");
    const std::string acc = format_optional(row.accuracy, "%.4f");
    const std::string sil = format_optional(row.silhouette, "%.4f");
    const std::string sec = format_optional(row.seconds, "%.6f");
    out << std::setw(11) << row.method << std::setw(14) << alpha << std::setw(11) << acc << std::setw(12) << sil
        << sec << "\n";
    metrics += row.method + "," + alpha + "," + acc + "," + sil + "," + sec + "\n";
  }
  out << std::right << "shared preprocessing: " << std::setprecision(6) << report.preprocess_seconds << " s\n";
  out << "runtime ratio cpca_auto/dpca: " << std::setprecision(4) << report.runtime_ratio << "\n";
  metrics += "runtime_ratio_cpca_auto_over_dpca," + format_optional(report.runtime_ratio, "%.6g") + ",,,\n";
  write_text(o.out + "_metrics.csv", metrics);
  return report;
}

void run_synth(const SynthOptions& o, std::ostream& out) {
  if (o.dim < 1 || o.shared < 0 || o.specific < 0) usage_error("dimensions must be positive");
  if (o.shared + o.specific > o.dim) {
    std::ostringstream msg;
    msg << "--shared + --specific (" << o.shared + o.specific << ") exceeds --dim (" << o.dim << ")";
    usage_error(msg.str());
  }
  if (o.m < 1 || o.n < 1 || o.clusters < 1 || o.clusters > o.m) usage_error("need m >= clusters >= 1 and n >= 1");
  if (o.specific < 1 && o.clusters > 1) usage_error("clusters need at least one specific dimension");

  auto broadcast = [](const std::vector<double>& values, int count, const char* flag) {
    if (values.size() == static_cast<std::size_t>(count)) return values;
    if (values.size() == 1) return std::vector<double>(static_cast<std::size_t>(count), values.front());
    std::ostringstream msg;
    msg << flag << " takes one value or " << count << " comma-separated values";
    usage_error(msg.str());
  };
  const auto background_std = broadcast(o.background_std, o.shared, "--background-std");
  const auto shared_std = broadcast(o.shared_std, o.shared, "--shared-std");
  const auto specific_std = broadcast(o.specific_std, o.specific, "--specific-std");

  const dpca_factor_options options{static_cast<std::size_t>(o.dim),
                                    static_cast<std::size_t>(o.shared),
                                    static_cast<std::size_t>(o.specific),
                                    background_std.data(),
                                    shared_std.data(),
                                    specific_std.data(),
                                    o.noise,
                                    o.mean_scale,
                                    o.seed};
  dpca_factor_spec* raw = nullptr;
  check(dpca_factor_spec_create(&options, &raw));
  SpecHandle spec(raw);

  // Clusters sit at evenly spaced offsets in [-offset, offset] along the
  // first target-specific direction.
  std::vector<double> offsets(static_cast<std::size_t>(o.clusters * o.specific), 0.0);
  for (int c = 0; c < o.clusters && o.specific > 0; ++c) {
    offsets[static_cast<std::size_t>(c * o.specific)] =
        o.clusters == 1 ? 0.0 : o.offset * (2.0 * c / (o.clusters - 1) - 1.0);
  }

  dpca_data* data = nullptr;
  check(dpca_gen_target(spec.get(), static_cast<std::size_t>(o.m), offsets.data(),
                        static_cast<std::size_t>(o.clusters), &data));
  DataHandle target(data);
  check(dpca_gen_background(spec.get(), static_cast<std::size_t>(o.n), &data));
  DataHandle background(data);

  std::vector<std::string> header;
  for (int j = 0; j < o.dim; ++j) header.push_back("x" + std::to_string(j + 1));
  std::vector<std::int64_t> labels(static_cast<std::size_t>(o.m));
  check(dpca_data_labels(target.get(), labels.data(), labels.size()));

  const std::string target_path = o.out + "_target.csv";
  const std::string background_path = o.out + "_background.csv";
  const std::string truth_path = o.out + "_truth.json";
  write_text(target_path, format_csv(header, values_of(target.get()), static_cast<std::size_t>(o.m),
                                     static_cast<std::size_t>(o.dim), labels));
  write_text(background_path, format_csv(header, values_of(background.get()), static_cast<std::size_t>(o.n),
                                         static_cast<std::size_t>(o.dim), std::nullopt));
  check(dpca_factor_spec_save(spec.get(), truth_path.c_str()));
  out << "wrote " << target_path << ", " << background_path << ", " << truth_path << "\n";
}

void run_plot(const std::string& embedding_path, const std::string& out_path, const std::string& title,
              std::ostream& out) {
  const CsvTable table = read_csv(embedding_path);
  write_text(out_path, render_scatter_svg(table, title));
  out << "wrote " << out_path << "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discriminative, contrastive and ordinary PCA on target/background data"};
  app.name("dpca");
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a pca, cpca or dpca model and save it");
  fit_cmd->add_option("method", fit.method, "pca, cpca or dpca")->required();
  fit_cmd->add_option("target", fit.target, "Target CSV")->required();
  fit_cmd->add_option("background", fit.backgrounds, "Background CSV(s); several are concatenated");
  fit_cmd->add_option("-d,--components", fit.components, "Number of components")->capture_default_str();
  fit_cmd->add_option("--alpha", fit.alpha, "Contrast strength for cpca");
  fit_cmd->add_flag("--auto-alpha", fit.auto_alpha, "Select cpca alphas by spectral clustering");
  fit_cmd->add_option("--grid", fit.grid, "Alpha grid lo:hi:Nlog")->capture_default_str();
  fit_cmd->add_option("--select", fit.select, "Number of alphas to select")->capture_default_str();
  fit_cmd->add_option("--ridge", fit.ridge, "Ridge added to the background covariance")->capture_default_str();
  fit_cmd->add_option("--floor", fit.floor, "Relative eigenvalue floor for whitening")->capture_default_str();
  fit_cmd->add_flag("--zscore", fit.zscore, "Scale features by the target standard deviation");
  fit_cmd->add_flag("--orthonormalize", fit.orthonormalize, "Orthonormalize dpca components");
  fit_cmd->add_option("--seed", fit.seed, "Seed for alpha selection")->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Model file (auto-alpha appends .alphaN)")->capture_default_str();

  std::string model_path;
  std::string data_path;
  std::string transform_out = "embedding.csv";
  auto* transform_cmd = app.add_subcommand("transform", "Project data with a saved model");
  transform_cmd->add_option("model", model_path, "Model file")->required();
  transform_cmd->add_option("data", data_path, "Data CSV")->required();
  transform_cmd->add_option("--out", transform_out, "Embedding CSV")->capture_default_str();

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Fit pca, dpca and auto-alpha cpca side by side");
  compare_cmd->add_option("target", compare.target, "Target CSV")->required();
  compare_cmd->add_option("background", compare.backgrounds, "Background CSV(s)")->required();
  compare_cmd->add_option("-d,--components", compare.components, "Number of components")->capture_default_str();
  compare_cmd->add_option("--grid", compare.grid, "Alpha grid lo:hi:Nlog")->capture_default_str();
  compare_cmd->add_option("--select", compare.select, "Number of alphas to select")->capture_default_str();
  compare_cmd->add_option("--ridge", compare.ridge, "Ridge added to the background covariance")->capture_default_str();
  compare_cmd->add_option("--floor", compare.floor, "Relative eigenvalue floor")->capture_default_str();
  compare_cmd->add_flag("--zscore", compare.zscore, "Scale features by the target standard deviation");
  compare_cmd->add_option("--seed", compare.seed, "Seed for clustering")->capture_default_str();
  compare_cmd->add_option("--out", compare.out, "Output prefix")->capture_default_str();
  compare_cmd->add_flag("--plots", compare.plots, "Also write one SVG per method");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate factor-model target/background data");
  synth_cmd->add_option("--dim", synth.dim, "Feature count D")->capture_default_str();
  synth_cmd->add_option("--shared", synth.shared, "Shared subspace rank k")->capture_default_str();
  synth_cmd->add_option("--specific", synth.specific, "Target-specific rank d_s")->capture_default_str();
  synth_cmd->add_option("--m", synth.m, "Target samples")->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "Background samples")->capture_default_str();
  synth_cmd->add_option("--clusters", synth.clusters, "Target subgroups")->capture_default_str();
  synth_cmd->add_option("--offset", synth.offset, "Subgroup offset along the specific direction")
      ->capture_default_str();
  synth_cmd->add_option("--shared-std", synth.shared_std, "Target shared coefficient std(s)")->delimiter(',');
  synth_cmd->add_option("--background-std", synth.background_std, "Background coefficient std(s)")->delimiter(',');
  synth_cmd->add_option("--specific-std", synth.specific_std, "Specific coefficient std(s)")->delimiter(',');
  synth_cmd->add_option("--noise", synth.noise, "Isotropic noise std")->capture_default_str();
  synth_cmd->add_option("--mean-scale", synth.mean_scale, "Scale of the random means")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output prefix")->capture_default_str();

  std::string plot_in;
  std::string plot_out = "embedding.svg";
  std::string plot_title;
  auto* plot_cmd = app.add_subcommand("plot", "Render a 2-D embedding as SVG");
  plot_cmd->add_option("embedding", plot_in, "Embedding CSV")->required();
  plot_cmd->add_option("--out", plot_out, "SVG file")->capture_default_str();
  plot_cmd->add_option("--title", plot_title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dpca: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*fit_cmd) {
      run_fit(fit, out);
    } else if (*transform_cmd) {
      run_transform(model_path, data_path, transform_out, out);
    } else if (*compare_cmd) {
      run_compare(compare, out);
    } else if (*synth_cmd) {
      run_synth(synth, out);
    } else if (*plot_cmd) {
      run_plot(plot_in, plot_out, plot_title, out);
    }
  } catch (const CliError& e) {
    err << "dpca: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "dpca: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace dpca::cli
