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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dpca::cli {

struct GridSpec {
  double lo = 0.001;
  double hi = 1000.0;
  int count = 15;
};

// Parses "lo:hi:Nlog".
GridSpec parse_grid(const std::string& text);

struct FitOptions {
  std::string method;
  std::string target;
  std::vector<std::string> backgrounds;  // concatenated row-wise
  int components = 2;
  std::optional<double> alpha;
  bool auto_alpha = false;
  std::string grid = "0.001:1000:15log";
  int select = 4;
  double ridge = 0.0;  // added to the background covariance
  double floor = 1e-10;
  bool zscore = false;
  bool orthonormalize = false;
  std::uint64_t seed = 0;
  std::string out = "model.json";
};

// Returns the paths of the model files written (one per selected alpha when
// auto-selecting, otherwise one).
std::vector<std::string> run_fit(const FitOptions& options, std::ostream& out);

void run_transform(const std::string& model_path, const std::string& data_path, const std::string& out_path,
                   std::ostream& out);

struct CompareOptions {
  std::string target;
  std::vector<std::string> backgrounds;
  int components = 2;
  std::string grid = "0.001:1000:15log";
  int select = 4;
  double ridge = 0.0;
  double floor = 1e-10;
  bool zscore = false;
  std::uint64_t seed = 0;
  std::string out = "compare";
  bool plots = false;
};

struct CompareRow {
  std::string method;  // pca, dpca, cpca (one row per selected alpha) or cpca_auto
  std::optional<double> alpha;
  std::optional<double> accuracy;
  std::optional<double> silhouette;
  std::optional<double> seconds;
  std::string embedding_path;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  double preprocess_seconds = 0.0;  // centering + covariances, shared by all methods
  double pca_seconds = 0.0;
  double dpca_seconds = 0.0;
  double cpca_auto_seconds = 0.0;  // alpha search plus fits of the selected alphas
  double runtime_ratio = 0.0;      // cpca_auto / dpca
  std::uint64_t dpca_pencil_solves = 0;
  std::vector<double> selected_alphas;
};

CompareReport run_compare(const CompareOptions& options, std::ostream& out);

struct SynthOptions {
  int dim = 100;
  int shared = 3;
  int specific = 1;
  int m = 2000;
  int n = 3000;
  int clusters = 2;
  double offset = 1.5;
  std::vector<double> shared_std = {10.0, 8.0, 6.0};
  std::vector<double> background_std = {10.0, 8.0, 6.0};
  std::vector<double> specific_std = {0.5};
  double noise = 0.5;
  double mean_scale = 1.0;
  std::uint64_t seed = 0;
  std::string out = "synth";
};

// Writes <out>_target.csv, <out>_background.csv and <out>_truth.json.
void run_synth(const SynthOptions& options, std::ostream& out);

void run_plot(const std::string& embedding_path, const std::string& out_path, const std::string& title,
              std::ostream& out);

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dpca::cli
