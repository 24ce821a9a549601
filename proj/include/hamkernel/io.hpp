// Copyright 2026 The hamkernel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAMKERNEL_IO_HPP
#define HAMKERNEL_IO_HPP

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamkernel/evaluate.hpp"
#include "hamkernel/regression.hpp"
#include "hamkernel/simulate.hpp"
#include "hamkernel/tune.hpp"

/// On-disk formats.
///
///  dataset      CSV, header x1..xn,y1..yn, one row per sample, plus a JSON
///               sidecar (<stem>.meta.json) with the generating recipe.
///  model        JSON document, format_version 1.
///  reports      CSV with a header row.
///
/// Numbers are written in shortest round-trip decimal form, so a value read
/// back is bit-identical to the one written.
namespace hamkernel::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kModelFormatVersion = 1;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Parses "a,b;c,d;..." into a list of vectors.
std::vector<Vector> parse_point_list(std::string_view text);
/// Parses "a,b,..." into a vector.
Vector parse_point(std::string_view text);

std::filesystem::path meta_path_for(const std::filesystem::path& csv_path);

void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path);
/// Reads the CSV and, if present, its sidecar.
Dataset read_dataset(const std::filesystem::path& csv_path);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

void write_score_table(std::span<const ScoreRow> table, const std::filesystem::path& path);
void write_rollout(const RolloutResult& rollout, const std::filesystem::path& path);
void write_field_grid(std::span<const FieldSample> rows, const std::filesystem::path& path);

/// Generic CSV writer: header plus numeric rows.
void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               const std::vector<std::vector<double>>& rows);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hamkernel::io

#endif  // HAMKERNEL_IO_HPP
