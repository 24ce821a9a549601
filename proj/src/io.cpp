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

#include "hamkernel/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hamkernel::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_for_read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

json vectors_to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return out;
}

std::vector<Vector> vectors_from_json(const json& j) {
  std::vector<Vector> out;
  for (const auto& row : j) {
    const auto values = row.get<std::vector<double>>();
    out.emplace_back(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return out;
}

json meta_to_json(const DatasetMeta& meta) {
  return json{{"system", meta.system},
              {"params", meta.params},
              {"ics", vectors_to_json(meta.initial_conditions)},
              {"h", meta.h},
              {"t_end", meta.t_end},
              {"noise_std", meta.noise_std},
              {"seed", meta.seed}};
}

DatasetMeta meta_from_json(const json& j) {
  DatasetMeta meta;
  meta.system = j.value("system", std::string{});
  meta.params = j.value("params", std::map<std::string, double>{});
  if (j.contains("ics")) meta.initial_conditions = vectors_from_json(j.at("ics"));
  meta.h = j.value("h", 0.0);
  meta.t_end = j.value("t_end", 0.0);
  meta.noise_std = j.value("noise_std", 0.0);
  meta.seed = j.value("seed", std::uint64_t{0});
  return meta;
}

// Row-major flattening of N vectors of length dim.
std::vector<double> flatten(const std::vector<Vector>& vs) {
  std::vector<double> out;
  for (const auto& v : vs) out.insert(out.end(), v.data(), v.data() + v.size());
  return out;
}

std::vector<Vector> unflatten(const std::vector<double>& flat, std::size_t count, int dim, const char* what) {
  if (flat.size() != count * static_cast<std::size_t>(dim)) {
    throw FormatError(std::string("model file: '") + what + "' has " + std::to_string(flat.size()) +
                      " values, expected N * dim = " + std::to_string(count * static_cast<std::size_t>(dim)));
  }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(Eigen::Map<const Vector>(flat.data() + i * static_cast<std::size_t>(dim), dim));
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw FormatError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

Vector parse_point(std::string_view text) {
  const auto parts = split(text, ',');
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(parts[i]);
  return v;
}

std::vector<Vector> parse_point_list(std::string_view text) {
  std::vector<Vector> out;
  for (auto part : split(text, ';')) {
    if (!part.empty()) out.push_back(parse_point(part));
  }
  if (out.empty()) throw FormatError("empty point list");
  return out;
}

fs::path meta_path_for(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".meta.json");
  return p;
}

void write_csv(const fs::path& path, std::span<const std::string> header, const std::vector<std::vector<double>>& rows) {
  auto out = open_for_write(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_dataset(const Dataset& dataset, const fs::path& csv_path) {
  dataset.validate();
  const int n = dataset.dim();
  std::vector<std::string> header;
  for (int i = 1; i <= n; ++i) header.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) header.push_back("y" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    std::vector<double> row(dataset.points[s].data(), dataset.points[s].data() + n);
    row.insert(row.end(), dataset.derivatives[s].data(), dataset.derivatives[s].data() + n);
    rows.push_back(std::move(row));
  }
  write_csv(csv_path, header, rows);
  write_text(meta_path_for(csv_path), meta_to_json(dataset.meta).dump(2) + "\n");
}

Dataset read_dataset(const fs::path& csv_path) {
  auto in = open_for_read(csv_path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("dataset '" + csv_path.string() + "' is empty");
  const auto header = split(line, ',');
  if (header.size() < 2 || header.size() % 2 != 0) {
    throw FormatError("dataset header must be x1..xn,y1..yn, got '" + line + "'");
  }
  const std::size_t n = header.size() / 2;
  for (std::size_t i = 0; i < n; ++i) {
    if (header[i] != "x" + std::to_string(i + 1) || header[n + i] != "y" + std::to_string(i + 1)) {
      throw FormatError("dataset header must be x1..xn,y1..yn, got '" + line + "'");
    }
  }

  Dataset data;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2 * n) {
      throw FormatError(csv_path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(2 * n) + " columns");
    }
    Vector x(static_cast<Eigen::Index>(n));
    Vector y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i)) = parse_double(cells[i]);
      y(static_cast<Eigen::Index>(i)) = parse_double(cells[n + i]);
    }
    data.points.push_back(std::move(x));
    data.derivatives.push_back(std::move(y));
  }
  const fs::path meta = meta_path_for(csv_path);
  if (fs::exists(meta)) {
    auto mi = open_for_read(meta);
    data.meta = meta_from_json(json::parse(mi));
  }
  data.validate();
  return data;
}

void save_model(const TrainedModel& model, const fs::path& path) {
  const json doc{{"format_version", kModelFormatVersion},
                 {"kernel", kernels::to_string(model.spec().family)},
                 {"sigma", model.spec().sigma},
                 {"lambda", model.lambda()},
                 {"dim", model.spec().dim},
                 {"N", model.size()},
                 {"centers", flatten(model.centers())},
                 {"coeffs", flatten(model.coeffs())},
                 {"dataset_meta", meta_to_json(model.meta())}};
  write_text(path, doc.dump(2) + "\n");
}

TrainedModel load_model(const fs::path& path) {
  auto in = open_for_read(path);
  json doc;
  try {
    doc = json::parse(in);
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw FormatError("unsupported model format_version " + std::to_string(version));
    }
    kernels::KernelSpec spec{kernels::family_from_string(doc.at("kernel").get<std::string>()),
                             doc.at("sigma").get<double>(), doc.at("dim").get<int>()};
    const auto count = doc.at("N").get<std::size_t>();
    auto centers = unflatten(doc.at("centers").get<std::vector<double>>(), count, spec.dim, "centers");
    auto coeffs = unflatten(doc.at("coeffs").get<std::vector<double>>(), count, spec.dim, "coeffs");
    DatasetMeta meta = doc.contains("dataset_meta") ? meta_from_json(doc.at("dataset_meta")) : DatasetMeta{};
    return TrainedModel(spec, doc.at("lambda").get<double>(), std::move(centers), std::move(coeffs), std::move(meta));
  } catch (const json::exception& e) {
    throw FormatError("model file '" + path.string() + "': " + e.what());
  }
}

void write_score_table(std::span<const ScoreRow> table, const fs::path& path) {
  const std::vector<std::string> header{"sigma", "lambda", "cv_mse"};
  std::vector<std::vector<double>> rows;
  for (const auto& r : table) rows.push_back({r.sigma, r.lambda, r.cv_mse});
  write_csv(path, header, rows);
}

void write_rollout(const RolloutResult& rollout, const fs::path& path) {
  std::vector<std::string> header{"t", "err"};
  const auto n = rollout.reference.states.empty() ? 0 : rollout.reference.states.front().size();
  for (Eigen::Index i = 1; i <= n; ++i) header.push_back("true_x" + std::to_string(i));
  for (Eigen::Index i = 1; i <= n; ++i) header.push_back("learned_x" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < rollout.times.size(); ++k) {
    std::vector<double> row{rollout.times[k], rollout.errors[k]};
    const Vector& xt = rollout.reference.states[k];
    const Vector& xl = rollout.learned.states[k];
    row.insert(row.end(), xt.data(), xt.data() + xt.size());
    row.insert(row.end(), xl.data(), xl.data() + xl.size());
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_field_grid(std::span<const FieldSample> samples, const fs::path& path) {
  const std::vector<std::string> header{"x1", "x2", "f1", "f2"};
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) rows.push_back({s.x1, s.x2, s.f1, s.f2});
  write_csv(path, header, rows);
}

}  // namespace hamkernel::io
