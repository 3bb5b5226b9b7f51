/*
 * Copyright 2026 The vfbm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vfbm/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vfbm/error.hpp"

namespace vfbm::io {

namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

std::vector<double> number_list(const Json& node, std::string_view name) {
  if (!node.is_array()) parse_error(std::string(name) + " must be an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) parse_error(std::string(name) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    parse_error(std::string("pair entry needs numeric \"") + key + "\"");
  }
  return it->get<double>();
}

std::size_t component_index(const Json& obj, const char* key, std::size_t p) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    parse_error(std::string("pair entry needs integer \"") + key + "\"");
  }
  const auto v = it->get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > p) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string("pair index \"") + key + "\" = " + std::to_string(v) +
                    " outside 1.." + std::to_string(p));
  }
  return static_cast<std::size_t>(v - 1);
}

HurstVector hurst_of(const Json& doc) {
  if (!doc.is_object() || !doc.contains("hurst")) {
    parse_error("model needs a \"hurst\" array");
  }
  const auto h = number_list(doc.at("hurst"), "hurst");
  return validate_hurst(h);
}

}  // namespace

Eigen::MatrixXd matrix_from_json(const Json& rows, std::string_view name) {
  if (!rows.is_array() || rows.empty()) {
    parse_error(std::string(name) + " must be a non-empty array of rows");
  }
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(
      rows.front().is_array() ? rows.front().size() : 0);
  Eigen::MatrixXd out(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto row = number_list(rows[static_cast<std::size_t>(r)], name);
    if (static_cast<Eigen::Index>(row.size()) != n_cols) {
      parse_error(std::string(name) + " has ragged rows");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      out(r, c) = row[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

Json matrix_to_json(const Eigen::MatrixXd& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

MixingMatrices parse_mixing(const Json& doc) {
  HurstVector h = hurst_of(doc);
  if (!doc.contains("a_plus")) parse_error("mixing model needs \"a_plus\"");
  Eigen::MatrixXd ap = matrix_from_json(doc.at("a_plus"), "a_plus");
  Eigen::MatrixXd am =
      doc.contains("a_minus")
          ? matrix_from_json(doc.at("a_minus"), "a_minus")
          : Eigen::MatrixXd::Zero(ap.rows(), ap.cols());
  return MixingMatrices(std::move(ap), std::move(am), std::move(h));
}

LoadedModel parse_model(const Json& doc) {
  if (doc.is_object() && doc.contains("a_plus")) {
    MixingMatrices m = parse_mixing(doc);
    return {coeffs_from_mixing(m), std::move(m)};
  }
  HurstVector h = hurst_of(doc);
  const std::size_t p = h.size();
  if (!doc.contains("coefficients") || !doc.at("coefficients").is_object()) {
    parse_error("model needs \"coefficients\" or \"a_plus\"/\"a_minus\"");
  }
  const Json& coeffs = doc.at("coefficients");
  std::vector<double> sigma = coeffs.contains("sigma")
                                  ? number_list(coeffs.at("sigma"), "sigma")
                                  : std::vector<double>(p, 1.0);

  std::vector<PairCoefficients> pairs;
  if (coeffs.contains("pairs")) {
    const Json& list = coeffs.at("pairs");
    if (!list.is_array()) parse_error("\"pairs\" must be an array");
    for (const Json& entry : list) {
      if (!entry.is_object()) parse_error("pair entries must be objects");
      PairCoefficients pc;
      pc.i = component_index(entry, "i", p);
      pc.j = component_index(entry, "j", p);
      const bool general = entry.contains("c_ij") || entry.contains("c_ji");
      const bool critical = entry.contains("d_ij") || entry.contains("f_ij");
      if (general == critical) {
        parse_error("pair entry needs exactly one of (c_ij, c_ji) or (d_ij, f_ij)");
      }
      if (general) {
        pc.coefficients = GeneralCoefficients{number(entry, "c_ij"),
                                              number(entry, "c_ji")};
      } else {
        pc.coefficients = CriticalCoefficients{number(entry, "d_ij"),
                                               number(entry, "f_ij")};
      }
      pairs.push_back(pc);
    }
  }
  return {CovarianceModel(std::move(h), std::move(sigma), std::move(pairs)),
          std::nullopt};
}

Json model_to_json(const CovarianceModel& model) {
  const std::size_t p = model.dimension();
  Json pairs = Json::array();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const PairCoefficients pc = model.pair(i, j);
      Json entry = {{"i", i + 1}, {"j", j + 1}};
      if (const auto* g = std::get_if<GeneralCoefficients>(&pc.coefficients)) {
        entry["c_ij"] = g->c_ij;
        entry["c_ji"] = g->c_ji;
      } else {
        const auto& c = std::get<CriticalCoefficients>(pc.coefficients);
        entry["d_ij"] = c.d_ij;
        entry["f_ij"] = c.f_ij;
      }
      pairs.push_back(std::move(entry));
    }
  }
  const auto h = model.hurst().values();
  const auto s = model.sigmas();
  return {{"hurst", std::vector<double>(h.begin(), h.end())},
          {"coefficients",
           {{"sigma", std::vector<double>(s.begin(), s.end())},
            {"pairs", std::move(pairs)}}}};
}

Json mixing_to_json(const MixingMatrices& m) {
  const auto h = m.hurst().values();
  return {{"hurst", std::vector<double>(h.begin(), h.end())},
          {"a_plus", matrix_to_json(m.a_plus())},
          {"a_minus", matrix_to_json(m.a_minus())}};
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                         : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
      parse_error("cannot parse number list \"" + std::string(text) + "\"");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

TimeGrid parse_grid(std::string_view text) { return TimeGrid(parse_list(text)); }

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                       std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? end : buf);
}

void write_cov_csv(std::ostream& os, const CovMatrix& c) {
  const std::size_t p = c.dimension;
  const std::size_t n = c.grid.size();
  os << "t_k,i,t_l,j,value\n";
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < p; ++j) {
          const double v = c.entries(static_cast<Eigen::Index>(c.index(k, i)),
                                     static_cast<Eigen::Index>(c.index(l, j)));
          os << format_double(c.grid[k]) << ',' << i + 1 << ','
             << format_double(c.grid[l]) << ',' << j + 1 << ','
             << format_double(v) << '\n';
        }
      }
    }
  }
}

void write_paths_csv(std::ostream& os, const PathEnsemble& e) {
  os << "rep,time,component,value\n";
  for (std::size_t r = 0; r < e.paths(); ++r) {
    for (std::size_t k = 0; k < e.grid.size(); ++k) {
      for (std::size_t i = 0; i < e.dimension; ++i) {
        os << r + 1 << ',' << format_double(e.grid[k]) << ',' << i + 1 << ','
           << format_double(e.at(r, k, i)) << '\n';
      }
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IOError, "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IOError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IOError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IOError, "cannot move output into " + path);
  }
}

}  // namespace vfbm::io
