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

#ifndef VFBM_IO_HPP
#define VFBM_IO_HPP

#include <json.hpp>

#include <Eigen/Dense>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "vfbm/covariance.hpp"
#include "vfbm/model.hpp"
#include "vfbm/repr.hpp"
#include "vfbm/simulate.hpp"

namespace vfbm::io {

using Json = nlohmann::json;

/// A model file after normalization. `mixing` is set when the file gave
/// A+ and A- rather than explicit coefficients.
struct LoadedModel {
  CovarianceModel model;
  std::optional<MixingMatrices> mixing;
};

/// Accepts either
///   {"hurst": [...], "coefficients": {"sigma": [...], "pairs": [
///       {"i": 1, "j": 2, "c_ij": .., "c_ji": ..} | {"i":.., "j":.., "d_ij":.., "f_ij":..}]}}
/// or
///   {"hurst": [...], "a_plus": [[...]], "a_minus": [[...]]}.
/// Component indices are 1-based.
LoadedModel parse_model(const Json& doc);

/// Requires the A+/A- form.
MixingMatrices parse_mixing(const Json& doc);

Json model_to_json(const CovarianceModel& model);
Json mixing_to_json(const MixingMatrices& m);
Json matrix_to_json(const Eigen::MatrixXd& a);
Eigen::MatrixXd matrix_from_json(const Json& rows, std::string_view name);

/// "t1,t2,..." -> TimeGrid.
TimeGrid parse_grid(std::string_view text);
std::vector<double> parse_list(std::string_view text);

/// Shortest round-trip form, at most 17 significant digits.
std::string format_double(double v);

/// t_k,i,t_l,j,value for every entry, rows in (k, i) then (l, j) order.
void write_cov_csv(std::ostream& os, const CovMatrix& c);

/// rep,time,component,value; rep and component 1-based.
void write_paths_csv(std::ostream& os, const PathEnsemble& e);

std::string read_file(const std::string& path);
Json read_json(const std::string& path);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace vfbm::io

#endif  // VFBM_IO_HPP
