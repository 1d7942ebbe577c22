/*
 * Copyright 2026 The faultclust Authors
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "faultclust/dataset.hpp"
#include "faultclust/evaluation.hpp"
#include "faultclust/kmeans.hpp"

namespace faultclust::cli {

/// One input of an experiment grid. Either `data` is set (a single table
/// tagged with `metric_set`), or both `req` and `code` are, which expands to
/// requirement, code and join cells.
struct DatasetSpec {
  std::string project;
  Provenance metric_set = Provenance::Code;
  std::optional<std::filesystem::path> data;
  std::optional<std::filesystem::path> req;
  std::optional<std::filesystem::path> code;
};

struct ExperimentPlan {
  std::vector<DatasetSpec> datasets;
  std::vector<DistanceKind> distances = {DistanceKind::Euclidean,
                                         DistanceKind::Canberra,
                                         DistanceKind::Sorensen};
  ClusteringConfig clustering;
  NormalizationMode normalization = NormalizationMode::None;
  LabelingStrategy strategy = LabelingStrategy::CentroidMagnitude;
  RegionThresholds thresholds;
  TableOptions table;
  TableFormat format = TableFormat::Csv;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> roc_svg;

  /// Throws InvalidArgument for an empty grid or a missing input file.
  void validate() const;
};

/// Reads a JSON plan. Relative paths resolve against the plan's directory.
ExperimentPlan load_plan(const std::filesystem::path& path);

/// Runs every dataset x distance cell in plan order. Progress goes to
/// `log`; nothing is written to disk.
std::vector<RocPoint> execute_plan(const ExperimentPlan& plan,
                                   std::ostream& log);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Help text of one subcommand ("" for the top level).
std::string help_text(const std::string& subcommand);

}  // namespace faultclust::cli
