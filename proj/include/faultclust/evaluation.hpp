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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faultclust/dataset.hpp"
#include "faultclust/distance.hpp"
#include "faultclust/kmeans.hpp"

namespace faultclust {

/// How clusters are mapped to fault-prone / fault-free.
enum class LabelingStrategy {
  /// Clusters whose centroid L1 norm exceeds the mean centroid L1 norm.
  CentroidMagnitude,
  /// Clusters whose members are at least half defective. Needs the truth,
  /// so it is a diagnostic ceiling rather than a predictor.
  MajorityTruth,
};

std::string_view to_string(LabelingStrategy s) noexcept;
LabelingStrategy parse_labeling_strategy(std::string_view name);

/// Fault-prone flag per cluster index. `truth` (one defect label per point)
/// is required for MajorityTruth, InvalidArgument otherwise, and ignored by
/// CentroidMagnitude.
std::vector<bool> label_clusters(std::span<const FeatureVector> data,
                                 const ClusteringResult& result,
                                 LabelingStrategy strategy,
                                 const std::vector<bool>* truth = nullptr);

/// Per-module prediction under a cluster labeling.
std::vector<bool> predict(const Assignment& assignment,
                          const std::vector<bool>& fault_prone);

struct ConfusionMatrix {
  std::size_t tp = 0;  // faulty, predicted faulty
  std::size_t fp = 0;  // clean, predicted faulty
  std::size_t tn = 0;  // clean, predicted clean
  std::size_t fn = 0;  // faulty, predicted clean

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(const std::vector<bool>& truth,
                          const std::vector<bool>& predicted);

struct Rates {
  double pd = 0.0;  // tp / (tp + fn)
  double pf = 0.0;  // fp / (fp + tn)
};

/// A zero denominator yields 0 for that rate.
Rates pd_pf(const ConfusionMatrix& m) noexcept;

enum class RegionLabel {
  NoInformation,
  RiskAdverse,
  CostAdverse,
  Intermediate,
  WorseThanRandom,
};

std::string_view to_string(RegionLabel r) noexcept;

struct RegionThresholds {
  double eps = 0.05;
  double tau_high = 0.7;
  double tau_low = 0.4;
  double risk_pf_floor = 0.5;
};

/**
 * Places an operating point in one ROC region. Rules, first match wins:
 *
 *   pd >= tau_high, pf >= risk_pf_floor, pd >= pf  -> RiskAdverse
 *   |pd - pf| <= eps                               -> NoInformation
 *   pd < pf                                        -> WorseThanRandom
 *   pd <= tau_low, pf <= tau_low                   -> CostAdverse
 *   otherwise                                      -> Intermediate
 *
 * Throws InvalidArgument when pd or pf lies outside [0, 1].
 */
RegionLabel classify_region(double pd, double pf,
                            const RegionThresholds& thresholds = {});

/// Experiment provenance carried by each operating point.
struct ExperimentTags {
  std::string project;
  Provenance metric_set = Provenance::Code;
  DistanceKind distance = DistanceKind::Euclidean;
  std::uint64_t seed = 0;

  friend bool operator==(const ExperimentTags&,
                         const ExperimentTags&) = default;
};

struct RocPoint {
  double pd = 0.0;
  double pf = 0.0;
  RegionLabel region = RegionLabel::NoInformation;
  ExperimentTags tags;

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

/// Everything an experiment produced, for callers that need more than the
/// operating point.
struct ExperimentOutcome {
  RocPoint point;
  ClusteringResult clustering;
  std::vector<bool> fault_prone;
  ConfusionMatrix matrix;
};

/// Clusters `ds`, labels the clusters, and scores the predictions against
/// the dataset's defect labels. `project` only feeds the tags.
ExperimentOutcome run_experiment(const LabeledDataset& ds,
                                 const ClusteringConfig& config,
                                 LabelingStrategy strategy,
                                 const RegionThresholds& thresholds = {},
                                 std::string project = {});

RocPoint evaluate_experiment(const LabeledDataset& ds,
                             const ClusteringConfig& config,
                             LabelingStrategy strategy,
                             const RegionThresholds& thresholds = {},
                             std::string project = {});

// Emitters (report.cpp).

enum class TableFormat { Csv, Json };

TableFormat parse_table_format(std::string_view name);

/// Fixed five-decimal rendering used for pd and pf.
std::string format_rate(double v);

/// Columns: project, metric_set, distance, seed, pd, pf, region.
std::string emit_results_table(std::span<const RocPoint> points,
                               TableFormat format);

/// 640x640 SVG 1.1 scatter of (pf, pd) with the chance diagonal and a
/// legend. Markers: euclidean blue diamond, canberra red square, sorensen
/// green triangle, manhattan gray circle.
std::string render_roc_svg(std::span<const RocPoint> points);
void emit_roc_svg(std::span<const RocPoint> points,
                  const std::filesystem::path& path);

}  // namespace faultclust
