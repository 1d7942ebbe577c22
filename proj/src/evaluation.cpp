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

#include "faultclust/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "faultclust/error.hpp"

namespace faultclust {

std::string_view to_string(LabelingStrategy s) noexcept {
  switch (s) {
    case LabelingStrategy::CentroidMagnitude:
      return "centroid";
    case LabelingStrategy::MajorityTruth:
      return "majority";
  }
  return "unknown";
}

LabelingStrategy parse_labeling_strategy(std::string_view name) {
  std::string v(name);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "centroid") return LabelingStrategy::CentroidMagnitude;
  if (v == "majority") return LabelingStrategy::MajorityTruth;
  throw InvalidArgument("unknown labeling strategy '" + std::string(name) +
                        "' (expected centroid or majority)");
}

std::vector<bool> label_clusters(std::span<const FeatureVector> data,
                                 const ClusteringResult& result,
                                 LabelingStrategy strategy,
                                 const std::vector<bool>* truth) {
  const std::size_t k = result.centroids.size();
  if (result.assignment.size() != data.size()) {
    throw InvalidArgument("clustering result does not match the data size");
  }
  std::vector<bool> fault_prone(k, false);

  switch (strategy) {
    case LabelingStrategy::CentroidMagnitude: {
      std::vector<double> norms(k, 0.0);
      double total = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        for (double v : result.centroids[c]) norms[c] += std::fabs(v);
        total += norms[c];
      }
      const double mean = total / static_cast<double>(k);
      bool any = false;
      for (std::size_t c = 0; c < k; ++c) {
        fault_prone[c] = norms[c] > mean;
        any = any || fault_prone[c];
      }
      // All norms equal: the highest-index cluster is fault-prone.
      if (!any) fault_prone[k - 1] = true;
      break;
    }
    case LabelingStrategy::MajorityTruth: {
      if (truth == nullptr) {
        throw InvalidArgument("majority labeling needs true defect labels");
      }
      if (truth->size() != data.size()) {
        throw InvalidArgument("defect labels do not match the data size");
      }
      std::vector<std::size_t> members(k, 0);
      std::vector<std::size_t> defective(k, 0);
      for (std::size_t i = 0; i < data.size(); ++i) {
        ++members[result.assignment[i]];
        defective[result.assignment[i]] += (*truth)[i];
      }
      for (std::size_t c = 0; c < k; ++c) {
        fault_prone[c] = 2 * defective[c] >= members[c];
      }
      break;
    }
  }
  return fault_prone;
}

std::vector<bool> predict(const Assignment& assignment,
                          const std::vector<bool>& fault_prone) {
  std::vector<bool> out;
  out.reserve(assignment.size());
  for (std::size_t label : assignment) {
    if (label >= fault_prone.size()) {
      throw InvalidArgument("cluster label without a fault-prone flag");
    }
    out.push_back(fault_prone[label]);
  }
  return out;
}

ConfusionMatrix confusion(const std::vector<bool>& truth,
                          const std::vector<bool>& predicted) {
  if (truth.size() != predicted.size()) {
    throw InvalidArgument("truth has " + std::to_string(truth.size()) +
                          " labels but predictions have " +
                          std::to_string(predicted.size()));
  }
  if (truth.empty()) throw InvalidArgument("no labels to compare");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      ++(predicted[i] ? m.tp : m.fn);
    } else {
      ++(predicted[i] ? m.fp : m.tn);
    }
  }
  return m;
}

Rates pd_pf(const ConfusionMatrix& m) noexcept {
  auto rate = [](std::size_t hit, std::size_t miss) {
    const std::size_t den = hit + miss;
    return den == 0 ? 0.0
                    : static_cast<double>(hit) / static_cast<double>(den);
  };
  return {rate(m.tp, m.fn), rate(m.fp, m.tn)};
}

std::string_view to_string(RegionLabel r) noexcept {
  switch (r) {
    case RegionLabel::NoInformation:
      return "no_information";
    case RegionLabel::RiskAdverse:
      return "risk_adverse";
    case RegionLabel::CostAdverse:
      return "cost_adverse";
    case RegionLabel::Intermediate:
      return "intermediate";
    case RegionLabel::WorseThanRandom:
      return "worse_than_random";
  }
  return "unknown";
}

RegionLabel classify_region(double pd, double pf,
                            const RegionThresholds& t) {
  if (!(pd >= 0.0 && pd <= 1.0) || !(pf >= 0.0 && pf <= 1.0)) {
    throw InvalidArgument("pd and pf must lie in [0, 1]");
  }
  if (pd >= t.tau_high && pf >= t.risk_pf_floor && pd >= pf) {
    return RegionLabel::RiskAdverse;
  }
  if (std::fabs(pd - pf) <= t.eps) return RegionLabel::NoInformation;
  if (pd < pf) return RegionLabel::WorseThanRandom;
  if (pd <= t.tau_low && pf <= t.tau_low) return RegionLabel::CostAdverse;
  return RegionLabel::Intermediate;
}

ExperimentOutcome run_experiment(const LabeledDataset& ds,
                                 const ClusteringConfig& config,
                                 LabelingStrategy strategy,
                                 const RegionThresholds& thresholds,
                                 std::string project) {
  if (!ds.labeled()) {
    throw InvalidArgument("evaluation needs a dataset with defect labels");
  }
  const std::vector<FeatureVector> data = ds.features();
  const std::vector<bool> truth = ds.labels();

  ExperimentOutcome out{{}, run_kmeans(data, config), {}, {}};
  out.fault_prone = label_clusters(data, out.clustering, strategy, &truth);
  out.matrix =
      confusion(truth, predict(out.clustering.assignment, out.fault_prone));

  const Rates r = pd_pf(out.matrix);
  out.point.pd = r.pd;
  out.point.pf = r.pf;
  out.point.region = classify_region(r.pd, r.pf, thresholds);
  out.point.tags = {std::move(project), ds.provenance(), config.distance,
                    config.seed};
  return out;
}

RocPoint evaluate_experiment(const LabeledDataset& ds,
                             const ClusteringConfig& config,
                             LabelingStrategy strategy,
                             const RegionThresholds& thresholds,
                             std::string project) {
  return run_experiment(ds, config, strategy, thresholds, std::move(project))
      .point;
}

}  // namespace faultclust
