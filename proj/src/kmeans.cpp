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

#include "faultclust/kmeans.hpp"

#include <string>
#include <utility>

#include "faultclust/error.hpp"
#include "faultclust/random.hpp"

namespace faultclust {

void ClusteringConfig::validate(std::size_t n_points) const {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (k > n_points) {
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(n_points) + " data points");
  }
  if (max_iterations < 1) {
    throw InvalidArgument("max_iterations must be at least 1");
  }
}

CentroidSet::CentroidSet(std::vector<FeatureVector> centroids)
    : centroids_(std::move(centroids)) {
  if (centroids_.empty()) {
    throw InvalidArgument("centroid set must hold at least one centroid");
  }
  for (const auto& c : centroids_) {
    if (c.dim() != centroids_.front().dim()) {
      throw DimensionMismatch(centroids_.front().dim(), c.dim());
    }
  }
}

namespace {

void check_data(std::span<const FeatureVector> data) {
  if (data.empty()) throw InvalidArgument("data set is empty");
  for (const auto& p : data) {
    if (p.dim() != data.front().dim()) {
      throw DimensionMismatch(data.front().dim(), p.dim());
    }
  }
}

void check_assignment(std::span<const FeatureVector> data,
                      const Assignment& assignment, std::size_t k) {
  if (assignment.size() != data.size()) {
    throw InvalidArgument("assignment has " +
                          std::to_string(assignment.size()) +
                          " labels for " + std::to_string(data.size()) +
                          " points");
  }
  for (std::size_t label : assignment) {
    if (label >= k) {
      throw InvalidArgument("cluster label " + std::to_string(label) +
                            " out of range for k = " + std::to_string(k));
    }
  }
}

FeatureVector mean_of(std::span<const FeatureVector> data,
                      const Assignment& assignment, std::size_t cluster,
                      std::size_t count) {
  std::vector<double> sum(data.front().dim(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (assignment[i] != cluster) continue;
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += data[i][j];
  }
  for (double& s : sum) s /= static_cast<double>(count);
  return FeatureVector(std::move(sum));
}

}  // namespace

CentroidSet init_centroids(std::span<const FeatureVector> data,
                           const ClusteringConfig& config) {
  check_data(data);
  if (config.k < 1) throw InvalidArgument("k must be at least 1");

  // Distinct points in first-occurrence order.
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < data.size(); ++i) {
    bool seen = false;
    for (std::size_t j : distinct) {
      if (data[j] == data[i]) {
        seen = true;
        break;
      }
    }
    if (!seen) distinct.push_back(i);
  }
  if (config.k > distinct.size()) {
    throw InvalidArgument("k = " + std::to_string(config.k) +
                          " exceeds the " + std::to_string(distinct.size()) +
                          " distinct data points");
  }

  // Partial Fisher-Yates: the first k slots become the sample.
  Rng rng(config.seed);
  std::vector<FeatureVector> centroids;
  centroids.reserve(config.k);
  for (std::size_t i = 0; i < config.k; ++i) {
    const std::size_t j = i + rng.below(distinct.size() - i);
    std::swap(distinct[i], distinct[j]);
    centroids.push_back(data[distinct[i]]);
  }
  return CentroidSet(std::move(centroids));
}

Assignment assign_step(std::span<const FeatureVector> data,
                       const CentroidSet& centroids, DistanceKind kind) {
  Assignment labels(data.size(), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    double best = distance(kind, data[i], centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
      const double d = distance(kind, data[i], centroids[c]);
      if (d < best) {
        best = d;
        labels[i] = c;
      }
    }
  }
  return labels;
}

UpdateResult update_step(std::span<const FeatureVector> data,
                         const Assignment& assignment, std::size_t k,
                         const CentroidSet& previous, DistanceKind kind) {
  check_data(data);
  check_assignment(data, assignment, k);
  if (previous.size() != k) {
    throw InvalidArgument("previous centroid set has " +
                          std::to_string(previous.size()) +
                          " centroids, expected " + std::to_string(k));
  }

  Assignment labels = assignment;
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t label : labels) ++counts[label];

  std::vector<bool> reseeded(data.size(), false);
  std::size_t repaired = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    std::size_t donor = data.size();
    double farthest = -1.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (reseeded[i] || counts[labels[i]] < 2) continue;
      const double d = distance(kind, data[i], previous[labels[i]]);
      if (d > farthest) {
        farthest = d;
        donor = i;
      }
    }
    // Unreachable while k <= n: some cluster always has two members.
    if (donor == data.size()) {
      throw InvalidArgument("cannot repair empty cluster: k exceeds points");
    }
    --counts[labels[donor]];
    labels[donor] = c;
    counts[c] = 1;
    reseeded[donor] = true;
    ++repaired;
  }

  std::vector<FeatureVector> centroids;
  centroids.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    centroids.push_back(mean_of(data, labels, c, counts[c]));
  }
  return {CentroidSet(std::move(centroids)), std::move(labels), repaired};
}

double objective(std::span<const FeatureVector> data,
                 const Assignment& assignment, const CentroidSet& centroids,
                 DistanceKind kind) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    sum += distance(kind, data[i], centroids[assignment[i]]);
  }
  return sum;
}

double objective(std::span<const FeatureVector> data,
                 const ClusteringResult& result, DistanceKind kind) {
  return objective(data, result.assignment, result.centroids, kind);
}

double squared_error(std::span<const FeatureVector> data,
                     const Assignment& assignment,
                     const CentroidSet& centroids) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const FeatureVector& c = centroids[assignment[i]];
    for (std::size_t j = 0; j < c.dim(); ++j) {
      const double d = data[i][j] - c[j];
      sum += d * d;
    }
  }
  return sum;
}

ClusteringResult run_kmeans(std::span<const FeatureVector> data,
                            const ClusteringConfig& config) {
  check_data(data);
  config.validate(data.size());
  return run_kmeans(data, config, init_centroids(data, config));
}

ClusteringResult run_kmeans(std::span<const FeatureVector> data,
                            const ClusteringConfig& config,
                            CentroidSet initial) {
  check_data(data);
  ClusteringConfig effective = config;
  effective.k = initial.size();
  effective.validate(data.size());
  if (initial.dim() != data.front().dim()) {
    throw DimensionMismatch(data.front().dim(), initial.dim());
  }

  const DistanceKind kind = config.distance;
  CentroidSet centroids = std::move(initial);
  Assignment previous_labels;
  std::vector<IterationRecord> history;
  bool converged = false;
  Assignment labels;

  for (std::size_t t = 1; t <= config.max_iterations; ++t) {
    labels = assign_step(data, centroids, kind);

    IterationRecord rec;
    if (previous_labels.empty()) {
      rec.reassigned = data.size();
    } else {
      for (std::size_t i = 0; i < labels.size(); ++i) {
        rec.reassigned += labels[i] != previous_labels[i];
      }
    }
    rec.objective = objective(data, labels, centroids, kind);
    rec.squared_euclidean = squared_error(data, labels, centroids);
    history.push_back(rec);

    if (!previous_labels.empty() &&
        rec.reassigned <= config.reassignment_threshold) {
      converged = true;
      break;
    }
    if (t == config.max_iterations) break;

    UpdateResult updated =
        update_step(data, labels, centroids.size(), centroids, kind);
    history.back().repaired_clusters = updated.repaired_clusters;
    centroids = std::move(updated.centroids);
    previous_labels = std::move(updated.assignment);
  }

  ClusteringResult result{std::move(labels), std::move(centroids),
                          history.size(), converged, 0.0,
                          std::move(history)};
  result.objective = result.history.back().objective;
  return result;
}

}  // namespace faultclust
