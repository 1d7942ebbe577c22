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
#include <span>
#include <vector>

#include "faultclust/distance.hpp"

namespace faultclust {

struct ClusteringConfig {
  std::size_t k = 2;
  DistanceKind distance = DistanceKind::Euclidean;
  std::uint64_t seed = 1;
  std::size_t max_iterations = 300;
  /// Converged once at most this many points change cluster in an iteration.
  std::size_t reassignment_threshold = 0;

  /// Throws InvalidArgument unless 1 <= k <= n_points and max_iterations >= 1.
  void validate(std::size_t n_points) const;
};

/// K cluster centers of equal dimension.
class CentroidSet {
 public:
  explicit CentroidSet(std::vector<FeatureVector> centroids);

  std::size_t size() const noexcept { return centroids_.size(); }
  std::size_t dim() const noexcept { return centroids_.front().dim(); }
  const FeatureVector& operator[](std::size_t i) const noexcept {
    return centroids_[i];
  }
  std::span<const FeatureVector> centroids() const noexcept {
    return centroids_;
  }

  friend bool operator==(const CentroidSet&, const CentroidSet&) = default;

 private:
  std::vector<FeatureVector> centroids_;
};

/// One cluster index in [0, k) per data point, in data order.
using Assignment = std::vector<std::size_t>;

/// Per-iteration bookkeeping, recorded right after each assignment step.
struct IterationRecord {
  std::size_t reassigned = 0;  // all points on the first iteration
  double objective = 0.0;      // configured distance to assigned centroid
  double squared_euclidean = 0.0;
  std::size_t repaired_clusters = 0;  // empty clusters re-seeded afterwards

  friend bool operator==(const IterationRecord&,
                         const IterationRecord&) = default;
};

struct ClusteringResult {
  Assignment assignment;
  CentroidSet centroids;
  std::size_t iterations = 0;
  bool converged = false;
  double objective = 0.0;
  std::vector<IterationRecord> history;

  friend bool operator==(const ClusteringResult&,
                         const ClusteringResult&) = default;
};

/// Forgy initialization: k distinct data points drawn without replacement
/// with a generator seeded from config.seed. Throws InvalidArgument when k
/// exceeds the number of distinct points.
CentroidSet init_centroids(std::span<const FeatureVector> data,
                           const ClusteringConfig& config);

/// Index of the nearest centroid for every point; ties go to the lowest
/// index.
Assignment assign_step(std::span<const FeatureVector> data,
                       const CentroidSet& centroids, DistanceKind kind);

struct UpdateResult {
  CentroidSet centroids;
  /// Input assignment after empty-cluster repair.
  Assignment assignment;
  std::size_t repaired_clusters = 0;
};

/**
 * Moves every centroid to the coordinate-wise mean of its members.
 *
 * The mean is used for all distance kinds. An empty cluster takes over the
 * point that lies farthest (under `kind`) from its current centroid in
 * `previous`, provided its donor cluster keeps at least one member; ties go
 * to the lower point index. The repaired assignment is returned alongside
 * the new centroids.
 */
UpdateResult update_step(std::span<const FeatureVector> data,
                         const Assignment& assignment, std::size_t k,
                         const CentroidSet& previous, DistanceKind kind);

/// Lloyd iteration from Forgy-initialized centroids.
ClusteringResult run_kmeans(std::span<const FeatureVector> data,
                            const ClusteringConfig& config);

/// Lloyd iteration from caller-supplied centroids; config.seed and config.k
/// are ignored in favor of `initial`.
ClusteringResult run_kmeans(std::span<const FeatureVector> data,
                            const ClusteringConfig& config,
                            CentroidSet initial);

/// Sum over points of the distance to the assigned centroid.
double objective(std::span<const FeatureVector> data,
                 const ClusteringResult& result, DistanceKind kind);
double objective(std::span<const FeatureVector> data,
                 const Assignment& assignment, const CentroidSet& centroids,
                 DistanceKind kind);

/// Sum of squared Euclidean point-to-centroid distances.
double squared_error(std::span<const FeatureVector> data,
                     const Assignment& assignment,
                     const CentroidSet& centroids);

}  // namespace faultclust
