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

#include "faultclust/distance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "faultclust/error.hpp"

namespace faultclust {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.empty()) {
    throw InvalidArgument("feature vector must have at least one coordinate");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidArgument("feature vector coordinate " + std::to_string(i) +
                            " is not finite");
    }
  }
}

void check_dims(const FeatureVector& a, const FeatureVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

}  // namespace

FeatureVector::FeatureVector(std::vector<double> values)
    : values_(std::move(values)) {
  check_values(values_);
}

FeatureVector::FeatureVector(std::initializer_list<double> values)
    : values_(values) {
  check_values(values_);
}

std::string_view to_string(DistanceKind kind) noexcept {
  switch (kind) {
    case DistanceKind::Euclidean:
      return "euclidean";
    case DistanceKind::Manhattan:
      return "manhattan";
    case DistanceKind::Sorensen:
      return "sorensen";
    case DistanceKind::Canberra:
      return "canberra";
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (DistanceKind kind : kAllDistanceKinds) {
    if (lower == to_string(kind)) return kind;
  }
  if (lower == "braycurtis" || lower == "bray-curtis") {
    return DistanceKind::Sorensen;
  }
  throw InvalidArgument("unknown distance '" + std::string(name) +
                        "' (expected euclidean, manhattan, sorensen or "
                        "canberra)");
}

double euclidean(const FeatureVector& a, const FeatureVector& b) {
  check_dims(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double manhattan(const FeatureVector& a, const FeatureVector& b) {
  check_dims(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::fabs(a[i] - b[i]);
  return sum;
}

double sorensen(const FeatureVector& a, const FeatureVector& b) {
  check_dims(a, b);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] < 0.0 || b[i] < 0.0) {
      throw InvalidArgument(
          "sorensen distance requires nonnegative coordinates (coordinate " +
          std::to_string(i) +
          " is negative); normalize the data to a nonnegative range, e.g. "
          "--normalize minmax");
    }
    num += std::fabs(a[i] - b[i]);
    den += a[i] + b[i];
  }
  if (den == 0.0) return 0.0;
  return num / den;
}

double canberra(const FeatureVector& a, const FeatureVector& b) {
  check_dims(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double den = std::fabs(a[i]) + std::fabs(b[i]);
    if (den == 0.0) continue;
    sum += std::fabs(a[i] - b[i]) / den;
  }
  return sum;
}

double distance(DistanceKind kind, const FeatureVector& a,
                const FeatureVector& b) {
  switch (kind) {
    case DistanceKind::Euclidean:
      return euclidean(a, b);
    case DistanceKind::Manhattan:
      return manhattan(a, b);
    case DistanceKind::Sorensen:
      return sorensen(a, b);
    case DistanceKind::Canberra:
      return canberra(a, b);
  }
  throw InvalidArgument("unhandled distance kind");
}

std::string_view to_string(Axiom axiom) noexcept {
  switch (axiom) {
    case Axiom::NonNegativity:
      return "non-negativity";
    case Axiom::Coincidence:
      return "coincidence";
    case Axiom::Symmetry:
      return "symmetry";
    case Axiom::TriangleInequality:
      return "triangle-inequality";
  }
  return "unknown";
}

bool AxiomReport::all_passed() const noexcept {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const AxiomVerdict& v) { return v.passed; });
}

const AxiomVerdict& AxiomReport::verdict(Axiom axiom) const noexcept {
  return verdicts[static_cast<std::size_t>(axiom)];
}

namespace {

void record(AxiomVerdict& v, bool ok, Witness w) {
  ++v.checked;
  if (ok) return;
  ++v.violations;
  v.passed = false;
  if (!v.witness) v.witness = w;
}

}  // namespace

AxiomReport check_metric_axioms(DistanceKind kind,
                                std::span<const FeatureVector> sample,
                                const AxiomOptions& options) {
  AxiomReport report{};
  report.kind = kind;
  report.sample_size = sample.size();
  for (std::size_t a = 0; a < kAllAxioms.size(); ++a) {
    report.verdicts[a].axiom = kAllAxioms[a];
  }
  if (sample.empty()) return report;

  for (const auto& v : sample) check_dims(sample.front(), v);

  const std::size_t n = sample.size();
  // Full ordered distance table; the triangle pass reuses it.
  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table[i * n + j] = distance(kind, sample[i], sample[j]);
    }
  }
  auto d = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

  report.min_value = std::numeric_limits<double>::infinity();
  report.max_value = -std::numeric_limits<double>::infinity();

  auto& nonneg = report.verdicts[0];
  auto& coincide = report.verdicts[1];
  auto& symmetric = report.verdicts[2];
  auto& triangle = report.verdicts[3];

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = d(i, j);
      report.min_value = std::min(report.min_value, dij);
      report.max_value = std::max(report.max_value, dij);

      record(nonneg, dij >= 0.0, {i, j, std::nullopt, dij, 0.0});

      // d(x, y) == 0 exactly when x == y.
      const bool same = sample[i] == sample[j];
      record(coincide, (dij == 0.0) == same,
             {i, j, std::nullopt, dij, 0.0});

      record(symmetric, dij == d(j, i), {i, j, std::nullopt, dij, d(j, i)});
    }
  }

  const double tol = options.relative_tolerance;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double direct = d(i, k);
        const double detour = d(i, j) + d(j, k);
        const bool ok = direct <= detour + tol * std::max(direct, detour);
        record(triangle, ok, {i, j, k, direct, detour});
      }
    }
  }
  return report;
}

}  // namespace faultclust
