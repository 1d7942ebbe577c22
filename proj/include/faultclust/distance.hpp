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

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace faultclust {

/**
 * @brief Metric values of one software module.
 *
 * Holds at least one coordinate, and every coordinate is finite. Both
 * conditions are checked on construction, so code receiving a
 * FeatureVector never has to re-validate it.
 */
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> values);
  FeatureVector(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

enum class DistanceKind { Euclidean, Manhattan, Sorensen, Canberra };

inline constexpr std::array<DistanceKind, 4> kAllDistanceKinds = {
    DistanceKind::Euclidean, DistanceKind::Manhattan, DistanceKind::Sorensen,
    DistanceKind::Canberra};

/// Lower-case name used on the command line and in result tables.
std::string_view to_string(DistanceKind kind) noexcept;
/// Inverse of to_string; case-insensitive. Throws InvalidArgument.
DistanceKind parse_distance_kind(std::string_view name);

// Kernels. All throw DimensionMismatch when a.dim() != b.dim(), and sum over
// coordinates left to right so results are bit-reproducible.

double euclidean(const FeatureVector& a, const FeatureVector& b);
double manhattan(const FeatureVector& a, const FeatureVector& b);

/// Bray-Curtis dissimilarity: sum |a_i - b_i| / sum (a_i + b_i).
///
/// Defined for nonnegative coordinates only; a negative coordinate throws
/// InvalidArgument (rescale the data, e.g. with min-max normalization).
/// Two all-zero vectors are at distance 0.
double sorensen(const FeatureVector& a, const FeatureVector& b);

/// Sum of |a_i - b_i| / (|a_i| + |b_i|); a coordinate where both values are
/// zero contributes nothing.
double canberra(const FeatureVector& a, const FeatureVector& b);

double distance(DistanceKind kind, const FeatureVector& a,
                const FeatureVector& b);

// Metric-axiom harness.

enum class Axiom { NonNegativity, Coincidence, Symmetry, TriangleInequality };

inline constexpr std::array<Axiom, 4> kAllAxioms = {
    Axiom::NonNegativity, Axiom::Coincidence, Axiom::Symmetry,
    Axiom::TriangleInequality};

std::string_view to_string(Axiom axiom) noexcept;

/// Sample indices of the first tuple that violated an axiom. Pair axioms
/// fill `x` and `y` and leave `z` empty.
struct Witness {
  std::size_t x = 0;
  std::size_t y = 0;
  std::optional<std::size_t> z;
  /// Left and right side of the violated relation, e.g. d(x,z) and
  /// d(x,y) + d(y,z) for the triangle inequality.
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomVerdict {
  Axiom axiom;
  bool passed = true;
  std::size_t checked = 0;     // tuples evaluated
  std::size_t violations = 0;  // tuples that failed
  std::optional<Witness> witness;
};

struct AxiomReport {
  DistanceKind kind;
  std::size_t sample_size = 0;
  std::array<AxiomVerdict, 4> verdicts;  // in kAllAxioms order
  double min_value = 0.0;                // over all ordered pairs
  double max_value = 0.0;

  bool all_passed() const noexcept;
  const AxiomVerdict& verdict(Axiom axiom) const noexcept;
};

struct AxiomOptions {
  /// Triangle slack relative to max(d(x,z), d(x,y) + d(y,z)).
  double relative_tolerance = 1e-9;
};

/// Evaluates the four metric axioms over every ordered pair and triple of
/// `sample`. Violations are reported, never thrown; only a dimension
/// mismatch inside the sample (or a kernel precondition) throws.
AxiomReport check_metric_axioms(DistanceKind kind,
                                std::span<const FeatureVector> sample,
                                const AxiomOptions& options = {});

}  // namespace faultclust
