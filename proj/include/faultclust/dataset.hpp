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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faultclust/distance.hpp"

namespace faultclust {

struct ModuleRecord {
  std::string module_id;
  FeatureVector features;
  bool defective = false;  // meaningful only when the dataset is labeled

  friend bool operator==(const ModuleRecord&, const ModuleRecord&) = default;
};

/// Which metric family a dataset's columns come from.
enum class Provenance { Requirement, Code, Join, Synthetic };

std::string_view to_string(Provenance p) noexcept;
Provenance parse_provenance(std::string_view name);

/**
 * @brief Module records sharing one feature schema.
 *
 * Construction enforces the invariants: at least one record, unique
 * nonempty module ids, and every feature vector as long as
 * `feature_names`.
 */
class LabeledDataset {
 public:
  LabeledDataset(std::vector<ModuleRecord> records,
                 std::vector<std::string> feature_names, Provenance provenance,
                 bool labeled = true);

  const std::vector<ModuleRecord>& records() const noexcept {
    return records_;
  }
  const std::vector<std::string>& feature_names() const noexcept {
    return feature_names_;
  }
  Provenance provenance() const noexcept { return provenance_; }
  bool labeled() const noexcept { return labeled_; }
  std::size_t size() const noexcept { return records_.size(); }
  std::size_t dim() const noexcept { return feature_names_.size(); }

  /// Feature vectors in record order.
  std::vector<FeatureVector> features() const;
  /// Defect labels in record order.
  std::vector<bool> labels() const;

  friend bool operator==(const LabeledDataset&,
                         const LabeledDataset&) = default;

 private:
  std::vector<ModuleRecord> records_;
  std::vector<std::string> feature_names_;
  Provenance provenance_;
  bool labeled_;
};

struct TableOptions {
  std::string id_column = "module_id";
  std::string label_column = "defects";
  /// Accept a table without the label column (yields an unlabeled dataset).
  bool label_optional = false;
  Provenance provenance = Provenance::Code;
};

/// Parses a comma-separated metric table with a header row. Every column
/// other than the id and label columns must be numeric. Labels accept
/// Y/N, TRUE/FALSE and 1/0 in any case. Throws ParseError.
LabeledDataset parse_table(const std::filesystem::path& path,
                           const TableOptions& options = {});
LabeledDataset parse_table(std::istream& in, const std::string& source_name,
                           const TableOptions& options = {});

/// Writes the table format read by parse_table, LF line endings. Feature
/// values use the shortest representation that round-trips exactly.
void write_table(const LabeledDataset& ds, std::ostream& out,
                 const TableOptions& options = {});
void write_table(const LabeledDataset& ds, const std::filesystem::path& path,
                 const TableOptions& options = {});

/**
 * Inner join on module id.
 *
 * Keeps modules present in both tables, in `req` order, with requirement
 * features followed by code features. Feature names present in both tables
 * are prefixed with "req_" and "code_". The label comes from the labeled
 * side; if both are labeled they must agree. Throws JoinError on an empty
 * intersection, on conflicting labels, or when neither side is labeled.
 */
LabeledDataset natural_join(const LabeledDataset& req,
                            const LabeledDataset& code);

enum class NormalizationMode { None, MinMax };

std::string_view to_string(NormalizationMode mode) noexcept;
NormalizationMode parse_normalization_mode(std::string_view name);

/// Recorded column transform; replays on any dataset of the same width.
struct NormalizationSpec {
  NormalizationMode mode = NormalizationMode::None;
  std::vector<double> per_feature_min;
  std::vector<double> per_feature_max;

  LabeledDataset apply(const LabeledDataset& ds) const;
};

/// MinMax maps each column onto [0, 1]; constant columns become 0.
std::pair<LabeledDataset, NormalizationSpec> normalize(
    const LabeledDataset& ds, NormalizationMode mode);

/// Planted two-group data: clean modules uniform on [0, 5) per coordinate,
/// faulty ones uniform on [separation, separation + 5). Clean records come
/// first. Throws InvalidArgument on non-positive counts, dimension or
/// separation.
LabeledDataset generate_synthetic(std::size_t n_clean, std::size_t n_faulty,
                                  std::size_t dim, double separation,
                                  std::uint64_t seed);

}  // namespace faultclust
