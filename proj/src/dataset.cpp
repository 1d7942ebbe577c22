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

#include "faultclust/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "faultclust/error.hpp"
#include "faultclust/random.hpp"

namespace faultclust {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted cells may contain commas and "" for a
// literal quote; embedded newlines are not supported.
std::optional<std::vector<std::string>> split_record(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"' && trim(cell).empty()) {
      cell.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cell : std::string(trim(cell)));
      cell.clear();
      was_quoted = false;
    } else if (!was_quoted) {
      cell += c;
    } else if (c != ' ' && c != '\t') {
      return std::nullopt;  // text after a closing quote
    }
  }
  if (quoted) return std::nullopt;
  cells.push_back(was_quoted ? cell : std::string(trim(cell)));
  return cells;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<bool> parse_label(std::string_view s) {
  const std::string v = lower(s);
  if (v == "y" || v == "true" || v == "1") return true;
  if (v == "n" || v == "false" || v == "0") return false;
  return std::nullopt;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos &&
      trim(s).size() == s.size()) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Requirement:
      return "requirement";
    case Provenance::Code:
      return "code";
    case Provenance::Join:
      return "join";
    case Provenance::Synthetic:
      return "synthetic";
  }
  return "unknown";
}

Provenance parse_provenance(std::string_view name) {
  const std::string v = lower(name);
  for (Provenance p : {Provenance::Requirement, Provenance::Code,
                       Provenance::Join, Provenance::Synthetic}) {
    if (v == to_string(p)) return p;
  }
  throw InvalidArgument("unknown metric set '" + std::string(name) +
                        "' (expected requirement, code, join or synthetic)");
}

LabeledDataset::LabeledDataset(std::vector<ModuleRecord> records,
                               std::vector<std::string> feature_names,
                               Provenance provenance, bool labeled)
    : records_(std::move(records)),
      feature_names_(std::move(feature_names)),
      provenance_(provenance),
      labeled_(labeled) {
  if (records_.empty()) throw InvalidArgument("dataset has no records");
  std::unordered_set<std::string> ids;
  for (const auto& r : records_) {
    if (r.module_id.empty()) throw InvalidArgument("empty module id");
    if (!ids.insert(r.module_id).second) {
      throw InvalidArgument("duplicate module id '" + r.module_id + "'");
    }
    if (r.features.dim() != feature_names_.size()) {
      throw DimensionMismatch(feature_names_.size(), r.features.dim());
    }
  }
  if (!labeled_) {
    for (auto& r : records_) r.defective = false;
  }
}

std::vector<FeatureVector> LabeledDataset::features() const {
  std::vector<FeatureVector> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.features);
  return out;
}

std::vector<bool> LabeledDataset::labels() const {
  std::vector<bool> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.defective);
  return out;
}

LabeledDataset parse_table(std::istream& in, const std::string& source_name,
                           const TableOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<std::string>> header;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(source_name, 0, "missing header row");
  header = split_record(line);
  if (!header) throw ParseError(source_name, line_no, "malformed header row");

  std::optional<std::size_t> id_col;
  std::optional<std::size_t> label_col;
  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  std::set<std::string> seen_names;
  for (std::size_t c = 0; c < header->size(); ++c) {
    const std::string& name = (*header)[c];
    if (!seen_names.insert(name).second) {
      throw ParseError(source_name, line_no,
                       "duplicate column '" + name + "'");
    }
    if (name == options.id_column) {
      id_col = c;
    } else if (name == options.label_column) {
      label_col = c;
    } else {
      feature_cols.push_back(c);
      feature_names.push_back(name);
    }
  }
  if (!id_col) {
    throw ParseError(source_name, line_no,
                     "missing id column '" + options.id_column + "'");
  }
  if (!label_col && !options.label_optional) {
    throw ParseError(source_name, line_no,
                     "missing label column '" + options.label_column + "'");
  }
  if (feature_cols.empty()) {
    throw ParseError(source_name, line_no, "no feature columns");
  }

  std::vector<ModuleRecord> records;
  std::unordered_map<std::string, std::size_t> id_lines;
  while (next_line()) {
    const auto cells = split_record(line);
    if (!cells) throw ParseError(source_name, line_no, "malformed quoting");
    if (cells->size() != header->size()) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(header->size()) +
                           " cells, found " + std::to_string(cells->size()));
    }
    const std::string& id = (*cells)[*id_col];
    if (id.empty()) {
      throw ParseError(source_name, line_no,
                       "empty module id in column '" + options.id_column +
                           "'");
    }
    if (auto [it, fresh] = id_lines.emplace(id, line_no); !fresh) {
      throw ParseError(source_name, line_no,
                       "duplicate module id '" + id + "' (first seen on line " +
                           std::to_string(it->second) + ")");
    }

    std::vector<double> values;
    values.reserve(feature_cols.size());
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      const std::string& cell = (*cells)[feature_cols[f]];
      const auto v = parse_number(cell);
      if (!v) {
        throw ParseError(source_name, line_no,
                         "non-numeric value '" + cell + "' in column '" +
                             feature_names[f] + "'");
      }
      values.push_back(*v);
    }

    bool defective = false;
    if (label_col) {
      const std::string& cell = (*cells)[*label_col];
      const auto label = parse_label(cell);
      if (!label) {
        throw ParseError(source_name, line_no,
                         "invalid label '" + cell + "' in column '" +
                             options.label_column +
                             "' (expected Y/N, TRUE/FALSE or 1/0)");
      }
      defective = *label;
    }
    records.push_back({id, FeatureVector(std::move(values)), defective});
  }
  if (records.empty()) throw ParseError(source_name, 0, "table has no rows");

  return LabeledDataset(std::move(records), std::move(feature_names),
                        options.provenance, label_col.has_value());
}

LabeledDataset parse_table(const std::filesystem::path& path,
                           const TableOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return parse_table(in, path.string(), options);
}

void write_table(const LabeledDataset& ds, std::ostream& out,
                 const TableOptions& options) {
  out << csv_cell(options.id_column);
  for (const auto& name : ds.feature_names()) out << ',' << csv_cell(name);
  if (ds.labeled()) out << ',' << csv_cell(options.label_column);
  out << '\n';
  for (const auto& r : ds.records()) {
    out << csv_cell(r.module_id);
    for (double v : r.features) out << ',' << shortest(v);
    if (ds.labeled()) out << ',' << (r.defective ? 'Y' : 'N');
    out << '\n';
  }
}

void write_table(const LabeledDataset& ds, const std::filesystem::path& path,
                 const TableOptions& options) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_table(ds, out, options);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

LabeledDataset natural_join(const LabeledDataset& req,
                            const LabeledDataset& code) {
  if (!req.labeled() && !code.labeled()) {
    throw JoinError("neither table carries defect labels");
  }

  std::unordered_map<std::string_view, const ModuleRecord*> code_by_id;
  for (const auto& r : code.records()) code_by_id.emplace(r.module_id, &r);

  std::vector<ModuleRecord> joined;
  std::vector<std::string> conflicts;
  for (const auto& r : req.records()) {
    const auto it = code_by_id.find(r.module_id);
    if (it == code_by_id.end()) continue;
    const ModuleRecord& c = *it->second;
    if (req.labeled() && code.labeled() && r.defective != c.defective) {
      conflicts.push_back(r.module_id);
      continue;
    }
    std::vector<double> values(r.features.begin(), r.features.end());
    values.insert(values.end(), c.features.begin(), c.features.end());
    const bool defective = code.labeled() ? c.defective : r.defective;
    joined.push_back({r.module_id, FeatureVector(std::move(values)),
                      defective});
  }
  if (!conflicts.empty()) {
    throw JoinError("conflicting defect labels", std::move(conflicts));
  }
  if (joined.empty()) throw JoinError("tables share no module ids");

  const std::set<std::string> req_names(req.feature_names().begin(),
                                        req.feature_names().end());
  const std::set<std::string> code_names(code.feature_names().begin(),
                                         code.feature_names().end());
  std::vector<std::string> names;
  for (const auto& n : req.feature_names()) {
    names.push_back(code_names.count(n) ? "req_" + n : n);
  }
  for (const auto& n : code.feature_names()) {
    names.push_back(req_names.count(n) ? "code_" + n : n);
  }
  return LabeledDataset(std::move(joined), std::move(names), Provenance::Join,
                        true);
}

std::string_view to_string(NormalizationMode mode) noexcept {
  switch (mode) {
    case NormalizationMode::None:
      return "none";
    case NormalizationMode::MinMax:
      return "minmax";
  }
  return "unknown";
}

NormalizationMode parse_normalization_mode(std::string_view name) {
  const std::string v = lower(name);
  if (v == "none") return NormalizationMode::None;
  if (v == "minmax") return NormalizationMode::MinMax;
  throw InvalidArgument("unknown normalization '" + std::string(name) +
                        "' (expected none or minmax)");
}

LabeledDataset NormalizationSpec::apply(const LabeledDataset& ds) const {
  if (mode == NormalizationMode::None) return ds;
  if (per_feature_min.size() != ds.dim() ||
      per_feature_max.size() != ds.dim()) {
    throw DimensionMismatch(per_feature_min.size(), ds.dim());
  }
  std::vector<ModuleRecord> records;
  records.reserve(ds.size());
  for (const auto& r : ds.records()) {
    std::vector<double> values(ds.dim());
    for (std::size_t j = 0; j < ds.dim(); ++j) {
      const double range = per_feature_max[j] - per_feature_min[j];
      values[j] = range > 0.0 ? (r.features[j] - per_feature_min[j]) / range
                              : 0.0;
    }
    records.push_back({r.module_id, FeatureVector(std::move(values)),
                       r.defective});
  }
  return LabeledDataset(std::move(records), ds.feature_names(),
                        ds.provenance(), ds.labeled());
}

std::pair<LabeledDataset, NormalizationSpec> normalize(
    const LabeledDataset& ds, NormalizationMode mode) {
  NormalizationSpec spec;
  spec.mode = mode;
  if (mode == NormalizationMode::None) return {ds, spec};

  spec.per_feature_min.assign(ds.dim(), 0.0);
  spec.per_feature_max.assign(ds.dim(), 0.0);
  for (std::size_t j = 0; j < ds.dim(); ++j) {
    double lo = ds.records().front().features[j];
    double hi = lo;
    for (const auto& r : ds.records()) {
      lo = std::min(lo, r.features[j]);
      hi = std::max(hi, r.features[j]);
    }
    spec.per_feature_min[j] = lo;
    spec.per_feature_max[j] = hi;
  }
  return {spec.apply(ds), spec};
}

LabeledDataset generate_synthetic(std::size_t n_clean, std::size_t n_faulty,
                                  std::size_t dim, double separation,
                                  std::uint64_t seed) {
  if (n_clean < 1 || n_faulty < 1) {
    throw InvalidArgument("synthetic data needs at least one clean and one "
                          "faulty module");
  }
  if (dim < 1) throw InvalidArgument("synthetic dimension must be at least 1");
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw InvalidArgument("separation must be a positive finite number");
  }

  constexpr double kSpread = 5.0;
  const std::size_t total = n_clean + n_faulty;
  const std::size_t width =
      std::max<std::size_t>(4, std::to_string(total).size());

  Rng rng(seed);
  std::vector<ModuleRecord> records;
  records.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const bool faulty = i >= n_clean;
    const double lo = faulty ? separation : 0.0;
    std::vector<double> values(dim);
    for (double& v : values) v = rng.uniform(lo, lo + kSpread);

    std::string id = std::to_string(i + 1);
    id = "M" + std::string(width - id.size(), '0') + id;
    records.push_back({std::move(id), FeatureVector(std::move(values)),
                       faulty});
  }

  std::vector<std::string> names;
  for (std::size_t j = 0; j < dim; ++j) names.push_back("f" + std::to_string(j + 1));
  return LabeledDataset(std::move(records), std::move(names),
                        Provenance::Synthetic, true);
}

}  // namespace faultclust
