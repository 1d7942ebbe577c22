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

#include "faultclust/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "faultclust/error.hpp"
#include "faultclust/random.hpp"
#include "json.hpp"

namespace faultclust::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void ExperimentPlan::validate() const {
  if (datasets.empty()) {
    throw InvalidArgument("no datasets given (use --data, --req/--code or "
                          "--plan)");
  }
  if (distances.empty()) throw InvalidArgument("no distance measures given");
  auto require = [](const std::optional<fs::path>& p) {
    if (p && !fs::is_regular_file(*p)) {
      throw InvalidArgument("input file not found: " + p->string());
    }
  };
  for (const auto& d : datasets) {
    const bool single = d.data.has_value();
    const bool pair = d.req.has_value() && d.code.has_value();
    if (single == pair) {
      throw InvalidArgument("dataset '" + d.project +
                            "' needs either data or both req and code");
    }
    require(d.data);
    require(d.req);
    require(d.code);
  }
}

namespace {

const std::set<std::string> kPlanKeys = {
    "datasets", "distances",     "k",         "seed",   "max_iterations",
    "threshold", "normalize",    "strategy",  "id_col", "label_col",
    "eps",      "tau_high",      "tau_low",   "risk_pf_floor", "format",
    "out",      "roc_svg"};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ExperimentPlan load_plan(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("plan file not found: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("invalid plan file " + path.string() + ": " +
                          e.what());
  }
  if (!doc.is_object()) {
    throw InvalidArgument("plan file must hold a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!kPlanKeys.count(key)) {
      throw InvalidArgument("unknown plan key '" + key + "'");
    }
  }

  const fs::path base = path.parent_path();
  ExperimentPlan plan;
  try {
    if (doc.contains("datasets")) {
      for (const auto& d : doc.at("datasets")) {
        DatasetSpec spec;
        spec.project = d.value("project", std::string());
        if (d.contains("metric_set")) {
          spec.metric_set =
              parse_provenance(d.at("metric_set").get<std::string>());
        }
        if (d.contains("data")) {
          spec.data = resolve(base, d.at("data").get<std::string>());
        }
        if (d.contains("req")) {
          spec.req = resolve(base, d.at("req").get<std::string>());
        }
        if (d.contains("code")) {
          spec.code = resolve(base, d.at("code").get<std::string>());
        }
        if (spec.project.empty()) {
          const auto& p = spec.data ? spec.data : spec.code;
          spec.project = p ? p->stem().string() : "project";
        }
        plan.datasets.push_back(std::move(spec));
      }
    }
    if (doc.contains("distances")) {
      plan.distances.clear();
      for (const auto& d : doc.at("distances")) {
        plan.distances.push_back(parse_distance_kind(d.get<std::string>()));
      }
    }
    auto& c = plan.clustering;
    c.k = doc.value("k", c.k);
    c.seed = doc.value("seed", c.seed);
    c.max_iterations = doc.value("max_iterations", c.max_iterations);
    c.reassignment_threshold =
        doc.value("threshold", c.reassignment_threshold);
    if (doc.contains("normalize")) {
      plan.normalization =
          parse_normalization_mode(doc.at("normalize").get<std::string>());
    }
    if (doc.contains("strategy")) {
      plan.strategy =
          parse_labeling_strategy(doc.at("strategy").get<std::string>());
    }
    plan.table.id_column = doc.value("id_col", plan.table.id_column);
    plan.table.label_column = doc.value("label_col", plan.table.label_column);
    auto& t = plan.thresholds;
    t.eps = doc.value("eps", t.eps);
    t.tau_high = doc.value("tau_high", t.tau_high);
    t.tau_low = doc.value("tau_low", t.tau_low);
    t.risk_pf_floor = doc.value("risk_pf_floor", t.risk_pf_floor);
    if (doc.contains("format")) {
      plan.format = parse_table_format(doc.at("format").get<std::string>());
    }
    if (doc.contains("out")) {
      plan.out = resolve(base, doc.at("out").get<std::string>());
    }
    if (doc.contains("roc_svg")) {
      plan.roc_svg = resolve(base, doc.at("roc_svg").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw InvalidArgument("invalid plan file " + path.string() + ": " +
                          e.what());
  }
  return plan;
}

namespace {

struct GridCell {
  std::string project;
  LabeledDataset data;
};

TableOptions table_options(const ExperimentPlan& plan, Provenance p,
                           bool label_optional) {
  TableOptions opts = plan.table;
  opts.provenance = p;
  opts.label_optional = label_optional;
  return opts;
}

// Restricts `joined` to the columns of one side, keeping the join's labels.
LabeledDataset project_columns(const LabeledDataset& joined,
                               std::size_t first, std::size_t count,
                               std::vector<std::string> names, Provenance p) {
  std::vector<ModuleRecord> records;
  for (const auto& r : joined.records()) {
    std::vector<double> values(r.features.begin() + first,
                               r.features.begin() + first + count);
    records.push_back({r.module_id, FeatureVector(std::move(values)),
                       r.defective});
  }
  return LabeledDataset(std::move(records), std::move(names), p, true);
}

std::vector<GridCell> load_cells(const ExperimentPlan& plan) {
  std::vector<GridCell> cells;
  for (const auto& d : plan.datasets) {
    if (d.data) {
      cells.push_back(
          {d.project,
           parse_table(*d.data, table_options(plan, d.metric_set, false))});
      continue;
    }
    LabeledDataset req =
        parse_table(*d.req, table_options(plan, Provenance::Requirement, true));
    LabeledDataset code =
        parse_table(*d.code, table_options(plan, Provenance::Code, true));
    LabeledDataset joined = natural_join(req, code);
    // An unlabeled side is evaluated on the joined modules, whose labels
    // come from the other side.
    if (!req.labeled()) {
      req = project_columns(joined, 0, req.dim(), req.feature_names(),
                            Provenance::Requirement);
    }
    if (!code.labeled()) {
      code = project_columns(joined, req.dim(), code.dim(),
                             code.feature_names(), Provenance::Code);
    }
    cells.push_back({d.project, std::move(req)});
    cells.push_back({d.project, std::move(code)});
    cells.push_back({d.project, std::move(joined)});
  }
  return cells;
}

}  // namespace

std::vector<RocPoint> execute_plan(const ExperimentPlan& plan,
                                   std::ostream& log) {
  plan.validate();
  const std::vector<GridCell> cells = load_cells(plan);
  const std::size_t total = cells.size() * plan.distances.size();

  std::vector<RocPoint> points;
  points.reserve(total);
  for (const auto& cell : cells) {
    const LabeledDataset data =
        normalize(cell.data, plan.normalization).first;
    for (DistanceKind kind : plan.distances) {
      ClusteringConfig config = plan.clustering;
      config.distance = kind;
      const ExperimentOutcome outcome = run_experiment(
          data, config, plan.strategy, plan.thresholds, cell.project);
      points.push_back(outcome.point);
      log << "[" << points.size() << "/" << total << "] " << cell.project
          << " " << to_string(data.provenance()) << " " << to_string(kind)
          << ": pd " << format_rate(outcome.point.pd) << " pf "
          << format_rate(outcome.point.pf) << " ("
          << to_string(outcome.point.region) << "), "
          << outcome.clustering.iterations << " iterations"
          << (outcome.clustering.converged ? "" : ", not converged") << "\n";
    }
  }
  return points;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

struct RunFlags {
  std::vector<std::string> data;
  std::string req;
  std::string code;
  std::string project;
  std::string metric_set = "code";
  std::vector<std::string> distances = {"euclidean", "canberra", "sorensen"};
  std::size_t k = 2;
  std::uint64_t seed = 1;
  std::size_t max_iter = 300;
  std::size_t threshold = 0;
  std::string normalize = "none";
  std::string strategy = "centroid";
  std::string id_col = "module_id";
  std::string label_col = "defects";
  std::string out;
  std::string roc_svg;
  std::string format = "csv";
  double eps = 0.05;
  double tau_high = 0.7;
  double tau_low = 0.4;
  double risk_pf_floor = 0.5;
  std::string plan;
};

struct JoinFlags {
  std::string req;
  std::string code;
  std::string out;
  std::string id_col = "module_id";
  std::string label_col = "defects";
};

struct SynthFlags {
  std::size_t n_clean = 50;
  std::size_t n_faulty = 50;
  std::size_t dim = 4;
  double separation = 10.0;
  std::uint64_t seed = 1;
  std::string out;
  std::string id_col = "module_id";
  std::string label_col = "defects";
};

struct AxiomsFlags {
  std::string distance = "euclidean";
  std::size_t sample_size = 50;
  std::uint64_t seed = 1;
  std::size_t dim = 4;
};

struct Flags {
  RunFlags run;
  JoinFlags join;
  SynthFlags synth;
  AxiomsFlags axioms;
};

const std::vector<std::string> kDistanceNames = {"euclidean", "manhattan",
                                                 "sorensen", "canberra"};

std::unique_ptr<CLI::App> build_app(Flags& f) {
  auto app = std::make_unique<CLI::App>(
      "Cluster software modules into fault-prone and fault-free groups with "
      "K-means and score the result against defect labels.",
      "faultclust");
  app->option_defaults()->always_capture_default();
  app->require_subcommand(1);

  auto* run = app->add_subcommand(
      "run", "Cluster each dataset under each distance and report PD/PF.");
  auto& r = f.run;
  run->add_option("--data", r.data, "Labeled metric table (repeatable)")
      ->default_str("");
  run->add_option("--req", r.req, "Requirement metric table");
  run->add_option("--code", r.code, "Code metric table");
  run->add_option("--project", r.project,
                  "Project name in results (default: file stem)");
  run->add_option("--metric-set", r.metric_set, "Metric set tag for --data")
      ->check(CLI::IsMember({"requirement", "code", "join", "synthetic"},
                            CLI::ignore_case));
  run->add_option("--distance", r.distances, "Distance measure (repeatable)")
      ->check(CLI::IsMember(kDistanceNames, CLI::ignore_case));
  run->add_option("--k", r.k, "Number of clusters");
  run->add_option("--seed", r.seed, "Seed for centroid initialization");
  run->add_option("--max-iter", r.max_iter, "Maximum K-means iterations");
  run->add_option("--threshold", r.threshold,
                  "Converge when at most this many points change cluster");
  run->add_option("--normalize", r.normalize, "Feature scaling")
      ->check(CLI::IsMember({"none", "minmax"}, CLI::ignore_case));
  run->add_option("--strategy", r.strategy, "Cluster labeling strategy")
      ->check(CLI::IsMember({"centroid", "majority"}, CLI::ignore_case));
  run->add_option("--id-col", r.id_col, "Module id column");
  run->add_option("--label-col", r.label_col, "Defect label column");
  run->add_option("--out", r.out, "Results table path (default: stdout)");
  run->add_option("--roc-svg", r.roc_svg, "Write the ROC scatter to this SVG");
  run->add_option("--format", r.format, "Results table format")
      ->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case));
  run->add_option("--eps", r.eps, "No-information band half-width");
  run->add_option("--tau-high", r.tau_high, "Risk-adverse PD floor");
  run->add_option("--tau-low", r.tau_low, "Cost-adverse PD/PF ceiling");
  run->add_option("--risk-pf-floor", r.risk_pf_floor,
                  "Risk-adverse PF floor");
  run->add_option("--plan", r.plan, "JSON plan file; flags override it");

  auto* join = app->add_subcommand(
      "join", "Natural join of requirement and code metric tables.");
  auto& j = f.join;
  join->add_option("--req", j.req, "Requirement metric table")->required();
  join->add_option("--code", j.code, "Code metric table")->required();
  join->add_option("--out", j.out, "Output table path (default: stdout)");
  join->add_option("--id-col", j.id_col, "Module id column");
  join->add_option("--label-col", j.label_col, "Defect label column");

  auto* synth = app->add_subcommand(
      "synth", "Write a synthetic labeled dataset with planted clusters.");
  auto& s = f.synth;
  synth->add_option("--n-clean", s.n_clean, "Number of clean modules");
  synth->add_option("--n-faulty", s.n_faulty, "Number of faulty modules");
  synth->add_option("--dim", s.dim, "Number of features");
  synth->add_option("--separation", s.separation,
                    "Offset of the faulty group in every feature");
  synth->add_option("--seed", s.seed, "Random seed");
  synth->add_option("--out", s.out, "Output table path (default: stdout)");
  synth->add_option("--id-col", s.id_col, "Module id column");
  synth->add_option("--label-col", s.label_col, "Defect label column");

  auto* axioms = app->add_subcommand(
      "axioms", "Check the metric axioms on a random nonnegative sample.");
  auto& a = f.axioms;
  axioms->add_option("--distance", a.distance, "Distance measure")
      ->check(CLI::IsMember(kDistanceNames, CLI::ignore_case));
  axioms->add_option("--sample-size", a.sample_size, "Number of vectors");
  axioms->add_option("--seed", a.seed, "Random seed");
  axioms->add_option("--dim", a.dim, "Vector dimension");

  return app;
}

bool given(CLI::App* app, const std::string& name) {
  return app->get_option(name)->count() > 0;
}

ExperimentPlan plan_from_flags(CLI::App* cmd, const RunFlags& r) {
  ExperimentPlan plan =
      r.plan.empty() ? ExperimentPlan{} : load_plan(fs::path(r.plan));

  if (given(cmd, "--data") || given(cmd, "--req") || given(cmd, "--code")) {
    plan.datasets.clear();
    const Provenance tag = parse_provenance(r.metric_set);
    for (const auto& p : r.data) {
      const fs::path path(p);
      plan.datasets.push_back(
          {r.project.empty() ? path.stem().string() : r.project, tag, path,
           std::nullopt, std::nullopt});
    }
    if (!r.req.empty() || !r.code.empty()) {
      if (r.req.empty() || r.code.empty()) {
        throw InvalidArgument("--req and --code must be given together");
      }
      const fs::path code(r.code);
      plan.datasets.push_back(
          {r.project.empty() ? code.stem().string() : r.project,
           Provenance::Join, std::nullopt, fs::path(r.req), code});
    }
  } else {
    for (auto& d : plan.datasets) {
      if (given(cmd, "--project")) d.project = r.project;
      if (given(cmd, "--metric-set") && d.data) {
        d.metric_set = parse_provenance(r.metric_set);
      }
    }
  }

  if (given(cmd, "--distance") || r.plan.empty()) {
    plan.distances.clear();
    for (const auto& d : r.distances) {
      plan.distances.push_back(parse_distance_kind(d));
    }
  }
  auto& c = plan.clustering;
  if (given(cmd, "--k") || r.plan.empty()) c.k = r.k;
  if (given(cmd, "--seed") || r.plan.empty()) c.seed = r.seed;
  if (given(cmd, "--max-iter") || r.plan.empty()) c.max_iterations = r.max_iter;
  if (given(cmd, "--threshold") || r.plan.empty()) {
    c.reassignment_threshold = r.threshold;
  }
  if (given(cmd, "--normalize") || r.plan.empty()) {
    plan.normalization = parse_normalization_mode(r.normalize);
  }
  if (given(cmd, "--strategy") || r.plan.empty()) {
    plan.strategy = parse_labeling_strategy(r.strategy);
  }
  if (given(cmd, "--id-col") || r.plan.empty()) plan.table.id_column = r.id_col;
  if (given(cmd, "--label-col") || r.plan.empty()) {
    plan.table.label_column = r.label_col;
  }
  auto& t = plan.thresholds;
  if (given(cmd, "--eps") || r.plan.empty()) t.eps = r.eps;
  if (given(cmd, "--tau-high") || r.plan.empty()) t.tau_high = r.tau_high;
  if (given(cmd, "--tau-low") || r.plan.empty()) t.tau_low = r.tau_low;
  if (given(cmd, "--risk-pf-floor") || r.plan.empty()) {
    t.risk_pf_floor = r.risk_pf_floor;
  }
  if (given(cmd, "--format") || r.plan.empty()) {
    plan.format = parse_table_format(r.format);
  }
  if (given(cmd, "--out")) plan.out = fs::path(r.out);
  if (given(cmd, "--roc-svg")) plan.roc_svg = fs::path(r.roc_svg);
  return plan;
}

int cmd_run(CLI::App* cmd, const RunFlags& flags, std::ostream& out,
            std::ostream& err) {
  const ExperimentPlan plan = plan_from_flags(cmd, flags);
  const std::vector<RocPoint> points = execute_plan(plan, err);
  const std::string table = emit_results_table(points, plan.format);
  if (plan.out) {
    write_file(*plan.out, table);
    err << "wrote " << plan.out->string() << "\n";
  } else {
    out << table;
  }
  if (plan.roc_svg) {
    emit_roc_svg(points, *plan.roc_svg);
    err << "wrote " << plan.roc_svg->string() << "\n";
  }
  return 0;
}

int cmd_join(const JoinFlags& f, std::ostream& out, std::ostream& err) {
  TableOptions opts;
  opts.id_column = f.id_col;
  opts.label_column = f.label_col;
  opts.label_optional = true;
  opts.provenance = Provenance::Requirement;
  const LabeledDataset req = parse_table(fs::path(f.req), opts);
  opts.provenance = Provenance::Code;
  const LabeledDataset code = parse_table(fs::path(f.code), opts);
  const LabeledDataset joined = natural_join(req, code);
  if (f.out.empty()) {
    write_table(joined, out, opts);
  } else {
    write_table(joined, fs::path(f.out), opts);
    err << "wrote " << joined.size() << " joined modules to " << f.out
        << "\n";
  }
  return 0;
}

int cmd_synth(const SynthFlags& f, std::ostream& out, std::ostream& err) {
  const LabeledDataset ds =
      generate_synthetic(f.n_clean, f.n_faulty, f.dim, f.separation, f.seed);
  TableOptions opts;
  opts.id_column = f.id_col;
  opts.label_column = f.label_col;
  if (f.out.empty()) {
    write_table(ds, out, opts);
  } else {
    write_table(ds, fs::path(f.out), opts);
    err << "wrote " << ds.size() << " modules to " << f.out << "\n";
  }
  return 0;
}

int cmd_axioms(const AxiomsFlags& f, std::ostream& out) {
  if (f.dim < 1) throw InvalidArgument("--dim must be at least 1");
  const DistanceKind kind = parse_distance_kind(f.distance);
  Rng rng(f.seed);
  std::vector<FeatureVector> sample;
  sample.reserve(f.sample_size);
  for (std::size_t i = 0; i < f.sample_size; ++i) {
    std::vector<double> v(f.dim);
    for (double& x : v) x = rng.uniform(0.0, 10.0);
    sample.emplace_back(std::move(v));
  }
  const AxiomReport report = check_metric_axioms(kind, sample);

  out << "distance: " << to_string(kind) << "\n"
      << "sample: " << f.sample_size << " vectors, dim " << f.dim << ", seed "
      << f.seed << "\n";
  for (const auto& v : report.verdicts) {
    out << to_string(v.axiom) << ": " << (v.passed ? "PASS" : "FAIL") << " ("
        << v.checked << " checked, " << v.violations << " violations)";
    if (v.witness) {
      const Witness& w = *v.witness;
      out << " witness (" << w.x << ", " << w.y;
      if (w.z) out << ", " << *w.z;
      out << ") lhs " << w.lhs << " rhs " << w.rhs;
    }
    out << "\n";
  }
  if (f.sample_size > 0) {
    out << "range: [" << report.min_value << ", " << report.max_value
        << "]\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Flags flags;
  auto app = build_app(flags);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app->parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app->exit(e, out, err);
  }

  try {
    if (auto* cmd = app->get_subcommand("run"); cmd->parsed()) {
      return cmd_run(cmd, flags.run, out, err);
    }
    if (app->get_subcommand("join")->parsed()) {
      return cmd_join(flags.join, out, err);
    }
    if (app->get_subcommand("synth")->parsed()) {
      return cmd_synth(flags.synth, out, err);
    }
    if (app->get_subcommand("axioms")->parsed()) {
      return cmd_axioms(flags.axioms, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

std::string help_text(const std::string& subcommand) {
  std::vector<std::string> args;
  if (!subcommand.empty()) args.push_back(subcommand);
  args.push_back("--help");
  std::ostringstream out, err;
  run(args, out, err);
  return out.str();
}

}  // namespace faultclust::cli
