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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "faultclust/error.hpp"
#include "test_util.hpp"

namespace faultclust {
namespace {

ClusteringResult fixed_result(Assignment a, std::vector<FeatureVector> c) {
  return {std::move(a), CentroidSet(std::move(c)), 1, true, 0.0, {}};
}

TEST(LabelClustersTest, LargerNormIsFaultProne) {
  const std::vector<FeatureVector> data = {{0, 0}, {0, 1}, {10, 10}, {10, 11}};
  const auto r = fixed_result({0, 0, 1, 1}, {{0, 0.5}, {10, 10.5}});
  EXPECT_EQ(label_clusters(data, r, LabelingStrategy::CentroidMagnitude),
            (std::vector<bool>{false, true}));
  const auto swapped = fixed_result({1, 1, 0, 0}, {{10, 10.5}, {0, 0.5}});
  EXPECT_EQ(label_clusters(data, swapped, LabelingStrategy::CentroidMagnitude),
            (std::vector<bool>{true, false}));
}

TEST(LabelClustersTest, EqualNormsPickHigherIndex) {
  const std::vector<FeatureVector> data = {{1, 0}, {0, 1}};
  const auto r = fixed_result({0, 1}, {{1, 0}, {0, 1}});
  EXPECT_EQ(label_clusters(data, r, LabelingStrategy::CentroidMagnitude),
            (std::vector<bool>{false, true}));
}

TEST(LabelClustersTest, MagnitudeUsesL1AboveMeanForLargerK) {
  const std::vector<FeatureVector> data = {{1}, {2}, {9}};
  const auto r = fixed_result({0, 1, 2}, {{1}, {2}, {9}});
  // Mean norm 4: only the third cluster exceeds it.
  EXPECT_EQ(label_clusters(data, r, LabelingStrategy::CentroidMagnitude),
            (std::vector<bool>{false, false, true}));
}

TEST(LabelClustersTest, MagnitudeChoiceIsScaleInvariant) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto data = testing::random_sample(gen, 6, 3);
    const auto cents = testing::random_sample(gen, 2, 3);
    const double c = std::uniform_real_distribution<double>(0.01, 100.0)(gen);
    std::vector<FeatureVector> sdata, scents;
    for (const auto& p : data) {
      std::vector<double> v(p.begin(), p.end());
      for (double& x : v) x *= c;
      sdata.emplace_back(v);
    }
    for (const auto& p : cents) {
      std::vector<double> v(p.begin(), p.end());
      for (double& x : v) x *= c;
      scents.emplace_back(v);
    }
    const Assignment a = {0, 1, 0, 1, 0, 1};
    EXPECT_EQ(label_clusters(data, fixed_result(a, cents), LabelingStrategy::CentroidMagnitude),
              label_clusters(sdata, fixed_result(a, scents), LabelingStrategy::CentroidMagnitude));
  }
}

TEST(LabelClustersTest, MajorityTruth) {
  const std::vector<FeatureVector> data = {{1}, {2}, {3}, {8}, {9}};
  const auto r = fixed_result({0, 0, 0, 1, 1}, {{2}, {8.5}});
  const std::vector<bool> truth = {true, true, false, false, true};
  // Cluster 0: 2 of 3 defective. Cluster 1: 1 of 2, a tie.
  EXPECT_EQ(label_clusters(data, r, LabelingStrategy::MajorityTruth, &truth),
            (std::vector<bool>{true, true}));
  const std::vector<bool> clean = {false, false, true, false, false};
  EXPECT_EQ(label_clusters(data, r, LabelingStrategy::MajorityTruth, &clean),
            (std::vector<bool>{false, false}));
  EXPECT_THROW(label_clusters(data, r, LabelingStrategy::MajorityTruth), InvalidArgument);
}

TEST(LabelClustersTest, MajorityMaximizesCorrectCountOverBothMappings) {
  std::mt19937_64 gen(42);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + trial % 20;
    Assignment a(n);
    std::vector<bool> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = coin(gen) ? 1 : 0;
      truth[i] = coin(gen);
    }
    a[0] = 0;
    a[1] = 1;
    const std::vector<FeatureVector> data(n, FeatureVector{1});
    const auto r = fixed_result(a, {{1}, {2}});
    const auto majority = label_clusters(data, r, LabelingStrategy::MajorityTruth, &truth);
    auto correct = [&](const std::vector<bool>& map) {
      const auto m = confusion(truth, predict(a, map));
      return m.tp + m.tn;
    };
    const std::size_t best = std::max(correct({false, true}), correct({true, false}));
    EXPECT_GE(correct(majority), best);
  }
}

TEST(ConfusionTest, SpotValues) {
  EXPECT_EQ(confusion({true, true, false, false}, {true, false, true, false}),
            (ConfusionMatrix{1, 1, 1, 1}));
  const std::vector<bool> truth = {true, false, false};
  EXPECT_EQ(confusion(truth, truth), (ConfusionMatrix{1, 0, 2, 0}));
  EXPECT_EQ(confusion(truth, {true, true, true}), (ConfusionMatrix{1, 2, 0, 0}));
  EXPECT_THROW(confusion({true}, {true, false}), InvalidArgument);
  EXPECT_THROW(confusion({}, {}), InvalidArgument);
}

TEST(ConfusionTest, PermutationInvariantAndSumsToSize) {
  std::mt19937_64 gen(43);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial;
    std::vector<bool> truth(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = coin(gen);
      pred[i] = coin(gen);
    }
    const ConfusionMatrix m = confusion(truth, pred);
    EXPECT_EQ(m.total(), n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<bool> pt(n), pp(n);
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = truth[perm[i]];
      pp[i] = pred[perm[i]];
    }
    EXPECT_EQ(confusion(pt, pp), m);
    const Rates r = pd_pf(m);
    EXPECT_GE(r.pd, 0.0);
    EXPECT_LE(r.pd, 1.0);
    EXPECT_GE(r.pf, 0.0);
    EXPECT_LE(r.pf, 1.0);
  }
}

TEST(PdPfTest, SpotValuesAndZeroDenominators) {
  const Rates r = pd_pf({.tp = 9, .fp = 2, .tn = 8, .fn = 1});
  EXPECT_EQ(r.pd, 0.9);
  EXPECT_EQ(r.pf, 0.2);
  EXPECT_EQ(pd_pf({.tp = 0, .fp = 3, .tn = 4, .fn = 0}).pd, 0.0);
  EXPECT_EQ(pd_pf({.tp = 5, .fp = 0, .tn = 0, .fn = 0}).pf, 0.0);
  const Rates perfect = pd_pf({.tp = 4, .fp = 0, .tn = 6, .fn = 0});
  EXPECT_EQ(perfect.pd, 1.0);
  EXPECT_EQ(perfect.pf, 0.0);
}

TEST(ClassifyRegionTest, PublishedOperatingPoints) {
  EXPECT_EQ(classify_region(0, 0), RegionLabel::NoInformation);
  EXPECT_EQ(classify_region(0.99219, 0.79578), RegionLabel::RiskAdverse);
  EXPECT_EQ(classify_region(1, 0.99729), RegionLabel::RiskAdverse);
  EXPECT_EQ(classify_region(0.97368, 0.94762), RegionLabel::RiskAdverse);
  EXPECT_EQ(classify_region(1.0, 0.0), RegionLabel::Intermediate);
}

TEST(ClassifyRegionTest, BoundariesAtExactThresholds) {
  // Risk-adverse corner: both floors are inclusive.
  EXPECT_EQ(classify_region(0.7, 0.5), RegionLabel::RiskAdverse);
  EXPECT_EQ(classify_region(0.7, 0.7), RegionLabel::RiskAdverse);
  EXPECT_EQ(classify_region(0.69, 0.5), RegionLabel::Intermediate);
  EXPECT_EQ(classify_region(0.9, 0.49), RegionLabel::Intermediate);
  // Above the diagonal in the high corner is worse than chance.
  EXPECT_EQ(classify_region(0.8, 0.95), RegionLabel::WorseThanRandom);
  EXPECT_EQ(classify_region(0.95, 0.97), RegionLabel::NoInformation);
  // No-information band is inclusive; 0.25 and 0.5 differences are exact.
  EXPECT_EQ(classify_region(0.25, 0.5, {.eps = 0.25}), RegionLabel::NoInformation);
  EXPECT_EQ(classify_region(0.3, 0.3), RegionLabel::NoInformation);
  EXPECT_EQ(classify_region(0.1, 0.6), RegionLabel::WorseThanRandom);
  // Cost-adverse box is inclusive at tau_low.
  EXPECT_EQ(classify_region(0.4, 0.25), RegionLabel::CostAdverse);
  EXPECT_EQ(classify_region(0.375, 0.0), RegionLabel::CostAdverse);
  EXPECT_EQ(classify_region(0.5, 0.25), RegionLabel::Intermediate);
  EXPECT_EQ(classify_region(0.5, 0.0), RegionLabel::Intermediate);
  EXPECT_THROW(classify_region(1.1, 0.0), InvalidArgument);
  EXPECT_THROW(classify_region(0.5, -0.1), InvalidArgument);
}

TEST(ClassifyRegionTest, TotalOverTheUnitSquare) {
  std::size_t seen[5] = {};
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const RegionLabel r = classify_region(i / 100.0, j / 100.0);
      ++seen[static_cast<int>(r)];
    }
  }
  for (std::size_t n : seen) EXPECT_GT(n, 0u);
  EXPECT_EQ(seen[0] + seen[1] + seen[2] + seen[3] + seen[4], 101u * 101u);
}

TEST(EvaluateExperimentTest, PlantedClustersAreRecovered) {
  const auto ds = generate_synthetic(50, 50, 4, 10.0, 1);
  for (DistanceKind kind : kAllDistanceKinds) {
    ClusteringConfig cfg;
    cfg.distance = kind;
    const auto outcome = run_experiment(ds, cfg, LabelingStrategy::CentroidMagnitude, {}, "syn");
    EXPECT_GE(outcome.point.pd, 0.95) << to_string(kind);
    EXPECT_LE(outcome.point.pf, 0.05) << to_string(kind);
    EXPECT_EQ(outcome.point.tags,
              (ExperimentTags{"syn", Provenance::Synthetic, kind, cfg.seed}));

    // MajorityTruth on the same clustering gives the same mapping here.
    const auto data = ds.features();
    const auto truth = ds.labels();
    EXPECT_EQ(label_clusters(data, outcome.clustering, LabelingStrategy::MajorityTruth, &truth),
              outcome.fault_prone);
    EXPECT_EQ(evaluate_experiment(ds, cfg, LabelingStrategy::CentroidMagnitude, {}, "syn"),
              outcome.point);
  }
}

TEST(EvaluateExperimentTest, AllCleanDatasetHasZeroPd) {
  std::vector<ModuleRecord> records;
  std::mt19937_64 gen(44);
  for (int i = 0; i < 20; ++i) {
    records.push_back({"m" + std::to_string(i), testing::random_vector(gen, 3), false});
  }
  const LabeledDataset ds(records, {"a", "b", "c"}, Provenance::Code);
  const RocPoint p = evaluate_experiment(ds, {}, LabelingStrategy::CentroidMagnitude);
  EXPECT_EQ(p.pd, 0.0);
}

TEST(EvaluateExperimentTest, RequiresLabels) {
  const LabeledDataset ds({{"a", FeatureVector{1}, false}, {"b", FeatureVector{2}, false}},
                          {"x"}, Provenance::Code, false);
  EXPECT_THROW(evaluate_experiment(ds, {}, LabelingStrategy::CentroidMagnitude),
               InvalidArgument);
}

}  // namespace
}  // namespace faultclust
