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

#include <gtest/gtest.h>

#include "faultclust/error.hpp"
#include "faultclust/evaluation.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace faultclust {
namespace {

RocPoint point(double pd, double pf, DistanceKind kind, std::string project = "cm1") {
  return {pd, pf, classify_region(pd, pf), {std::move(project), Provenance::Code, kind, 1}};
}

std::vector<RocPoint> three_points() {
  return {point(0.99219, 0.79578, DistanceKind::Euclidean),
          point(1.0, 0.0, DistanceKind::Canberra),
          point(0.25, 0.125, DistanceKind::Sorensen, "pc1")};
}

TEST(ResultsTableTest, CsvHeaderAndRow) {
  const std::vector<RocPoint> one = {point(0.99219, 0.79578, DistanceKind::Euclidean)};
  EXPECT_EQ(emit_results_table(one, TableFormat::Csv),
            "project,metric_set,distance,seed,pd,pf,region\n"
            "cm1,code,euclidean,1,0.99219,0.79578,risk_adverse\n");
}

TEST(ResultsTableTest, RatesUseFiveDecimals) {
  EXPECT_EQ(format_rate(0.99219), "0.99219");
  EXPECT_EQ(format_rate(1.0), "1.00000");
  EXPECT_EQ(format_rate(0.0), "0.00000");
  EXPECT_EQ(format_rate(2.0 / 3.0), "0.66667");
}

TEST(ResultsTableTest, CsvQuotesAwkwardProjectNames) {
  const std::vector<RocPoint> one = {point(1, 0, DistanceKind::Euclidean, "a,b")};
  const std::string csv = emit_results_table(one, TableFormat::Csv);
  EXPECT_NE(csv.find("\n\"a,b\",code,"), std::string::npos);
}

TEST(ResultsTableTest, JsonRoundTrips) {
  const auto pts = three_points();
  const auto doc = nlohmann::json::parse(emit_results_table(pts, TableFormat::Json));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(doc[i]["project"], pts[i].tags.project);
    EXPECT_EQ(doc[i]["metric_set"], "code");
    EXPECT_EQ(doc[i]["distance"], std::string(to_string(pts[i].tags.distance)));
    EXPECT_EQ(doc[i]["seed"], 1);
    EXPECT_EQ(doc[i]["pd"].get<double>(), pts[i].pd);
    EXPECT_EQ(doc[i]["pf"].get<double>(), pts[i].pf);
    EXPECT_EQ(doc[i]["region"], std::string(to_string(pts[i].region)));
  }
}

TEST(ResultsTableTest, JsonEscapesStrings) {
  const std::vector<RocPoint> one = {point(1, 0, DistanceKind::Euclidean, "a\"b\\c")};
  const auto doc = nlohmann::json::parse(emit_results_table(one, TableFormat::Json));
  EXPECT_EQ(doc[0]["project"], "a\"b\\c");
}

TEST(ResultsTableTest, EmptyInputThrows) {
  EXPECT_THROW(emit_results_table({}, TableFormat::Csv), InvalidArgument);
  EXPECT_THROW(parse_table_format("xml"), InvalidArgument);
  EXPECT_EQ(parse_table_format("JSON"), TableFormat::Json);
}

TEST(RocSvgTest, OneMarkerPerPoint) {
  const auto pts = three_points();
  const std::string svg = render_roc_svg(pts);
  EXPECT_EQ(testing::count_substr(svg, "class=\"marker\""), 3u);
  EXPECT_EQ(testing::count_substr(svg, "<title>"), 3u);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("viewBox=\"0 0 640 640\""), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST(RocSvgTest, PerfectPointSitsAtTopLeftOfPlot) {
  const std::vector<RocPoint> one = {point(1, 0, DistanceKind::Manhattan)};
  const std::string svg = render_roc_svg(one);
  EXPECT_NE(svg.find("<circle cx=\"80.00\" cy=\"50.00\" r=\"6.00\" class=\"marker\""),
            std::string::npos);
  EXPECT_NE(svg.find("<rect class=\"axes\" x=\"80.00\" y=\"50.00\" width=\"500.00\""),
            std::string::npos);
  // The chance diagonal runs from (pf 0, pd 0) to (pf 1, pd 1).
  EXPECT_NE(svg.find("x1=\"80.00\" y1=\"550.00\" x2=\"580.00\" y2=\"50.00\""),
            std::string::npos);
}

TEST(RocSvgTest, MarkerPositionScalesLinearly) {
  const std::vector<RocPoint> one = {point(0.25, 0.5, DistanceKind::Canberra)};
  const std::string svg = render_roc_svg(one);
  // Centre (330, 425), square side 12.
  EXPECT_NE(svg.find("<rect x=\"324.00\" y=\"419.00\" width=\"12.00\" height=\"12.00\" "
                     "class=\"marker\" fill=\"red\""),
            std::string::npos);
}

TEST(RocSvgTest, DistancesGetDistinctStyles) {
  std::vector<RocPoint> pts;
  for (DistanceKind k : kAllDistanceKinds) pts.push_back(point(0.5, 0.2, k));
  const std::string svg = render_roc_svg(pts);
  const std::string plotted = svg.substr(svg.find("<g class=\"points\">"));
  EXPECT_EQ(testing::count_substr(plotted, "fill=\"blue\""), 1u);
  EXPECT_EQ(testing::count_substr(plotted, "fill=\"red\""), 1u);
  EXPECT_EQ(testing::count_substr(plotted, "fill=\"green\""), 1u);
  EXPECT_EQ(testing::count_substr(plotted, "fill=\"gray\""), 1u);
  EXPECT_EQ(testing::count_substr(plotted, "<polygon"), 2u);
  EXPECT_EQ(testing::count_substr(plotted, "<circle"), 1u);
  EXPECT_EQ(testing::count_substr(plotted, "<rect"), 1u);
  // Legend lists every distance.
  for (DistanceKind k : kAllDistanceKinds) {
    EXPECT_NE(svg.find(">" + std::string(to_string(k)) + "</text>"), std::string::npos);
  }
}

TEST(RocSvgTest, ReproducibleBytes) {
  const auto pts = three_points();
  testing::ScratchDir dir("svg");
  emit_roc_svg(pts, dir / "a.svg");
  emit_roc_svg(pts, dir / "b.svg");
  const std::string a = testing::read_file(dir / "a.svg");
  EXPECT_EQ(a, testing::read_file(dir / "b.svg"));
  EXPECT_EQ(a, render_roc_svg(pts));
}

TEST(RocSvgTest, TitlesAreEscaped) {
  const std::vector<RocPoint> one = {point(1, 0, DistanceKind::Euclidean, "a<b&c")};
  const std::string svg = render_roc_svg(one);
  EXPECT_NE(svg.find("a&lt;b&amp;c"), std::string::npos);
  EXPECT_EQ(svg.find("a<b"), std::string::npos);
}

TEST(RocSvgTest, WriteFailuresAndEmptyInputThrow) {
  const auto pts = three_points();
  testing::ScratchDir dir("svg");
  EXPECT_THROW(emit_roc_svg(pts, dir / "missing" / "x.svg"), Error);
  EXPECT_THROW(emit_roc_svg({}, dir / "x.svg"), InvalidArgument);
}

}  // namespace
}  // namespace faultclust
