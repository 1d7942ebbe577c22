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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "faultclust/error.hpp"
#include "faultclust/evaluation.hpp"
#include "json.hpp"

namespace faultclust {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  std::string v(name);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "csv") return TableFormat::Csv;
  if (v == "json") return TableFormat::Json;
  throw InvalidArgument("unknown table format '" + std::string(name) +
                        "' (expected csv or json)");
}

std::string format_rate(double v) { return fixed(v, 5); }

std::string emit_results_table(std::span<const RocPoint> points,
                               TableFormat format) {
  if (points.empty()) throw InvalidArgument("no points to tabulate");
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "project,metric_set,distance,seed,pd,pf,region\n";
    for (const auto& p : points) {
      out << csv_cell(p.tags.project) << ',' << to_string(p.tags.metric_set)
          << ',' << to_string(p.tags.distance) << ',' << p.tags.seed << ','
          << format_rate(p.pd) << ',' << format_rate(p.pf) << ','
          << to_string(p.region) << '\n';
    }
    return out.str();
  }

  // Written by hand so pd/pf keep their fixed five decimals; nlohmann only
  // escapes the strings.
  auto str = [](std::string_view s) {
    return nlohmann::json(std::string(s)).dump();
  };
  out << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    out << (i ? ",\n" : "\n") << "  {"
        << "\"project\": " << str(p.tags.project)
        << ", \"metric_set\": " << str(to_string(p.tags.metric_set))
        << ", \"distance\": " << str(to_string(p.tags.distance))
        << ", \"seed\": " << p.tags.seed
        << ", \"pd\": " << format_rate(p.pd)
        << ", \"pf\": " << format_rate(p.pf)
        << ", \"region\": " << str(to_string(p.region)) << "}";
  }
  out << (points.empty() ? "]\n" : "\n]\n");
  return out.str();
}

namespace {

constexpr int kSize = 640;
constexpr double kLeft = 80.0;
constexpr double kTop = 50.0;
constexpr double kPlot = 500.0;

// Euclidean is drawn as a diamond, canberra a square, sorensen a triangle
// and manhattan a circle.
const char* color_for(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Euclidean:
      return "blue";
    case DistanceKind::Canberra:
      return "red";
    case DistanceKind::Sorensen:
      return "green";
    case DistanceKind::Manhattan:
      return "gray";
  }
  return "black";
}

double px(double pf) { return kLeft + pf * kPlot; }
double py(double pd) { return kTop + (1.0 - pd) * kPlot; }

// One marker element centred on (x, y).
std::string marker(DistanceKind kind, double x, double y,
                   const std::string& cls, const std::string& title) {
  const std::string attrs = " class=\"" + cls + "\" fill=\"" +
                            color_for(kind) +
                            "\" stroke=\"black\" stroke-width=\"0.75\"";
  const std::string body =
      title.empty() ? "/>" : "><title>" + xml_escape(title) + "</title></";
  auto close = [&](const char* tag) {
    return title.empty() ? body : body + tag + ">";
  };
  const auto f = [](double v) { return fixed(v, 2); };
  std::string s;
  switch (kind) {
    case DistanceKind::Euclidean:
      s = "<polygon points=\"" + f(x) + "," + f(y - 8) + " " + f(x + 8) +
          "," + f(y) + " " + f(x) + "," + f(y + 8) + " " + f(x - 8) + "," +
          f(y) + "\"" + attrs + close("polygon");
      break;
    case DistanceKind::Canberra:
      s = "<rect x=\"" + f(x - 6) + "\" y=\"" + f(y - 6) +
          "\" width=\"12.00\" height=\"12.00\"" + attrs + close("rect");
      break;
    case DistanceKind::Sorensen:
      s = "<polygon points=\"" + f(x) + "," + f(y - 8) + " " + f(x + 7) +
          "," + f(y + 6) + " " + f(x - 7) + "," + f(y + 6) + "\"" + attrs +
          close("polygon");
      break;
    case DistanceKind::Manhattan:
      s = "<circle cx=\"" + f(x) + "\" cy=\"" + f(y) + "\" r=\"6.00\"" +
          attrs + close("circle");
      break;
  }
  return s;
}

}  // namespace

std::string render_roc_svg(std::span<const RocPoint> points) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
    << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' '
    << kSize << "\">\n"
    << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << kSize
    << "\" height=\"" << kSize << "\" fill=\"white\"/>\n"
    << "<text x=\"" << kSize / 2 << "\" y=\"30\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"18\">ROC operating points</text>\n";

  // Grid and tick labels every 0.2.
  o << "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int i = 1; i < 5; ++i) {
    const double t = i / 5.0;
    o << "<line x1=\"" << fixed(px(t), 2) << "\" y1=\"" << fixed(py(0), 2)
      << "\" x2=\"" << fixed(px(t), 2) << "\" y2=\"" << fixed(py(1), 2)
      << "\"/>\n"
      << "<line x1=\"" << fixed(px(0), 2) << "\" y1=\"" << fixed(py(t), 2)
      << "\" x2=\"" << fixed(px(1), 2) << "\" y2=\"" << fixed(py(t), 2)
      << "\"/>\n";
  }
  o << "</g>\n";

  o << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = i / 5.0;
    o << "<text x=\"" << fixed(px(t), 2) << "\" y=\"" << fixed(py(0) + 18, 2)
      << "\" text-anchor=\"middle\">" << fixed(t, 1) << "</text>\n"
      << "<text x=\"" << fixed(px(0) - 8, 2) << "\" y=\""
      << fixed(py(t) + 4, 2) << "\" text-anchor=\"end\">" << fixed(t, 1)
      << "</text>\n";
  }
  o << "</g>\n";

  o << "<rect class=\"axes\" x=\"" << fixed(kLeft, 2) << "\" y=\""
    << fixed(kTop, 2) << "\" width=\"" << fixed(kPlot, 2) << "\" height=\""
    << fixed(kPlot, 2) << "\" fill=\"none\" stroke=\"black\" "
       "stroke-width=\"1.5\"/>\n"
    << "<line class=\"diagonal\" x1=\"" << fixed(px(0), 2) << "\" y1=\""
    << fixed(py(0), 2) << "\" x2=\"" << fixed(px(1), 2) << "\" y2=\""
    << fixed(py(1), 2)
    << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n"
    << "<text x=\"" << fixed(kLeft + kPlot / 2, 2) << "\" y=\""
    << fixed(py(0) + 45, 2)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">PF (probability of false alarm)</text>\n"
    << "<text x=\"25\" y=\"" << fixed(kTop + kPlot / 2, 2)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\" transform=\"rotate(-90 25 "
    << fixed(kTop + kPlot / 2, 2)
    << ")\">PD (probability of detection)</text>\n";

  // Legend in the lower-right corner of the plot, below the diagonal.
  const double lx = px(1) - 150;
  const double ly = py(0) - 110;
  o << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect x=\"" << fixed(lx, 2) << "\" y=\"" << fixed(ly, 2)
    << "\" width=\"140.00\" height=\"100.00\" fill=\"white\" "
       "stroke=\"#888888\"/>\n";
  const DistanceKind order[] = {DistanceKind::Euclidean,
                                DistanceKind::Canberra,
                                DistanceKind::Sorensen,
                                DistanceKind::Manhattan};
  for (std::size_t i = 0; i < 4; ++i) {
    const double y = ly + 18 + 22.0 * static_cast<double>(i);
    o << marker(order[i], lx + 18, y, "legend-marker", "") << "\n"
      << "<text x=\"" << fixed(lx + 34, 2) << "\" y=\"" << fixed(y + 4, 2)
      << "\">" << to_string(order[i]) << "</text>\n";
  }
  o << "</g>\n";

  o << "<g class=\"points\">\n";
  for (const auto& p : points) {
    const std::string title = p.tags.project + " " +
                              std::string(to_string(p.tags.metric_set)) +
                              " " + std::string(to_string(p.tags.distance)) +
                              " seed " + std::to_string(p.tags.seed) +
                              ": pd " + format_rate(p.pd) + ", pf " +
                              format_rate(p.pf) + " (" +
                              std::string(to_string(p.region)) + ")";
    o << marker(p.tags.distance, px(p.pf), py(p.pd), "marker", title) << "\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

void emit_roc_svg(std::span<const RocPoint> points,
                  const std::filesystem::path& path) {
  if (points.empty()) throw InvalidArgument("no points to plot");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << render_roc_svg(points);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace faultclust
