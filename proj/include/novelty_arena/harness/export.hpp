// Copyright 2026 The Novelty Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Figure data (CSV) and optional self-contained SVG renders.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "novelty_arena/core/matrix_io.hpp"
#include "novelty_arena/core/number_format.hpp"
#include "novelty_arena/harness/experiment.hpp"
#include "novelty_arena/metrics/metrics.hpp"

namespace novelty_arena::harness {

enum class FigureKind { Heatmap, Boxplot, ImpactBars };

inline FigureKind parse_figure_kind(std::string_view s) {
  if (s == "heatmap") return FigureKind::Heatmap;
  if (s == "boxplot") return FigureKind::Boxplot;
  if (s == "impact_bars") return FigureKind::ImpactBars;
  throw InvalidArgument("unknown figure kind '" + std::string(s) + "'");
}

namespace svg {

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

// White at 0.5, red towards 1, blue towards 0.
inline std::string diverging_color(double v) {
  v = std::clamp(v, 0.0, 1.0);
  const double t = std::fabs(v - 0.5) * 2.0;
  const int fade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  char buf[16];
  if (v >= 0.5)
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", 255, fade, fade);
  else
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", fade, fade, 255);
  return buf;
}

inline std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) +
         "\" font-family=\"sans-serif\" font-size=\"10\">\n<rect width=\"100%\" height=\"100%\" "
         "fill=\"white\"/>\n";
}

inline std::string text(double x, double y, std::string_view s, std::string_view extra = {}) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\"" +
         (extra.empty() ? "" : " " + std::string(extra)) + ">" + escape(s) + "</text>\n";
}

inline std::string rect(double x, double y, double w, double h, std::string_view fill,
                        std::string_view extra = {}) {
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" fill=\"" + std::string(fill) + "\"" +
         (extra.empty() ? "" : " " + std::string(extra)) + "/>\n";
}

inline std::string line(double x1, double y1, double x2, double y2, std::string_view stroke = "black") {
  return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\" stroke=\"" + std::string(stroke) + "\"/>\n";
}

inline std::string heatmap(const AgentMatrix& m, std::string_view title) {
  const double cell = 16, left = 130, top = 140;
  const double n = static_cast<double>(m.size());
  std::string out = header(left + n * cell + 20, top + n * cell + 20);
  out += text(10, 16, title, "font-size=\"13\"");
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double y = top + static_cast<double>(i) * cell;
    out += text(left - 4, y + cell * 0.7, m.labels()[i].name, "text-anchor=\"end\"");
    const double x = left + static_cast<double>(i) * cell + cell * 0.7;
    out += "<text transform=\"translate(" + num(x) + "," + num(top - 4) +
           ") rotate(-60)\">" + escape(m.labels()[i].name) + "</text>\n";
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double v = m(i, j);
      out += rect(left + static_cast<double>(j) * cell, y, cell, cell,
                  i == j ? "#bbbbbb" : diverging_color(v),
                  "stroke=\"#eeeeee\"><title>" + escape(m.labels()[i].name) + " vs " +
                      escape(m.labels()[j].name) + ": " + format_double(v) + "</title></rect");
    }
  }
  return out + "</svg>\n";
}

inline std::string boxplot(const std::vector<metrics::RobustnessVector>& rows) {
  const double row_h = 16, left = 130, width = 400, top = 30;
  std::string out = header(left + width + 30, top + row_h * static_cast<double>(rows.size()) + 30);
  out += text(10, 16, "Per-agent robustness", "font-size=\"13\"");
  auto xpos = [&](double v) { return left + std::clamp(v, 0.0, 1.0) * width; };
  for (double tick = 0.0; tick <= 1.0001; tick += 0.25) {
    const double y_end = top + row_h * static_cast<double>(rows.size());
    out += line(xpos(tick), top, xpos(tick), y_end, "#dddddd");
    out += text(xpos(tick) - 6, y_end + 14, num(tick));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto s = metrics::five_number_summary(rows[i].values);
    const double y = top + static_cast<double>(i) * row_h, mid = y + row_h / 2;
    out += text(left - 4, mid + 3, rows[i].agent.name, "text-anchor=\"end\"");
    out += line(xpos(s.min), mid, xpos(s.q1), mid);
    out += line(xpos(s.q3), mid, xpos(s.max), mid);
    out += rect(xpos(s.q1), y + 3, std::max(1.0, xpos(s.q3) - xpos(s.q1)), row_h - 6, "#9ecae1",
                "stroke=\"black\"");
    out += line(xpos(s.median), y + 3, xpos(s.median), y + row_h - 3, "#d62728");
  }
  return out + "</svg>\n";
}

inline std::string impact_bars(const std::vector<metrics::ImpactResult>& impacts) {
  const double bar_w = 24, gap = 8, left = 50, top = 30, height = 240;
  double ymax = 0.0;
  for (const auto& im : impacts) ymax = std::max(ymax, im.mean_abs_delta + im.std_error);
  if (ymax <= 0.0) ymax = 1.0;
  const double w = left + static_cast<double>(impacts.size()) * (bar_w + gap) + 20;
  std::string out = header(w, top + height + 40);
  out += text(10, 16, "Global impact per novelty", "font-size=\"13\"");
  auto ypos = [&](double v) { return top + height - v / ymax * height; };
  out += line(left, top, left, top + height);
  out += line(left, top + height, w - 10, top + height);
  out += text(4, ypos(ymax) + 4, num(ymax));
  out += text(4, ypos(0) + 4, "0");
  for (std::size_t k = 0; k < impacts.size(); ++k) {
    const auto& im = impacts[k];
    const double x = left + gap + static_cast<double>(k) * (bar_w + gap);
    out += rect(x, ypos(im.mean_abs_delta), bar_w, ypos(0) - ypos(im.mean_abs_delta), "#4c72b0");
    const double cx = x + bar_w / 2;
    out += line(cx, ypos(im.mean_abs_delta - im.std_error), cx,
                ypos(im.mean_abs_delta + im.std_error));
    out += text(cx - 4, top + height + 14, std::to_string(im.novelty));
  }
  return out + "</svg>\n";
}

}  // namespace svg

// Writes the data behind one figure into `out_dir` and returns the file
// names written:
//   heatmap      heatmap_pre.csv and heatmap_post_<id>.csv (matrix grids)
//   boxplot      boxplot_summary.csv (five-number summaries) and
//                boxplot_values.csv (raw robustness vectors)
//   impact_bars  impact_bars.csv (novelty, mean, std_error)
// With `render` set, a matching .svg is written next to each figure.
inline std::vector<std::string> export_figure_data(const ExperimentBundle& b, FigureKind kind,
                                                   const std::filesystem::path& out_dir,
                                                   bool render = false) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& text) {
    write_text_file((out_dir / name).string(), text);
    written.push_back(name);
  };
  switch (kind) {
    case FigureKind::Heatmap: {
      if (!b.pre) throw IncompleteBundle("heatmap needs the pre-novelty matrix");
      write("heatmap_pre.csv", matrix_to_csv(*b.pre));
      if (render) write("heatmap_pre.svg", svg::heatmap(*b.pre, "Pre-novelty agent matrix"));
      for (const auto& [id, m] : b.post) {
        const auto stem = "heatmap_post_" + std::to_string(id);
        write(stem + ".csv", matrix_to_csv(m));
        if (render) write(stem + ".svg", svg::heatmap(m, "Agent matrix, novelty " + std::to_string(id)));
      }
      break;
    }
    case FigureKind::Boxplot: {
      if (b.report.robustness.empty()) throw IncompleteBundle("boxplot needs robustness vectors");
      std::string summary = "agent,min,q1,median,q3,max\n";
      std::string values = "agent";
      for (int id : b.report.novelties) values += ",novelty_" + std::to_string(id);
      values += '\n';
      for (const auto& rv : b.report.robustness) {
        const auto s = metrics::five_number_summary(rv.values);
        summary += csv::quote(rv.agent.name) + "," + format_double(s.min) + "," +
                   format_double(s.q1) + "," + format_double(s.median) + "," +
                   format_double(s.q3) + "," + format_double(s.max) + "\n";
        values += csv::quote(rv.agent.name);
        for (double v : rv.values) values += "," + format_double(v);
        values += '\n';
      }
      write("boxplot_summary.csv", summary);
      write("boxplot_values.csv", values);
      if (render) write("boxplot.svg", svg::boxplot(b.report.robustness));
      break;
    }
    case FigureKind::ImpactBars: {
      if (b.report.impacts.empty()) throw IncompleteBundle("impact bars need impact results");
      std::string out = "novelty,mean,std_error\n";
      for (const auto& im : b.report.impacts)
        out += std::to_string(im.novelty) + "," + format_double(im.mean_abs_delta) + "," +
               format_double(im.std_error) + "\n";
      write("impact_bars.csv", out);
      if (render) write("impact_bars.svg", svg::impact_bars(b.report.impacts));
      break;
    }
  }
  return written;
}

}  // namespace novelty_arena::harness
