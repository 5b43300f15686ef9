#include "nsbench/bench/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>

#include "nsbench/bench/time_to_target.hpp"
#include "nsbench/errors.hpp"
#include "nsbench/optim/runner.hpp"

namespace nsbench::bench {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 150.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1",
                                    "#9c755f"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string escape(const std::string& s) {
  std::string out;
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

std::size_t algorithm_rank(const std::string& name) {
  for (std::size_t i = 0; i < optim::kAlgorithmNames.size(); ++i) {
    if (optim::kAlgorithmNames[i] == name) return i;
  }
  return optim::kAlgorithmNames.size();
}

bool algorithm_less(const std::string& a, const std::string& b) {
  const auto ra = algorithm_rank(a);
  const auto rb = algorithm_rank(b);
  return ra != rb ? ra < rb : a < b;
}

struct Layout {
  std::vector<std::string> problems;
  std::vector<std::string> algorithms;
};

Layout layout_of(const std::vector<optim::TrajectoryRecord>& records) {
  Layout l;
  for (const auto& r : records) {
    if (std::find(l.problems.begin(), l.problems.end(), r.meta.problem) == l.problems.end())
      l.problems.push_back(r.meta.problem);
    if (std::find(l.algorithms.begin(), l.algorithms.end(), r.meta.algorithm) == l.algorithms.end())
      l.algorithms.push_back(r.meta.algorithm);
  }
  std::sort(l.problems.begin(), l.problems.end(), natural_less);
  std::sort(l.algorithms.begin(), l.algorithms.end(), algorithm_less);
  return l;
}

// Cell value per (problem, algorithm); nullopt marks a missing or special cell.
struct Cell {
  std::optional<double> value;
  std::string note;  // text shown above the bar or in place of it
  std::string marker_class;
};

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
};

Axis axis_for(const std::vector<std::vector<Cell>>& cells) {
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& row : cells) {
    for (const auto& c : row) {
      if (c.value && std::isfinite(*c.value)) {
        lo = std::min(lo, *c.value);
        hi = std::max(hi, *c.value);
      }
    }
  }
  if (hi == lo) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  if (hi > 0.0) hi += pad;
  if (lo < 0.0) lo -= pad;
  return {lo, hi};
}

std::string render(const std::string& title, const std::string& y_label, const Layout& layout,
                   const std::vector<std::vector<Cell>>& cells) {
  const Axis axis = axis_for(cells);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto y_of = [&](double v) { return kTop + plot_h * (axis.hi - v) / (axis.hi - axis.lo); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
         "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\" font-family=\"DejaVu Sans, sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"#ffffff\"/>\n";
  svg += "<text class=\"title\" x=\"" + px(kLeft + plot_w / 2) + "\" y=\"28.00\" font-size=\"16\" text-anchor=\"middle\">" +
         escape(title) + "</text>\n";

  // Axes and ticks.
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) + "\" y2=\"" + px(kTop + plot_h) +
         "\" stroke=\"#000000\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = axis.lo + (axis.hi - axis.lo) * i / 5.0;
    const double y = y_of(v);
    svg += "<line x1=\"" + px(kLeft - 4) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kLeft + plot_w) + "\" y2=\"" + px(y) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(y + 4) + "\" font-size=\"11\" text-anchor=\"end\">" +
           fmt("%.4g", v) + "</text>\n";
  }
  const double zero_y = y_of(std::clamp(0.0, axis.lo, axis.hi));
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(zero_y) + "\" x2=\"" + px(kLeft + plot_w) + "\" y2=\"" +
         px(zero_y) + "\" stroke=\"#000000\"/>\n";
  svg += "<text x=\"18.00\" y=\"" + px(kTop + plot_h / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18.00 " +
         px(kTop + plot_h / 2) + ")\">" + escape(y_label) + "</text>\n";

  const double group_w = plot_w / static_cast<double>(layout.problems.size());
  const double bar_w = 0.8 * group_w / static_cast<double>(layout.algorithms.size());
  for (std::size_t p = 0; p < layout.problems.size(); ++p) {
    const double gx = kLeft + group_w * static_cast<double>(p) + 0.1 * group_w;
    svg += "<text class=\"group\" x=\"" + px(kLeft + group_w * (static_cast<double>(p) + 0.5)) + "\" y=\"" +
           px(kTop + plot_h + 20) + "\" font-size=\"12\" text-anchor=\"middle\">" + escape(layout.problems[p]) +
           "</text>\n";
    for (std::size_t a = 0; a < layout.algorithms.size(); ++a) {
      const Cell& c = cells[p][a];
      const double x = gx + bar_w * static_cast<double>(a);
      const std::string color = kPalette[algorithm_rank(layout.algorithms[a]) % std::size(kPalette)];
      const std::string ids = "data-problem=\"" + escape(layout.problems[p]) + "\" data-algorithm=\"" +
                              escape(layout.algorithms[a]) + "\"";
      if (c.value && std::isfinite(*c.value)) {
        const double y0 = y_of(std::max(*c.value, 0.0));
        const double y1 = y_of(std::min(*c.value, 0.0));
        svg += "<rect class=\"bar\" " + ids + " x=\"" + px(x) + "\" y=\"" + px(y0) + "\" width=\"" + px(bar_w * 0.92) +
               "\" height=\"" + px(std::max(y1 - y0, 0.0)) + "\" fill=\"" + color + "\"/>\n";
        const std::string label = c.note.empty() ? fmt("%.4g", *c.value) : c.note;
        svg += "<text class=\"value\" x=\"" + px(x + bar_w * 0.46) + "\" y=\"" + px(y0 - 4) +
               "\" font-size=\"9\" text-anchor=\"middle\">" + escape(label) + "</text>\n";
      } else if (!c.marker_class.empty()) {
        svg += "<g class=\"" + c.marker_class + "\" " + ids + ">\n";
        svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(zero_y - 12) + "\" x2=\"" + px(x + bar_w * 0.92) + "\" y2=\"" +
               px(zero_y) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(zero_y) + "\" x2=\"" + px(x + bar_w * 0.92) + "\" y2=\"" +
               px(zero_y - 12) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + px(x + bar_w * 0.46) + "\" y=\"" + px(zero_y - 16) +
               "\" font-size=\"9\" text-anchor=\"middle\">" + escape(c.note) + "</text>\n";
        svg += "</g>\n";
      }
    }
  }

  // Legend.
  for (std::size_t a = 0; a < layout.algorithms.size(); ++a) {
    const double y = kTop + 20.0 * static_cast<double>(a);
    const std::string color = kPalette[algorithm_rank(layout.algorithms[a]) % std::size(kPalette)];
    svg += "<rect class=\"legend\" x=\"" + px(kWidth - kRight + 20) + "\" y=\"" + px(y) +
           "\" width=\"12.00\" height=\"12.00\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + px(kWidth - kRight + 38) + "\" y=\"" + px(y + 10) + "\" font-size=\"12\">" +
           escape(layout.algorithms[a]) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      std::string_view da(a.data() + i, ie - i);
      std::string_view db(b.data() + j, je - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
  return a < b;
}

std::string render_final_value_svg(const std::vector<optim::TrajectoryRecord>& records) {
  NSBENCH_REQUIRE(!records.empty(), "final value chart: no records");
  const Layout layout = layout_of(records);
  std::vector<std::vector<Cell>> cells(layout.problems.size(), std::vector<Cell>(layout.algorithms.size()));
  for (std::size_t p = 0; p < layout.problems.size(); ++p) {
    for (std::size_t a = 0; a < layout.algorithms.size(); ++a) {
      double sum = 0.0;
      int count = 0;
      for (const auto& r : records) {
        if (r.meta.problem == layout.problems[p] && r.meta.algorithm == layout.algorithms[a] && !r.rows.empty()) {
          sum += r.rows.back().f;
          ++count;
        }
      }
      if (count == 0) continue;
      const double mean = sum / count;
      Cell& c = cells[p][a];
      if (std::isfinite(mean)) {
        c.value = mean;
      } else {
        c.note = "not finite";
        c.marker_class = "not-finite";
      }
    }
  }
  return render("Final objective value", "final value", layout, cells);
}

std::string render_time_svg(const std::vector<optim::TrajectoryRecord>& records) {
  NSBENCH_REQUIRE(!records.empty(), "time chart: no records");
  const Layout layout = layout_of(records);

  std::map<std::pair<std::string, std::int64_t>, double> targets;
  for (const auto& r : records) {
    if (r.meta.algorithm == "adam" && !r.rows.empty()) targets[{r.meta.problem, r.meta.repetition}] = r.rows.back().f;
  }

  std::vector<std::vector<Cell>> cells(layout.problems.size(), std::vector<Cell>(layout.algorithms.size()));
  for (std::size_t p = 0; p < layout.problems.size(); ++p) {
    for (std::size_t a = 0; a < layout.algorithms.size(); ++a) {
      double sum = 0.0;
      int reached = 0;
      int total = 0;
      for (const auto& r : records) {
        if (r.meta.problem != layout.problems[p] || r.meta.algorithm != layout.algorithms[a] || r.rows.empty()) continue;
        auto it = targets.find({r.meta.problem, r.meta.repetition});
        if (it == targets.end()) {
          throw ConfigError("time chart: no adam record for problem '" + r.meta.problem + "' repetition " +
                            std::to_string(r.meta.repetition) +
                            "; the target of every run is the final value reached by adam on the same problem");
        }
        ++total;
        const TimeToTarget t = time_to_target(r, it->second);
        if (t.reached) {
          sum += *t.seconds;
          ++reached;
        }
      }
      if (total == 0) continue;
      Cell& c = cells[p][a];
      if (reached == 0) {
        c.note = "not reached";
        c.marker_class = "not-reached";
        continue;
      }
      c.value = sum / reached;
      if (reached < total) c.note = fmt("%.4g", *c.value) + " (" + std::to_string(reached) + "/" + std::to_string(total) + ")";
    }
  }
  return render("Time to reach the final adam value", "algorithm seconds", layout, cells);
}

void emit_final_value_chart(const std::vector<optim::TrajectoryRecord>& records, const std::string& path) {
  write_text(render_final_value_svg(records), path);
}

void emit_time_chart(const std::vector<optim::TrajectoryRecord>& records, const std::string& path) {
  write_text(render_time_svg(records), path);
}

}  // namespace nsbench::bench
