#include "boa/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace boa {

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

double MethodColumn::avg() const {
  if (avg_map) return *avg_map;
  return boa::avg_map(per_event_map);
}

void write_report_csv(const ReportTable& table, std::ostream& out) {
  out << "event_id";
  for (const auto& m : table.methods) out << ',' << m.name;
  out << "\n";
  for (std::size_t e = 0; e < table.event_ids.size(); ++e) {
    out << table.event_ids[e];
    for (const auto& m : table.methods) {
      if (e >= m.per_event_map.size())
        throw InvalidInputError("method \"" + m.name + "\" is missing event rows");
      out << ',' << pct(m.per_event_map[e]);
    }
    out << "\n";
  }
  out << "avg-mAP";
  for (const auto& m : table.methods) out << ',' << pct(m.avg());
  out << "\n";
}

void write_avg_map_svg(const ReportTable& table, std::ostream& out) {
  const int bar_w = 60, gap = 30, height = 260, plot_h = 200, base_y = 220;
  int width = gap + int(table.methods.size()) * (bar_w + gap);
  double max_v = 0;
  for (const auto& m : table.methods) max_v = std::max(max_v, m.avg());
  if (max_v <= 0) max_v = 1;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<line x1=\"0\" y1=\"" << base_y << "\" x2=\"" << width << "\" y2=\"" << base_y
      << "\" stroke=\"black\"/>\n";
  int x = gap;
  for (const auto& m : table.methods) {
    double v = m.avg();
    int h = int(std::lround(plot_h * v / max_v));
    out << "<rect x=\"" << x << "\" y=\"" << base_y - h << "\" width=\"" << bar_w
        << "\" height=\"" << h << "\" fill=\"#4878a8\"/>\n";
    out << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << base_y - h - 5
        << "\" text-anchor=\"middle\" font-size=\"12\">" << pct(v) << "</text>\n";
    out << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << base_y + 16
        << "\" text-anchor=\"middle\" font-size=\"12\">" << m.name << "</text>\n";
    x += bar_w + gap;
  }
  out << "</svg>\n";
}

void write_intervals_svg(const std::vector<NamedInterval>& comparisons,
                         std::ostream& out) {
  const int col_w = 90, height = 300, plot_h = 240, top = 20;
  int width = col_w * std::max<int>(1, int(comparisons.size())) + 60;
  double lo = 0, hi = 0;
  for (const auto& c : comparisons) {
    lo = std::min(lo, c.ci.lower);
    hi = std::max(hi, c.ci.upper);
  }
  if (hi == lo) hi = lo + 1;
  double span = (hi - lo) * 1.15;
  double pad = (span - (hi - lo)) / 2;
  double y_top = hi + pad, y_bot = lo - pad;
  auto y_of = [&](double v) {
    return top + plot_h * (y_top - v) / (y_top - y_bot);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<line x1=\"40\" y1=\"" << y_of(0) << "\" x2=\"" << width << "\" y2=\"" << y_of(0)
      << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"4\" y=\"" << y_of(0) + 4 << "\" font-size=\"11\">0</text>\n";
  int x = 60 + col_w / 2;
  for (const auto& c : comparisons) {
    double yl = y_of(c.ci.lower), yu = y_of(c.ci.upper), ym = y_of(c.ci.mean_diff);
    out << "<line x1=\"" << x << "\" y1=\"" << yl << "\" x2=\"" << x << "\" y2=\"" << yu
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double y : {yl, yu})
      out << "<line x1=\"" << x - 8 << "\" y1=\"" << y << "\" x2=\"" << x + 8
          << "\" y2=\"" << y << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out << "<circle cx=\"" << x << "\" cy=\"" << ym << "\" r=\"3\" fill=\"#c04040\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">" << c.label << "</text>\n";
    out << "<text x=\"" << x << "\" y=\"" << yu - 6
        << "\" text-anchor=\"middle\" font-size=\"10\">[" << num(c.ci.lower) << ", "
        << num(c.ci.upper) << "]</text>\n";
    x += col_w;
  }
  out << "</svg>\n";
}

void emit_report(const ReportTable& table, const std::vector<NamedInterval>& comparisons,
                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  auto open = [&](const char* name) {
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) throw IoError("cannot write " + (out_dir / name).string());
    return f;
  };
  {
    auto f = open("report.csv");
    write_report_csv(table, f);
  }
  {
    auto f = open("avg_map.svg");
    write_avg_map_svg(table, f);
  }
  {
    auto f = open("intervals.svg");
    write_intervals_svg(comparisons, f);
  }
}

ReportTable table_from_report(const EvalReport& report, const std::string& method_name) {
  ReportTable table;
  MethodColumn col;
  col.name = method_name;
  for (const auto& ev : report.events) {
    table.event_ids.push_back(ev.event_id);
    col.per_event_map.push_back(ev.map * 100.0);
  }
  col.avg_map = report.avg_map * 100.0;
  table.methods.push_back(std::move(col));
  return table;
}

std::vector<std::pair<std::string, double>> read_metric_column(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::pair<std::string, double>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected event_id,value");
    std::string id = line.substr(0, comma);
    double v;
    auto [p, ec] = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
    if (ec != std::errc()) {
      if (lineno == 1 && out.empty()) continue;  // header line
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": unparsable value");
    }
    out.emplace_back(std::move(id), v);
  }
  if (out.empty()) throw FormatError(path.string() + ": no metric rows");
  return out;
}

}  // namespace boa
