#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boa/eval.hpp"

namespace boa {

// One method's per-event mAP column, in percent. avg_map may be supplied
// (e.g. a published figure) instead of recomputed from the column.
struct MethodColumn {
  std::string name;
  std::vector<double> per_event_map;
  std::optional<double> avg_map;

  double avg() const;
};

struct ReportTable {
  std::vector<std::string> event_ids;
  std::vector<MethodColumn> methods;
};

struct NamedInterval {
  std::string label;
  ConfidenceInterval ci;
};

// Writes report.csv, avg_map.svg and intervals.svg under out_dir.
// Percentages are rounded to 2 decimals at emission only.
void emit_report(const ReportTable& table, const std::vector<NamedInterval>& comparisons,
                 const std::filesystem::path& out_dir);

void write_report_csv(const ReportTable& table, std::ostream& out);
void write_avg_map_svg(const ReportTable& table, std::ostream& out);
void write_intervals_svg(const std::vector<NamedInterval>& comparisons,
                         std::ostream& out);

// Single-method convenience used by the `evaluate` subcommand.
ReportTable table_from_report(const EvalReport& report, const std::string& method_name);

// Plain event_id,value metric column; tolerates one header line.
std::vector<std::pair<std::string, double>> read_metric_column(
    const std::filesystem::path& path);

}  // namespace boa
