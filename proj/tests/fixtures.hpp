#pragma once

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "boa/ingest.hpp"

namespace fixtures {

// EVVE per-event (queries, db positives, db negatives).
inline const std::vector<std::array<int, 3>>& evve_counts() {
  static const std::vector<std::array<int, 3>> counts = {
      {13, 27, 122}, {32, 64, 143}, {9, 19, 60},   {36, 72, 27},  {87, 174, 227},
      {44, 88, 100}, {4, 10, 100},  {51, 104, 67}, {14, 29, 56},  {19, 39, 135},
      {215, 431, 67}, {73, 148, 9}, {23, 47, 10},
  };
  return counts;
}

// Published per-event mAP columns (percent).
inline const std::vector<double>& mmv_column() {
  static const std::vector<double> v = {23.90, 19.90, 8.70,  12.60, 23.40, 33.80, 12.40,
                                        25.40, 53.10, 45.50, 77.30, 36.60, 60.40};
  return v;
}
inline const std::vector<double>& cte_column() {
  static const std::vector<double> v = {13.90, 16.60, 12.80, 10.80, 26.20, 41.30, 25.20,
                                        25.70, 80.30, 40.90, 71.40, 29.70, 69.30};
  return v;
}
inline const std::vector<double>& mmv_cte_column() {
  static const std::vector<double> v = {24.60, 20.20, 11.10, 13.20, 26.00, 39.40, 21.20,
                                        28.10, 69.40, 48.60, 77.40, 37.10, 71.90};
  return v;
}
inline const std::vector<double>& boa_column() {
  static const std::vector<double> v = {29.26, 57.68, 26.73, 69.24, 54.60, 50.40, 13.86,
                                        67.98, 43.65, 33.87, 89.16, 92.54, 92.43};
  return v;
}

inline constexpr double kBoaAvgMap = 55.49;
inline constexpr double kMmvAvgMap = 33.40;
inline constexpr double kCteAvgMap = 35.20;
inline constexpr double kMmvCteAvgMap = 37.60;

// Manifest text with the EVVE event shape and synthetic video ids.
inline std::string evve_shaped_manifest_text() {
  std::ostringstream out;
  char buf[32];
  const auto& counts = evve_counts();
  for (std::size_t e = 0; e < counts.size(); ++e) {
    out << "event event" << (e + 1) << "\n";
    auto vid = [&](char role, int i) {
      std::snprintf(buf, sizeof(buf), "e%02zu_%c%03d", e + 1, role, i);
      return std::string(buf);
    };
    for (int q = 0; q < counts[e][0]; ++q) out << "query " << vid('q', q) << "\n";
    for (int p = 0; p < counts[e][1]; ++p) out << "db+ " << vid('p', p) << "\n";
    for (int n = 0; n < counts[e][2]; ++n) out << "db- " << vid('n', n) << "\n";
  }
  return out.str();
}

inline boa::DatasetManifest evve_shaped_manifest() {
  std::istringstream in(evve_shaped_manifest_text());
  return boa::parse_manifest(in, "<fixture>");
}

}  // namespace fixtures
