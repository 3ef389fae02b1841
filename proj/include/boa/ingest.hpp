#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "boa/types.hpp"

namespace boa {

// One video's per-frame attribute scores, as stored on disk.
// Rows are frames in temporal order, columns are attributes.
struct FrameScoreFile {
  std::string video_id;
  MatF rows;

  int dim() const { return static_cast<int>(rows.cols()); }
  int frame_count() const { return static_cast<int>(rows.rows()); }
};

enum class ScoreEncoding { boaf, csv };

// BOAF: magic "BOAF" | version u32=1 | dim u32 | frame_count u32 |
// id length u32 + UTF-8 bytes | frame_count*dim little-endian float32,
// row-major. CSV: "video_id,<id>" / "dim,<n>" / one row per frame.
// Reads auto-detect the encoding by magic bytes.
FrameScoreFile read_frame_scores(const std::filesystem::path& path);
void write_frame_scores(const FrameScoreFile& f, const std::filesystem::path& path,
                        ScoreEncoding enc = ScoreEncoding::boaf);

FrameScoreFile read_frame_scores(std::istream& in, const std::string& origin);
void write_frame_scores(const FrameScoreFile& f, std::ostream& out, ScoreEncoding enc);

enum class Relevance : std::uint8_t { positive, negative };

struct EventSpec {
  std::string event_id;
  std::vector<std::string> queries;
  std::vector<std::pair<std::string, Relevance>> database;

  int query_count() const { return static_cast<int>(queries.size()); }
  int positive_count() const;
  int negative_count() const;
  std::vector<std::string> positive_ids() const;
};

struct DatasetManifest {
  std::vector<EventSpec> events;

  const EventSpec* find_event(const std::string& event_id) const;
  std::vector<std::string> all_video_ids() const;
};

struct EventCounts {
  std::string event_id;
  int queries = 0;
  int db_positive = 0;
  int db_negative = 0;
};

// Line grammar: `event <id>` | `query <vid>` | `db+ <vid>` | `db- <vid>`,
// '#' starts a comment, videos attach to the most recent event line.
DatasetManifest parse_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest(std::istream& in, const std::string& origin);
void write_manifest(const DatasetManifest& m, const std::filesystem::path& path);
void write_manifest(const DatasetManifest& m, std::ostream& out);

// Throws ValidationError naming the offending event; parse_manifest calls
// this itself, it is exposed for manifests built in memory.
void validate_manifest(const DatasetManifest& m);

std::vector<EventCounts> count_report(const DatasetManifest& m);

// Fixed-rate sampling plan: which wall-clock timestamps an external frame
// extractor should grab.
struct SamplePlan {
  double duration = 0;
  double rate = 0;
  std::vector<double> timestamps;
};

SamplePlan sample_plan(double duration_seconds, double rate_hz = 1.0);

}  // namespace boa
