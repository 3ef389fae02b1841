#include "boa/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace boa {

namespace {

constexpr char kBoafMagic[4] = {'B', 'O', 'A', 'F'};
constexpr std::uint32_t kBoafVersion = 1;

// Negative readings below this are real sign errors; above it they are
// numeric noise and get clamped to zero.
constexpr float kNegativeTolerance = -1e-6f;

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in, std::size_t& offset, const std::string& origin) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (in.gcount() != 4)
    throw FormatError(origin + ": truncated header at byte offset " +
                      std::to_string(offset));
  offset += 4;
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
         (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

float read_f32_le(const unsigned char* b) {
  std::uint32_t u = std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
                    (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
  float f;
  std::memcpy(&f, &u, 4);
  return f;
}

void write_f32_le(std::ostream& out, float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, 4);
  write_u32(out, u);
}

float checked_score(float v, const std::string& origin, int row, int col) {
  if (!std::isfinite(v))
    throw FormatError(origin + ": non-finite score at row " + std::to_string(row) +
                      ", column " + std::to_string(col));
  if (v < 0.0f) {
    if (v < kNegativeTolerance)
      throw FormatError(origin + ": negative score " + std::to_string(v) +
                        " at row " + std::to_string(row) + ", column " +
                        std::to_string(col));
    v = 0.0f;
  }
  return v;
}

std::string format_float(float v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

FrameScoreFile read_boaf(std::istream& in, const std::string& origin) {
  std::size_t offset = 0;
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kBoafMagic, 4) != 0)
    throw FormatError(origin + ": bad magic at byte offset 0 (expected \"BOAF\")");
  offset = 4;
  std::uint32_t version = read_u32(in, offset, origin);
  if (version != kBoafVersion)
    throw FormatError(origin + ": unsupported BOAF version " + std::to_string(version));
  std::uint32_t dim = read_u32(in, offset, origin);
  std::uint32_t frame_count = read_u32(in, offset, origin);
  if (dim == 0 || frame_count == 0)
    throw FormatError(origin + ": dim and frame_count must be positive");
  std::uint32_t id_len = read_u32(in, offset, origin);
  std::string video_id(id_len, '\0');
  in.read(video_id.data(), id_len);
  if (in.gcount() != static_cast<std::streamsize>(id_len))
    throw FormatError(origin + ": truncated video id at byte offset " +
                      std::to_string(offset));
  offset += id_len;

  FrameScoreFile f;
  f.video_id = video_id;
  f.rows.resize(frame_count, dim);
  std::vector<unsigned char> rowbuf(std::size_t(dim) * 4);
  for (std::uint32_t r = 0; r < frame_count; ++r) {
    in.read(reinterpret_cast<char*>(rowbuf.data()), rowbuf.size());
    if (in.gcount() != static_cast<std::streamsize>(rowbuf.size()))
      throw FormatError(origin + ": truncated payload at byte offset " +
                        std::to_string(offset + std::size_t(in.gcount())) +
                        " (declared frame_count=" + std::to_string(frame_count) +
                        ", payload ends in row " + std::to_string(r) + ")");
    for (std::uint32_t c = 0; c < dim; ++c)
      f.rows(r, c) = checked_score(read_f32_le(rowbuf.data() + std::size_t(c) * 4),
                                   origin, int(r), int(c));
    offset += rowbuf.size();
  }
  // Trailing garbage would make round trips ambiguous.
  char extra;
  if (in.read(&extra, 1); in.gcount() == 1)
    throw FormatError(origin + ": trailing bytes after payload at byte offset " +
                      std::to_string(offset));
  return f;
}

FrameScoreFile read_csv_scores(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("video_id,", 0) != 0)
    throw FormatError(origin + ": expected \"video_id,<id>\" on line 1");
  FrameScoreFile f;
  f.video_id = line.substr(9);
  if (!std::getline(in, line) || line.rfind("dim,", 0) != 0)
    throw FormatError(origin + ": expected \"dim,<n>\" on line 2");
  int dim = 0;
  try {
    dim = std::stoi(line.substr(4));
  } catch (const std::exception&) {
    throw FormatError(origin + ": unparsable dim on line 2");
  }
  if (dim <= 0) throw FormatError(origin + ": dim must be positive");

  std::vector<std::vector<float>> rows;
  int lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<float> row;
    row.reserve(dim);
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      float v;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc())
        throw FormatError(origin + ": unparsable number at row " +
                          std::to_string(int(rows.size())) + ", column " +
                          std::to_string(int(row.size())) + " (line " +
                          std::to_string(lineno) + ")");
      row.push_back(checked_score(v, origin, int(rows.size()), int(row.size())));
      p = next;
      if (p < end) {
        if (*p != ',')
          throw FormatError(origin + ": expected ',' on line " + std::to_string(lineno));
        ++p;
      }
    }
    if (static_cast<int>(row.size()) != dim)
      throw FormatError(origin + ": row " + std::to_string(int(rows.size())) +
                        " has " + std::to_string(row.size()) + " values, dim is " +
                        std::to_string(dim));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError(origin + ": no frame rows");
  f.rows.resize(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < dim; ++c) f.rows(r, c) = rows[r][c];
  return f;
}

}  // namespace

FrameScoreFile read_frame_scores(std::istream& in, const std::string& origin) {
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  std::streamsize got = in.gcount();
  in.clear();
  in.seekg(0);
  if (got == 4 && std::memcmp(magic, kBoafMagic, 4) == 0) return read_boaf(in, origin);
  return read_csv_scores(in, origin);
}

FrameScoreFile read_frame_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_frame_scores(in, path.string());
}

void write_frame_scores(const FrameScoreFile& f, std::ostream& out, ScoreEncoding enc) {
  if (f.rows.rows() == 0 || f.rows.cols() == 0)
    throw InvalidInputError("write_frame_scores: empty matrix");
  if (enc == ScoreEncoding::boaf) {
    out.write(kBoafMagic, 4);
    write_u32(out, kBoafVersion);
    write_u32(out, static_cast<std::uint32_t>(f.dim()));
    write_u32(out, static_cast<std::uint32_t>(f.frame_count()));
    write_u32(out, static_cast<std::uint32_t>(f.video_id.size()));
    out.write(f.video_id.data(), f.video_id.size());
    for (int r = 0; r < f.frame_count(); ++r)
      for (int c = 0; c < f.dim(); ++c) write_f32_le(out, f.rows(r, c));
  } else {
    out << "video_id," << f.video_id << "\n";
    out << "dim," << f.dim() << "\n";
    for (int r = 0; r < f.frame_count(); ++r) {
      for (int c = 0; c < f.dim(); ++c) {
        if (c) out << ',';
        out << format_float(f.rows(r, c));
      }
      out << "\n";
    }
  }
}

void write_frame_scores(const FrameScoreFile& f, const std::filesystem::path& path,
                        ScoreEncoding enc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_frame_scores(f, out, enc);
  if (!out) throw IoError("write failed for " + path.string());
}

int EventSpec::positive_count() const {
  return static_cast<int>(std::count_if(database.begin(), database.end(), [](auto& p) {
    return p.second == Relevance::positive;
  }));
}

int EventSpec::negative_count() const {
  return static_cast<int>(database.size()) - positive_count();
}

std::vector<std::string> EventSpec::positive_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, rel] : database)
    if (rel == Relevance::positive) out.push_back(id);
  return out;
}

const EventSpec* DatasetManifest::find_event(const std::string& event_id) const {
  for (const auto& e : events)
    if (e.event_id == event_id) return &e;
  return nullptr;
}

std::vector<std::string> DatasetManifest::all_video_ids() const {
  std::set<std::string> ids;
  for (const auto& e : events) {
    ids.insert(e.queries.begin(), e.queries.end());
    for (const auto& [id, rel] : e.database) ids.insert(id);
  }
  return {ids.begin(), ids.end()};
}

void validate_manifest(const DatasetManifest& m) {
  if (m.events.empty()) throw ValidationError("manifest has no events");
  std::set<std::string> event_ids;
  for (const auto& e : m.events) {
    if (!event_ids.insert(e.event_id).second)
      throw ValidationError("duplicate event id \"" + e.event_id + "\"");
    std::set<std::string> queries(e.queries.begin(), e.queries.end());
    if (queries.size() != e.queries.size())
      throw ValidationError("event \"" + e.event_id + "\": duplicate query video id");
    std::set<std::string> db;
    for (const auto& [id, rel] : e.database) {
      if (!db.insert(id).second)
        throw ValidationError("event \"" + e.event_id + "\": duplicate database video id \"" +
                              id + "\"");
      if (queries.count(id))
        throw ValidationError("event \"" + e.event_id + "\": video \"" + id +
                              "\" appears in both queries and database");
    }
    if (e.queries.empty())
      throw ValidationError("event \"" + e.event_id + "\" has no queries");
    if (e.database.empty())
      throw ValidationError("event \"" + e.event_id + "\" has no database videos");
    if (e.positive_count() == 0)
      throw ValidationError("event \"" + e.event_id + "\" has no positive database videos");
  }
}

DatasetManifest parse_manifest(std::istream& in, const std::string& origin) {
  DatasetManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string keyword, arg;
    if (!(ls >> keyword)) continue;
    if (!(ls >> arg))
      throw FormatError(origin + ":" + std::to_string(lineno) + ": missing argument after \"" +
                        keyword + "\"");
    std::string extra;
    if (ls >> extra)
      throw FormatError(origin + ":" + std::to_string(lineno) + ": unexpected token \"" +
                        extra + "\"");
    if (keyword == "event") {
      m.events.push_back(EventSpec{arg, {}, {}});
    } else if (keyword == "query" || keyword == "db+" || keyword == "db-") {
      if (m.events.empty())
        throw FormatError(origin + ":" + std::to_string(lineno) +
                          ": video line before any event line");
      auto& ev = m.events.back();
      if (keyword == "query")
        ev.queries.push_back(arg);
      else
        ev.database.emplace_back(arg, keyword == "db+" ? Relevance::positive
                                                       : Relevance::negative);
    } else {
      throw FormatError(origin + ":" + std::to_string(lineno) + ": unknown keyword \"" +
                        keyword + "\"");
    }
  }
  validate_manifest(m);
  return m;
}

DatasetManifest parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_manifest(in, path.string());
}

void write_manifest(const DatasetManifest& m, std::ostream& out) {
  for (const auto& e : m.events) {
    out << "event " << e.event_id << "\n";
    for (const auto& q : e.queries) out << "query " << q << "\n";
    for (const auto& [id, rel] : e.database)
      out << (rel == Relevance::positive ? "db+ " : "db- ") << id << "\n";
  }
}

void write_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_manifest(m, out);
}

std::vector<EventCounts> count_report(const DatasetManifest& m) {
  std::vector<EventCounts> out;
  out.reserve(m.events.size());
  for (const auto& e : m.events)
    out.push_back({e.event_id, e.query_count(), e.positive_count(), e.negative_count()});
  return out;
}

SamplePlan sample_plan(double duration_seconds, double rate_hz) {
  if (!(duration_seconds > 0))
    throw InvalidInputError("sample_plan: duration must be positive");
  if (!(rate_hz > 0)) throw InvalidInputError("sample_plan: rate must be positive");
  SamplePlan plan;
  plan.duration = duration_seconds;
  plan.rate = rate_hz;
  // k = 0 .. floor(duration*rate - eps); an exact multiple stops one short of
  // the duration itself, and any positive duration yields at least t=0.
  const double eps = 1e-9;
  long last = static_cast<long>(std::floor(duration_seconds * rate_hz - eps));
  if (last < 0) last = 0;
  plan.timestamps.reserve(std::size_t(last) + 1);
  for (long k = 0; k <= last; ++k) plan.timestamps.push_back(double(k) / rate_hz);
  return plan;
}

}  // namespace boa
