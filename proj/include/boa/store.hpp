#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "boa/ingest.hpp"
#include "boa/types.hpp"

namespace boa {

// Resolves a video id to its frame-score matrix. Throws BuildError for
// unknown ids.
using ScoreSource = std::function<MatF(const std::string& video_id)>;

// Looks for <dir>/<id>.boaf, then <dir>/<id>.csv.
ScoreSource directory_score_source(std::filesystem::path dir);

// Immutable id -> BoA map with the provenance all entries were built under.
// Entries are kept sorted by id, which makes saved stores byte-reproducible.
struct BoaStore {
  int dim = 0;
  Provenance prov;
  std::string tool_version;
  std::uint64_t created_unix = 0;  // 0 unless the builder stamps a time
  std::map<std::string, VecF> entries;

  const VecF* find(const std::string& video_id) const;
  // Widened to double, tagged with the store's provenance.
  BoaVector get(const std::string& video_id) const;
};

BoaStore build_store(const DatasetManifest& manifest, const ScoreSource& scores,
                     CodingMode coding, PoolingMode pooling, NormMode norm,
                     int workers = 1);

// BOAS container: magic "BOAS" | version u32=1 | dim u32 | 3 provenance
// bytes | tool version len u32 + bytes | created u64 | entry count u32 |
// (id len u32, id, dim float32) records sorted by id. Little-endian.
void save_store(const BoaStore& store, const std::filesystem::path& path);
void save_store(const BoaStore& store, std::ostream& out);
BoaStore load_store(const std::filesystem::path& path,
                    std::optional<Provenance> expected = std::nullopt);
BoaStore load_store(std::istream& in, const std::string& origin,
                    std::optional<Provenance> expected = std::nullopt);

}  // namespace boa
