#include "boa/store.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "boa/core.hpp"
#include "boa/parallel.hpp"
#include "boa/version.hpp"

namespace boa {

namespace {

constexpr char kBoasMagic[4] = {'B', 'O', 'A', 'S'};
constexpr std::uint32_t kBoasVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  write_u32(out, std::uint32_t(v & 0xffffffffull));
  write_u32(out, std::uint32_t(v >> 32));
}

std::uint32_t read_u32(std::istream& in, const std::string& origin) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (in.gcount() != 4) throw FormatError(origin + ": truncated store header");
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
         (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

std::uint64_t read_u64(std::istream& in, const std::string& origin) {
  std::uint64_t lo = read_u32(in, origin);
  std::uint64_t hi = read_u32(in, origin);
  return lo | (hi << 32);
}

std::string read_string(std::istream& in, const std::string& origin) {
  std::uint32_t len = read_u32(in, origin);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (in.gcount() != static_cast<std::streamsize>(len))
    throw FormatError(origin + ": truncated string field");
  return s;
}

}  // namespace

ScoreSource directory_score_source(std::filesystem::path dir) {
  return [dir = std::move(dir)](const std::string& video_id) -> MatF {
    for (const char* ext : {".boaf", ".csv"}) {
      auto path = dir / (video_id + ext);
      if (std::filesystem::exists(path)) return read_frame_scores(path).rows;
    }
    throw BuildError("no frame-score file for video \"" + video_id + "\" under " +
                     dir.string());
  };
}

const VecF* BoaStore::find(const std::string& video_id) const {
  auto it = entries.find(video_id);
  return it == entries.end() ? nullptr : &it->second;
}

BoaVector BoaStore::get(const std::string& video_id) const {
  const VecF* v = find(video_id);
  if (!v) throw NotFoundError("video \"" + video_id + "\" not in store");
  return BoaVector{v->cast<double>(), prov};
}

BoaStore build_store(const DatasetManifest& manifest, const ScoreSource& scores,
                     CodingMode coding, PoolingMode pooling, NormMode norm,
                     int workers) {
  validate_manifest(manifest);
  std::vector<std::string> ids = manifest.all_video_ids();  // sorted, unique
  std::vector<VecF> vectors(ids.size());
  std::vector<int> dims(ids.size(), 0);

  parallel_for(ids.size(), workers, [&](std::size_t i) {
    MatF frames;
    try {
      frames = scores(ids[i]);
    } catch (const BuildError&) {
      throw;
    } catch (const Error& e) {
      throw BuildError("scores for video \"" + ids[i] + "\": " + e.what());
    }
    if (frames.rows() == 0)
      throw BuildError("video \"" + ids[i] + "\" has no frames");
    BoaVector boa = make_boa(frames.cast<double>(), coding, pooling, norm);
    vectors[i] = boa.values.cast<float>();
    dims[i] = int(boa.values.size());
  });

  BoaStore store;
  store.prov = Provenance{coding, pooling, norm};
  store.tool_version = kToolVersion;
  store.dim = dims.empty() ? 0 : dims[0];
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (dims[i] != store.dim)
      throw BuildError("dimension mismatch: video \"" + ids[i] + "\" has dim " +
                       std::to_string(dims[i]) + ", expected " +
                       std::to_string(store.dim));
    store.entries.emplace(ids[i], std::move(vectors[i]));
  }
  return store;
}

void save_store(const BoaStore& store, std::ostream& out) {
  out.write(kBoasMagic, 4);
  write_u32(out, kBoasVersion);
  write_u32(out, std::uint32_t(store.dim));
  unsigned char prov[3] = {std::uint8_t(store.prov.coding),
                           std::uint8_t(store.prov.pooling),
                           std::uint8_t(store.prov.norm)};
  out.write(reinterpret_cast<const char*>(prov), 3);
  write_u32(out, std::uint32_t(store.tool_version.size()));
  out.write(store.tool_version.data(), store.tool_version.size());
  write_u64(out, store.created_unix);
  write_u32(out, std::uint32_t(store.entries.size()));
  for (const auto& [id, vec] : store.entries) {  // std::map iterates sorted
    write_u32(out, std::uint32_t(id.size()));
    out.write(id.data(), id.size());
    for (int j = 0; j < store.dim; ++j) {
      std::uint32_t u;
      float f = vec(j);
      std::memcpy(&u, &f, 4);
      write_u32(out, u);
    }
  }
}

void save_store(const BoaStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  save_store(store, out);
  if (!out) throw IoError("write failed for " + path.string());
}

BoaStore load_store(std::istream& in, const std::string& origin,
                    std::optional<Provenance> expected) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kBoasMagic, 4) != 0)
    throw FormatError(origin + ": bad magic (expected \"BOAS\")");
  std::uint32_t version = read_u32(in, origin);
  if (version != kBoasVersion)
    throw FormatError(origin + ": unsupported BOAS version " + std::to_string(version));
  BoaStore store;
  store.dim = int(read_u32(in, origin));
  unsigned char prov[3];
  in.read(reinterpret_cast<char*>(prov), 3);
  if (in.gcount() != 3) throw FormatError(origin + ": truncated provenance");
  if (prov[0] > 1 || prov[1] > 2 || prov[2] > 2)
    throw FormatError(origin + ": invalid provenance bytes");
  store.prov = Provenance{CodingMode(prov[0]), PoolingMode(prov[1]), NormMode(prov[2])};
  if (expected && !(*expected == store.prov))
    throw FormatError(origin + ": provenance mismatch: store is (" +
                      std::string(to_string(store.prov.coding)) + ", " +
                      to_string(store.prov.pooling) + ", " + to_string(store.prov.norm) +
                      "), expected (" + to_string(expected->coding) + ", " +
                      to_string(expected->pooling) + ", " + to_string(expected->norm) +
                      ")");
  store.tool_version = read_string(in, origin);
  store.created_unix = read_u64(in, origin);
  std::uint32_t count = read_u32(in, origin);
  std::string prev_id;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string id = read_string(in, origin);
    if (i > 0 && !(prev_id < id))
      throw FormatError(origin + ": entries not sorted by id at record " +
                        std::to_string(i));
    VecF vec(store.dim);
    for (int j = 0; j < store.dim; ++j) {
      std::uint32_t u = read_u32(in, origin);
      float f;
      std::memcpy(&f, &u, 4);
      vec(j) = f;
    }
    store.entries.emplace_hint(store.entries.end(), id, std::move(vec));
    prev_id = std::move(id);
  }
  char extra;
  if (in.read(&extra, 1); in.gcount() == 1)
    throw FormatError(origin + ": trailing bytes after last record");
  return store;
}

BoaStore load_store(const std::filesystem::path& path, std::optional<Provenance> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_store(in, path.string(), expected);
}

}  // namespace boa
