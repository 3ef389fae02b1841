#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "boa/core.hpp"
#include "boa/store.hpp"
#include "boa/synth.hpp"

using namespace boa;

namespace {

DatasetManifest two_video_manifest() {
  std::istringstream in("event e1\nquery va\ndb+ vb\n");
  return parse_manifest(in, "<mem>");
}

ScoreSource memory_source(std::map<std::string, MatF> files) {
  return [files = std::move(files)](const std::string& id) -> MatF {
    auto it = files.find(id);
    if (it == files.end()) throw BuildError("no frame-score file for video \"" + id + "\"");
    return it->second;
  };
}

BoaStore random_store(int entries, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0, 1);
  BoaStore store;
  store.dim = dim;
  store.prov = {CodingMode::soft, PoolingMode::max, NormMode::none};
  store.tool_version = "test";
  for (int i = 0; i < entries; ++i) {
    VecF v(dim);
    for (int j = 0; j < dim; ++j) v(j) = u(rng);
    store.entries.emplace("v" + std::to_string(i), std::move(v));
  }
  return store;
}

}  // namespace

TEST_CASE("build_store composes the core pipeline per video") {
  MatF a(2, 2), b(1, 2);
  a << 0.2f, 0.8f, 0.6f, 0.4f;
  b << 0.3f, 0.1f;
  BoaStore store =
      build_store(two_video_manifest(), memory_source({{"va", a}, {"vb", b}}),
                  CodingMode::soft, PoolingMode::max, NormMode::none);
  CHECK(store.entries.size() == 2);
  CHECK(store.dim == 2);
  // entries are stored as float32
  CHECK(store.get("va").values.isApprox(Eigen::Vector2d(0.6, 0.8), 1e-6));
  CHECK(store.get("vb").values.isApprox(Eigen::Vector2d(0.3, 0.1), 1e-6));
  CHECK(store.get("va").prov == store.prov);
}

TEST_CASE("build_store names missing videos") {
  MatF a(1, 2);
  a << 0.1f, 0.2f;
  CHECK_THROWS_WITH_AS(
      static_cast<void>(build_store(two_video_manifest(), memory_source({{"va", a}}),
                                    CodingMode::soft, PoolingMode::max, NormMode::none)),
      doctest::Contains("vb"), BuildError);
}

TEST_CASE("build_store rejects dim mismatch across videos") {
  MatF a(1, 2), b(1, 3);
  a << 0.1f, 0.2f;
  b << 0.1f, 0.2f, 0.3f;
  CHECK_THROWS_AS(
      static_cast<void>(build_store(two_video_manifest(), memory_source({{"va", a}, {"vb", b}}),
                                    CodingMode::soft, PoolingMode::max, NormMode::none)),
      BuildError);
}

TEST_CASE("store get") {
  BoaStore store = random_store(5, 3, 21);
  CHECK(store.get("v2").values.size() == 3);
  CHECK(store.find("missing") == nullptr);
  CHECK_THROWS_AS(static_cast<void>(store.get("missing")), NotFoundError);
  // reads do not mutate
  CHECK(store.get("v2").values == store.get("v2").values);
}

TEST_CASE("BOAS save/load round trip is bit-exact") {
  BoaStore store = random_store(100, 7, 77);
  store.created_unix = 1234567;
  std::ostringstream first;
  save_store(store, first);
  std::istringstream in(first.str());
  BoaStore loaded = load_store(in, "<mem>");
  CHECK(loaded.dim == store.dim);
  CHECK(loaded.prov == store.prov);
  CHECK(loaded.tool_version == store.tool_version);
  CHECK(loaded.created_unix == store.created_unix);
  REQUIRE(loaded.entries.size() == store.entries.size());
  std::ostringstream second;
  save_store(loaded, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("loading twice yields identical stores") {
  BoaStore store = random_store(10, 4, 3);
  std::ostringstream out;
  save_store(store, out);
  std::istringstream in1(out.str()), in2(out.str());
  BoaStore a = load_store(in1, "<mem>"), b = load_store(in2, "<mem>");
  std::ostringstream ra, rb;
  save_store(a, ra);
  save_store(b, rb);
  CHECK(ra.str() == rb.str());
}

TEST_CASE("bad store magic is rejected") {
  std::istringstream in("BOAXsomething");
  CHECK_THROWS_WITH_AS(static_cast<void>(load_store(in, "<mem>")),
                       doctest::Contains("bad magic"), FormatError);
}

TEST_CASE("provenance expectation flags reject a mismatched store") {
  BoaStore store = random_store(3, 2, 5);
  std::ostringstream out;
  save_store(store, out);
  std::istringstream in(out.str());
  Provenance other{CodingMode::soft, PoolingMode::max, NormMode::l2};
  CHECK_THROWS_WITH_AS(static_cast<void>(load_store(in, "<mem>", other)),
                       doctest::Contains("provenance mismatch"), FormatError);
}

TEST_CASE("store build is deterministic across worker counts") {
  SynthConfig cfg;
  cfg.seed = 5;
  cfg.events = 3;
  cfg.dim = 24;
  cfg.signature_size = 4;
  cfg.sigma = 0.4;
  SynthOutput data = generate(cfg);
  std::map<std::string, MatF> files;
  for (const auto& f : data.scores) files[f.video_id] = f.rows;
  auto source = memory_source(files);

  std::string reference;
  for (int workers : {1, 2, 7}) {
    BoaStore store = build_store(data.manifest, source, CodingMode::soft,
                                 PoolingMode::max, NormMode::none, workers);
    std::ostringstream out;
    save_store(store, out);
    if (reference.empty())
      reference = out.str();
    else
      CHECK(out.str() == reference);
  }
}
