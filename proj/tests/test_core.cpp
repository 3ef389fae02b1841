#include <doctest.h>

#include <random>

#include "boa/core.hpp"

using namespace boa;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(v.size());
  std::size_t i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Mat mat(std::initializer_list<std::initializer_list<double>> rows) {
  Mat out(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (auto& row : rows) {
    std::size_t c = 0;
    for (double x : row) out(r, c++) = x;
    ++r;
  }
  return out;
}

}  // namespace

TEST_CASE("code_frame soft is identity") {
  Vec v = vec({0.1, 0.7, 0.2});
  CHECK(code_frame(v, CodingMode::soft) == v);
}

TEST_CASE("code_frame hard one-hots the argmax") {
  CHECK(code_frame(vec({0.1, 0.7, 0.2}), CodingMode::hard) == vec({0, 1, 0}));
}

TEST_CASE("code_frame hard ties break to the lowest index") {
  CHECK(code_frame(vec({0.5, 0.5}), CodingMode::hard) == vec({1, 0}));
}

TEST_CASE("code_frame rejects empty and non-finite input") {
  Vec empty(0);
  CHECK_THROWS_AS(code_frame(empty, CodingMode::soft), InvalidInputError);
  Vec bad = vec({0.1, std::numeric_limits<double>::quiet_NaN()});
  CHECK_THROWS_AS(code_frame(bad, CodingMode::hard), InvalidInputError);
  CHECK_THROWS_AS(code_frame(vec({0.1, -0.2}), CodingMode::soft), InvalidInputError);
}

TEST_CASE("pool max/avg/sum examples") {
  Mat frames = mat({{0.2, 0.8}, {0.6, 0.4}});
  CHECK(pool_frames(frames, PoolingMode::max) == vec({0.6, 0.8}));
  CHECK(pool_frames(frames, PoolingMode::avg).isApprox(vec({0.4, 0.6}), 1e-15));
  CHECK(pool_frames(frames, PoolingMode::sum).isApprox(vec({0.8, 1.2}), 1e-15));
  CHECK(pool_frames(mat({{0.2, 0.8}}), PoolingMode::max) == vec({0.2, 0.8}));
}

TEST_CASE("pool rejects an empty video") {
  Mat empty(0, 3);
  CHECK_THROWS_AS(pool_frames(empty, PoolingMode::max), InvalidInputError);
}

TEST_CASE("pool records provenance") {
  BoaVector b = pool(mat({{0.2, 0.8}}), PoolingMode::avg, CodingMode::hard);
  CHECK(b.prov.pooling == PoolingMode::avg);
  CHECK(b.prov.coding == CodingMode::hard);
  CHECK(b.prov.norm == NormMode::none);
}

TEST_CASE("normalize examples") {
  CHECK(normalize_vec(vec({3, 4}), NormMode::l2).isApprox(vec({0.6, 0.8}), 1e-15));
  CHECK(normalize_vec(vec({3, 4}), NormMode::none) == vec({3, 4}));
  CHECK(normalize_vec(vec({0, 0}), NormMode::l2) == vec({0, 0}));
  CHECK(normalize_vec(vec({1, 3}), NormMode::l1).isApprox(vec({0.25, 0.75}), 1e-15));
}

TEST_CASE("l2 unit norm invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    Vec v(8);
    for (int j = 0; j < 8; ++j) v(j) = u(rng);
    CHECK(normalize_vec(v, NormMode::l2).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("l2_distance examples") {
  CHECK(l2_distance(vec({0, 0}), vec({3, 4})) == doctest::Approx(5.0));
  Vec v = vec({1.5, 2.5, 3.5});
  CHECK(l2_distance(v, v) == 0.0);
  CHECK(l2_distance(vec({1, 0}), vec({0, 1})) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(l2_distance(vec({1, 2}), vec({1, 2, 3})), InvalidInputError);
}

TEST_CASE("distance metric axioms on random vectors") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    Vec a(6), b(6), c(6);
    for (int j = 0; j < 6; ++j) {
      a(j) = u(rng);
      b(j) = u(rng);
      c(j) = u(rng);
    }
    double ab = l2_distance(a, b), ba = l2_distance(b, a);
    CHECK(ab >= 0);
    CHECK(ab == ba);
    CHECK(ab <= l2_distance(a, c) + l2_distance(c, b) + 1e-9);
  }
}

TEST_CASE("pooling properties on random frame sets") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> nframes(1, 8), ndim(1, 16);
  for (int trial = 0; trial < 200; ++trial) {
    int n = nframes(rng), d = ndim(rng);
    Mat frames(n, d);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < d; ++c) frames(r, c) = u(rng);

    // Permutation invariance
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Mat shuffled(n, d);
    for (int i = 0; i < n; ++i) shuffled.row(i) = frames.row(perm[i]);
    for (auto mode : {PoolingMode::max, PoolingMode::avg, PoolingMode::sum}) {
      Vec a = pool_frames(frames, mode), b = pool_frames(shuffled, mode);
      if (mode == PoolingMode::max)
        CHECK(a == b);
      else
        CHECK(a.isApprox(b, 1e-12));
    }

    // Max idempotence under frame duplication
    Mat dup(n + 1, d);
    dup.topRows(n) = frames;
    dup.row(n) = frames.row(trial % n);
    CHECK(pool_frames(dup, PoolingMode::max) == pool_frames(frames, PoolingMode::max));

    // Avg/sum relation
    CHECK(pool_frames(frames, PoolingMode::avg)
              .isApprox(pool_frames(frames, PoolingMode::sum) / double(n), 1e-12));
  }
}

TEST_CASE("sum pooling is additive over frame multisets") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    int na = 1 + int(rng() % 5), nb = 1 + int(rng() % 5), d = 1 + int(rng() % 10);
    Mat a(na, d), b(nb, d);
    for (int r = 0; r < na; ++r)
      for (int c = 0; c < d; ++c) a(r, c) = u(rng);
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < d; ++c) b(r, c) = u(rng);
    Mat both(na + nb, d);
    both.topRows(na) = a;
    both.bottomRows(nb) = b;
    CHECK(pool_frames(both, PoolingMode::sum)
              .isApprox(pool_frames(a, PoolingMode::sum) + pool_frames(b, PoolingMode::sum),
                        1e-12));
  }
}

TEST_CASE("hard coding is scale invariant and one-hot") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + int(rng() % 20);
    Vec v(d);
    for (int j = 0; j < d; ++j) v(j) = u(rng);
    Vec coded = code_frame(v, CodingMode::hard);
    CHECK(coded.sum() == 1.0);
    CHECK(coded.maxCoeff() == 1.0);
    double scale = 0.5 + u(rng) * 10;
    CHECK(code_frame((v * scale).eval(), CodingMode::hard) == coded);
  }
}

TEST_CASE("make_boa composes coding, pooling and normalization") {
  Mat frames = mat({{0.2, 0.8}, {0.6, 0.4}});
  BoaVector b = make_boa(frames, CodingMode::soft, PoolingMode::max, NormMode::none);
  CHECK(b.values == vec({0.6, 0.8}));
  BoaVector h = make_boa(frames, CodingMode::hard, PoolingMode::sum, NormMode::none);
  CHECK(h.values == vec({1, 1}));  // one frame argmax each side
  BoaVector n = make_boa(frames, CodingMode::soft, PoolingMode::max, NormMode::l2);
  CHECK(n.values.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.prov.norm == NormMode::l2);
}

TEST_CASE("distance between different provenances is rejected") {
  Mat frames = mat({{0.2, 0.8}});
  BoaVector a = make_boa(frames, CodingMode::soft, PoolingMode::max, NormMode::none);
  BoaVector b = make_boa(frames, CodingMode::soft, PoolingMode::avg, NormMode::none);
  CHECK_THROWS_AS(l2_distance(a, b), InvalidInputError);
}
