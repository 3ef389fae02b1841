#pragma once

#include <cmath>
#include <limits>

#include "boa/types.hpp"

namespace boa {

namespace detail {

template <typename Derived>
void check_scores(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.size() == 0) throw InvalidInputError(std::string(what) + ": empty input");
  if (!m.allFinite()) throw InvalidInputError(std::string(what) + ": non-finite value");
  if ((m.array() < typename Derived::Scalar(0)).any())
    throw InvalidInputError(std::string(what) + ": negative score");
}

}  // namespace detail

// Argmax with ties broken by the lowest index. Eigen's maxCoeff visitor also
// returns the first maximum, but the tie-break is load-bearing here, so spell
// it out.
template <typename Derived>
Eigen::Index argmax_lowest(const Eigen::MatrixBase<Derived>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

// Coding step: soft keeps the whole probability vector, hard collapses it to
// a one-hot indicator of the top-scoring attribute.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> code_frame(
    const Eigen::MatrixBase<Derived>& scores, CodingMode mode) {
  using Scalar = typename Derived::Scalar;
  detail::check_scores(scores, "code_frame");
  if (mode == CodingMode::soft) return scores;
  Eigen::Vector<Scalar, Eigen::Dynamic> out =
      Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(scores.size());
  out(argmax_lowest(scores)) = Scalar(1);
  return out;
}

// Pooling step: coordinatewise max / mean / sum over the frame rows.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> pool_frames(
    const Eigen::MatrixBase<Derived>& frames, PoolingMode mode) {
  if (frames.rows() == 0) throw InvalidInputError("pool: empty video (no frames)");
  detail::check_scores(frames, "pool");
  switch (mode) {
    case PoolingMode::max:
      return frames.colwise().maxCoeff().transpose();
    case PoolingMode::avg:
      return frames.colwise().mean().transpose();
    case PoolingMode::sum:
      return frames.colwise().sum().transpose();
  }
  throw InvalidInputError("pool: unknown mode");
}

// Normalization is optional plumbing; the zero vector passes through
// unchanged under every mode.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> normalize_vec(
    const Eigen::MatrixBase<Derived>& v, NormMode mode) {
  using Scalar = typename Derived::Scalar;
  Eigen::Vector<Scalar, Eigen::Dynamic> out = v;
  switch (mode) {
    case NormMode::none:
      return out;
    case NormMode::l1: {
      Scalar s = out.template lpNorm<1>();
      if (s > Scalar(0)) out /= s;
      return out;
    }
    case NormMode::l2: {
      Scalar s = out.norm();
      if (s > Scalar(0)) out /= s;
      return out;
    }
  }
  throw InvalidInputError("normalize: unknown mode");
}

template <typename DerivedA, typename DerivedB>
double l2_distance(const Eigen::MatrixBase<DerivedA>& a,
                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size())
    throw InvalidInputError("l2_distance: dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  return (a.template cast<double>() - b.template cast<double>()).norm();
}

// Full per-video pipeline: code each frame, pool, normalize, tag provenance.
// All arithmetic in double; callers widen float32 inputs first.
BoaVector make_boa(const Mat& frames, CodingMode coding, PoolingMode pooling,
                   NormMode norm);

BoaVector pool(const Mat& coded_frames, PoolingMode mode, CodingMode coding_tag,
               NormMode norm_tag = NormMode::none);
BoaVector normalize(const BoaVector& v, NormMode mode);
double l2_distance(const BoaVector& a, const BoaVector& b);

}  // namespace boa
