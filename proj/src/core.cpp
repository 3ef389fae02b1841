#include "boa/core.hpp"

namespace boa {

const char* to_string(CodingMode m) {
  switch (m) {
    case CodingMode::soft: return "soft";
    case CodingMode::hard: return "hard";
  }
  return "?";
}

const char* to_string(PoolingMode m) {
  switch (m) {
    case PoolingMode::max: return "max";
    case PoolingMode::avg: return "avg";
    case PoolingMode::sum: return "sum";
  }
  return "?";
}

const char* to_string(NormMode m) {
  switch (m) {
    case NormMode::none: return "none";
    case NormMode::l1: return "l1";
    case NormMode::l2: return "l2";
  }
  return "?";
}

CodingMode coding_from_string(const std::string& s) {
  if (s == "soft") return CodingMode::soft;
  if (s == "hard") return CodingMode::hard;
  throw InvalidInputError("unknown coding mode: " + s);
}

PoolingMode pooling_from_string(const std::string& s) {
  if (s == "max") return PoolingMode::max;
  if (s == "avg") return PoolingMode::avg;
  if (s == "sum") return PoolingMode::sum;
  throw InvalidInputError("unknown pooling mode: " + s);
}

NormMode norm_from_string(const std::string& s) {
  if (s == "none") return NormMode::none;
  if (s == "l1") return NormMode::l1;
  if (s == "l2") return NormMode::l2;
  throw InvalidInputError("unknown norm mode: " + s);
}

BoaVector pool(const Mat& coded_frames, PoolingMode mode, CodingMode coding_tag,
               NormMode norm_tag) {
  BoaVector out;
  out.values = pool_frames(coded_frames, mode);
  out.prov = Provenance{coding_tag, mode, norm_tag};
  return out;
}

BoaVector normalize(const BoaVector& v, NormMode mode) {
  BoaVector out;
  out.values = normalize_vec(v.values, mode);
  out.prov = v.prov;
  out.prov.norm = mode;
  return out;
}

double l2_distance(const BoaVector& a, const BoaVector& b) {
  if (!(a.prov == b.prov))
    throw InvalidInputError("l2_distance: provenance mismatch");
  return l2_distance(a.values, b.values);
}

BoaVector make_boa(const Mat& frames, CodingMode coding, PoolingMode pooling,
                   NormMode norm) {
  if (frames.rows() == 0) throw InvalidInputError("make_boa: empty video");
  Mat coded(frames.rows(), frames.cols());
  for (Eigen::Index r = 0; r < frames.rows(); ++r)
    coded.row(r) = code_frame(frames.row(r).transpose(), coding).transpose();
  BoaVector pooled = pool(coded, pooling, coding);
  return normalize(pooled, norm);
}

}  // namespace boa
