#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace boa {

using Vec = Eigen::VectorXd;
using VecF = Eigen::VectorXf;
// Frame-score matrices are row-per-frame, column-per-attribute.
using Mat = Eigen::MatrixXd;
using MatF = Eigen::MatrixXf;

// Error taxonomy. The CLI maps these onto exit codes: usage errors are
// handled by the argument parser, IoError -> 3, everything else -> 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidInputError : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct NotFoundError : Error {
  using Error::Error;
};
struct BuildError : Error {
  using Error::Error;
};
struct ScorerError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

enum class CodingMode : std::uint8_t { soft = 0, hard = 1 };
enum class PoolingMode : std::uint8_t { max = 0, avg = 1, sum = 2 };
enum class NormMode : std::uint8_t { none = 0, l1 = 1, l2 = 2 };

// The (coding, pooling, norm) configuration a vector was produced under.
// Vectors from different provenances are never comparable.
struct Provenance {
  CodingMode coding = CodingMode::soft;
  PoolingMode pooling = PoolingMode::max;
  NormMode norm = NormMode::none;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Per-video bag-of-attributes vector: one dimension per attribute.
struct BoaVector {
  Vec values;
  Provenance prov;
};

const char* to_string(CodingMode m);
const char* to_string(PoolingMode m);
const char* to_string(NormMode m);
CodingMode coding_from_string(const std::string& s);
PoolingMode pooling_from_string(const std::string& s);
NormMode norm_from_string(const std::string& s);

}  // namespace boa
