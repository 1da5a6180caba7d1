#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace bifree {

using Scalar = std::complex<double>;

// Coefficients with modulus below this are dropped when terms combine.
inline constexpr double kCoeffDropTol = 1e-12;

// A factor counts as centered once |tau_i(x)| falls below this.
inline constexpr double kCenteringTol = 1e-11;

// Hard ceiling on terms per polynomial; expansion is exponential in word
// length, so fail loudly instead of thrashing.
inline constexpr std::size_t kDefaultTermCap = 200000;

inline constexpr double kDefaultPsdTol = 1e-8;
inline constexpr double kDefaultMomentTol = 1e-9;

// Acceptable disagreement between the product evaluator and the
// free-product-space oracle.
inline constexpr double kOracleCompareTol = 1e-8;

inline constexpr std::size_t kMaxGramBasis = 1024;
inline constexpr std::size_t kMaxFockDim = 50000;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Term-count, basis-size, dimension or depth budget exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// Invalid model data or an out-of-range generator reference.
struct ModelError : Error {
  using Error::Error;
};

// Malformed word-spec or model-file input.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace bifree
