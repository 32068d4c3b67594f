#pragma once

#include "sandpile/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

namespace sandpile {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MatrixMarketLayout { coordinate, array };

/// Reads an integer Matrix Market file. Accepts `coordinate` and `array`
/// layouts with `integer` (or, for coordinate, `pattern`) field and
/// `general`, `symmetric` or `skew-symmetric` symmetry. Values may be of any
/// size. Throws ParseError on malformed input.
BigIntMatrix read_matrix_market(std::istream& in);
BigIntMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes `m` as `%%MatrixMarket matrix <layout> integer general`.
/// Coordinate output lists nonzeros in column-major order.
void write_matrix_market(std::ostream& out, const BigIntMatrix& m,
                         MatrixMarketLayout layout = MatrixMarketLayout::coordinate);
void write_matrix_market(const std::filesystem::path& path, const BigIntMatrix& m,
                         MatrixMarketLayout layout = MatrixMarketLayout::coordinate);

}  // namespace sandpile
