#include "sandpile/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sandpile {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

enum class Symmetry { general, symmetric, skew };

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("matrix market, line " + std::to_string(line_no) + ": " + what);
}

BigInt parse_integer(const std::string& token, std::size_t line_no) {
  std::size_t start = (token.size() > 1 && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
  if (start == token.size() ||
      !std::all_of(token.begin() + static_cast<std::ptrdiff_t>(start), token.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    fail(line_no, "expected an integer, got '" + token + "'");
  }
  return BigInt(token[0] == '+' ? token.substr(1) : token);
}

long long parse_count(const std::string& token, std::size_t line_no) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(line_no, "expected a nonnegative count, got '" + token + "'");
  }
  try {
    return std::stoll(token);
  } catch (const std::exception&) {
    fail(line_no, "count out of range: '" + token + "'");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

void place(BigIntMatrix& m, Index i, Index j, BigInt value, Symmetry sym, std::size_t line_no) {
  if (sym != Symmetry::general && i < j) fail(line_no, "entry above the diagonal in a symmetric file");
  if (sym == Symmetry::skew && i == j) fail(line_no, "diagonal entry in a skew-symmetric file");
  if (sym == Symmetry::symmetric && i != j) m(j, i) = value;
  if (sym == Symmetry::skew) m(j, i) = -value;
  m(i, j) = std::move(value);
}

}  // namespace

BigIntMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
  ++line_no;

  const auto header = split(line);
  if (header.size() != 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix") {
    fail(line_no, "missing '%%MatrixMarket matrix' banner");
  }
  const std::string layout = lower(header[2]);
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (layout != "coordinate" && layout != "array") fail(line_no, "unknown layout '" + header[2] + "'");
  if (field != "integer" && !(field == "pattern" && layout == "coordinate")) {
    fail(line_no, "unsupported field '" + header[3] + "', only integer matrices are accepted");
  }
  Symmetry sym;
  if (symmetry == "general") sym = Symmetry::general;
  else if (symmetry == "symmetric") sym = Symmetry::symmetric;
  else if (symmetry == "skew-symmetric") sym = Symmetry::skew;
  else fail(line_no, "unsupported symmetry '" + header[4] + "'");

  if (!next_data_line(in, line, line_no)) fail(line_no, "missing size line");
  const auto size = split(line);
  const bool coordinate = layout == "coordinate";
  if (size.size() != (coordinate ? 3u : 2u)) fail(line_no, "malformed size line");
  const long long rows = parse_count(size[0], line_no);
  const long long cols = parse_count(size[1], line_no);
  if (rows == 0 || cols == 0) fail(line_no, "matrix must be nonempty");
  if (sym != Symmetry::general && rows != cols) fail(line_no, "symmetric storage requires a square matrix");

  BigIntMatrix m = BigIntMatrix::Zero(rows, cols);

  if (coordinate) {
    const long long nnz = parse_count(size[2], line_no);
    for (long long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line, line_no)) fail(line_no, "fewer entries than declared");
      const auto tok = split(line);
      if (tok.size() != (field == "pattern" ? 2u : 3u)) fail(line_no, "malformed entry");
      const long long i = parse_count(tok[0], line_no);
      const long long j = parse_count(tok[1], line_no);
      if (i < 1 || i > rows || j < 1 || j > cols) fail(line_no, "index out of range");
      BigInt v = field == "pattern" ? BigInt(1) : parse_integer(tok[2], line_no);
      place(m, Index(i - 1), Index(j - 1), std::move(v), sym, line_no);
    }
  } else {
    // Column-major; symmetric variants store only the lower triangle.
    for (Index j = 0; j < cols; ++j) {
      const Index first = sym == Symmetry::general ? 0 : (sym == Symmetry::symmetric ? j : j + 1);
      for (Index i = first; i < rows; ++i) {
        if (!next_data_line(in, line, line_no)) fail(line_no, "fewer entries than declared");
        const auto tok = split(line);
        if (tok.size() != 1) fail(line_no, "expected one value per line");
        place(m, i, j, parse_integer(tok[0], line_no), sym, line_no);
      }
    }
  }
  if (next_data_line(in, line, line_no)) fail(line_no, "trailing data after the declared entries");
  return m;
}

BigIntMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("matrix market: cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const BigIntMatrix& m, MatrixMarketLayout layout) {
  if (layout == MatrixMarketLayout::array) {
    out << "%%MatrixMarket matrix array integer general\n" << m.rows() << ' ' << m.cols() << '\n';
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) out << m(i, j) << '\n';
    return;
  }
  Index nnz = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) ++nnz;
  out << "%%MatrixMarket matrix coordinate integer general\n"
      << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const BigIntMatrix& m, MatrixMarketLayout layout) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("matrix market: cannot write '" + path.string() + "'");
  write_matrix_market(out, m, layout);
}

}  // namespace sandpile
