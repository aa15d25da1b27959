#pragma once

// Plain-text curve files: one vertex per line, coordinates separated by
// commas or whitespace, '#' lines ignored. The dimension is inferred from
// the first data line and enforced afterwards. Writing uses shortest
// round-trip formatting, so parse(write(P)) reproduces P exactly.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "frechet/errors.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

inline PolygonalCurve parse_curve(std::istream& in) {
  std::vector<double> flat;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string cleaned;
    cleaned.reserve(line.size());
    for (char c : line) cleaned.push_back(c == ',' ? ' ' : c);
    std::istringstream tokens(cleaned);
    std::string tok;
    std::vector<double> coords;
    bool comment = false;
    while (tokens >> tok) {
      if (tok.front() == '#') {
        if (coords.empty()) comment = true;
        break;  // rest of the line is commentary either way
      }
      double value = 0.0;
      const auto* begin = tok.data();
      const auto* end = tok.data() + tok.size();
      const auto r = std::from_chars(begin, end, value);
      if (r.ec != std::errc() || r.ptr != end)
        throw ParseError("non-numeric token '" + tok + "'", line_no);
      if (!std::isfinite(value))
        throw ParseError("non-finite coordinate", line_no);
      coords.push_back(value);
    }
    if (coords.empty()) {
      (void)comment;
      continue;  // blank or comment line
    }
    if (dim == 0) {
      dim = coords.size();
    } else if (coords.size() != dim) {
      throw ParseError("dimension mismatch: expected " + std::to_string(dim) +
                           " coordinates, got " + std::to_string(coords.size()),
                       line_no);
    }
    if (rows > 0 &&
        std::equal(coords.begin(), coords.end(), flat.end() - dim))
      throw ParseError("duplicate consecutive vertex", line_no);
    flat.insert(flat.end(), coords.begin(), coords.end());
    ++rows;
  }
  if (rows == 0) throw ParseError("no data lines", line_no == 0 ? 1 : line_no);
  return PolygonalCurve(std::move(flat), dim);
}

inline PolygonalCurve parse_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_curve(in);
}

namespace detail {

inline void append_shortest(std::string& out, double value) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, r.ptr);
}

}  // namespace detail

inline void write_curve(std::ostream& out, const PolygonalCurve& P) {
  std::string line;
  for (std::size_t i = 0; i < P.size(); ++i) {
    line.clear();
    PointView v = P.vertex(i);
    for (std::size_t k = 0; k < P.dim(); ++k) {
      if (k > 0) line.push_back(' ');
      detail::append_shortest(line, v[k]);
    }
    line.push_back('\n');
    out << line;
  }
}

inline void write_curve_file(const std::string& path,
                             const PolygonalCurve& P) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_curve(out, P);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace frechet
