#include "cmpgeo/varifold_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmpgeo {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_varifold(std::ostream& os, const DiscreteVarifold& V) {
  const int m = V.ambient_dim(), n = V.size();
  os << "varifold m=" << m << " ell=" << V.ell << " n=" << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < m; ++d) os << (d ? " " : "") << format_double(V.points(d, i));
    os << " | " << format_double(V.weights[i]) << " | ";
    for (int j = 0; j < V.ell; ++j) {
      if (j) os << " ; ";
      for (int d = 0; d < m; ++d) os << (d ? " " : "") << format_double(V.planes[i](d, j));
    }
    os << " | " << (V.boundary[i] ? 1 : 0) << "\n";
  }
}

void write_varifold_file(const std::string& path, const DiscreteVarifold& V) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_varifold_file: cannot open " + path);
  write_varifold(os, V);
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("varifold parse error at line " + std::to_string(line) + ": " + msg);
}

std::vector<double> parse_floats(const std::string& text, int line) {
  std::vector<double> out;
  std::istringstream ss(text);
  double v;
  while (ss >> v) out.push_back(v);
  std::string rest;
  if (ss.clear(), ss >> rest) fail(line, "trailing junk in numeric field: '" + rest + "'");
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

DiscreteVarifold read_varifold(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) fail(1, "missing header");
  int m = 0, ell = 0, n = 0;
  if (std::sscanf(header.c_str(), "varifold m=%d ell=%d n=%d", &m, &ell, &n) != 3)
    fail(1, "malformed header (expected 'varifold m=<int> ell=<int> n=<int>')");
  if (m < 2 || ell < 1 || ell >= m || n < 0) fail(1, "header fields out of range");

  DiscreteVarifold V;
  V.ell = ell;
  V.points.resize(m, n);
  V.weights.resize(n);
  V.planes.resize(n);
  V.boundary.assign(n, 0);

  std::string line;
  int records = 0, lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (records >= n) fail(lineno, "more records than the header count n=" + std::to_string(n));
    const auto fields = split(line, '|');
    if (fields.size() != 4) fail(lineno, "expected 4 '|'-separated fields");

    const auto pos = parse_floats(fields[0], lineno);
    if (static_cast<int>(pos.size()) != m) fail(lineno, "position has wrong arity");
    const auto w = parse_floats(fields[1], lineno);
    if (w.size() != 1) fail(lineno, "weight field must hold one value");
    if (!(w[0] > 0)) fail(lineno, "weight must be positive");

    const auto rows = split(fields[2], ';');
    if (static_cast<int>(rows.size()) != ell) fail(lineno, "frame must have ell rows");
    Matrix frame(m, ell);
    for (int j = 0; j < ell; ++j) {
      const auto e = parse_floats(rows[j], lineno);
      if (static_cast<int>(e.size()) != m) fail(lineno, "frame row has wrong arity");
      for (int d = 0; d < m; ++d) frame(d, j) = e[d];
    }
    const double defect =
        (frame.transpose() * frame - Matrix::Identity(ell, ell)).cwiseAbs().maxCoeff();
    if (defect > 1e-6) fail(lineno, "frame is not orthonormal (defect > 1e-6)");

    const auto b = parse_floats(fields[3], lineno);
    if (b.size() != 1 || (b[0] != 0.0 && b[0] != 1.0))
      fail(lineno, "boundary flag must be 0 or 1");

    for (int d = 0; d < m; ++d) V.points(d, records) = pos[d];
    V.weights[records] = w[0];
    V.planes[records] = frame;
    V.boundary[records] = b[0] == 1.0 ? 1 : 0;
    ++records;
  }
  if (records != n)
    fail(lineno, "record count " + std::to_string(records) + " does not match header n=" +
                     std::to_string(n));
  return V;
}

DiscreteVarifold read_varifold_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_varifold_file: cannot open " + path);
  return read_varifold(is);
}

}  // namespace cmpgeo
