#include "framecert/matrix_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "framecert/frame_ops.hpp"

namespace framecert {

namespace {

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("fixture parse error: " + what);
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << fmt_real(m(i, j).real()) << ',' << fmt_real(m(i, j).imag());
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) bad("matrix header");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) bad("matrix entry");
      auto comma = tok.find(',');
      if (comma == std::string::npos) bad("matrix entry missing comma");
      m(i, j) = Complex(std::stod(tok.substr(0, comma)),
                        std::stod(tok.substr(comma + 1)));
    }
  return m;
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix(os, m);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_matrix(is);
}

void write_family(std::ostream& os, const VectorFamily& vf) {
  const auto& sp = vf.space;
  os << "measure " << sp.size() << '\n';
  for (int i = 0; i < sp.size(); ++i) {
    if (i) os << ' ';
    os << fmt_real(sp.weights()[i]);
  }
  os << '\n';
  os << "blocks " << sp.partition().size() << '\n';
  for (const auto& blk : sp.partition()) {
    os << fmt_real(blk.measure) << ' ' << blk.indices.size();
    for (int idx : blk.indices) os << ' ' << idx;
    os << '\n';
  }
  write_matrix(os, vf.vectors);
}

VectorFamily read_family(std::istream& is) {
  std::string tag;
  int m = 0;
  if (!(is >> tag >> m) || tag != "measure" || m < 1) bad("measure header");
  RealVector w(m);
  for (int i = 0; i < m; ++i)
    if (!(is >> w[i])) bad("weights");
  std::size_t nblocks = 0;
  if (!(is >> tag >> nblocks) || tag != "blocks") bad("blocks header");
  std::vector<MeasureSpace::Block> blocks;
  for (std::size_t b = 0; b < nblocks; ++b) {
    MeasureSpace::Block blk;
    std::size_t count = 0;
    if (!(is >> blk.measure >> count)) bad("block line");
    blk.indices.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      if (!(is >> blk.indices[i])) bad("block index");
    blocks.push_back(std::move(blk));
  }
  Matrix vecs = read_matrix(is);
  return VectorFamily(MeasureSpace(std::move(w), std::move(blocks)),
                      std::move(vecs));
}

void write_family_file(const std::string& path, const VectorFamily& vf) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_family(os, vf);
}

VectorFamily read_family_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_family(is);
}

}  // namespace framecert
