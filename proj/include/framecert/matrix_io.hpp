#pragma once

#include <iosfwd>
#include <string>

#include "framecert/types.hpp"

namespace framecert {

struct VectorFamily;

// Shared text format: first line "rows cols", then one line per row of
// whitespace-separated "re,im" pairs.
void write_matrix(std::ostream& os, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);
Matrix read_matrix(std::istream& is);
Matrix read_matrix_file(const std::string& path);

// VectorFamily fixture: measure-space header (m, weights, partition blocks)
// followed by the m x d family matrix in the shared format.
void write_family(std::ostream& os, const VectorFamily& vf);
void write_family_file(const std::string& path, const VectorFamily& vf);
VectorFamily read_family(std::istream& is);
VectorFamily read_family_file(const std::string& path);

}  // namespace framecert
