#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eigloc/symmetric_matrix.hpp"

namespace eigloc::io {

/// Read a Matrix Market file holding a real square matrix. Accepts `array`
/// and `coordinate` formats with `general` or `symmetric` qualifiers; a
/// general matrix is rejected if mirrored entries disagree beyond sym_tol.
SymmetricMatrix read_matrix_market(std::istream& in, double sym_tol = 1e-12);
SymmetricMatrix read_matrix_market_file(const std::string& path, double sym_tol = 1e-12);

/// Write in `array real symmetric` layout (lower triangle, column-major).
void write_matrix_market_array(std::ostream& out, const SymmetricMatrix& a);
/// Write nonzeros of the lower triangle in `coordinate real symmetric` layout.
void write_matrix_market_coordinate(std::ostream& out, const SymmetricMatrix& a);

void write_matrix_market_array_file(const std::string& path, const SymmetricMatrix& a);
void write_matrix_market_coordinate_file(const std::string& path, const SymmetricMatrix& a);

/// Vector files: one decimal per line, length inferred; blank lines and
/// lines starting with '%' or '#' are skipped.
Vector read_vector(std::istream& in);
Vector read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const Vector& v);
void write_vector_file(const std::string& path, const Vector& v);

/// Parse failure or constraint violation while reading/writing files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace eigloc::io
