#pragma once

// Plain-text matrix files.
//
//   # optional comment lines, and trailing "# ..." on any line
//   n
//   a11 a12 ... a1n
//   ...
//   an1 an2 ... ann
//
// Real entries are written with %.17g, so write(read(text)) reproduces a file
// written by this module byte for byte.  Complex entries are single tokens
// "re+imi" or "re-imi" (written as %.17g%+.17gi); a plain real token is
// accepted as a complex entry with zero imaginary part.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "antitri/matcore.hpp"

namespace antitri::io {

std::string format_real(double x);
std::string format_complex(std::complex<double> z);

/// Throws ParseError unless the whole token is a finite number.
double parse_real(std::string_view token);
std::complex<double> parse_complex(std::string_view token);

DenseMatrix parse_matrix(std::string_view text);
ComplexDenseMatrix parse_complex_matrix(std::string_view text);

std::string format_matrix(const DenseMatrix& a);
std::string format_complex_matrix(const ComplexDenseMatrix& a);

/// FNV-1a 64-bit hash of the bytes, as 16 lowercase hex digits.
std::string digest(std::string_view bytes);

/// Whole contents of a file, or of `in` when path is "-".
std::string read_source(const std::string& path, std::istream& in);
/// Writes to a file, or to `out` when path is "-".
void write_target(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace antitri::io
