#include "antitri/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace antitri::io {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Non-empty lines with comments removed, split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line out{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) out.tokens.push_back(line.substr(start, i - start));
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

template <typename Scalar, typename Parse>
Matrix<Scalar> parse_generic(std::string_view text, Parse parse) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty matrix file");
  const Line& header = lines.front();
  if (header.tokens.size() != 1) fail(header.number, "expected the order n alone on the first line");
  long long n = 0;
  const auto tok = header.tokens.front();
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || n < 1)
    fail(header.number, "order must be a positive integer, got '" + std::string(tok) + "'");
  if (lines.size() != std::size_t(n) + 1)
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                     std::to_string(lines.size() - 1));
  Matrix<Scalar> a(n, n);
  for (Index i = 0; i < n; ++i) {
    const Line& row = lines[std::size_t(i) + 1];
    if (row.tokens.size() != std::size_t(n))
      fail(row.number, "expected " + std::to_string(n) + " entries, found " +
                           std::to_string(row.tokens.size()));
    for (Index j = 0; j < n; ++j) {
      try {
        a(i, j) = parse(row.tokens[std::size_t(j)]);
      } catch (const ParseError& e) {
        fail(row.number, e.what());
      }
    }
  }
  return a;
}

std::string printf_string(const char* fmt, double a, double b = 0) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, fmt, a, b);
  return std::string(buf, std::size_t(len));
}

}  // namespace

std::string format_real(double x) { return printf_string("%.17g", x); }

std::string format_complex(std::complex<double> z) {
  return printf_string("%.17g%+.17gi", z.real(), z.imag());
}

double parse_real(std::string_view token) {
  double x = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') {  // from_chars rejects a leading '+'
    ++first;
    if (first != last && *first == '-') first = last;
  }
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("not a number: '" + std::string(token) + "'");
  if (!std::isfinite(x)) throw ParseError("non-finite entry: '" + std::string(token) + "'");
  return x;
}

std::complex<double> parse_complex(std::string_view token) {
  if (token.empty() || token.back() != 'i') return {parse_real(token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  // the imaginary part starts at the last sign that is not an exponent sign
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // pure imaginary, e.g. "2i" or "-i"
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_real(body)};
  }
  const std::string_view im = body.substr(split);
  double imag;
  if (im == "+")
    imag = 1.0;
  else if (im == "-")
    imag = -1.0;
  else
    imag = parse_real(im);
  return {parse_real(body.substr(0, split)), imag};
}

DenseMatrix parse_matrix(std::string_view text) {
  return parse_generic<double>(text, [](std::string_view t) { return parse_real(t); });
}

ComplexDenseMatrix parse_complex_matrix(std::string_view text) {
  return parse_generic<std::complex<double>>(text,
                                             [](std::string_view t) { return parse_complex(t); });
}

std::string format_matrix(const DenseMatrix& a) {
  std::string out = std::to_string(a.rows()) + "\n";
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_real(a(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_complex_matrix(const ComplexDenseMatrix& a) {
  std::string out = std::to_string(a.rows()) + "\n";
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_complex(a(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  ss << file.rdbuf();
  return ss.str();
}

void write_target(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
  if (!file) throw Error("write to '" + path + "' failed");
}

}  // namespace antitri::io
