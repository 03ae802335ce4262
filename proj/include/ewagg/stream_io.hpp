#ifndef EWAGG_STREAM_IO_HPP
#define EWAGG_STREAM_IO_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "ewagg/errors.hpp"
#include "ewagg/stream.hpp"

// Plain-text stream files: whitespace-separated, diff-friendly, trivially
// producible from any tool.
//
//   ewagg-stream <version> <N> <D> <T>
//   then T round blocks, each N prediction rows + 1 outcome row of D
//   decimal numbers.
//
// Numbers are printed with shortest round-trip precision, so
// write -> read is bitwise identity on the doubles.

namespace ewagg {

inline constexpr int kStreamFormatVersion = 1;

struct ParsedStream {
  int num_experts = 0;
  int dimension = 0;
  Stream rounds;
};

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& token, long line) {
  double x = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, x);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ParseError("bad number '" + token + "'", line);
  if (!std::isfinite(x))
    throw ParseError("non-finite value '" + token + "'", line);
  return x;
}

inline std::vector<double> parse_row(const std::string& text, int expected,
                                     long line) {
  std::istringstream iss(text);
  std::vector<double> row;
  std::string token;
  while (iss >> token) row.push_back(parse_double(token, line));
  if (static_cast<int>(row.size()) != expected)
    throw ParseError("expected " + std::to_string(expected) +
                         " values, got " + std::to_string(row.size()),
                     line);
  return row;
}

}  // namespace detail

inline ParsedStream read_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  long line_no = 1;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file", line_no);
  std::istringstream header(line);
  std::string magic;
  int version = 0;
  long long n = 0, d = 0, t = 0;
  if (!(header >> magic >> version >> n >> d >> t) ||
      magic != "ewagg-stream")
    throw ParseError("malformed header", line_no);
  if (version != kStreamFormatVersion)
    throw ParseError("unsupported version " + std::to_string(version),
                     line_no);
  if (t < 0 || (t > 0 && (n < 1 || d < 1)))
    throw ParseError("bad header counts", line_no);

  ParsedStream out;
  out.num_experts = static_cast<int>(n);
  out.dimension = static_cast<int>(d);
  out.rounds.reserve(static_cast<std::size_t>(t));
  for (long long round = 1; round <= t; ++round) {
    Round r;
    r.predictions.resize(static_cast<std::size_t>(n));
    for (long long expert = 0; expert < n; ++expert) {
      ++line_no;
      if (!std::getline(in, line))
        throw ParseError("round " + std::to_string(round) +
                             ": missing prediction row",
                         line_no);
      r.predictions[static_cast<std::size_t>(expert)] =
          detail::parse_row(line, static_cast<int>(d), line_no);
    }
    ++line_no;
    if (!std::getline(in, line))
      throw ParseError("round " + std::to_string(round) +
                           ": missing outcome row",
                       line_no);
    r.outcome = detail::parse_row(line, static_cast<int>(d), line_no);
    out.rounds.push_back(std::move(r));
  }
  // Trailing non-blank content means the header undercounts the body.
  ++line_no;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError("trailing content after round " + std::to_string(t),
                       line_no);
    ++line_no;
  }
  return out;
}

inline void write_stream(const std::string& path, const Stream& stream,
                         int num_experts = -1, int dimension = -1) {
  if (!stream.empty()) {
    num_experts = static_cast<int>(stream.front().predictions.size());
    dimension = static_cast<int>(stream.front().outcome.size());
  } else {
    if (num_experts < 0) num_experts = 0;
    if (dimension < 0) dimension = 0;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "ewagg-stream " << kStreamFormatVersion << ' ' << num_experts << ' '
      << dimension << ' ' << stream.size() << '\n';
  auto write_row = [&](const PredictionVector& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      out << detail::format_double(row[i]);
    }
    out << '\n';
  };
  for (const Round& round : stream) {
    if (static_cast<int>(round.predictions.size()) != num_experts)
      throw InvariantError("write_stream: ragged expert count");
    for (const PredictionVector& pred : round.predictions) write_row(pred);
    write_row(round.outcome);
  }
  if (!out) throw ParseError("write failed for '" + path + "'");
}

}  // namespace ewagg

#endif
