#include "tvlm/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "tvlm/errors.hpp"

namespace tvlm {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r' || *end == ',') ++end;
  return *end == '\0';
}

}  // namespace

std::vector<double> read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file: " + path);
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip whitespace
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(a, b - a + 1);
    double v = 0.0;
    if (!parse_double(body, v)) {
      if (lineno == 1 && out.empty()) continue;  // header row
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": cannot parse value '" + body + "'");
    }
    if (!std::isfinite(v)) {
      throw DataError(path + ":" + std::to_string(lineno) + ": non-finite value");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DataError(path + ": no numeric data");
  return out;
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_series_csv(const std::string& path, const std::vector<double>& x,
                      const std::string& header) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  out << header << "\n";
  for (double v : x) out << format_full(v) << "\n";
}

}  // namespace tvlm
