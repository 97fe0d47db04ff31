#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace tvlm {

// Reads a one-column CSV (one value per line, optional non-numeric header).
// Throws DataError with the offending line number on parse failure.
std::vector<double> read_series_csv(const std::string& path);

// 17 significant digits: round-trip exact for doubles.
std::string format_full(double x);

void write_series_csv(const std::string& path, const std::vector<double>& x,
                      const std::string& header = "x");

}  // namespace tvlm
