#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "aircomp/types.hpp"

namespace aircomp {

/// Shortest round-trip decimal form of a double. Locale-independent and
/// deterministic, so identical runs produce byte-identical output files.
inline std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

/// Reads channel gains from plain text: one positive real per line,
/// '#' starts a comment, blank lines are ignored. Gains may appear in any
/// order; they are sorted on construction of the ChannelState.
inline std::vector<double> read_channel_gains(std::istream& input) {
  std::vector<double> gains;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;  // blank or comment-only line
    std::string extra;
    if (fields >> extra)
      throw std::invalid_argument("channel file line " +
                                  std::to_string(line_number) +
                                  ": expected a single value");
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != token.size())
      throw std::invalid_argument("channel file line " +
                                  std::to_string(line_number) +
                                  ": not a number: " + token);
    gains.push_back(value);
  }
  if (gains.empty())
    throw std::invalid_argument("channel file contains no gains");
  return gains;
}

inline std::vector<double> read_channel_file(const std::string& path) {
  std::ifstream input(path);
  if (!input)
    throw std::invalid_argument("cannot open channel file: " + path);
  return read_channel_gains(input);
}

/// Joins already-formatted fields into one CSV line.
inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) row.push_back(',');
    row += fields[i];
  }
  return row;
}

}  // namespace aircomp
