#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "grassconv/graphs.hpp"

namespace grassconv {

// Parse failure in a tabulated-jet file; line is 1-based.
class JetFileError : public std::runtime_error {
 public:
  JetFileError(int line, const std::string& message)
      : std::runtime_error("jet file line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Tabulated-jet text format: header "n m count", then per sample n reals for
/// x, n*m reals for Df (row-major), n*n*m reals for D2f in (i, j, alpha)
/// order. Tokens are whitespace-separated; line breaks are free.
std::vector<GraphJet> parse_jet_stream(std::istream& in);
std::vector<GraphJet> load_jet_file(const std::string& path);
void save_jet_file(const std::string& path, const std::vector<GraphJet>& jets);

}  // namespace grassconv
