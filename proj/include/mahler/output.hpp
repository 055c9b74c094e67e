#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mahler/mpfr_real.hpp"

namespace mahler {

struct OutputRecord {
  std::string command;
  std::string input;
  std::string quantity;  // "M", "Mbar", "M_x", "threshold", "h_x", ...
  std::string x;         // empty when the quantity has no x
  RealEnclosure value;
  std::optional<std::string> exact_form;
  std::vector<std::string> witness;
  std::string certificate = "certified";
  unsigned long long nodes = 0;
  double elapsed_ms = 0;
  std::vector<std::pair<std::string, std::string>> extras;  // shown in table and JSON only
};

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_format(const std::string& name);

// Midpoint to 12 significant digits with the enclosure width appended.
std::string format_value(const RealEnclosure& v);

inline const char* kCsvHeader = "x,value_lo,value_hi,exact_form,witness,certificate";

std::string render_table(const std::vector<OutputRecord>& records);
std::string render_csv(const std::vector<OutputRecord>& records);
// One object for a single record, an array otherwise.
std::string render_json(const std::vector<OutputRecord>& records);
std::string render(const std::vector<OutputRecord>& records, OutputFormat format);

// Parses text produced by render_csv back into header-keyed rows.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text);

}  // namespace mahler
