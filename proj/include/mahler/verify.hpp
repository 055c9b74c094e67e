#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mahler {

struct VerifyLine {
  bool pass = true;
  std::string anchor;  // the statement being exercised
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyLine> lines;

  bool passed() const;
  std::string render() const;  // deterministic: no timing, no thread-dependent data
};

const std::vector<std::string>& suite_names();  // smallp, notuniform, weil, framework, continuity

// Throws InputError for an unknown suite; "all" runs every suite in order.
std::vector<VerifyReport> run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace mahler
