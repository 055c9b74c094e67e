#include "mahler/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mahler/errors.hpp"

namespace mahler {

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw InputError("unknown format '" + name + "' (expected table, csv or json)");
}

namespace {

bool is_infinite(const RealEnclosure& v) { return mpfr_inf_p(v.hi().get()) != 0; }

std::string exact_double(double d) {
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string elapsed_string(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

std::string format_value(const RealEnclosure& v) {
  if (is_infinite(v)) return "inf";
  Mpfr mid(static_cast<mpfr_prec_t>(v.precision_bits()) + 1);
  mpfr_add(mid.get(), v.lo().get(), v.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  std::string s = mid.to_string(12, MPFR_RNDN);
  return s + " (width " + v.width().to_string(2, MPFR_RNDU) + ")";
}

std::string render_table(const std::vector<OutputRecord>& records) {
  std::ostringstream out;
  if (records.size() == 1) {
    const OutputRecord& r = records.front();
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("command", r.command);
    rows.emplace_back("input", r.input);
    rows.emplace_back("quantity", r.quantity);
    if (!r.x.empty()) rows.emplace_back("x", r.x);
    rows.emplace_back("value", format_value(r.value));
    rows.emplace_back("exact_form", r.exact_form.value_or("-"));
    rows.emplace_back("witness", r.witness.empty() ? "(empty)" : join(r.witness, " ; "));
    rows.emplace_back("certificate", r.certificate);
    rows.emplace_back("nodes", std::to_string(r.nodes));
    for (const auto& e : r.extras) rows.push_back(e);
    rows.emplace_back("elapsed_ms", elapsed_string(r.elapsed_ms));
    std::size_t w = 0;
    for (const auto& [k, v] : rows) w = std::max(w, k.size());
    for (const auto& [k, v] : rows) out << k << std::string(w - k.size() + 2, ' ') << v << "\n";
    return out.str();
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"x", "value", "exact_form", "witness", "certificate", "nodes"});
  double elapsed = 0;
  for (const auto& r : records) {
    cells.push_back({r.x, format_value(r.value), r.exact_form.value_or("-"),
                     r.witness.empty() ? "(empty)" : join(r.witness, " ; "), r.certificate, std::to_string(r.nodes)});
    elapsed += r.elapsed_ms;
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  if (!records.empty()) out << records.front().command << " " << records.front().input << "\n";
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size()) out << std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << "\n";
  }
  out << "elapsed_ms " << elapsed_string(elapsed) << "\n";
  return out.str();
}

std::string render_csv(const std::vector<OutputRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << csv_field(r.x) << "," << exact_double(r.value.lo_double()) << "," << exact_double(r.value.hi_double()) << ","
        << csv_field(r.exact_form.value_or("")) << "," << csv_field(join(r.witness, ";")) << "," << csv_field(r.certificate)
        << "\n";
  }
  return out.str();
}

namespace {

nlohmann::ordered_json record_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["quantity"] = r.quantity;
  j["x"] = r.x.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.x);
  const double lo = r.value.lo_double(), hi = r.value.hi_double();
  j["value_lo"] = std::isinf(lo) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(lo);
  j["value_hi"] = std::isinf(hi) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(hi);
  j["exact_form"] = r.exact_form ? nlohmann::ordered_json(*r.exact_form) : nlohmann::ordered_json(nullptr);
  j["witness"] = r.witness;
  j["certificate"] = r.certificate;
  j["nodes"] = r.nodes;
  if (!r.extras.empty()) {
    nlohmann::ordered_json extras = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.extras) extras[k] = v;
    j["extras"] = extras;
  }
  j["elapsed_ms"] = std::round(r.elapsed_ms * 1000) / 1000;
  return j;
}

}  // namespace

std::string render_json(const std::vector<OutputRecord>& records) {
  if (records.size() == 1) return record_json(records.front()).dump(2) + "\n";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

std::string render(const std::vector<OutputRecord>& records, OutputFormat format) {
  switch (format) {
    case OutputFormat::Table: return render_table(records);
    case OutputFormat::Csv: return render_csv(records);
    case OutputFormat::Json: return render_json(records);
  }
  return {};
}

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  if (any) {
    row.push_back(field);
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("empty CSV");
  std::vector<std::map<std::string, std::string>> out;
  const std::vector<std::string>& header = rows.front();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) throw ParseError("CSV row " + std::to_string(r) + " has the wrong field count");
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < header.size(); ++i) m[header[i]] = rows[r][i];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace mahler
