#pragma once

// Delimited-text (RFC-4180 style) ingestion and serialization with
// configurable NA tokens and narrowest-fit dtype inference.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nabular/table.hpp"

namespace nabular {

// Tokens treated as missing on ingest; the first one is what a Missing cell
// serializes as. Comparison is exact after surrounding-whitespace trim.
struct NaTokenConfig {
  std::vector<std::string> text_tokens{"NA", ""};

  const std::string& missing_token() const { return text_tokens.front(); }
  bool is_na(std::string_view s) const {
    for (const auto& t : text_tokens)
      if (t == s) return true;
    return false;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Split a full document into records of fields, honoring quoted fields with
// embedded delimiters, quotes ("") and newlines.
inline std::vector<std::vector<std::string>> parse_records(
    const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;

  auto end_field = [&] {
    if (field_was_quoted)
      record.push_back(field);
    else
      record.emplace_back(trim(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    // skip blank lines (a single empty unquoted field)
    if (!(record.size() == 1 && record[0].empty())) records.push_back(record);
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
        if (c == '\n') ++line;
      }
    } else if (c == '"' && trim(field).empty()) {
      in_quotes = true;
      field_was_quoted = true;
      field.clear();
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field += c;
    }
  }
  if (in_quotes)
    throw parse_error("unterminated quoted field at line " +
                      std::to_string(line));
  if (!field.empty() || !record.empty()) end_record();
  return records;
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline bool parse_bool(std::string_view s, bool& out) {
  if (s == "true" || s == "TRUE") { out = true; return true; }
  if (s == "false" || s == "FALSE") { out = false; return true; }
  return false;
}

inline std::string format_number(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

inline bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

inline void write_field(std::ostream& os, const std::string& s) {
  if (!needs_quoting(s)) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

}  // namespace detail

// Parse comma-delimited text with a header row. Cells matching an NA token
// become Missing; each column gets the narrowest dtype fitting all present
// values, in the order integer, numeric, boolean, text.
inline Table read_delimited(std::istream& source,
                            const NaTokenConfig& config = {}) {
  std::ostringstream buf;
  buf << source.rdbuf();
  auto records = detail::parse_records(buf.str());
  if (records.empty()) throw schema_error("empty input: no header row");

  const auto& header = records.front();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].empty()) throw schema_error("empty header name");
    for (std::size_t j = i + 1; j < header.size(); ++j)
      if (header[i] == header[j])
        throw schema_error("duplicate header: " + header[i]);
  }

  const std::size_t n_cols = header.size();
  const std::size_t n_rows = records.size() - 1;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != n_cols)
      throw parse_error("ragged row " + std::to_string(r) + ": expected " +
                        std::to_string(n_cols) + " fields, got " +
                        std::to_string(records[r].size()));
  }

  std::vector<Column> cols(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    cols[c].name = header[c];
    bool fits_int = true, fits_num = true, fits_bool = true;
    for (std::size_t r = 0; r < n_rows; ++r) {
      const std::string& tok = records[r + 1][c];
      if (config.is_na(tok)) continue;
      std::int64_t iv; double dv; bool bv;
      if (fits_int && !detail::parse_int(tok, iv)) fits_int = false;
      if (fits_num && !detail::parse_double(tok, dv)) fits_num = false;
      if (fits_bool && !detail::parse_bool(tok, bv)) fits_bool = false;
    }
    Dtype dt = fits_int   ? Dtype::Integer
               : fits_num ? Dtype::Numeric
               : fits_bool ? Dtype::Boolean
                           : Dtype::Text;
    cols[c].dtype = dt;
    cols[c].cells.reserve(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
      const std::string& tok = records[r + 1][c];
      if (config.is_na(tok)) {
        cols[c].cells.push_back(Cell::missing());
        continue;
      }
      switch (dt) {
        case Dtype::Integer: {
          std::int64_t v{};
          detail::parse_int(tok, v);
          cols[c].cells.push_back(Cell::integer(v));
          break;
        }
        case Dtype::Numeric: {
          double v{};
          detail::parse_double(tok, v);
          cols[c].cells.push_back(Cell::number(v));
          break;
        }
        case Dtype::Boolean: {
          bool v{};
          detail::parse_bool(tok, v);
          cols[c].cells.push_back(Cell::boolean(v));
          break;
        }
        case Dtype::Text:
          cols[c].cells.push_back(Cell::text(tok));
          break;
      }
    }
  }
  return Table(std::move(cols));
}

inline Table read_delimited(const std::string& text,
                            const NaTokenConfig& config = {}) {
  std::istringstream in(text);
  return read_delimited(in, config);
}

inline std::string render_cell(const Cell& cell, const NaTokenConfig& config) {
  if (cell.is_missing()) return config.missing_token();
  const Value& v = *cell.value;
  if (const auto* d = std::get_if<double>(&v)) return detail::format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

inline void write_delimited(const Table& table, std::ostream& out,
                            const NaTokenConfig& config = {}) {
  const auto names = table.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c) out << ',';
    detail::write_field(out, names[c]);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
      if (c) out << ',';
      detail::write_field(out, render_cell(table.at(r, c), config));
    }
    out << '\n';
  }
}

inline std::string write_delimited(const Table& table,
                                   const NaTokenConfig& config = {}) {
  std::ostringstream out;
  write_delimited(table, out, config);
  return out.str();
}

}  // namespace nabular
