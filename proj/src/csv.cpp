#include "effdemand/csv.hpp"

#include <charconv>
#include <sstream>
#include <system_error>
#include <vector>

#include "effdemand/errors.hpp"

namespace effdemand {

namespace {

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_field(std::string& out, std::string_view field) {
  if (!needs_quotes(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

std::string header_label(const Column& column) {
  if (column.unit.empty()) return column.name;
  return column.name + " (" + column.unit + ")";
}

Column parse_header_label(const std::string& label) {
  const auto open = label.find(" (");
  if (open != std::string::npos && !label.empty() && label.back() == ')') {
    return {label.substr(0, open), label.substr(open + 2, label.size() - open - 3)};
  }
  return {label, ""};
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "csv line " << line << ": " << what;
  throw Error(ErrorCode::parse, os.str());
}

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  current.line = line;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t i = 0;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  while (i < text.size()) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      ++i;
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty() || field_was_quoted) parse_fail(line, "stray quote");
        quoted = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 >= text.size() || text[i + 1] != '\n') parse_fail(line, "bare carriage return");
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (field_was_quoted) parse_fail(line, "text after closing quote");
        field.push_back(ch);
    }
    ++i;
  }
  if (quoted) parse_fail(line, "unterminated quoted field");
  if (!field.empty() || field_was_quoted || !current.fields.empty()) end_record();
  return records;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string emit_csv(const CurveTable& table) {
  table.validate();
  std::string out;
  const bool with_status = !table.status.empty();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out.push_back(',');
    append_field(out, header_label(table.columns[c]));
  }
  if (with_status) out.append(",status");
  out.push_back('\n');
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      if (row[c]) out.append(format_number(*row[c]));
    }
    if (with_status) {
      out.push_back(',');
      append_field(out, table.status[r]);
    }
    out.push_back('\n');
  }
  return out;
}

CurveTable parse_csv(std::string_view text) {
  const auto records = split_records(text);
  if (records.empty()) parse_fail(1, "missing header row");

  CurveTable table;
  auto header = records.front().fields;
  const bool with_status = !header.empty() && header.back() == "status";
  if (with_status) header.pop_back();
  if (header.empty()) parse_fail(1, "header has no data columns");
  for (const auto& label : header) table.columns.push_back(parse_header_label(label));

  const std::size_t width = header.size() + (with_status ? 1 : 0);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      std::ostringstream os;
      os << "expected " << width << " fields, found " << rec.fields.size();
      parse_fail(rec.line, os.str());
    }
    std::vector<Cell> row;
    row.reserve(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& f = rec.fields[c];
      if (f.empty()) {
        row.emplace_back(std::nullopt);
        continue;
      }
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        parse_fail(rec.line, "not a number: '" + f + "'");
      }
      row.emplace_back(v);
    }
    table.rows.push_back(std::move(row));
    if (with_status) table.status.push_back(rec.fields.back());
  }
  try {
    table.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, e.what());
  }
  return table;
}

}  // namespace effdemand
