#include "starspike/tables.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "starspike/error.hpp"

namespace starspike {

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) invariant_failure("format_number buffer too small");
  return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + tmp.string());
    out << content;
    if (!out.flush()) throw InputError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw InputError("cannot move " + tmp.string() + " to " + path.string() +
                     ": " + ec.message());
}

std::string Table::to_tsv() const {
  std::ostringstream out;
  for (const auto& m : meta) out << "# " << m << '\n';
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "\t" : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void write_table(const Table& t, const std::filesystem::path& path) {
  for (const auto& row : t.rows)
    if (row.size() != t.header.size())
      invariant_failure("table row width differs from header: " + path.string());
  write_file_atomic(path, t.to_tsv());
}

namespace {
std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
    fields.back().pop_back();
  return fields;
}
}  // namespace

Table read_table(const std::filesystem::path& path,
                 const std::string& expected_schema) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table: " + path.string());
  Table t;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen && line.size() >= 2 && line[0] == '#') {
      size_t b = 1;
      while (b < line.size() && line[b] == ' ') ++b;
      t.meta.push_back(line.substr(b));
      continue;
    }
    if (!header_seen) {
      t.header = split_tabs(line);
      header_seen = true;
      continue;
    }
    t.rows.push_back(split_tabs(line));
    if (t.rows.back().size() != t.header.size())
      throw InputError(path.string() + ": row " +
                       std::to_string(t.rows.size()) + " has " +
                       std::to_string(t.rows.back().size()) +
                       " fields, header has " + std::to_string(t.header.size()));
  }
  if (!header_seen) throw InputError(path.string() + ": no header row");
  if (!expected_schema.empty()) {
    const std::string found =
        table_has_meta(t, "schema") ? table_meta(t, "schema") : "(none)";
    if (found != expected_schema)
      throw InputError(path.string() + ": schema mismatch, expected \"" +
                       expected_schema + "\", found \"" + found + "\"");
  }
  return t;
}

bool table_has_meta(const Table& t, const std::string& key) {
  const std::string prefix = key + ": ";
  for (const auto& m : t.meta)
    if (m.rfind(prefix, 0) == 0) return true;
  return false;
}

std::string table_meta(const Table& t, const std::string& key) {
  const std::string prefix = key + ": ";
  for (const auto& m : t.meta)
    if (m.rfind(prefix, 0) == 0) return m.substr(prefix.size());
  throw InputError("table metadata missing key: " + key);
}

double parse_number(const std::string& s, const std::string& context) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError(context + ": cannot parse \"" + s + "\" as a number");
  return value;
}

}  // namespace starspike
