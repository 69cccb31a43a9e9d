#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace starspike {

// Shortest decimal representation that round-trips the double exactly
// (std::to_chars). Used for every numeric table cell so staged runs
// re-read precisely what the monolithic pipeline computed.
std::string format_number(double v);

// Writes content to path via a temp file + rename so readers never observe
// a half-written table.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Tab-separated table with one header row and optional '#'-prefixed metadata
// lines before the header (schema tag first).
struct Table {
  std::vector<std::string> meta;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
  std::string to_tsv() const;
};

void write_table(const Table& t, const std::filesystem::path& path);

// Reads a TSV written by write_table. Throws InputError on structural
// problems; if expected_schema is non-empty, the first metadata line must be
// "schema: <expected_schema>".
Table read_table(const std::filesystem::path& path,
                 const std::string& expected_schema = "");

// Parses "key: value" out of a table's metadata lines; throws InputError if
// the key is absent.
std::string table_meta(const Table& t, const std::string& key);
bool table_has_meta(const Table& t, const std::string& key);

double parse_number(const std::string& s, const std::string& context);

}  // namespace starspike
