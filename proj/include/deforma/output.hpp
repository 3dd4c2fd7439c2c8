#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "deforma/grid.hpp"

/// Tabular results and their CSV / JSON renderings.
namespace deforma::output {

enum class Format { csv, json };

/// "csv" or "json"; DomainError otherwise.
Format parse_format(std::string_view name);

/// A named column holding either numbers or text.
struct Column {
  std::string name;
  std::vector<double> numbers;
  std::vector<std::string> text;
  bool is_text = false;

  std::size_t size() const { return is_text ? text.size() : numbers.size(); }
};

class Table {
 public:
  Table& add(std::string name, std::vector<double> numbers);
  Table& add(std::string name, std::vector<std::string> text);

  const std::vector<Column>& columns() const { return columns_; }
  /// Row count; throws std::logic_error if the columns disagree.
  std::size_t rows() const;

  Meta meta;

 private:
  std::vector<Column> columns_;
};

/// Header row plus one line per row, "%.12g" numbers, '\n' line ends. Text
/// cells containing a comma, quote or newline are quoted.
std::string to_csv(const Table& table);

/// {"meta": {...}, "data": {"column": [...], ...}} with the column order
/// preserved. Numbers are rounded to 12 significant digits; NaN and infinities
/// become null.
std::string to_json(const Table& table);

std::string render(const Table& table, Format format);

/// xi, value_re, value_im columns (xi, <real_name> when `real_name` is given
/// and only the real part is wanted), with the profile's metadata.
Table profile_table(const Profile& profile, std::string_view real_name = {});

/// Writes `content` to `out` when `path` is empty or "-". Otherwise writes a
/// temporary file next to `path` and renames it into place, so readers never
/// see a partial file. Throws std::runtime_error on I/O failure.
void write_output(const std::string& content, const std::string& path, std::ostream& out);

}  // namespace deforma::output
