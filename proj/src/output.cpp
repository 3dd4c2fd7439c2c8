#include "deforma/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include "deforma/errors.hpp"
#include "json.hpp"

namespace deforma::output {
namespace {

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

nlohmann::ordered_json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  const std::string text = format_number(value);
  double rounded = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

Table& Table::add(std::string name, std::vector<double> numbers) {
  columns_.push_back({std::move(name), std::move(numbers), {}, false});
  return *this;
}

Table& Table::add(std::string name, std::vector<std::string> text) {
  columns_.push_back({std::move(name), {}, std::move(text), true});
  return *this;
}

std::size_t Table::rows() const {
  if (columns_.empty()) return 0;
  const std::size_t n = columns_.front().size();
  for (const Column& c : columns_) {
    if (c.size() != n) throw std::logic_error("table column '" + c.name + "' has a different length");
  }
  return n;
}

std::string to_csv(const Table& table) {
  const std::size_t rows = table.rows();
  std::string out;
  const auto& columns = table.columns();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j > 0) out += ',';
    out += csv_cell(columns[j].name);
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j > 0) out += ',';
      const Column& c = columns[j];
      out += c.is_text ? csv_cell(c.text[i]) : format_number(c.numbers[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  table.rows();
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) doc["meta"][key] = value;
  doc["data"] = nlohmann::ordered_json::object();
  for (const Column& c : table.columns()) {
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    if (c.is_text) {
      for (const std::string& s : c.text) values.push_back(s);
    } else {
      for (double v : c.numbers) values.push_back(json_number(v));
    }
    doc["data"][c.name] = std::move(values);
  }
  return doc.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
  return format == Format::csv ? to_csv(table) : to_json(table);
}

Table profile_table(const Profile& profile, std::string_view real_name) {
  Table table;
  table.meta = profile.meta();
  table.add("xi", profile.grid().abscissae());
  std::vector<double> re;
  std::vector<double> im;
  for (const Complex& v : profile.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  if (!real_name.empty()) {
    table.add(std::string(real_name), std::move(re));
  } else {
    table.add("value_re", std::move(re));
    table.add("value_im", std::move(im));
  }
  return table;
}

void write_output(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + temp.string() + "' for writing");
    file << content;
    file.flush();
    if (!file) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw std::runtime_error("write to '" + temp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw std::runtime_error("cannot move output into '" + path + "': " + ec.message());
  }
}

}  // namespace deforma::output
