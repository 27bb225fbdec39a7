#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "stmm/experiments.hpp"
#include "stmm/numeric.hpp"

namespace stmm {

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("row width does not match the header");
  rows_.push_back(std::move(row));
}

void CsvTable::add_numbers(const std::vector<double>& row) {
  std::vector<std::string> r;
  r.reserve(row.size());
  for (double x : row) r.push_back(format_double(x));
  add_row(std::move(r));
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write(os);
}

std::vector<double> CsvTable::column(std::string_view name) const {
  std::size_t c = 0;
  while (c < columns_.size() && columns_[c] != name) ++c;
  if (c == columns_.size()) throw std::out_of_range("no column named " + std::string(name));
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) {
    const auto& s = r[c];
    if (s == "nan" || s.empty())
      out.push_back(NAN);
    else if (s == "inf")
      out.push_back(INFINITY);
    else if (s == "-inf")
      out.push_back(-INFINITY);
    else {
      double v = NAN;
      std::from_chars(s.data(), s.data() + s.size(), v);
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace stmm
