#pragma once

// Small row table that renders as CSV or as a JSON array of objects.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sdm {

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

// Shortest decimal that round-trips the double exactly; plain notation in
// the usual range, exponent form outside it.
inline std::string format_double(double v) {
  char buf[400];
  const double a = std::fabs(v);
  const auto fmt = (a == 0.0 || (a >= 1e-6 && a < 1e16)) ? std::chars_format::fixed : std::chars_format::general;
  auto res = std::to_chars(buf, buf + sizeof buf, v, fmt);
  return {buf, res.ptr};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }

  std::string to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c) out += ',';
      out += header[c];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += std::visit(
            [](const auto& v) -> std::string {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) return format_double(v);
              else if constexpr (std::is_same_v<T, std::string>) return v;
              else return std::to_string(v);
            },
            row[c]);
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::json to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::visit([&](const auto& v) { obj[header[c]] = v; }, row[c]);
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }

  std::string render(bool json) const { return json ? to_json().dump(1) + "\n" : to_csv(); }
};

// Splits one CSV line without quoting support; our tables never quote.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  for (char ch : line) {
    if (ch == ',') out.emplace_back();
    else if (ch != '\r') out.back() += ch;
  }
  return out;
}

}  // namespace sdm
