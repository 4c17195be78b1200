#pragma once

// Instance files are JSON documents:
//   { "n_agents": N, "n_arms": K, "means": [[...], ...] }

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "sdm/market.hpp"

namespace sdm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline nlohmann::json instance_to_json(const Instance& inst) {
  return {{"n_agents", inst.n_agents()}, {"n_arms", inst.n_arms()}, {"means", inst.rows()}};
}

// Shape and value errors surface as InstanceError.
inline Instance instance_from_json(const nlohmann::json& doc) {
  using Kind = InstanceError::Kind;
  if (!doc.is_object() || !doc.contains("means")) {
    throw InstanceError(Kind::Shape, "instance document needs a 'means' array");
  }
  std::vector<std::vector<double>> rows;
  try {
    rows = doc.at("means").get<std::vector<std::vector<double>>>();
    if (doc.contains("n_agents") && doc.at("n_agents").get<std::size_t>() != rows.size()) {
      throw InstanceError(Kind::Shape, "'n_agents' disagrees with the means matrix");
    }
    if (doc.contains("n_arms")) {
      const auto k = doc.at("n_arms").get<std::size_t>();
      for (const auto& r : rows) {
        if (r.size() != k) throw InstanceError(Kind::Shape, "'n_arms' disagrees with the means matrix");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(Kind::Shape, std::string("malformed instance document: ") + e.what());
  }
  return validate_instance(std::move(rows));
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse " + path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

inline Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

inline void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(inst).dump(2) + "\n");
}

}  // namespace sdm
