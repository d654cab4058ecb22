#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slco/slco.hpp"

namespace slco::test {

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path model_path(const std::string& name) { return std::filesystem::path(SLCO_MODELS_DIR) / name; }

inline Model parse_or_throw(const std::string& text) {
  auto r = parse_model(text);
  if (!r) {
    std::ostringstream os;
    for (const auto& d : r.diagnostics) os << d << '\n';
    throw std::runtime_error("parse failed:\n" + os.str());
  }
  return *r.model;
}

inline Model load_model(const std::string& name) { return parse_or_throw(read_text(model_path(name))); }

inline std::vector<std::string> corpus() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(SLCO_MODELS_DIR))
    if (e.path().extension() == ".slco") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace slco::test
