#pragma once
#include <chrono>
#include <string>

#include "io.hpp"

namespace cdgtest {

inline std::string fixture(const std::string& name) { return std::string(CDG_FIXTURE_DIR) + "/" + name + ".json"; }

inline cdg::LoadedCategory load(const std::string& name, std::optional<cdg::Field> f = {}) {
  return cdg::load_category_file(fixture(name), f);
}

inline cdg::CategoryPtr category(const std::string& name, std::optional<cdg::Field> f = {}) {
  return load(name, f).category;
}

// Parses an inline category description in the fixture format.
inline cdg::CategoryPtr inline_category(const char* text) {
  return std::make_shared<const cdg::CdgCategory>(cdg::category_from_json(cdg::json::parse(text)));
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace cdgtest
