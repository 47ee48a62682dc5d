#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "diagram.hpp"

#ifndef A2SURF_CATALOG_DIR
#define A2SURF_CATALOG_DIR "catalog"
#endif

namespace a2surf {

// A2SURF_CATALOG overrides the directory fixed at build time.
inline std::filesystem::path catalog_dir() {
  if (const char* env = std::getenv("A2SURF_CATALOG"); env && *env) return env;
  return A2SURF_CATALOG_DIR;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Diagram load_diagram(const std::filesystem::path& p) { return parse_mgd(read_file(p)); }

inline Diagram load_catalog(const std::string& name) { return load_diagram(catalog_dir() / (name + ".mgd")); }

}  // namespace a2surf
