/*
 * Copyright 2026 The rftiosa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RFT_TESTS_SUPPORT_HPP
#define RFT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rft/symbolic.hpp"

namespace rft::testing {

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(RFT_SOURCE_DIR) / rel;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_source(const std::string& rel) { return slurp(source_path(rel)); }

/// Sorted list of files with the given extension under a source directory.
inline std::vector<std::filesystem::path> files_in(const std::string& rel, const std::string& ext) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(source_path(rel)))
    if (e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Expands every module of a closed model against the model's own alphabet.
inline std::vector<ExpandedModule> expand_all(const std::vector<SymbolicModule>& mods) {
  const Alphabet alpha = build_alphabet(mods);
  std::vector<ExpandedModule> out;
  for (const auto& m : mods) out.push_back(expand(m, alpha));
  return out;
}

}  // namespace rft::testing

#endif  // RFT_TESTS_SUPPORT_HPP
