// Copyright 2026 The geomgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace geomgate {

/// Formats a double with enough digits for exact text round-trip.
std::string fmt_double(double v);

/// Parses a double; accepts SI magnitude suffixes k, M, G (for Hz-valued flags).
double parse_double_si(const std::string& s);

/// Writes content to path atomically (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Minimal `key = value` document with one-level sections.
/// Lines: blank, `# comment`, `[section]`, `key = value`. Section occurrences
/// are kept in order; keys within a section keep insertion order.
struct KvSection {
  std::string name;  // "" for the header section
  std::vector<std::pair<std::string, std::string>> entries;
  int line = 0;  // 1-based line of the section marker (0 for header)

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws ParseError if missing
  double get_double(const std::string& key) const;
};

std::vector<KvSection> parse_kv_document(const std::string& text);

}  // namespace geomgate
