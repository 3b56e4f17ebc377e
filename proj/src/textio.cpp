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

#include "geomgate/textio.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geomgate/errors.hpp"

namespace geomgate {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double_si(const std::string& s) {
  if (s.empty()) throw ParseError("empty numeric value");
  double scale = 1.0;
  std::string body = s;
  switch (body.back()) {
    case 'k': scale = 1e3; body.pop_back(); break;
    case 'M': scale = 1e6; body.pop_back(); break;
    case 'G': scale = 1e9; body.pop_back(); break;
    default: break;
  }
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(body, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad numeric value '" + s + "'");
  }
  if (pos != body.size()) throw ParseError("trailing characters in numeric value '" + s + "'");
  return v * scale;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("rename to " + path + " failed: " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {
std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

bool KvSection::has(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return true;
  return false;
}

const std::string& KvSection::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  throw ParseError("missing field '" + key + "' in section [" + (name.empty() ? "header" : name) +
                   "]" + (line ? " starting at line " + std::to_string(line) : ""));
}

double KvSection::get_double(const std::string& key) const {
  const std::string& v = get(key);
  try {
    return parse_double_si(v);
  } catch (const ParseError&) {
    throw ParseError("field '" + key + "': bad numeric value '" + v + "'");
  }
}

std::vector<KvSection> parse_kv_document(const std::string& text) {
  std::vector<KvSection> sections;
  sections.push_back(KvSection{});
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(lineno) + ": unterminated section header");
      KvSection s;
      s.name = trim(line.substr(1, line.size() - 2));
      s.line = lineno;
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                       line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
    sections.back().entries.emplace_back(std::move(key), std::move(value));
  }
  return sections;
}

}  // namespace geomgate
