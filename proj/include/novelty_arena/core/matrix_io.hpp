// Copyright 2026 The Novelty Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV and JSON forms of an AgentMatrix.
//
// CSV: a header row `agent,<name_0>,...,<name_n-1>` followed by one row per
// agent, `<name_i>,<cell_i0>,...`. Numbers use the shortest decimal that
// round-trips, so reading the file back reproduces the matrix bit for bit.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/core/number_format.hpp"

namespace novelty_arena {

namespace csv {

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace csv

inline std::string matrix_to_csv(const AgentMatrix& m) {
  std::ostringstream out;
  out << "agent";
  for (const auto& id : m.labels()) out << ',' << csv::quote(id.name);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << csv::quote(m.labels()[i].name);
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << format_double(m(i, j));
    out << '\n';
  }
  return out.str();
}

inline AgentMatrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("matrix csv: empty input");
  auto header = csv::split_line(line);
  if (header.empty() || header[0] != "agent")
    throw InvalidArgument("matrix csv: header must start with 'agent'");
  std::vector<std::string> names(header.begin() + 1, header.end());
  AgentMatrix m(make_agent_ids(names));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = csv::split_line(line);
    if (row >= names.size()) throw InvalidArgument("matrix csv: too many rows");
    if (fields.size() != names.size() + 1)
      throw InvalidArgument("matrix csv: row " + std::to_string(row + 1) +
                            " has wrong field count");
    if (fields[0] != names[row])
      throw InvalidArgument("matrix csv: row label '" + fields[0] +
                            "' does not match header");
    for (std::size_t j = 0; j < names.size(); ++j) m(row, j) = parse_double(fields[j + 1]);
    ++row;
  }
  if (row != names.size()) throw InvalidArgument("matrix csv: missing rows");
  return m;
}

// Metadata that travels with a serialized matrix.
struct MatrixProvenance {
  std::optional<int> novelty_id;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
};

inline nlohmann::json matrix_to_json(const AgentMatrix& m, const MatrixProvenance& p) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& id : m.labels()) labels.push_back(id.name);
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto r = m.row(i);
    cells.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"labels", labels},
          {"cells", cells},
          {"novelty_id", p.novelty_id ? nlohmann::json(*p.novelty_id) : nlohmann::json()},
          {"seed", p.seed},
          {"config", p.config}};
}

inline AgentMatrix matrix_from_json(const nlohmann::json& j, MatrixProvenance* p = nullptr) {
  try {
    auto names = j.at("labels").get<std::vector<std::string>>();
    AgentMatrix m(make_agent_ids(names));
    const auto& cells = j.at("cells");
    if (!cells.is_array() || cells.size() != names.size())
      throw InvalidArgument("matrix json: cells has wrong row count");
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto r = cells[i].get<std::vector<double>>();
      if (r.size() != names.size())
        throw InvalidArgument("matrix json: row " + std::to_string(i) + " has wrong length");
      for (std::size_t k = 0; k < r.size(); ++k) m(i, k) = r[k];
    }
    if (p) {
      p->novelty_id = j.contains("novelty_id") && !j["novelty_id"].is_null()
                          ? std::optional<int>(j["novelty_id"].get<int>())
                          : std::nullopt;
      p->seed = j.value("seed", std::uint64_t{0});
      p->config = j.value("config", nlohmann::json::object());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("matrix json: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace novelty_arena
