// Copyright 2026 The fnex Authors.
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

#include "fnex/json_io.hpp"

#include <fstream>

namespace fnex {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::vector<double> number_array(const json& doc, const char* key) {
  const json& arr = field(doc, key);
  if (!arr.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number()) throw FormatError(std::string("field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json doc;
  doc["model"] = inst.model.kind == Externality::kAdAd ? "aa" : "sa";
  doc["reset"] = inst.model.reset;
  doc["window"] = inst.model.window;
  doc["n"] = inst.n;
  doc["k"] = inst.k;
  doc["q"] = inst.quality;
  doc["v"] = inst.value;
  if (inst.model.kind == Externality::kAdAd) doc["lambda"] = inst.lambda;
  json rows = json::array();
  for (int r = 0; r < inst.gamma.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < inst.gamma.cols(); ++c) row.push_back(inst.gamma(r, c));
    rows.push_back(std::move(row));
  }
  doc["gamma"] = std::move(rows);
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("instance must be a JSON object");
  Instance inst;
  try {
    const std::string model = field(doc, "model").get<std::string>();
    if (model == "aa") {
      inst.model.kind = Externality::kAdAd;
    } else if (model == "sa") {
      inst.model.kind = Externality::kSlotAd;
    } else {
      throw FormatError("model must be \"sa\" or \"aa\"");
    }
    inst.model.reset = field(doc, "reset").get<bool>();
    inst.model.window = field(doc, "window").get<int>();
    inst.n = field(doc, "n").get<int>();
    inst.k = field(doc, "k").get<int>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad instance header: ") + e.what());
  }
  inst.quality = number_array(doc, "q");
  inst.value = number_array(doc, "v");
  if (inst.model.kind == Externality::kAdAd) inst.lambda = number_array(doc, "lambda");

  const json& rows = field(doc, "gamma");
  if (!rows.is_array()) throw FormatError("gamma must be an array of rows");
  const int n_rows = static_cast<int>(rows.size());
  const int n_cols = n_rows == 0 || !rows[0].is_array() ? 0 : static_cast<int>(rows[0].size());
  inst.gamma = Matrix(n_rows, n_cols);
  for (int r = 0; r < n_rows; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n_cols) {
      throw FormatError("gamma rows must all have the same length");
    }
    for (int c = 0; c < n_cols; ++c) {
      if (!rows[r][c].is_number()) throw FormatError("gamma entries must be numbers");
      inst.gamma(r, c) = rows[r][c].get<double>();
    }
  }
  return inst;
}

json allocation_to_json(const Allocation& theta) {
  json arr = json::array();
  for (int ad : theta.slots()) {
    if (ad == kBot) {
      arr.push_back("BOT");
    } else {
      arr.push_back(ad + 1);
    }
  }
  return arr;
}

Allocation allocation_from_json(const json& doc) {
  if (!doc.is_array()) throw FormatError("allocation must be a JSON array");
  std::vector<int> slots;
  for (const auto& entry : doc) {
    if (entry.is_string() && entry.get<std::string>() == "BOT") {
      slots.push_back(kBot);
    } else if (entry.is_number_integer() && entry.get<int>() >= 1) {
      slots.push_back(entry.get<int>() - 1);
    } else {
      throw FormatError("allocation entries must be positive integers or \"BOT\"");
    }
  }
  return Allocation(std::move(slots));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

}  // namespace fnex
