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

// Instance and allocation files.
//
// Instance: {"model": "sa"|"aa", "reset": bool, "window": int, "n": int,
//            "k": int, "q": [...], "v": [...], "lambda": [...] (aa only),
//            "gamma": N x N (aa) or K x N (sa)}
// Allocation: array of K entries, each a 1-based ad index or "BOT".

#ifndef FNEX_JSON_IO_HPP_
#define FNEX_JSON_IO_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fnex/core.hpp"

namespace fnex {

// Malformed documents raise FormatError; the parsed instance is not validated.
class FormatError : public Error {
 public:
  using Error::Error;
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json allocation_to_json(const Allocation& theta);
Allocation allocation_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace fnex

#endif  // FNEX_JSON_IO_HPP_
