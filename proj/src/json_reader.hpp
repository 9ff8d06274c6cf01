// SPDX-License-Identifier: Apache-2.0
//
// loraplan - LoRaWAN site planning toolkit
// Copyright (C) 2026 The loraplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Strict JSON object reading shared by the site and trajectory parsers.

#ifndef LORAPLAN_SRC_JSON_READER_HPP
#define LORAPLAN_SRC_JSON_READER_HPP

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"
#include "loraplan/error.hpp"

namespace loraplan::detail {

using nlohmann::json;

inline std::string location_of(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Object view that rejects unknown keys once every expected key has been read.
class ObjectReader
{
  public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ParseError(where(), "expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& get(const std::string& key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            throw ParseError(child(key), "missing required field");
        return *it;
    }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    double number(const std::string& key) { return as_number(get(key), child(key)); }

    double number_or(const std::string& key, double fallback)
    {
        const json* v = find(key);
        return v ? as_number(*v, child(key)) : fallback;
    }

    long long integer(const std::string& key) { return as_integer(get(key), child(key)); }

    long long integer_or(const std::string& key, long long fallback)
    {
        const json* v = find(key);
        return v ? as_integer(*v, child(key)) : fallback;
    }

    std::string string(const std::string& key) { return as_string(get(key), child(key)); }

    void finish() const
    {
        for (const auto& [key, value] : j_.items())
            if (!seen_.contains(key))
                throw ParseError(child(key), "unknown field");
    }

    std::string child(const std::string& key) const { return path_ + "/" + key; }
    std::string where() const { return path_.empty() ? "/" : path_; }

    static double as_number(const json& v, const std::string& path)
    {
        if (!v.is_number())
            throw ParseError(path, "expected a number");
        return v.get<double>();
    }

    static long long as_integer(const json& v, const std::string& path)
    {
        if (v.is_number_unsigned()) {
            auto u = v.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
                throw ParseError(path, "integer out of range");
            return static_cast<long long>(u);
        }
        if (!v.is_number_integer())
            throw ParseError(path, "expected an integer");
        return v.get<long long>();
    }

    static std::string as_string(const json& v, const std::string& path)
    {
        if (!v.is_string())
            throw ParseError(path, "expected a string");
        return v.get<std::string>();
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline const json& array_at(const json& v, const std::string& path)
{
    if (!v.is_array())
        throw ParseError(path, "expected an array");
    return v;
}

} // namespace loraplan::detail

#endif
