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

#ifndef LORAPLAN_ERROR_HPP
#define LORAPLAN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace loraplan {

/// Argument outside an operation's mathematical domain (non-positive distance, a = b, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Site configuration lacks something an operation needs (material loss, TX current entry).
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. `where()` is either "line L, column C" or a JSON pointer.
class ParseError : public std::runtime_error
{
  public:
    ParseError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where))
    {
    }

    const std::string& where() const noexcept { return where_; }

  private:
    std::string where_;
};

struct Violation
{
    std::string entity;    // e.g. "gateway 'gw-1'"
    std::string invariant; // e.g. "position.z > 0"

    std::string to_string() const { return entity + ": " + invariant; }
    bool operator==(const Violation&) const = default;
};

/// Raised by operations that require a valid site.
class ValidationError : public std::runtime_error
{
  public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

  private:
    std::vector<Violation> violations_;
};

} // namespace loraplan

#endif
