// Copyright 2026 The edgebo Authors.
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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace edgebo::minitoml {

/// A scalar or a single-line array of scalars. This covers the subset of TOML
/// used by the experiment configuration files: bare keys, [table] headers,
/// strings, integers, floats, booleans, arrays, and # comments.
struct Value {
    using Scalar = std::variant<bool, std::int64_t, double, std::string>;
    bool is_array = false;
    std::vector<Scalar> items;  // exactly one item unless is_array
    int line = 0;

    bool as_bool() const;
    std::int64_t as_int() const;
    double as_double() const;  // accepts integers
    const std::string& as_string() const;
    std::vector<double> as_double_array() const;
};

/// Flattened document: keys are "table.key".
using Table = std::map<std::string, Value>;

/// Parses a document; throws std::runtime_error with a line number on any
/// syntax error or duplicate key.
Table parse(std::istream& in);
Table parse_file(const std::string& path);

}  // namespace edgebo::minitoml
