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

#include "edgebo/minitoml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edgebo::minitoml {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// Removes a trailing comment, respecting basic strings.
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
            return false;
    return true;
}

Value::Scalar parse_scalar(const std::string& tok, int line) {
    if (tok.empty()) fail(line, "empty value");
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
            if (tok[i] == '\\' && i + 2 < tok.size()) {
                ++i;
                switch (tok[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(line, "unsupported escape sequence");
                }
            } else {
                out += tok[i];
            }
        }
        return out;
    }
    const bool looks_float = tok.find_first_of(".eE") != std::string::npos ||
                             tok == "inf" || tok == "-inf" || tok == "nan";
    if (!looks_float) {
        std::int64_t iv = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (ec == std::errc() && p == tok.data() + tok.size()) return iv;
    }
    try {
        std::size_t used = 0;
        const double dv = std::stod(tok, &used);
        if (used == tok.size()) return dv;
    } catch (const std::exception&) {
    }
    fail(line, "cannot parse value '" + tok + "'");
}

/// Splits an array body on top-level commas.
std::vector<std::string> split_array(const std::string& body, int line) {
    std::vector<std::string> out;
    bool in_string = false;
    std::string cur;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    const std::string last = trim(cur);
    if (!last.empty()) out.push_back(last);
    for (const std::string& t : out)
        if (t.empty()) fail(line, "empty array element");
    return out;
}

}  // namespace

bool Value::as_bool() const {
    if (is_array || !std::holds_alternative<bool>(items[0]))
        fail(line, "expected a boolean");
    return std::get<bool>(items[0]);
}

std::int64_t Value::as_int() const {
    if (is_array || !std::holds_alternative<std::int64_t>(items[0]))
        fail(line, "expected an integer");
    return std::get<std::int64_t>(items[0]);
}

double Value::as_double() const {
    if (is_array) fail(line, "expected a number");
    if (std::holds_alternative<double>(items[0])) return std::get<double>(items[0]);
    if (std::holds_alternative<std::int64_t>(items[0]))
        return static_cast<double>(std::get<std::int64_t>(items[0]));
    fail(line, "expected a number");
}

const std::string& Value::as_string() const {
    if (is_array || !std::holds_alternative<std::string>(items[0]))
        fail(line, "expected a string");
    return std::get<std::string>(items[0]);
}

std::vector<double> Value::as_double_array() const {
    if (!is_array) fail(line, "expected an array");
    std::vector<double> out;
    out.reserve(items.size());
    for (const Scalar& s : items) {
        if (std::holds_alternative<double>(s))
            out.push_back(std::get<double>(s));
        else if (std::holds_alternative<std::int64_t>(s))
            out.push_back(static_cast<double>(std::get<std::int64_t>(s)));
        else
            fail(line, "expected a numeric array");
    }
    return out;
}

Table parse(std::istream& in) {
    Table table;
    std::string prefix;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed table header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) fail(line_no, "invalid table name");
            prefix = name + ".";
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) fail(line_no, "invalid key '" + key + "'");
        const std::string value_str = trim(line.substr(eq + 1));
        if (value_str.empty()) fail(line_no, "missing value");

        Value v;
        v.line = line_no;
        if (value_str.front() == '[') {
            if (value_str.back() != ']') fail(line_no, "arrays must be single-line");
            v.is_array = true;
            for (const std::string& tok :
                 split_array(value_str.substr(1, value_str.size() - 2), line_no))
                v.items.push_back(parse_scalar(tok, line_no));
        } else {
            v.items.push_back(parse_scalar(value_str, line_no));
        }
        const std::string full = prefix + key;
        if (table.count(full)) fail(line_no, "duplicate key '" + full + "'");
        table.emplace(full, std::move(v));
    }
    return table;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("toml: cannot open '" + path + "'");
    return parse(in);
}

}  // namespace edgebo::minitoml
