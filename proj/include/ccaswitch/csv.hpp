// Copyright 2026 The ccaswitch Authors
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

#pragma once

#include <charconv>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace ccaswitch::csv {

/// Shortest round-trip decimal form; independent of the global locale.
inline std::string format(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

inline std::string format(long long value) { return std::to_string(value); }
inline std::string format(int value) { return std::to_string(value); }
inline std::string format(std::size_t value) { return std::to_string(value); }
inline std::string format(bool value) { return value ? "1" : "0"; }
inline std::string format(std::string_view value) { return std::string(value); }
inline std::string format(const char *value) { return std::string(value); }

class Writer {
  public:
    explicit Writer(std::ostream &out) : out_(out) {}

    template <typename... Fields>
    void row(const Fields &...fields) {
        bool first = true;
        ((out_ << (first ? "" : ",") << format(fields), first = false), ...);
        out_ << '\n';
    }

    void header(std::initializer_list<std::string_view> names) {
        bool first = true;
        for (auto name : names) {
            out_ << (first ? "" : ",") << name;
            first = false;
        }
        out_ << '\n';
    }

    std::ostream &stream() { return out_; }

  private:
    std::ostream &out_;
};

}  // namespace ccaswitch::csv
