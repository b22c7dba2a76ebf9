// Copyright 2026 The Ramsey Proximity Authors
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

// Whitespace-token reading and exact number formatting shared by every
// text format in the library.

#ifndef RAMSEY_TEXT_IO_HPP_
#define RAMSEY_TEXT_IO_HPP_

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>

#include "ramsey/common.hpp"

namespace ramsey {

// Shortest-safe decimal form: 17 significant digits round-trips any double.
inline std::string format_double(double v) {
  char buf[40];
  int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool at_end() {
    in_ >> std::ws;
    return in_.eof();
  }

  std::string word(std::string_view what) {
    std::string tok;
    if (!(in_ >> tok)) throw ParseError("unexpected end of input reading " + std::string(what));
    return tok;
  }

  void expect(std::string_view keyword) {
    std::string tok = word(keyword);
    if (tok != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "', found '" + tok + "'");
    }
  }

  template <typename Int>
  Int integer(std::string_view what) {
    std::string tok = word(what);
    Int value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("bad integer for " + std::string(what) + ": '" + tok + "'");
    }
    return value;
  }

  double real(std::string_view what) {
    std::string tok = word(what);
    double value = 0;
    const char* first = tok.data();
    // from_chars rejects a leading '+', which some writers emit.
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("bad number for " + std::string(what) + ": '" + tok + "'");
    }
    return value;
  }

 private:
  std::istream& in_;
};

}  // namespace ramsey

#endif  // RAMSEY_TEXT_IO_HPP_
