/*
 * Copyright 2026 The pabisim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pabisim/rat.hpp"

#include <cctype>

namespace pabisim {

namespace {

bool is_integer_token(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    size_t i = 0;
    if (allow_sign && s[0] == '-') i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

std::optional<Rat> Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(text, true)) return std::nullopt;
        mpq_class v(std::string(text), 10);
        v.canonicalize();
        return Rat(v);
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_token(num, true) || !is_integer_token(den, false)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (sgn(d) == 0) return std::nullopt;
    mpq_class v(mpz_class(std::string(num), 10), d);
    v.canonicalize();
    return Rat(v);
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace pabisim
