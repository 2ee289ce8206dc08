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

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "pabisim/model.hpp"

#ifndef FIGURES_DIR
#define FIGURES_DIR "figures"
#endif

namespace pabisim::testing {

inline std::string figure_path(const std::string& name) {
    return std::string(FIGURES_DIR) + "/" + name;
}

inline PA load_figure(const std::string& name) {
    std::ifstream in(figure_path(name));
    if (!in) throw Error("missing figure file " + name);
    return parse_pa(in);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Dist d(const std::string& literal) {
    auto parsed = Dist::parse_literal(literal);
    if (!parsed) throw Error("bad test literal " + literal);
    return *parsed;
}

}  // namespace pabisim::testing
