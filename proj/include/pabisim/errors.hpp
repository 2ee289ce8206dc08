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

#include <stdexcept>
#include <string>

namespace pabisim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntactic problem in a .pa file, a distribution literal, or a certificate.
struct ParseError : Error {
    int line;
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
};

// A distribution whose entries do not add up to exactly 1.
struct SumError : Error {
    int line;
    SumError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
};

// Convex coefficients that are negative or do not sum to 1.
struct CoefficientError : Error {
    using Error::Error;
};

// Mismatched lengths or label domains.
struct ArityError : Error {
    using Error::Error;
};

// A linear system row whose width disagrees with the variable count.
struct ShapeError : Error {
    using Error::Error;
};

// Generator enumeration would exceed the configured cap.
struct CapacityError : Error {
    using Error::Error;
};

// A per-support-state choice that misses a support state.
struct ChoiceError : Error {
    using Error::Error;
};

// Input value outside the automaton it is used with.
struct InputError : Error {
    using Error::Error;
};

}  // namespace pabisim
