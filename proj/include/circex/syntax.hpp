/*
 * Copyright 2026 The circex authors
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

#ifndef CIRCEX_SYNTAX_HPP
#define CIRCEX_SYNTAX_HPP

#include <string>

#include "circex/ast.hpp"

namespace circex {

struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": " + msg),
          line(line_),
          col(col_) {}
};

struct ParsedKB {
    DKB kb;
    CircConfig cfg;
};

// Parse the line-oriented KB format: directives, inclusions (<=, <=n),
// definitions (==), assertions, prefer lines, '#' comments.
ParsedKB parse_kb(const std::string& text);

// One of: "consistent?", "subsumed? C <= D", "satisfiable? C",
// "instance? C(a)".
Query parse_query(const std::string& line);

// Concept in surface syntax (parens added only where required).
std::string render_concept(const ConceptPtr& c);

// Canonical text form; parse(render(kb, cfg)) reproduces both arguments.
std::string render_kb(const DKB& kb, const CircConfig& cfg);

std::string render_query(const Query& q);

// Transitive closure of the explicit priority edges (or the numeric order);
// throws on cycles. Labels must name defeasible axioms of kb.
std::set<std::pair<std::string, std::string>> explicit_priority_closure(const DKB& kb);

} // namespace circex

#endif
