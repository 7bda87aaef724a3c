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

#ifndef CIRCEX_FRAGMENTS_HPP
#define CIRCEX_FRAGMENTS_HPP

#include <string>
#include <vector>

#include "circex/ast.hpp"

namespace circex {

// One broken fragment restriction: which fragment check failed, why, and the
// offending axiom rendered as text ("" for KB-level reasons such as cycles).
struct Violation {
    std::string fragment;
    std::string reason;
    std::string axiom;
};

// Split of a KB into inclusions/assertions (k_ll) and an acyclic terminology
// of definitions (k_a).
struct Decomposition {
    bool ok = false;
    std::string reason; // failure reason when !ok
    std::vector<Axiom> k_ll;
    std::vector<Axiom> k_a;
};

struct FragmentReport {
    bool dllite = false;         // basic-concept inclusions, optional role hierarchy
    bool el = false;             // conjunction + existentials, no bot
    bool elbot = false;          // el plus bot
    bool role_hierarchy = false; // role inclusion axioms present
    bool nominals = false;       // nominal concepts present
    bool inverse_roles = false;  // inverse roles present
    bool llf = false;            // elbot, no qualified existentials on inclusion LHS
    bool all = false;            // llf after unfolding an acyclic terminology
    Decomposition decomposition; // populated when `all` was attempted
    bool ll = false;             // left-local schemata only
    bool ll2 = false;            // flat-schemata form (left-local modulo fresh-role lowering)
    bool left_fixed_dis = false; // every defeasible LHS is a concept name
    PriorityMode priority_mode = PriorityMode::Specificity;
    std::vector<Violation> violations; // first violation recorded per fragment
};

// Syntactic classification of kb against each supported fragment.
// Never throws; failures are reported as violations.
FragmentReport classify(const DKB& kb);

// Split kb into k_ll (inclusions and assertions) and k_a (definitions),
// checking that k_a is an acyclic terminology, k_ll has no qualified
// existentials on inclusion LHSs, and no defined name that occurs on a k_ll
// inclusion LHS depends on a qualified existential.
Decomposition decompose_all(const DKB& kb);

// Grammar membership of a single concept: names, top, conjunction and
// existential restrictions over plain roles; bot when allow_bot.
bool el_concept(const ConceptPtr& c, bool allow_bot);

// True if c contains an existential restriction with a filler other than top.
bool has_qualified_existential(const ConceptPtr& c);

// Basic DL-lite concept: a name or an unqualified existential (role may be
// inverse).
bool dllite_basic(const ConceptPtr& c);

// Right-hand side of a DL-lite inclusion: basic or negated basic.
bool dllite_rhs(const ConceptPtr& c);

} // namespace circex

#endif
