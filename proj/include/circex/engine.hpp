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

#ifndef CIRCEX_ENGINE_HPP
#define CIRCEX_ENGINE_HPP

#include <optional>
#include <string>

#include "circex/ast.hpp"
#include "circex/interpretation.hpp"

namespace circex {

enum class Answer { True, False, UnknownAtBound };

// Domain-size bound for the finite countermodel search. When complete is
// true, exhausting domains 1..value settles the query; lemma names the
// model-construction argument that justifies completeness:
//   "existential-representatives"          basic-concept KBs, variable names
//   ... "+rhs-witnesses" / "+support-witnesses"
//                                          fixed names, name-LHS DIs / no
//                                          priorities
//   "layered-expansion"                    flat conjunction/existential KBs,
//                                          variable names under specificity
//   "layered-expansion-after-unfolding"    same, via an acyclic terminology
//   "support-layered-expansion"            flat KBs, fixed names, no
//                                          priorities
// Incomplete bounds carry lemma "heuristic" (or "override"): the value is an
// exploration depth, not a completeness claim.
struct SearchBound {
    long long value = 1;
    bool complete = false;
    std::string lemma;
};

// Outcome of decide(). A witness, when present, is a countermodel (answer
// False) or a satisfying minimal model (Satisfiable, answer True) and has
// been re-verified. bound is the domain size of the witness, or the largest
// domain exhausted when a bounded search ran without finding one.
struct Verdict {
    Answer answer = Answer::UnknownAtBound;
    std::optional<Interpretation> witness;
    std::string engine;
    std::optional<long long> bound;
};

struct DecideOptions {
    // Force one decision procedure instead of the automatic dispatch:
    // "classical-collapse", "complete-models", "algorithm1", "algorithm2",
    // "bounded-search", "oracle". Empty selects automatically.
    std::string engine;
    // Replaces the computed search bound (bounded search only; the result is
    // then never complete unless a witness turns up).
    std::optional<long long> bound;
};

// Smallest domain-size budget that the matching small-model construction
// needs; see SearchBound. Never throws.
SearchBound small_model_bound(const DKB& kb, const CircConfig& cfg, const Query& q);

// Search domains 1..max_domain (cumulative, deterministic) for a minimal
// model refuting q (subsumption/instance) or witnessing it (satisfiability).
// The returned model passes the minimal-model re-check. Throws on consistency
// queries and propagates "budget exceeded" from the underlying search.
std::optional<Interpretation> find_countermodel(const DKB& kb, const CircConfig& cfg,
                                                const Query& q, long long max_domain);

// Entailment of C <= D under fixed concept names for KBs whose inclusions
// fit the left-local schemata. Polynomial: each defeasible inclusion is
// examined once against the query LHS; priorities never matter because
// applicable DIs cannot conflict in this fragment.
// Throws "not LL ..." / "not fix ...".
bool algorithm1(const DKB& kb, const CircConfig& cfg, const ConceptPtr& c,
                const ConceptPtr& d);

// Entailment of C <= D under fixed concept names for the wider flat fragment
// (conjunctions of unqualified existentials on inclusion LHSs). Universally
// quantifies over guessed name sets S1 within S2 and linearizations of the
// priority order; true iff every run accepts.
// Throws "not LL2 ..." / "not fix ..." / "guess space exceeds budget ...".
bool algorithm2(const DKB& kb, const CircConfig& cfg, const ConceptPtr& c,
                const ConceptPtr& d);

// Decide q under the circumscribed semantics, dispatching to the cheapest
// complete procedure: classical consistency, the hardened-KB collapse
// (variable names, bot-free KBs), complete-model satisfiability, Algorithm
// 1/2 (fixed names, flat schemata), then bounded countermodel search with
// small_model_bound. Fixed roles require cfg.bounded_only. Errors from the
// underlying procedures propagate.
Verdict decide(const DKB& kb, const CircConfig& cfg, const Query& q,
               const DecideOptions& opts = {});

} // namespace circex

#endif
