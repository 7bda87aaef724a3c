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

#ifndef CIRCEX_ORACLE_HPP
#define CIRCEX_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "circex/ast.hpp"
#include "circex/interpretation.hpp"

namespace circex {

// Budget for exhaustive searches, counted in interpretations visited.
// Read once per call from CIRCEX_BUDGET; defaults to 4,000,000.
uint64_t oracle_budget();

// Enumerate every interpretation over sig with the given domain, calling fn
// on each; stops early (returning true) when fn returns true. Throws Error
// ("budget exceeded ...") when the space is larger than budget.
bool for_each_interpretation(const std::shared_ptr<const Signature>& sig, int domain,
                             uint64_t budget,
                             const std::function<bool(const Interpretation&)>& fn);

// Whether I is a model of the circumscribed KB: a classical model of the
// strong axioms with no preferred competitor among the classical models
// that agree with I on domain, individuals, and fixed extensions.
// Exhaustive over competitors; throws Error when over budget.
bool is_circ_model(const Interpretation& I, const DKB& kb, const CircConfig& cfg,
                   const PrecRel& prec);

// All minimal models over the canonical domain {0..n-1} (every individual
// placement included), in the deterministic enumeration order. The optional
// signature extends the KB's own (e.g. with query names).
std::vector<Interpretation> enumerate_minimal_models(
    const DKB& kb, const CircConfig& cfg, const PrecRel& prec, int n,
    std::shared_ptr<const Signature> sig = nullptr);

// Whether an interpretation refutes (for subsumption/instance) or witnesses
// (for satisfiability/consistency) the query.
bool query_witnessed(const Interpretation& I, const Query& q);

struct OracleAnswer {
    bool answer = false;      // the query's truth value as far as the search saw
    bool definitive = false;  // true when a witness settles the query outright
    std::optional<Interpretation> witness;
    int domain = 0; // domain size of the witness, or the largest searched
};

// Decide a query by enumerating minimal models over domains 1..max_domain.
// For subsumption/instance a found countermodel is definitive (answer
// false); for satisfiability a found model is definitive (answer true);
// consistency is definitive in both directions at any domain that admits a
// classical model, and otherwise reports false non-definitively.
OracleAnswer oracle_decide(const DKB& kb, const CircConfig& cfg, const PrecRel& prec,
                           const Query& q, int max_domain);

} // namespace circex

#endif
