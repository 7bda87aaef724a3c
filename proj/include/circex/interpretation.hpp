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

#ifndef CIRCEX_INTERPRETATION_HPP
#define CIRCEX_INTERPRETATION_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "circex/ast.hpp"

namespace circex {

// Finite interpretation over the canonical domain {0..domain-1}.
// Concept extensions are bitmasks; role extensions are successor masks per
// element. Domains are capped at 64 elements.
struct Interpretation {
    std::shared_ptr<const Signature> sig;
    int domain = 1;
    std::vector<uint64_t> concepts;           // [concept id] -> member mask
    std::vector<std::vector<uint64_t>> roles; // [role id][element] -> successor mask
    std::vector<int> inds;                    // [individual id] -> element

    static Interpretation empty(std::shared_ptr<const Signature> sig, int domain);

    uint64_t universe() const {
        return domain >= 64 ? ~0ull : ((1ull << domain) - 1);
    }
    bool has_pair(int role, int x, int y) const {
        return (roles[role][x] >> y) & 1u;
    }
    void set_pair(int role, int x, int y) { roles[role][x] |= (1ull << y); }

    bool operator==(const Interpretation& o) const;
};

// Extension of c in I as a bitmask.
uint64_t eval_concept(const Interpretation& I, const ConceptPtr& c);

// Elements satisfying the inclusion "lhs implies rhs" pointwise.
uint64_t satisfied_set(const Interpretation& I, const ConceptPtr& lhs, const ConceptPtr& rhs);

bool satisfies_axiom(const Interpretation& I, const Axiom& a);

// Classical satisfaction of all strong axioms (defeasible ignored).
bool satisfies_strong(const Interpretation& I, const DKB& kb);

// Strict priority over defeasible-axiom indices: lt[i*m+j] means
// defeasible[i] overrides defeasible[j].
struct PrecRel {
    int m = 0;
    std::vector<bool> lt;
    bool less(int i, int j) const { return lt[(size_t)i * m + j]; }
};

// The preference I < J: I is preferred to (more normal than) J.
// Requires same domain, same individual mapping, equal fixed extensions;
// then the two satisfaction-set conditions over the defeasible axioms.
bool preferred(const Interpretation& I, const Interpretation& J, const DKB& kb,
               const CircConfig& cfg, const PrecRel& prec);

// Names treated as fixed under cfg (all of them in Fix mode).
std::vector<bool> fixed_concept_flags(const Signature& sig, const CircConfig& cfg);
std::vector<bool> fixed_role_flags(const Signature& sig, const CircConfig& cfg);

// Interpretation with every concept = domain and every role = domain^2.
Interpretation complete_interpretation(std::shared_ptr<const Signature> sig, int domain);

std::string print_interpretation(const Interpretation& I);

} // namespace circex

#endif
