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

#ifndef CIRCEX_CLASSICAL_HPP
#define CIRCEX_CLASSICAL_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "circex/ast.hpp"
#include "circex/interpretation.hpp"

namespace circex {

// A set of concept names, optionally including bot. Used for superclass
// sets and the guessed name sets of the entailment algorithms.
struct NameSet {
    std::set<std::string> names;
    bool bot = false;

    bool includes(const NameSet& o) const; // this is a superset of o
    bool contains(const std::string& n) const { return names.count(n) != 0; }
    bool operator==(const NameSet& o) const { return bot == o.bot && names == o.names; }
    bool operator!=(const NameSet& o) const { return !(*this == o); }
};

namespace detail {
class ElEngine;
class DlLiteEngine;
class Prover;
} // namespace detail

// Classical (monotonic) reasoner over a set of strong axioms. Queries are
// answered by a completion engine (conjunction/existential KBs), an
// inclusion-closure engine (basic-concept KBs), or a sound derivational
// prover backed by bounded countermodel search. The prover throws Error
// when neither a derivation nor a countermodel is found.
class ClassicalKB {
public:
    explicit ClassicalKB(std::vector<Axiom> strong);
    ~ClassicalKB();
    ClassicalKB(ClassicalKB&&) noexcept;
    ClassicalKB& operator=(ClassicalKB&&) noexcept;

    bool consistent();
    // c subsumed by d in every classical model.
    bool subsumes(const ConceptPtr& c, const ConceptPtr& d);
    // a is an instance of c in every classical model.
    bool entails_assertion(const ConceptPtr& c, const std::string& a);
    // Every concept name (or bot) that subsumes h.
    NameSet sup_cls(const ConceptPtr& h);
    // Names whose extension must be nonempty whenever h is nonempty:
    // seeded with h and every name entailed at an individual, closed under
    // entailed names and entailed existential successors.
    std::set<std::string> non_empty(const ConceptPtr& h);

    const std::vector<Axiom>& axioms() const { return strong_; }

private:
    std::vector<Axiom> strong_;
    std::unique_ptr<detail::ElEngine> el_;
    std::unique_ptr<detail::DlLiteEngine> dllite_;
    std::unique_ptr<detail::Prover> prover_;
    detail::Prover& prover();
};

// One-shot conveniences over a freshly built ClassicalKB.
bool subsumes(const std::vector<Axiom>& strong, const ConceptPtr& c, const ConceptPtr& d);
bool consistent(const std::vector<Axiom>& strong);
bool entails_assertion(const std::vector<Axiom>& strong, const ConceptPtr& c,
                       const std::string& a);
NameSet sup_cls(const std::vector<Axiom>& strong, const ConceptPtr& h);
std::set<std::string> non_empty(const std::vector<Axiom>& strong, const ConceptPtr& h);

// Priority edges induced by strict classical subsumption between defeasible
// left-hand sides: (d1, d2) present iff lhs(d1) is strictly below lhs(d2).
PriorityRel specificity(const DKB& kb);

// Strict priority matrix over kb.defeasible indices for kb's priority mode.
PrecRel precedence(const DKB& kb);

// Exhaustively replace defined names by their bodies. The terminology is the
// list of definition axioms inside `defs` (other axiom kinds are ignored).
// Throws Error on duplicate definitions or cycles.
ConceptPtr unfold_concept(const ConceptPtr& c, const std::vector<Axiom>& defs);
Axiom unfold_axiom(const Axiom& ax, const std::vector<Axiom>& defs);

} // namespace circex

#endif
