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

#ifndef CIRCEX_GROUND_HPP
#define CIRCEX_GROUND_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "circex/ast.hpp"
#include "circex/interpretation.hpp"
#include "circex/sat.hpp"

namespace circex {

// Propositional grounding of classical satisfaction over a fixed domain
// {0..n-1}: one variable per concept-name/element pair, per role/element
// pair, and per individual/element placement (with exactly-one constraints);
// compound subconcepts get defined variables on demand. The same machinery
// also grounds the satisfaction sets of the defeasible axioms, which is what
// the preference conditions and the pattern blocking clauses are built from.
class Grounder {
public:
    Grounder(const DKB& kb, std::shared_ptr<const Signature> sig, int domain);

    sat::Solver& solver() { return solver_; }
    int domain() const { return domain_; }
    const std::shared_ptr<const Signature>& sig() const { return sig_; }

    sat::Lit concept_lit(int cid, int x) const;
    sat::Lit role_lit(int rid, int x, int y) const;
    sat::Lit ind_lit(int iid, int x) const;
    sat::Lit lit_of(const ConceptPtr& c, int x); // defined variable on demand
    sat::Lit sat_lit(int di, int x);             // x in sat(i-th defeasible axiom)

    void add_strong();                           // clauses for kb.strong
    void add_query_refutation(const Query& q);   // countermodel/witness shape

    // Pin parts of the search to agree with I (competitor search).
    void pin_individuals(const Interpretation& I);
    void pin_fixed(const Interpretation& I, const CircConfig& cfg);

    // Constrain the search to models strictly preferred to I.
    void require_preferred_to(const Interpretation& I, const PrecRel& prec);

    // Exclude every model sharing I's individual placement, fixed
    // extensions, and satisfaction sets. Minimality over a fixed domain is
    // a function of exactly those three, so when I is not minimal this
    // removes nothing minimal.
    void block_pattern(const Interpretation& I, const CircConfig& cfg);

    Interpretation extract(); // read a model back; valid after a true solve()

private:
    sat::Lit true_lit();
    sat::Lit conj_lit(const std::vector<sat::Lit>& ls);
    sat::Lit disj_lit(const std::vector<sat::Lit>& ls);

    const DKB& kb_;
    std::shared_ptr<const Signature> sig_;
    int domain_;
    sat::Solver solver_;
    int cbase_ = 0, rbase_ = 0, ibase_ = 0; // first vars of each block
    sat::Lit true_ = 0;
    std::map<std::pair<const Concept*, int>, sat::Lit> defined_;
    std::map<std::pair<int, int>, sat::Lit> sat_defined_;
};

// Minimal model over {0..n-1} refuting the query (subsumption/instance) or
// witnessing it (satisfiability), or none. Candidate models come from a
// propositional search with learning; each candidate's minimality is decided
// by a same-domain improvement search, and failed candidates are excluded
// pattern-wise. Deterministic. Throws Error("budget exceeded ...") when the
// underlying searches pass the configured budget.
std::optional<Interpretation> ground_countermodel(const DKB& kb, const CircConfig& cfg,
                                                  const PrecRel& prec, const Query& q,
                                                  std::shared_ptr<const Signature> sig,
                                                  int domain);

} // namespace circex

#endif
