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

#ifndef CIRCEX_TRANSFORM_HPP
#define CIRCEX_TRANSFORM_HPP

#include <map>
#include <string>
#include <vector>

#include "circex/ast.hpp"

namespace circex {

// Flatten a conjunction/existential KB with flat inclusion LHSs into the
// schemata  A <=[n] B, A <= exists P . B, A1 & A2 <= B, exists P <= B.
// Compound LHSs are folded into definitorial name chains, nested RHSs are
// unravelled through fresh filler names, conjunctive RHSs are split, and
// every defeasible inclusion ends up name-to-name (labels are preserved, so
// explicit priorities carry over; specificity is preserved because each
// fresh left-hand name is definitionally equivalent to the concept it
// replaces). Under variable-predicate semantics the result has the same
// minimal models as the input, up to the fresh names.
// Throws Error("not LL_f: ...") when an inclusion LHS contains a qualified
// existential (or the KB leaves the bottom-extended grammar).
DKB normalize_kbstar(const DKB& kb);

// Equivalence-preserving rewrite toward basic-concept inclusions:
//   - strong  C <= B1 & ... & Bk  splits into one inclusion per conjunct;
//   - B <=[n] bot         becomes  B <=[n] not B   (same satisfaction set);
//   - B1 & B2 <=[n] bot   becomes  B1 <=[n] not B2 (same satisfaction set),
// where the B's are basic (a name or an unqualified existential). The
// defeasible rewrites replace a satisfaction set {x | x not in LHS or
// x in empty} by the literally identical set, so circumscribed models are
// unchanged, not merely classically equivalent. Axioms that match no rule
// are copied verbatim.
DKB rewrite_dllite_conjunctions(const DKB& kb);

// Renaming of concept names to fresh roles: each mapped name A stands for
// the unqualified existential over its role. Queries posed against the
// original vocabulary must be pushed through `apply` before they are asked
// of a transformed KB.
struct NameToRoleMap {
    std::map<std::string, std::string> role_of;

    ConceptPtr apply(const ConceptPtr& c) const;
    Query apply(const Query& q) const;
};

struct VariableElimination {
    DKB kb;
    CircConfig cfg; // fixed-name semantics
    NameToRoleMap renaming;
};

// Turn every minimized concept name into an unqualified existential over a
// fresh role, everywhere in the KB. Roles are never minimized, so once no
// minimized name is left the KB can be decided under fixed-name semantics:
// the result carries cfg.mode == Fix. `extra` lists query concepts whose
// names must also be covered by the renaming; rewrite the query itself with
// `renaming.apply`.
//
// Name assertions A(a) with A minimized become role assertions R_A(a, a):
// the self-loop keeps a in (exists R_A) in every model, and since R_A occurs
// nowhere else (and never inverted), only that membership — not the edge
// target — is observable.
//
// Definitions whose defined name is minimized are expanded into the two
// inclusions first (a definition head must stay a name).
//
// `target` names the fragment the result must stay inside, using the
// classifier tags ("dl-lite", "el", "el-bot", "ll-f", "ll", "ll2"), and
// "auto" asks only that no grammar the KB already satisfies is lost. The
// basic-concept and conjunction/existential grammars admit an unqualified
// existential wherever a name may appear, so they always survive; the
// left-local schemata do not (their defeasible LHSs must be names), and
// requesting them throws Error("fragment lacks unqualified existentials in
// required positions: ...") whenever a substitution hits such a position.
VariableElimination eliminate_variable_concepts(const DKB& kb, const CircConfig& cfg,
                                                const std::vector<ConceptPtr>& extra = {},
                                                const std::string& target = "auto");

struct FixedElimination {
    DKB kb;
    CircConfig cfg; // everything minimized, explicit priority
    std::map<std::string, std::string> complement_of;
};

// Remove fixed concept names from the semantics: for each fixed name A, add
// a fresh complement name A_bar, the disjointness A & A_bar <= bot, and the
// two defeasible inclusions top <=n A and top <=n A_bar at maximal priority
// (each overrides every original defeasible inclusion; the pair itself is
// incomparable). Any change to A's extension between comparable models then
// strictly degrades one of the two new inclusions with no higher-priority
// excuse, so A behaves as fixed even though everything is minimized. The
// result carries cfg.mode == Var and an explicit priority materializing the
// input relation. Queries need no rewriting. Requires a
// conjunction/existential KB (bot allowed); throws Error("not EL_bot: ...")
// otherwise. With nothing fixed this is the identity.
FixedElimination eliminate_fixed_concepts(const DKB& kb, const CircConfig& cfg,
                                          const std::vector<ConceptPtr>& extra = {});

struct GdiNormalization {
    DKB kb;
    CircConfig cfg;          // fixed-name semantics, specificity priority
    std::string domain;      // relativization concept name
    std::string domain_role; // role of the nonemptiness axiom

    // Relativize a concept (or query) over the original vocabulary to the
    // domain name, mirroring how the KB's axioms were transformed.
    ConceptPtr relativize(const ConceptPtr& c) const;
    Query relativize(const Query& q) const;
};

// Rebuild a fixed-name conjunction/existential KB so that every defeasible
// inclusion has the shape A <=n exists P and the priority relation is
// recovered by specificity. All axioms are relativized to a fresh domain
// name Dom (kept nonempty by top <= exists aux . Dom, and holding every
// individual), and each defeasible C <=n D with label l becomes
//   Dom <= A_l,   A_k <= A_l  (for each k overriding l),
//   [l] A_l <=n exists P_l,   exists P_l & C* <= D*
// with fresh A_l, P_l, where C* is the relativization of C. Strict
// subsumption between the A_l then reproduces exactly the input priority.
// Queries must be pushed through `relativize`; individuals they mention must
// be passed in `extra_inds` so they are asserted into Dom. Throws
// Error("not EL_bot: ...") outside the fragment and Error("not fix: ...")
// for other semantics (eliminate variable names first).
GdiNormalization normalize_gdis(const DKB& kb, const CircConfig& cfg,
                                const std::vector<std::string>& extra_inds = {});

struct ReducedTask {
    DKB kb;
    CircConfig cfg;
    Query query;
    // The original answer equals the reduced answer, flipped when set:
    // negated means "original = NOT reduced".
    bool negated = false;
};

// Rewrite a reasoning task into another task kind over a slightly extended
// KB, preserving the answer (up to the `negated` flag). Supported
// directions, each for basic-concept KBs and conjunction/existential KBs,
// with fixed-name variants that trade fresh names for fresh roles:
//   Satisfiable -> Subsumption   (C unsatisfiable iff C below an empty name)
//   Subsumption -> Satisfiable   (C <= D iff C-and-not-D is unsatisfiable)
//   Instance    -> Subsumption   (pin a fresh name to the individual and
//                                 minimize it with a fresh A <=n bot)
//   Satisfiable -> Instance      (excluded middle over a fresh complement,
//                                 enforced by two bottom-priority defaults)
// The last direction needs the two new defaults strictly below every
// original one: with explicit (or empty) priorities edges are added; with
// specificity priorities under fixed-name semantics the KB is first passed
// through normalize_gdis, after which specificity places them correctly.
// Anything else throws Error("direction unavailable for this
// fragment/semantics: ...").
ReducedTask reduce_task(const DKB& kb, const CircConfig& cfg, const Query& q,
                        QueryKind target);

} // namespace circex

#endif
