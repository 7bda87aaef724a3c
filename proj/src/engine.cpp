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

#include "circex/engine.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "circex/classical.hpp"
#include "circex/fragments.hpp"
#include "circex/ground.hpp"
#include "circex/oracle.hpp"
#include "circex/transform.hpp"

namespace circex {

namespace {

constexpr long long kValueCap = 1000000000000LL; // saturation for bound math
constexpr long long kHeuristicCap = 12;          // exploration depth when incomplete

long long sat_mul(long long a, long long b) {
    if (a <= 0 || b <= 0) return 0;
    if (a > kValueCap / b) return kValueCap;
    return a * b;
}

long long sat_pow(long long base, long long exp) {
    long long v = 1;
    while (exp-- > 0) v = sat_mul(v, base);
    return v;
}

std::vector<ConceptPtr> query_concepts(const Query& q) {
    std::vector<ConceptPtr> out;
    if (q.lhs) out.push_back(q.lhs);
    if (q.rhs) out.push_back(q.rhs);
    return out;
}

std::vector<std::string> query_inds(const Query& q) {
    if (q.kind == QueryKind::Instance) return {q.ind};
    return {};
}

std::shared_ptr<const Signature> query_signature(const DKB& kb, const Query& q) {
    return std::make_shared<Signature>(signature_of(kb, query_concepts(q), query_inds(q)));
}

int count_exists(const ConceptSet& cl) {
    int n = 0;
    for (const ConceptPtr& c : cl)
        if (c->kind == ConceptKind::Exists) ++n;
    return n;
}

bool contains_bot(const ConceptPtr& c) {
    if (c->kind == ConceptKind::Bot) return true;
    for (const ConceptPtr& ch : c->children)
        if (contains_bot(ch)) return true;
    return false;
}

bool relation_empty(const PrecRel& p) {
    return std::none_of(p.lt.begin(), p.lt.end(), [](bool b) { return b; });
}

// The priority in force coincides with specificity: either declared so, or
// both relations are empty.
bool specificity_compatible(const DKB& kb, const PrecRel& prec) {
    if (kb.priority.mode == PriorityMode::Specificity) return true;
    if (!relation_empty(prec)) return false;
    DKB probe = kb;
    probe.priority = PriorityRel{};
    probe.priority.mode = PriorityMode::Specificity;
    return relation_empty(precedence(probe));
}

// Query concepts the representative-based constructions preserve: basic
// concepts and their negations.
bool dllite_query_ok(const Query& q) {
    switch (q.kind) {
    case QueryKind::Subsumption:
        return dllite_rhs(q.lhs) && dllite_rhs(q.rhs);
    case QueryKind::Instance:
    case QueryKind::Satisfiable:
        return dllite_rhs(q.lhs);
    default:
        return false;
    }
}

bool elbot_query_ok(const Query& q) {
    switch (q.kind) {
    case QueryKind::Subsumption:
        return el_concept(q.lhs, true) && el_concept(q.rhs, true);
    case QueryKind::Instance:
    case QueryKind::Satisfiable:
        return el_concept(q.lhs, true);
    default:
        return false;
    }
}

// Depth of the concept whose failure the countermodel must expose (the
// subsumption RHS, the asserted concept, or bot for satisfiability).
long long refuted_depth(const Query& q) {
    if (q.kind == QueryKind::Subsumption) return q.rhs->depth();
    if (q.kind == QueryKind::Instance) return q.lhs->depth();
    return 0;
}

long long individuals_in(const DKB& kb, const Query& q) {
    return (long long)signature_of(kb, query_concepts(q), query_inds(q))
        .individuals.size();
}

// 1 + #individuals + #existential subconcepts: one representative element
// per satisfied unqualified existential besides the named elements and the
// designated point.
long long representative_value(const DKB& kb, const Query& q) {
    ConceptSet cl = closure_of(kb, query_concepts(q));
    return 1 + individuals_in(kb, q) + count_exists(cl);
}

// Extra witness per inclusion with an existential RHS (they can force
// role edges at fixed-name supports).
long long rhs_witness_count(const DKB& kb) {
    long long n = 0;
    for (const Axiom& ax : kb.strong)
        if (ax.kind == AxiomKind::Inclusion && ax.rhs->kind == ConceptKind::Exists)
            ++n;
    for (const Axiom& ax : kb.defeasible)
        if (ax.rhs->kind == ConceptKind::Exists) ++n;
    return n;
}

// s0 * (E+1)^d: kernel of named/representative points expanded layerwise to
// the needed role depth. base supplies the closure; d the expansion depth.
long long layered_value(const DKB& base, const std::vector<ConceptPtr>& extra,
                        long long inds, long long d) {
    ConceptSet cl = closure_of(base, extra);
    long long s0 = 1 + inds + 2 * (long long)cl.size();
    return sat_mul(s0, sat_pow(count_exists(cl) + 1, d));
}

DKB unfold_dkb(const DKB& kb, const std::vector<Axiom>& defs) {
    DKB out;
    out.priority = kb.priority;
    out.declared_roles = kb.declared_roles;
    for (const Axiom& ax : kb.strong)
        if (ax.kind != AxiomKind::Definition)
            out.strong.push_back(unfold_axiom(ax, defs));
    for (const Axiom& ax : kb.defeasible)
        out.defeasible.push_back(unfold_axiom(ax, defs));
    return out;
}

} // namespace

SearchBound small_model_bound(const DKB& kb, const CircConfig& cfg, const Query& q) {
    SearchBound out;
    // Heuristic first: never throws, used whenever no lemma matches.
    {
        ConceptSet cl = closure_of(kb, query_concepts(q));
        long long v = 1 + individuals_in(kb, q) + count_exists(cl) + rhs_witness_count(kb);
        out.value = std::max<long long>(1, std::min<long long>(v, kHeuristicCap));
        out.complete = false;
        out.lemma = "heuristic";
    }
    if (!cfg.fixed_roles.empty() || cfg.mode == CircMode::Custom ||
        q.kind == QueryKind::Consistent)
        return out;

    try {
        PrecRel prec = precedence(kb);

        // Basic-concept KBs (after the equivalence-preserving rewrite).
        DKB rw = rewrite_dllite_conjunctions(kb);
        FragmentReport rrw = classify(rw);
        if (rrw.dllite && dllite_query_ok(q)) {
            if (cfg.mode == CircMode::Var) {
                out.value = representative_value(rw, q);
                out.complete = true;
                out.lemma = "existential-representatives";
                return out;
            }
            if (cfg.mode == CircMode::Fix &&
                (rrw.left_fixed_dis || relation_empty(prec))) {
                out.value = representative_value(rw, q) + rhs_witness_count(rw);
                out.complete = true;
                out.lemma = rrw.left_fixed_dis
                                ? "existential-representatives+rhs-witnesses"
                                : "existential-representatives+support-witnesses";
                return out;
            }
        }

        // Flat conjunction/existential KBs.
        if (!elbot_query_ok(q)) return out;
        FragmentReport r = classify(kb);
        long long inds = individuals_in(kb, q);
        if (cfg.mode == CircMode::Var && specificity_compatible(kb, prec)) {
            if (r.llf) {
                DKB star = normalize_kbstar(kb);
                out.value =
                    layered_value(star, query_concepts(q), inds, refuted_depth(q) + 1);
                out.complete = true;
                out.lemma = "layered-expansion";
                return out;
            }
            if (r.all && !r.decomposition.k_a.empty()) {
                DKB unfolded = unfold_dkb(kb, r.decomposition.k_a);
                if (classify(unfolded).llf) {
                    DKB star = normalize_kbstar(unfolded);
                    std::vector<ConceptPtr> qc;
                    for (const ConceptPtr& c : query_concepts(q))
                        qc.push_back(unfold_concept(c, r.decomposition.k_a));
                    Query uq = q;
                    if (q.kind == QueryKind::Subsumption) {
                        uq.lhs = qc[0];
                        uq.rhs = qc[1];
                    } else {
                        uq.lhs = qc[0];
                    }
                    out.value = layered_value(star, qc, inds, refuted_depth(uq) + 1);
                    out.complete = true;
                    out.lemma = "layered-expansion-after-unfolding";
                    return out;
                }
            }
        }
        if (cfg.mode == CircMode::Fix && relation_empty(prec) && r.llf) {
            // No fresh defined names here: under fixed-name semantics they
            // would be fixed and change the minimization, so the closure is
            // taken over the KB as given.
            out.value = layered_value(kb, query_concepts(q), inds, refuted_depth(q));
            out.complete = true;
            out.lemma = "support-layered-expansion";
            return out;
        }
    } catch (const Error&) {
        // Classification or classical reasoning gave up; keep the heuristic.
    }
    return out;
}

namespace {

// Re-verify a model produced by the searchers: classical satisfaction and
// query witnessing always; the exhaustive minimality check whenever the
// competitor space fits the budget (the searcher has already established
// minimality through the improvement search).
void verify_witness(const Interpretation& I, const DKB& kb, const CircConfig& cfg,
                    const PrecRel& prec, const Query& q) {
    if (!satisfies_strong(I, kb))
        throw Error("internal: witness fails the strong axioms");
    if (!query_witnessed(I, q))
        throw Error("internal: witness does not witness the query");
    try {
        if (!is_circ_model(I, kb, cfg, prec))
            throw Error("internal: witness is not a minimal model");
    } catch (const Error& e) {
        if (std::string(e.what()).find("budget exceeded") == std::string::npos)
            throw;
    }
}

} // namespace

std::optional<Interpretation> find_countermodel(const DKB& kb, const CircConfig& cfg,
                                                const Query& q, long long max_domain) {
    if (q.kind == QueryKind::Consistent)
        throw Error(
            "countermodel search expects a subsumption, instance, or "
            "satisfiability query");
    PrecRel prec = precedence(kb);
    auto sig = query_signature(kb, q);
    for (long long n = 1; n <= max_domain; ++n) {
        if (n > 64)
            throw Error("budget exceeded: countermodel search beyond 64 elements "
                        "is not supported");
        std::optional<Interpretation> m =
            ground_countermodel(kb, cfg, prec, q, sig, (int)n);
        if (m) {
            verify_witness(*m, kb, cfg, prec, q);
            return m;
        }
    }
    return std::nullopt;
}

namespace {

// Conjunctions of names and flat existentials — the concept shapes the
// classification-based algorithms accept on either side of the query.
bool flat_query_concept(const ConceptPtr& c) {
    for (const ConceptPtr& part : flatten_conj(c)) {
        if (part->kind == ConceptKind::Name || part->kind == ConceptKind::Bot)
            continue;
        if (part->kind == ConceptKind::Exists && !part->role.inverse) {
            const ConceptPtr f = part->filler();
            if (!f || f->kind == ConceptKind::Name || f->kind == ConceptKind::Bot ||
                f->kind == ConceptKind::Top)
                continue;
        }
        return false;
    }
    return true;
}

std::string first_reason(const FragmentReport& r, const std::string& tag) {
    for (const Violation& v : r.violations)
        if (v.fragment == tag)
            return v.reason + (v.axiom.empty() ? "" : " in " + v.axiom);
    return "KB outside the fragment";
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

bool algorithm1(const DKB& kb, const CircConfig& cfg, const ConceptPtr& c,
                const ConceptPtr& d) {
    FragmentReport r = classify(kb);
    if (!r.ll) throw Error("not LL: " + first_reason(r, "ll"));
    if (cfg.mode != CircMode::Fix)
        throw Error("not fix: this procedure decides entailment under fixed "
                    "concept names");
    if (!flat_query_concept(c))
        throw Error("not LL: query LHS must be a conjunction of names and flat "
                    "existentials");
    if (!flat_query_concept(d))
        throw Error("not LL: query RHS must be a conjunction of names and flat "
                    "existentials");

    ClassicalKB ck(kb.strong);
    NameSet sup_c = ck.sup_cls(c);
    std::set<std::string> ne_c = ck.non_empty(c);
    ConceptPtr x = c;
    for (const Axiom& di : kb.defeasible) {
        if (!ck.subsumes(c, di.lhs)) continue;
        // LL shape: di.rhs is an existential. It applies unless it would
        // push C below new names (or bot) or force new nonempty names.
        if (!sup_c.includes(ck.sup_cls(di.rhs))) continue;
        if (!subset(ck.non_empty(di.rhs), ne_c)) continue;
        x = Concept::conj({x, di.rhs});
    }
    return ck.subsumes(x, d);
}

namespace {

// All linear extensions of the strict order; every prefix respects prec.
void linear_extensions(const PrecRel& prec, std::vector<std::vector<int>>& out,
                       uint64_t cap) {
    const int m = prec.m;
    std::vector<int> cur;
    std::vector<bool> used(m, false);
    std::function<void()> rec = [&]() {
        if ((int)cur.size() == m) {
            if (out.size() >= cap)
                throw Error("guess space exceeds budget: too many linearizations");
            out.push_back(cur);
            return;
        }
        for (int i = 0; i < m; ++i) {
            if (used[i]) continue;
            bool minimal = true;
            for (int j = 0; j < m && minimal; ++j)
                if (!used[j] && j != i && prec.less(j, i)) minimal = false;
            if (!minimal) continue;
            used[i] = true;
            cur.push_back(i);
            rec();
            cur.pop_back();
            used[i] = false;
        }
    };
    rec();
}

} // namespace

bool algorithm2(const DKB& kb, const CircConfig& cfg, const ConceptPtr& c,
                const ConceptPtr& d) {
    FragmentReport r = classify(kb);
    if (!r.ll2) throw Error("not LL2: " + first_reason(r, "ll2"));
    if (cfg.mode != CircMode::Fix)
        throw Error("not fix: this procedure decides entailment under fixed "
                    "concept names");
    if (!flat_query_concept(c))
        throw Error("not LL2: query LHS must be a conjunction of names and flat "
                    "existentials");
    if (!flat_query_concept(d))
        throw Error("not LL2: query RHS must be a conjunction of names and flat "
                    "existentials");

    ClassicalKB ck(kb.strong);
    const int m = (int)kb.defeasible.size();
    PrecRel prec = precedence(kb);

    // Guess universe: concept names occurring in the KB or the query.
    std::vector<std::string> names;
    {
        Signature sig = signature_of(kb, {c, d});
        names = sig.concept_names;
    }
    const int k = (int)names.size();

    const uint64_t run_budget = std::max<uint64_t>(1000, oracle_budget() / 1000);
    uint64_t pairs = 1;
    for (int i = 0; i < k; ++i) {
        pairs *= 3;
        if (pairs > run_budget)
            throw Error("guess space exceeds budget: 3^" + std::to_string(k) +
                        " name-set guesses");
    }
    std::vector<std::vector<int>> lins;
    linear_extensions(prec, lins, run_budget);
    if (lins.empty() && m > 0) throw Error("priority order is cyclic");
    if (pairs * (uint64_t)std::max<size_t>(lins.size(), 1) > run_budget)
        throw Error("guess space exceeds budget: " + std::to_string(pairs) + " x " +
                    std::to_string(lins.size()) + " runs");

    // Split the query LHS into its name part and existential part.
    std::vector<ConceptPtr> name_parts, exist_parts;
    for (const ConceptPtr& part : flatten_conj(c)) {
        if (part->kind == ConceptKind::Exists)
            exist_parts.push_back(part);
        else
            name_parts.push_back(part);
    }
    ConceptPtr name_conj = name_parts.empty()
                               ? Concept::top()
                               : (name_parts.size() == 1 ? name_parts[0]
                                                         : Concept::conj(name_parts));

    // Enumerate S1 ⊆ S2 ⊆ names via a base-3 odometer: 0 = out, 1 = S2 only,
    // 2 = in both.
    std::vector<int> state(k, 0);
    for (;;) {
        std::set<std::string> s1, s2;
        std::vector<ConceptPtr> s1_concepts;
        for (int i = 0; i < k; ++i) {
            if (state[i] >= 1) s2.insert(names[i]);
            if (state[i] == 2) {
                s1.insert(names[i]);
                s1_concepts.push_back(Concept::make_name(names[i]));
            }
        }
        ConceptPtr s1_conj = s1_concepts.empty()
                                 ? Concept::top()
                                 : (s1_concepts.size() == 1 ? s1_concepts[0]
                                                            : Concept::conj(s1_concepts));
        if (ck.subsumes(s1_conj, name_conj)) {
            // DI applicability only depends on the guess, not the order.
            std::vector<bool> applicable(m, false);
            for (int i = 0; i < m; ++i)
                applicable[i] = ck.subsumes(s1_conj, kb.defeasible[i].lhs);
            for (const std::vector<int>& lin : lins) {
                ConceptPtr x = s1_conj;
                for (int i : lin) {
                    if (!applicable[i]) continue;
                    ConceptPtr test = Concept::conj({x, kb.defeasible[i].rhs});
                    NameSet sup = ck.sup_cls(test);
                    if (sup.bot || !subset(sup.names, s1)) continue;
                    if (!subset(ck.non_empty(test), s2)) continue;
                    x = test;
                }
                for (const ConceptPtr& e : exist_parts) x = Concept::conj({x, e});
                NameSet sup_x = ck.sup_cls(x);
                bool accepts = sup_x.bot || !subset(sup_x.names, s1) ||
                               !subset(ck.non_empty(x), s2) || ck.subsumes(x, d);
                if (!accepts) return false;
            }
        }
        // Next guess.
        int i = 0;
        while (i < k && state[i] == 2) state[i++] = 0;
        if (i == k) break;
        ++state[i];
    }
    return true;
}

namespace {

std::vector<Axiom> hardened(const DKB& kb) {
    std::vector<Axiom> out = kb.strong;
    for (const Axiom& di : kb.defeasible)
        out.push_back(Axiom::inclusion(di.lhs, di.rhs));
    return out;
}

// Best-effort witness for verdicts produced without a search: a bounded
// search capped at a small domain, with budget failures ignored.
void attach_witness(Verdict& v, const DKB& kb, const CircConfig& cfg, const Query& q) {
    try {
        long long cap = std::min<long long>(small_model_bound(kb, cfg, q).value, 8);
        std::optional<Interpretation> m = find_countermodel(kb, cfg, q, cap);
        if (m) {
            v.witness = m;
            v.bound = m->domain;
        }
    } catch (const Error&) {
        // The verdict stands; only the witness is missing.
    }
}

Verdict run_bounded(const DKB& kb, const CircConfig& cfg, const Query& q,
                    const DecideOptions& opts) {
    SearchBound b;
    if (opts.bound) {
        b.value = *opts.bound;
        b.complete = false;
        b.lemma = "override";
    } else {
        b = small_model_bound(kb, cfg, q);
    }
    Verdict v;
    v.engine = "bounded-search";
    std::optional<Interpretation> m = find_countermodel(kb, cfg, q, b.value);
    if (m) {
        v.answer = q.kind == QueryKind::Satisfiable ? Answer::True : Answer::False;
        v.bound = m->domain;
        v.witness = std::move(m);
        return v;
    }
    v.bound = b.value;
    if (b.complete)
        v.answer = q.kind == QueryKind::Satisfiable ? Answer::False : Answer::True;
    else
        v.answer = Answer::UnknownAtBound;
    return v;
}

Verdict run_oracle(const DKB& kb, const CircConfig& cfg, const Query& q,
                   const DecideOptions& opts) {
    long long cap = opts.bound ? *opts.bound
                               : std::min<long long>(
                                     small_model_bound(kb, cfg, q).value, 3);
    OracleAnswer oa = oracle_decide(kb, cfg, precedence(kb), q, (int)cap);
    Verdict v;
    v.engine = "oracle";
    if (oa.definitive) {
        v.answer = oa.answer ? Answer::True : Answer::False;
        v.witness = oa.witness;
        v.bound = oa.domain;
    } else {
        v.answer = Answer::UnknownAtBound;
        v.bound = cap;
    }
    return v;
}

Verdict run_forced(const DKB& kb, const CircConfig& cfg, const Query& q,
                   const DecideOptions& opts) {
    const std::string& e = opts.engine;
    Verdict v;
    v.engine = e;
    if (e == "bounded-search") return run_bounded(kb, cfg, q, opts);
    if (e == "oracle") return run_oracle(kb, cfg, q, opts);
    if (e == "classical-consistency") {
        if (q.kind != QueryKind::Consistent)
            throw Error("classical-consistency answers consistency queries only");
        v.answer = consistent(kb.strong) ? Answer::True : Answer::False;
        return v;
    }
    if (e == "complete-models") {
        if (q.kind != QueryKind::Satisfiable)
            throw Error("complete-models answers satisfiability queries only");
        if (!classify(kb).el)
            throw Error("complete-models requires a bot-free "
                        "conjunction/existential KB");
        if (!el_concept(q.lhs, true))
            throw Error("complete-models requires a conjunction/existential "
                        "query concept");
        if (!consistent(kb.strong)) {
            v.answer = Answer::False;
            return v;
        }
        if (contains_bot(q.lhs)) {
            v.answer = Answer::False;
            return v;
        }
        v.answer = Answer::True;
        v.witness = complete_interpretation(query_signature(kb, q), 1);
        verify_witness(*v.witness, kb, cfg, precedence(kb), q);
        return v;
    }
    if (e == "classical-collapse") {
        if (cfg.mode != CircMode::Var)
            throw Error("classical-collapse requires variable concept names");
        if (!classify(kb).el)
            throw Error("classical-collapse requires a bot-free "
                        "conjunction/existential KB");
        if (!elbot_query_ok(q))
            throw Error("classical-collapse cannot evaluate this query");
        ClassicalKB hk(hardened(kb));
        bool ans;
        if (q.kind == QueryKind::Subsumption)
            ans = hk.subsumes(q.lhs, q.rhs);
        else if (q.kind == QueryKind::Instance)
            ans = hk.entails_assertion(q.lhs, q.ind);
        else
            ans = !contains_bot(q.lhs); // satisfiable: bot-free EL is never empty
        v.answer = ans ? Answer::True : Answer::False;
        if (q.kind != QueryKind::Satisfiable && !ans) attach_witness(v, kb, cfg, q);
        if (q.kind == QueryKind::Satisfiable && ans) attach_witness(v, kb, cfg, q);
        return v;
    }
    if (e == "algorithm1" || e == "algorithm2") {
        ConceptPtr lhs, rhs;
        if (q.kind == QueryKind::Subsumption) {
            lhs = q.lhs;
            rhs = q.rhs;
        } else if (q.kind == QueryKind::Satisfiable) {
            lhs = q.lhs;
            rhs = Concept::bot();
        } else {
            throw Error(e + " answers subsumption and satisfiability queries only");
        }
        bool subsumed = e == "algorithm1" ? algorithm1(kb, cfg, lhs, rhs)
                                          : algorithm2(kb, cfg, lhs, rhs);
        bool ans = q.kind == QueryKind::Satisfiable ? !subsumed : subsumed;
        v.answer = ans ? Answer::True : Answer::False;
        if ((q.kind == QueryKind::Subsumption && !ans) ||
            (q.kind == QueryKind::Satisfiable && ans))
            attach_witness(v, kb, cfg, q);
        return v;
    }
    throw Error("unknown engine '" + e + "'");
}

} // namespace

Verdict decide(const DKB& kb, const CircConfig& cfg, const Query& q,
               const DecideOptions& opts) {
    if (!cfg.fixed_roles.empty() && !cfg.bounded_only)
        throw Error("fixed roles require bounded-only search");
    if (!opts.engine.empty()) return run_forced(kb, cfg, q, opts);

    // Consistency coincides with classical consistency of the strong part;
    // an inconsistent strong part settles every other query too.
    bool cons = consistent(kb.strong);
    if (q.kind == QueryKind::Consistent) {
        Verdict v;
        v.engine = "classical-consistency";
        v.answer = cons ? Answer::True : Answer::False;
        return v;
    }
    if (!cons) {
        Verdict v;
        v.engine = "inconsistent-kb";
        v.answer = q.kind == QueryKind::Satisfiable ? Answer::False : Answer::True;
        return v;
    }

    // A bot subconcept empties a conjunction/existential concept outright.
    if (q.kind == QueryKind::Satisfiable && el_concept(q.lhs, true) &&
        contains_bot(q.lhs)) {
        Verdict v;
        v.engine = "empty-concept";
        v.answer = Answer::False;
        return v;
    }

    if (!cfg.bounded_only) {
        FragmentReport r = classify(kb);

        // Bot-free conjunction/existential KBs: complete interpretations are
        // minimal models, so every such concept is satisfiable (under any
        // set of fixed names).
        if (q.kind == QueryKind::Satisfiable && r.el && el_concept(q.lhs, false)) {
            Verdict v;
            v.engine = "complete-models";
            v.answer = Answer::True;
            v.witness = complete_interpretation(query_signature(kb, q), 1);
            verify_witness(*v.witness, kb, cfg, precedence(kb), q);
            return v;
        }

        // Variable names + bot-free KB: minimal models are exactly the
        // classical models of the KB with every DI hardened.
        if (cfg.mode == CircMode::Var && r.el && elbot_query_ok(q) &&
            (q.kind == QueryKind::Subsumption || q.kind == QueryKind::Instance)) {
            ClassicalKB hk(hardened(kb));
            bool ans = q.kind == QueryKind::Subsumption
                           ? hk.subsumes(q.lhs, q.rhs)
                           : hk.entails_assertion(q.lhs, q.ind);
            Verdict v;
            v.engine = "classical-collapse";
            v.answer = ans ? Answer::True : Answer::False;
            if (!ans) attach_witness(v, kb, cfg, q);
            return v;
        }

        // Fixed names + flat schemata: the classification-based procedures.
        if (cfg.mode == CircMode::Fix &&
            (q.kind == QueryKind::Subsumption || q.kind == QueryKind::Satisfiable) &&
            flat_query_concept(q.lhs) &&
            (q.kind == QueryKind::Satisfiable || flat_query_concept(q.rhs))) {
            const bool use1 = r.ll, use2 = !r.ll && r.ll2;
            if (use1 || use2) {
                ConceptPtr rhs =
                    q.kind == QueryKind::Satisfiable ? Concept::bot() : q.rhs;
                try {
                    bool subsumed = use1 ? algorithm1(kb, cfg, q.lhs, rhs)
                                         : algorithm2(kb, cfg, q.lhs, rhs);
                    Verdict v;
                    v.engine = use1 ? "algorithm1" : "algorithm2";
                    bool ans =
                        q.kind == QueryKind::Satisfiable ? !subsumed : subsumed;
                    v.answer = ans ? Answer::True : Answer::False;
                    if ((q.kind == QueryKind::Subsumption && !ans) ||
                        (q.kind == QueryKind::Satisfiable && ans))
                        attach_witness(v, kb, cfg, q);
                    return v;
                } catch (const Error& err) {
                    // An exhausted guess budget falls back to the bounded
                    // search; genuine misuse propagates.
                    if (std::string(err.what()).find("guess space") ==
                        std::string::npos)
                        throw;
                }
            }
        }
    }

    return run_bounded(kb, cfg, q, opts);
}

} // namespace circex
