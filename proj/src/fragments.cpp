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

#include "circex/fragments.hpp"

#include <functional>
#include <map>

#include "circex/syntax.hpp"

namespace circex {

bool el_concept(const ConceptPtr& c, bool allow_bot) {
    switch (c->kind) {
    case ConceptKind::Top:
        return true;
    case ConceptKind::Bot:
        return allow_bot;
    case ConceptKind::Name:
        return true;
    case ConceptKind::Nominal:
    case ConceptKind::Not:
    case ConceptKind::Or:
        return false;
    case ConceptKind::And:
        for (const auto& ch : c->children)
            if (!el_concept(ch, allow_bot)) return false;
        return true;
    case ConceptKind::Exists:
        if (c->role.inverse) return false;
        return !c->filler() || el_concept(c->filler(), allow_bot);
    }
    return false;
}

bool has_qualified_existential(const ConceptPtr& c) {
    if (c->kind == ConceptKind::Exists) {
        if (!c->unqualified_exists()) return true;
        return false;
    }
    for (const auto& ch : c->children)
        if (has_qualified_existential(ch)) return true;
    return false;
}

bool dllite_basic(const ConceptPtr& c) {
    if (c->kind == ConceptKind::Name) return true;
    return c->kind == ConceptKind::Exists && c->unqualified_exists();
}

bool dllite_rhs(const ConceptPtr& c) {
    if (dllite_basic(c)) return true;
    return c->kind == ConceptKind::Not && dllite_basic(c->children[0]);
}

namespace {

std::string axiom_text(const Axiom& ax) {
    switch (ax.kind) {
    case AxiomKind::Inclusion:
        return render_concept(ax.lhs) + " <= " + render_concept(ax.rhs);
    case AxiomKind::Defeasible:
        return "[" + ax.label + "] " + render_concept(ax.lhs) + " <=n " +
               render_concept(ax.rhs);
    case AxiomKind::Definition:
        return render_concept(ax.lhs) + " == " + render_concept(ax.rhs);
    case AxiomKind::RoleInclusion:
        return (ax.lrole.inverse ? "inv(" + ax.lrole.name + ")" : ax.lrole.name) +
               " <= " +
               (ax.rrole.inverse ? "inv(" + ax.rrole.name + ")" : ax.rrole.name);
    case AxiomKind::ConceptAssertion:
        return render_concept(ax.lhs) + "(" + ax.ind + ")";
    case AxiomKind::RoleAssertion:
        return ax.lrole.name + "(" + (ax.lrole.inverse ? ax.ind2 : ax.ind) + "," +
               (ax.lrole.inverse ? ax.ind : ax.ind2) + ")";
    }
    return "";
}

// Concept name or bot, the "B" positions of the left-local schemata.
bool name_or_bot(const ConceptPtr& c) {
    return c->kind == ConceptKind::Name || c->kind == ConceptKind::Bot;
}

// Left-hand-side atom of a left-local schema. Top is admitted so that
// global defaults (top <=n exists U) stay inside the fragment; they behave
// exactly like a name whose extension is the whole domain.
bool ll_atom(const ConceptPtr& c) {
    return name_or_bot(c) || c->kind == ConceptKind::Top;
}

// Existential right-hand side of a left-local schema: a plain role with a
// name, bot, or implicit top filler.
bool ll_exists_rhs(const ConceptPtr& c) {
    if (c->kind != ConceptKind::Exists || c->role.inverse) return false;
    if (c->unqualified_exists()) return true;
    return name_or_bot(c->filler());
}

// Unqualified existential over a plain role.
bool plain_unqualified(const ConceptPtr& c) {
    return c->kind == ConceptKind::Exists && !c->role.inverse &&
           c->unqualified_exists();
}

enum class LLSchema {
    None,
    NameToName,
    NameToExists,
    ConjNames,
    ExistsToName,
    ExistsToExists,
    ConjExists
};

LLSchema ll_schema_of(const Axiom& ax) {
    const ConceptPtr& l = ax.lhs;
    const ConceptPtr& r = ax.rhs;
    // Name-to-name inclusions have the same deductive closure as their
    // fresh-role emulation (A <= exists R, exists R <= B, B <= exists R),
    // so they are accepted directly.
    if (ll_atom(l) && name_or_bot(r)) return LLSchema::NameToName;
    if (ll_atom(l) && ll_exists_rhs(r)) return LLSchema::NameToExists;
    if (l->kind == ConceptKind::And && l->children.size() == 2 &&
        ll_atom(l->children[0]) && ll_atom(l->children[1]) && name_or_bot(r))
        return LLSchema::ConjNames;
    if (plain_unqualified(l) && name_or_bot(r)) return LLSchema::ExistsToName;
    if (plain_unqualified(l) && ll_exists_rhs(r)) return LLSchema::ExistsToExists;
    if (l->kind == ConceptKind::And && l->children.size() == 2 &&
        plain_unqualified(l->children[0]) && plain_unqualified(l->children[1]) &&
        ll_exists_rhs(r))
        return LLSchema::ConjExists;
    return LLSchema::None;
}

void scan_features(const ConceptPtr& c, FragmentReport& r) {
    if (c->kind == ConceptKind::Nominal) r.nominals = true;
    if (c->kind == ConceptKind::Exists && c->role.inverse) r.inverse_roles = true;
    for (const auto& ch : c->children) scan_features(ch, r);
}

struct Checker {
    FragmentReport& report;

    void fail(bool& flag, const std::string& fragment, const Axiom* ax,
              const std::string& reason) {
        if (!flag) return;
        flag = false;
        report.violations.push_back({fragment, reason, ax ? axiom_text(*ax) : ""});
    }
    void fail(bool& flag, const std::string& fragment, const std::string& reason) {
        fail(flag, fragment, nullptr, reason);
    }
};

} // namespace

Decomposition decompose_all(const DKB& kb) {
    Decomposition d;
    auto bail = [&](const std::string& why) {
        d.ok = false;
        d.reason = why;
        return d;
    };

    // Base language: every concept must lie in the bottom-extended grammar,
    // with no role hierarchy.
    std::vector<const Axiom*> axioms;
    for (const auto& ax : kb.strong) axioms.push_back(&ax);
    for (const auto& ax : kb.defeasible) axioms.push_back(&ax);
    for (const Axiom* ax : axioms) {
        if (ax->kind == AxiomKind::RoleInclusion)
            return bail("role inclusions are outside the fragment: " + axiom_text(*ax));
        if (ax->lhs && !el_concept(ax->lhs, true))
            return bail("concept outside the fragment in: " + axiom_text(*ax));
        if (ax->rhs && !el_concept(ax->rhs, true))
            return bail("concept outside the fragment in: " + axiom_text(*ax));
    }

    // Split: definitions form the terminology, the rest stays.
    std::map<std::string, ConceptPtr> defs;
    for (const Axiom* ax : axioms) {
        if (ax->kind == AxiomKind::Definition) {
            const std::string& name = ax->lhs->name;
            if (defs.count(name))
                return bail("multiple definitions for '" + name + "'");
            defs[name] = ax->rhs;
            d.k_a.push_back(*ax);
        } else {
            d.k_ll.push_back(*ax);
        }
    }

    // The terminology must be acyclic.
    std::map<std::string, int> state; // 0 unseen, 1 in progress, 2 done
    std::function<bool(const std::string&)> cyclic = [&](const std::string& n) {
        auto it = defs.find(n);
        if (it == defs.end()) return false;
        int& s = state[n];
        if (s == 1) return true;
        if (s == 2) return false;
        s = 1;
        Signature sig;
        collect_symbols(it->second, sig);
        for (const auto& used : sig.concept_names)
            if (cyclic(used)) return true;
        state[n] = 2;
        return false;
    };
    for (const auto& [name, body] : defs) {
        (void)body;
        if (cyclic(name)) return bail("cyclic terminology through '" + name + "'");
    }

    // Remaining inclusions must have flat left-hand sides.
    for (const Axiom& ax : d.k_ll) {
        if ((ax.kind == AxiomKind::Inclusion || ax.kind == AxiomKind::Defeasible) &&
            has_qualified_existential(ax.lhs))
            return bail("qualified existential on an inclusion LHS: " + axiom_text(ax));
    }

    // A defined name used on an inclusion LHS must not depend on a qualified
    // existential, or unfolding would break the flat-LHS shape.
    std::map<std::string, bool> depends;
    std::function<bool(const std::string&)> dep_qual = [&](const std::string& n) {
        auto it = defs.find(n);
        if (it == defs.end()) return false;
        auto hit = depends.find(n);
        if (hit != depends.end()) return hit->second;
        depends[n] = false; // acyclic, so this is only a guard
        bool bad = has_qualified_existential(it->second);
        if (!bad) {
            Signature sig;
            collect_symbols(it->second, sig);
            for (const auto& used : sig.concept_names)
                if (dep_qual(used)) { bad = true; break; }
        }
        depends[n] = bad;
        return bad;
    };
    for (const Axiom& ax : d.k_ll) {
        if (ax.kind != AxiomKind::Inclusion && ax.kind != AxiomKind::Defeasible)
            continue;
        Signature sig;
        collect_symbols(ax.lhs, sig);
        for (const auto& n : sig.concept_names) {
            if (defs.count(n) && dep_qual(n))
                return bail("defined name '" + n +
                            "' depends on a qualified existential but occurs on an "
                            "inclusion LHS: " +
                            axiom_text(ax));
        }
    }

    d.ok = true;
    return d;
}

FragmentReport classify(const DKB& kb) {
    FragmentReport r;
    r.priority_mode = kb.priority.mode;
    r.dllite = r.el = r.elbot = r.llf = r.ll = r.ll2 = true;
    r.left_fixed_dis = true;
    Checker ck{r};

    std::vector<const Axiom*> axioms;
    for (const auto& ax : kb.strong) axioms.push_back(&ax);
    for (const auto& ax : kb.defeasible) axioms.push_back(&ax);

    // Feature scan.
    for (const Axiom* ax : axioms) {
        if (ax->lhs) scan_features(ax->lhs, r);
        if (ax->rhs) scan_features(ax->rhs, r);
        if (ax->kind == AxiomKind::RoleInclusion) {
            r.role_hierarchy = true;
            if (ax->lrole.inverse || ax->rrole.inverse) r.inverse_roles = true;
        }
    }

    // Definitions must form a terminology for any of the structured flags;
    // validated once via the decomposition below.
    for (const Axiom* pax : axioms) {
        const Axiom& ax = *pax;
        switch (ax.kind) {
        case AxiomKind::Inclusion:
        case AxiomKind::Defeasible: {
            bool defeasible = ax.kind == AxiomKind::Defeasible;
            // DL-lite: basic LHS; basic-or-negated RHS, conjunctive sugar
            // only on strong inclusions.
            if (!dllite_basic(ax.lhs)) {
                ck.fail(r.dllite, "dl-lite", &ax, "LHS is not a basic concept");
            } else if (!defeasible && ax.rhs->kind == ConceptKind::And) {
                for (const auto& part : ax.rhs->children)
                    if (!dllite_rhs(part)) {
                        ck.fail(r.dllite, "dl-lite", &ax,
                                "RHS conjunct is not basic or negated basic");
                        break;
                    }
            } else if (!dllite_rhs(ax.rhs)) {
                ck.fail(r.dllite, "dl-lite", &ax, "RHS is not basic or negated basic");
            }
            // EL family.
            if (!el_concept(ax.lhs, false) || !el_concept(ax.rhs, false))
                ck.fail(r.el, "el", &ax, "concept outside the grammar");
            if (!el_concept(ax.lhs, true) || !el_concept(ax.rhs, true))
                ck.fail(r.elbot, "el-bot", &ax, "concept outside the grammar");
            else if (has_qualified_existential(ax.lhs))
                ck.fail(r.llf, "ll-f", &ax, "qualified existential on inclusion LHS");
            // Left-local schemata.
            LLSchema s = ll_schema_of(ax);
            bool ll_ok = defeasible ? s == LLSchema::NameToExists
                                    : (s != LLSchema::None && s != LLSchema::ConjExists);
            bool ll2_ok = defeasible ? s == LLSchema::NameToExists : s != LLSchema::None;
            if (!ll_ok)
                ck.fail(r.ll, "ll", &ax,
                        defeasible ? "defeasible inclusions must have shape A <=n exists P . B"
                                   : "inclusion matches no left-local schema");
            if (!ll2_ok)
                ck.fail(r.ll2, "ll2", &ax,
                        defeasible ? "defeasible inclusions must have shape A <=n exists P . B"
                                   : "inclusion matches no flat schema");
            if (defeasible && ax.lhs->kind != ConceptKind::Name)
                r.left_fixed_dis = false;
            break;
        }
        case AxiomKind::Definition: {
            if (!dllite_basic(ax.rhs))
                ck.fail(r.dllite, "dl-lite", &ax, "definition body is not basic");
            if (!el_concept(ax.rhs, false))
                ck.fail(r.el, "el", &ax, "definition body outside the grammar");
            if (!el_concept(ax.rhs, true))
                ck.fail(r.elbot, "el-bot", &ax, "definition body outside the grammar");
            else if (has_qualified_existential(ax.rhs))
                ck.fail(r.llf, "ll-f", &ax,
                        "definition body contains a qualified existential");
            ck.fail(r.ll, "ll", &ax, "definitions match no left-local schema");
            ck.fail(r.ll2, "ll2", &ax, "definitions match no flat schema");
            break;
        }
        case AxiomKind::RoleInclusion: {
            ck.fail(r.llf, "ll-f", &ax, "role inclusions are outside the fragment");
            ck.fail(r.ll, "ll", &ax, "role inclusions are outside the fragment");
            ck.fail(r.ll2, "ll2", &ax, "role inclusions are outside the fragment");
            if (ax.lrole.inverse || ax.rrole.inverse) {
                ck.fail(r.el, "el", &ax, "inverse role");
                ck.fail(r.elbot, "el-bot", &ax, "inverse role");
            }
            break;
        }
        case AxiomKind::ConceptAssertion: {
            if (ax.lhs->kind != ConceptKind::Name) {
                ck.fail(r.dllite, "dl-lite", &ax, "assertions must use a concept name");
                ck.fail(r.ll, "ll", &ax, "assertions must use a concept name");
                ck.fail(r.ll2, "ll2", &ax, "assertions must use a concept name");
            }
            if (!el_concept(ax.lhs, false))
                ck.fail(r.el, "el", &ax, "assertion concept outside the grammar");
            if (!el_concept(ax.lhs, true))
                ck.fail(r.elbot, "el-bot", &ax, "assertion concept outside the grammar");
            break;
        }
        case AxiomKind::RoleAssertion:
            // Inverse role assertions are the swapped plain assertion.
            break;
        }
    }

    if (r.nominals) {
        ck.fail(r.dllite, "dl-lite", "nominals are outside the grammar");
        ck.fail(r.el, "el", "nominals are outside the grammar");
        ck.fail(r.elbot, "el-bot", "nominals are outside the grammar");
    }
    if (r.inverse_roles) {
        ck.fail(r.el, "el", "inverse roles are outside the grammar");
        ck.fail(r.elbot, "el-bot", "inverse roles are outside the grammar");
    }
    if (r.role_hierarchy)
        ck.fail(r.llf, "ll-f", "role inclusions are outside the fragment");

    // Structured flags inherit the grammar flags.
    if (!r.elbot) {
        ck.fail(r.llf, "ll-f", "not in the bottom-extended grammar");
    }

    // The definition set must be a well-formed acyclic terminology wherever
    // definitions are admitted at all.
    r.decomposition = decompose_all(kb);
    r.all = r.decomposition.ok;
    if (!r.all)
        ck.fail(r.llf, "ll-f", r.decomposition.reason.empty()
                                   ? std::string("decomposition failed")
                                   : r.decomposition.reason);
    if (!r.decomposition.ok) {
        Violation v{"a-ll", r.decomposition.reason, ""};
        r.violations.push_back(v);
    }
    if (!r.llf) {
        // Keep the implication chain ll => ll2 => llf => all intact; llf
        // failures that are not schema failures still disqualify the
        // schema-level fragments.
        ck.fail(r.ll2, "ll2", "not in the flat fragment");
        ck.fail(r.ll, "ll", "not in the flat fragment");
    }
    if (!r.ll2) ck.fail(r.ll, "ll", "not expressible with flat schemata");

    return r;
}

} // namespace circex
