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

#include "circex/transform.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circex/classical.hpp"
#include "circex/fragments.hpp"
#include "circex/syntax.hpp"

namespace circex {

namespace {

bool atom(const ConceptPtr& c) {
    return c->kind == ConceptKind::Name || c->kind == ConceptKind::Top ||
           c->kind == ConceptKind::Bot;
}

bool plain_unqualified(const ConceptPtr& c) {
    return c->kind == ConceptKind::Exists && !c->filler() && !c->role.inverse;
}

// exists P . B with an atomic (or absent) filler over a plain role.
bool flat_exists(const ConceptPtr& c) {
    if (c->kind != ConceptKind::Exists || c->role.inverse) return false;
    return !c->filler() || atom(c->filler());
}

// Builds the flattened KB. Fresh names are definitional: each one is made
// classically equivalent to the compound concept it stands for, so the
// construction can reuse one name per distinct compound (smaller output,
// same models up to the fresh names).
struct StarBuilder {
    DKB out;
    std::set<std::string> used;
    int counter = 0;
    std::map<std::string, ConceptPtr> mirror_;                    // role -> name for exists R
    std::map<ConceptPtr, ConceptPtr, ConceptPtrLess> lhs_cache_;  // compound LHS -> name
    std::map<ConceptPtr, ConceptPtr, ConceptPtrLess> rhs_cache_;  // compound RHS -> name

    explicit StarBuilder(const DKB& kb) {
        Signature sig = signature_of(kb);
        used.insert(sig.concept_names.begin(), sig.concept_names.end());
        out.priority = kb.priority;
        out.declared_roles = kb.declared_roles;
    }

    ConceptPtr fresh() {
        for (;;) {
            std::string n = "X" + std::to_string(counter++);
            if (!used.count(n)) {
                used.insert(n);
                return Concept::make_name(n);
            }
        }
    }

    void strong(ConceptPtr l, ConceptPtr r) {
        out.strong.push_back(Axiom::inclusion(std::move(l), std::move(r)));
    }

    // Name equivalent to exists R (for LHS positions, which only admit names).
    ConceptPtr mirror(const std::string& role) {
        auto it = mirror_.find(role);
        if (it != mirror_.end()) return it->second;
        ConceptPtr m = fresh();
        strong(m, Concept::exists(Role(role)));
        strong(Concept::exists(Role(role)), m);
        mirror_.emplace(role, m);
        return m;
    }

    // Emit lhs <= D piecewise: one inclusion per conjunct of D, with nested
    // existential fillers replaced by defined names.
    void emit_rhs(const ConceptPtr& lhs, const ConceptPtr& d) {
        std::vector<ConceptPtr> parts = flatten_conj(d);
        if (parts.empty()) {
            strong(lhs, Concept::top()); // keep lhs in the signature
            return;
        }
        for (const ConceptPtr& e : parts) {
            switch (e->kind) {
            case ConceptKind::Name:
            case ConceptKind::Bot:
                strong(lhs, e);
                break;
            case ConceptKind::Exists: {
                if (e->role.inverse)
                    throw Error("not LL_f: inverse role in " + render_concept(e));
                const ConceptPtr f = e->filler();
                if (!f || f->kind == ConceptKind::Top)
                    strong(lhs, Concept::exists(e->role));
                else if (atom(f))
                    strong(lhs, e);
                else
                    strong(lhs, Concept::exists(e->role, rhs_name(f)));
                break;
            }
            default:
                throw Error("not LL_f: concept outside the grammar: " +
                            render_concept(e));
            }
        }
    }

    // Fresh name F with F <= D (piecewise), standing for a compound RHS.
    ConceptPtr rhs_name(const ConceptPtr& d) {
        auto it = rhs_cache_.find(d);
        if (it != rhs_cache_.end()) return it->second;
        ConceptPtr f = fresh();
        rhs_cache_.emplace(d, f);
        emit_rhs(f, d);
        return f;
    }

    // Atomic stand-in for an inclusion LHS C = A_1 & ... & A_n & exists R_1 &
    // ... & exists R_m. A chain of fresh names F_i (resp. G_j over the
    // existential tail) is introduced so that F_0 is equivalent to C while
    // every emitted inclusion has a flat LHS of width at most two.
    ConceptPtr lhs_name(const ConceptPtr& c) {
        if (atom(c)) return c;
        if (plain_unqualified(c)) return mirror(c->role.name);
        auto it = lhs_cache_.find(c);
        if (it != lhs_cache_.end()) return it->second;
        if (c->kind != ConceptKind::And)
            throw Error("not LL_f: inclusion LHS is not a flat conjunction: " +
                        render_concept(c));

        std::vector<ConceptPtr> names;
        std::vector<Role> roles;
        for (const ConceptPtr& part : flatten_conj(c)) {
            if (part->kind == ConceptKind::Name || part->kind == ConceptKind::Bot)
                names.push_back(part);
            else if (plain_unqualified(part))
                roles.push_back(part->role);
            else
                throw Error("not LL_f: inclusion LHS conjunct is not flat: " +
                            render_concept(part));
        }
        const size_t n = names.size(), m = roles.size();

        // Existential tail: g[j] is equivalent to exists R_{j+1} & ... &
        // exists R_m; the innermost one is just the mirror name of R_m.
        ConceptPtr g0;
        if (m >= 1) {
            std::vector<ConceptPtr> b(m);
            for (size_t j = 0; j < m; ++j) b[j] = mirror(roles[j].name);
            std::vector<ConceptPtr> g(m);
            g[m - 1] = b[m - 1];
            for (size_t j = m - 1; j-- > 0;) {
                g[j] = fresh();
                for (size_t k = j; k < m; ++k)
                    strong(g[j], Concept::exists(roles[k]));
                strong(Concept::conj({b[j], g[j + 1]}), g[j]);
            }
            g0 = g[0];
        }

        ConceptPtr result;
        if (n == 0) {
            // Only existentials. m == 1 was handled by the mirror fast path
            // unless c was a singleton conjunction; g0 covers both.
            result = m ? g0 : Concept::top();
        } else if (n == 1 && m == 0) {
            result = names[0];
        } else {
            // Name chain: f[i] is equivalent to A_{i+1} & ... & A_n & (tail).
            std::vector<ConceptPtr> f(n);
            if (m == 0) {
                f[n - 1] = names[n - 1];
            } else {
                f[n - 1] = fresh();
                for (size_t j = 0; j < m; ++j)
                    strong(f[n - 1], Concept::exists(roles[j]));
                strong(f[n - 1], names[n - 1]);
                strong(Concept::conj({names[n - 1], g0}), f[n - 1]);
            }
            for (size_t i = n - 1; i-- > 0;) {
                f[i] = fresh();
                for (size_t k = i; k < n; ++k) strong(f[i], names[k]);
                for (size_t j = 0; j < m; ++j)
                    strong(f[i], Concept::exists(roles[j]));
                strong(Concept::conj({names[i], f[i + 1]}), f[i]);
            }
            result = f[0];
        }
        lhs_cache_.emplace(c, result);
        return result;
    }

    void add_inclusion(const ConceptPtr& l, const ConceptPtr& r) {
        // Inclusions already in one of the four output schemata are copied
        // verbatim; everything else is rebuilt around defined names.
        bool two_names = l->kind == ConceptKind::And && l->children.size() == 2 &&
                         atom(l->children[0]) && atom(l->children[1]);
        if ((atom(l) && (atom(r) || flat_exists(r))) ||
            (plain_unqualified(l) && atom(r)) || (two_names && atom(r))) {
            strong(l, r);
            return;
        }
        emit_rhs(lhs_name(l), r);
    }

    void add_defeasible(const Axiom& ax) {
        ConceptPtr l = lhs_name(ax.lhs);
        ConceptPtr r;
        if (ax.rhs->kind == ConceptKind::Name || ax.rhs->kind == ConceptKind::Bot)
            r = ax.rhs;
        else
            r = rhs_name(ax.rhs);
        out.defeasible.push_back(Axiom::defeasible(l, r, ax.label));
    }

    void add(const Axiom& ax) {
        switch (ax.kind) {
        case AxiomKind::Inclusion:
            add_inclusion(ax.lhs, ax.rhs);
            break;
        case AxiomKind::Definition:
            add_inclusion(ax.lhs, ax.rhs);
            add_inclusion(ax.rhs, ax.lhs);
            break;
        case AxiomKind::Defeasible:
            add_defeasible(ax);
            break;
        case AxiomKind::ConceptAssertion:
            if (ax.lhs->kind == ConceptKind::Name || ax.lhs->kind == ConceptKind::Top)
                out.strong.push_back(ax);
            else
                out.strong.push_back(
                    Axiom::concept_assertion(rhs_name(ax.lhs), ax.ind));
            break;
        case AxiomKind::RoleAssertion:
            out.strong.push_back(ax);
            break;
        case AxiomKind::RoleInclusion:
            throw Error("not LL_f: role inclusions are outside the fragment");
        }
    }
};

} // namespace

DKB normalize_kbstar(const DKB& kb) {
    FragmentReport report = classify(kb);
    if (!report.llf) {
        for (const Violation& v : report.violations)
            if (v.fragment == "ll-f")
                throw Error("not LL_f: " + v.reason +
                            (v.axiom.empty() ? "" : " in " + v.axiom));
        throw Error("not LL_f");
    }
    StarBuilder sb(kb);
    for (const Axiom& ax : kb.strong) sb.add(ax);
    for (const Axiom& ax : kb.defeasible) sb.add(ax);
    return std::move(sb.out);
}

namespace {

bool basic(const ConceptPtr& c) {
    // A name or an unqualified existential (inverse roles included).
    return c->kind == ConceptKind::Name ||
           (c->kind == ConceptKind::Exists && !c->filler());
}

// B <=[n] bot and strong B1 & B2 <= bot as basic-to-negated-basic
// inclusions. The two-conjunct form is never applied to a defeasible
// inclusion: it would move a conjunct off the LHS, and specificity
// priorities are computed from DI left-hand sides. Returns nullptr when the
// axiom matches no pattern.
const Axiom* rewrite_bot(const Axiom& ax, Axiom& store) {
    if (ax.rhs->kind != ConceptKind::Bot) return nullptr;
    ConceptPtr l = ax.lhs, neg_of;
    if (basic(ax.lhs)) {
        neg_of = ax.lhs;
    } else if (ax.kind == AxiomKind::Inclusion && ax.lhs->kind == ConceptKind::And &&
               ax.lhs->children.size() == 2 && basic(ax.lhs->children[0]) &&
               basic(ax.lhs->children[1])) {
        l = ax.lhs->children[0];
        neg_of = ax.lhs->children[1];
    } else {
        return nullptr;
    }
    if (ax.kind == AxiomKind::Defeasible)
        store = Axiom::defeasible(l, Concept::negation(neg_of), ax.label);
    else
        store = Axiom::inclusion(l, Concept::negation(neg_of));
    return &store;
}

} // namespace

DKB rewrite_dllite_conjunctions(const DKB& kb) {
    DKB out;
    out.priority = kb.priority;
    out.declared_roles = kb.declared_roles;
    Axiom store = Axiom::inclusion(Concept::top(), Concept::top());
    for (const Axiom& ax : kb.strong) {
        if (ax.kind == AxiomKind::Inclusion) {
            if (const Axiom* rw = rewrite_bot(ax, store)) {
                out.strong.push_back(*rw);
                continue;
            }
            if (ax.rhs->kind == ConceptKind::And) {
                std::vector<ConceptPtr> parts = flatten_conj(ax.rhs);
                if (parts.empty())
                    out.strong.push_back(Axiom::inclusion(ax.lhs, Concept::top()));
                for (const ConceptPtr& part : parts)
                    out.strong.push_back(Axiom::inclusion(ax.lhs, part));
                continue;
            }
        }
        out.strong.push_back(ax);
    }
    for (const Axiom& ax : kb.defeasible) {
        if (const Axiom* rw = rewrite_bot(ax, store))
            out.defeasible.push_back(*rw);
        else
            out.defeasible.push_back(ax);
    }
    return out;
}

namespace {

// Allocates symbols that collide with nothing in the KB, the configuration,
// or the query material. Collisions resolve by numeric suffix, so outputs
// are reproducible.
struct FreshPool {
    std::set<std::string> concepts, roles, inds, labels;

    FreshPool(const DKB& kb, const CircConfig& cfg,
              const std::vector<ConceptPtr>& extra = {},
              const std::vector<std::string>& extra_inds = {}) {
        Signature sig = signature_of(kb, extra, extra_inds);
        concepts.insert(sig.concept_names.begin(), sig.concept_names.end());
        concepts.insert(cfg.fixed_concepts.begin(), cfg.fixed_concepts.end());
        roles.insert(sig.role_names.begin(), sig.role_names.end());
        roles.insert(kb.declared_roles.begin(), kb.declared_roles.end());
        roles.insert(cfg.fixed_roles.begin(), cfg.fixed_roles.end());
        inds.insert(sig.individuals.begin(), sig.individuals.end());
        for (const Axiom& d : kb.defeasible) labels.insert(d.label);
    }

    static std::string pick(std::set<std::string>& used, const std::string& base) {
        std::string n = base;
        for (int k = 2; used.count(n); ++k) n = base + std::to_string(k);
        used.insert(n);
        return n;
    }

    std::string concept_name(const std::string& base) { return pick(concepts, base); }
    std::string role_name(const std::string& base) { return pick(roles, base); }
    std::string individual(const std::string& base) { return pick(inds, base); }
    std::string label(const std::string& base) { return pick(labels, base); }
};

ConceptPtr subst_names(const ConceptPtr& c,
                       const std::map<std::string, std::string>& role_of) {
    switch (c->kind) {
    case ConceptKind::Name: {
        auto it = role_of.find(c->name);
        return it == role_of.end() ? c : Concept::exists(Role(it->second));
    }
    case ConceptKind::Not:
        return Concept::negation(subst_names(c->children[0], role_of));
    case ConceptKind::And:
    case ConceptKind::Or: {
        std::vector<ConceptPtr> parts;
        parts.reserve(c->children.size());
        for (const ConceptPtr& ch : c->children)
            parts.push_back(subst_names(ch, role_of));
        return c->kind == ConceptKind::And ? Concept::conj(std::move(parts))
                                           : Concept::disj(std::move(parts));
    }
    case ConceptKind::Exists:
        if (c->filler())
            return Concept::exists(c->role, subst_names(c->filler(), role_of));
        return c;
    default:
        return c; // Top, Bot, Nominal
    }
}

std::string fragment_error(const FragmentReport& r, const std::string& fragment,
                           const std::string& prefix) {
    for (const Violation& v : r.violations)
        if (v.fragment == fragment)
            return prefix + ": " + v.reason + (v.axiom.empty() ? "" : " in " + v.axiom);
    return prefix;
}

// Input priority relation as a closed explicit edge set over labels.
std::set<std::pair<std::string, std::string>> materialized_edges(const DKB& kb) {
    switch (kb.priority.mode) {
    case PriorityMode::Explicit:
        return explicit_priority_closure(kb);
    case PriorityMode::Specificity:
        return specificity(kb).edges;
    case PriorityMode::Empty:
        return {};
    }
    return {};
}

} // namespace

ConceptPtr NameToRoleMap::apply(const ConceptPtr& c) const {
    return c ? subst_names(c, role_of) : c;
}

Query NameToRoleMap::apply(const Query& q) const {
    Query out = q;
    if (out.lhs) out.lhs = apply(out.lhs);
    if (out.rhs) out.rhs = apply(out.rhs);
    return out;
}

VariableElimination eliminate_variable_concepts(const DKB& kb, const CircConfig& cfg,
                                                const std::vector<ConceptPtr>& extra,
                                                const std::string& target) {
    FreshPool pool(kb, cfg, extra);

    VariableElimination out;
    out.cfg = cfg;
    out.cfg.mode = CircMode::Fix;
    out.cfg.fixed_concepts.clear();
    if (cfg.mode != CircMode::Fix) {
        Signature sig = signature_of(kb, extra);
        for (const std::string& name : sig.concept_names) {
            if (cfg.mode == CircMode::Custom && cfg.fixed_concepts.count(name)) continue;
            out.renaming.role_of.emplace(name, pool.role_name("R_" + name));
        }
    }
    if (out.renaming.role_of.empty()) {
        out.kb = kb;
        return out;
    }

    const std::map<std::string, std::string>& m = out.renaming.role_of;
    DKB& nk = out.kb;
    nk.priority = kb.priority;
    nk.declared_roles = kb.declared_roles;
    for (const Axiom& ax : kb.strong) {
        switch (ax.kind) {
        case AxiomKind::Inclusion:
            nk.strong.push_back(
                Axiom::inclusion(subst_names(ax.lhs, m), subst_names(ax.rhs, m)));
            break;
        case AxiomKind::Definition:
            if (ax.lhs->kind == ConceptKind::Name && m.count(ax.lhs->name)) {
                ConceptPtr head = subst_names(ax.lhs, m);
                ConceptPtr body = subst_names(ax.rhs, m);
                nk.strong.push_back(Axiom::inclusion(head, body));
                nk.strong.push_back(Axiom::inclusion(body, head));
            } else {
                nk.strong.push_back(Axiom::definition(ax.lhs, subst_names(ax.rhs, m)));
            }
            break;
        case AxiomKind::ConceptAssertion: {
            if (ax.lhs->kind == ConceptKind::Name) {
                auto it = m.find(ax.lhs->name);
                if (it != m.end()) {
                    nk.strong.push_back(
                        Axiom::role_assertion(Role(it->second), ax.ind, ax.ind));
                    break;
                }
            }
            nk.strong.push_back(Axiom::concept_assertion(subst_names(ax.lhs, m), ax.ind));
            break;
        }
        default:
            nk.strong.push_back(ax); // role inclusions, role assertions
        }
    }
    for (const Axiom& d : kb.defeasible)
        nk.defeasible.push_back(
            Axiom::defeasible(subst_names(d.lhs, m), subst_names(d.rhs, m), d.label));

    FragmentReport before = classify(kb);
    FragmentReport after = classify(nk);
    auto flag_of = [](const FragmentReport& f, const std::string& tag) -> const bool* {
        if (tag == "dl-lite") return &f.dllite;
        if (tag == "el") return &f.el;
        if (tag == "el-bot") return &f.elbot;
        if (tag == "ll-f") return &f.llf;
        if (tag == "ll") return &f.ll;
        if (tag == "ll2") return &f.ll2;
        return nullptr;
    };
    auto lost_detail = [&](const std::string& tag) {
        return fragment_error(after, tag,
                              "fragment lacks unqualified existentials in required "
                              "positions");
    };
    if (target == "auto") {
        for (const char* tag : {"dl-lite", "el", "el-bot", "ll-f"})
            if (*flag_of(before, tag) && !*flag_of(after, tag))
                throw Error(lost_detail(tag));
    } else {
        const bool* b = flag_of(before, target);
        const bool* a = flag_of(after, target);
        if (!b) throw Error("unknown fragment tag '" + target + "'");
        if (!*b)
            throw Error("not " + target + ": the input is already outside the "
                        "target fragment");
        if (!*a) throw Error(lost_detail(target));
    }
    return out;
}

FixedElimination eliminate_fixed_concepts(const DKB& kb, const CircConfig& cfg,
                                          const std::vector<ConceptPtr>& extra) {
    FragmentReport r = classify(kb);
    if (!r.elbot) throw Error(fragment_error(r, "el-bot", "not EL_bot"));

    std::set<std::string> fixed;
    {
        Signature sig = signature_of(kb, extra);
        if (cfg.mode == CircMode::Fix)
            fixed.insert(sig.concept_names.begin(), sig.concept_names.end());
        else if (cfg.mode == CircMode::Custom)
            for (const std::string& n : sig.concept_names)
                if (cfg.fixed_concepts.count(n)) fixed.insert(n);
    }

    FixedElimination out;
    out.cfg = cfg;
    out.cfg.mode = CircMode::Var;
    out.cfg.fixed_concepts.clear();
    if (fixed.empty()) {
        out.kb = kb;
        return out;
    }

    FreshPool pool(kb, cfg, extra);
    DKB nk = kb;
    nk.priority.mode = PriorityMode::Explicit;
    nk.priority.numeric.clear();
    nk.priority.edges = materialized_edges(kb);

    std::vector<std::string> new_labels;
    for (const std::string& a : fixed) {
        std::string bar = pool.concept_name(a + "_bar");
        out.complement_of.emplace(a, bar);
        ConceptPtr an = Concept::make_name(a);
        ConceptPtr barn = Concept::make_name(bar);
        nk.strong.push_back(Axiom::inclusion(Concept::conj({an, barn}), Concept::bot()));
        std::string la = pool.label("d_" + a);
        std::string lb = pool.label("d_" + bar);
        nk.defeasible.push_back(Axiom::defeasible(Concept::top(), an, la));
        nk.defeasible.push_back(Axiom::defeasible(Concept::top(), barn, lb));
        new_labels.push_back(la);
        new_labels.push_back(lb);
    }
    // The keep-A / keep-A_bar pair overrides every original inclusion and
    // stays mutually incomparable; shrinking or growing A between comparable
    // models then always degrades one of the two without an excuse.
    for (const std::string& nl : new_labels)
        for (const Axiom& d : kb.defeasible) nk.priority.edges.insert({nl, d.label});
    out.kb = std::move(nk);
    return out;
}

namespace {

ConceptPtr star_concept(const ConceptPtr& c, const ConceptPtr& dom) {
    switch (c->kind) {
    case ConceptKind::Top:
        return dom;
    case ConceptKind::Bot:
        return c;
    case ConceptKind::Name:
        return Concept::conj({dom, c});
    case ConceptKind::And: {
        std::vector<ConceptPtr> parts;
        parts.reserve(c->children.size());
        for (const ConceptPtr& ch : c->children) parts.push_back(star_concept(ch, dom));
        return Concept::conj(std::move(parts));
    }
    case ConceptKind::Exists: {
        ConceptPtr filler = c->filler() ? star_concept(c->filler(), dom) : dom;
        return Concept::conj({dom, Concept::exists(c->role, filler)});
    }
    default:
        throw Error("not EL_bot: concept outside the grammar: " + render_concept(c));
    }
}

} // namespace

ConceptPtr GdiNormalization::relativize(const ConceptPtr& c) const {
    return star_concept(c, Concept::make_name(domain));
}

Query GdiNormalization::relativize(const Query& q) const {
    Query out = q;
    if (out.lhs) out.lhs = relativize(out.lhs);
    if (out.rhs) out.rhs = relativize(out.rhs);
    return out;
}

GdiNormalization normalize_gdis(const DKB& kb, const CircConfig& cfg,
                                const std::vector<std::string>& extra_inds) {
    FragmentReport r = classify(kb);
    if (!r.elbot) throw Error(fragment_error(r, "el-bot", "not EL_bot"));
    if (cfg.mode != CircMode::Fix)
        throw Error("not fix: defeasible-inclusion normalization assumes fixed-name "
                    "semantics (eliminate variable names first)");
    PrecRel prec = precedence(kb);

    FreshPool pool(kb, cfg, {}, extra_inds);
    GdiNormalization out;
    out.cfg = cfg;
    out.domain = pool.concept_name("Dom");
    out.domain_role = pool.role_name("aux");
    ConceptPtr dom = Concept::make_name(out.domain);

    DKB& nk = out.kb;
    nk.declared_roles = kb.declared_roles;
    nk.priority.mode = PriorityMode::Specificity;

    std::set<std::string> individuals(extra_inds.begin(), extra_inds.end());
    for (const Axiom& ax : kb.strong) {
        switch (ax.kind) {
        case AxiomKind::Inclusion:
            nk.strong.push_back(Axiom::inclusion(star_concept(ax.lhs, dom),
                                                 star_concept(ax.rhs, dom)));
            break;
        case AxiomKind::Definition: {
            ConceptPtr head = star_concept(ax.lhs, dom);
            ConceptPtr body = star_concept(ax.rhs, dom);
            nk.strong.push_back(Axiom::inclusion(head, body));
            nk.strong.push_back(Axiom::inclusion(body, head));
            break;
        }
        case AxiomKind::ConceptAssertion:
            individuals.insert(ax.ind);
            if (ax.lhs->kind == ConceptKind::Name || ax.lhs->kind == ConceptKind::Top) {
                // With Dom(a) asserted below, a name assertion is already
                // equivalent to its relativization.
                nk.strong.push_back(ax);
            } else {
                std::string n = pool.concept_name("A_" + ax.ind);
                nk.strong.push_back(
                    Axiom::concept_assertion(Concept::make_name(n), ax.ind));
                nk.strong.push_back(Axiom::inclusion(Concept::make_name(n),
                                                     star_concept(ax.lhs, dom)));
            }
            break;
        case AxiomKind::RoleAssertion:
            individuals.insert(ax.ind);
            individuals.insert(ax.ind2);
            nk.strong.push_back(ax);
            break;
        default:
            nk.strong.push_back(ax); // role inclusions: roles are untouched
        }
    }

    const size_t n = kb.defeasible.size();
    std::vector<std::string> a_names(n), p_names(n);
    for (size_t i = 0; i < n; ++i) {
        a_names[i] = pool.concept_name("A_" + kb.defeasible[i].label);
        p_names[i] = pool.role_name("P_" + kb.defeasible[i].label);
    }
    for (size_t i = 0; i < n; ++i) {
        const Axiom& d = kb.defeasible[i];
        ConceptPtr ai = Concept::make_name(a_names[i]);
        ConceptPtr pi = Concept::exists(Role(p_names[i]));
        nk.strong.push_back(Axiom::inclusion(dom, ai));
        // A_k <= A_i whenever k overrides i: the guard names then subsume
        // each other exactly along the input priority, which specificity
        // recovers (Dom <= A_i keeps unrelated guards incomparable).
        for (size_t k = 0; k < n; ++k)
            if (prec.less((int)k, (int)i))
                nk.strong.push_back(
                    Axiom::inclusion(Concept::make_name(a_names[k]), ai));
        nk.strong.push_back(Axiom::inclusion(
            Concept::conj({pi, star_concept(d.lhs, dom)}), star_concept(d.rhs, dom)));
        nk.defeasible.push_back(Axiom::defeasible(ai, pi, d.label));
    }

    nk.strong.push_back(
        Axiom::inclusion(Concept::top(), Concept::exists(Role(out.domain_role), dom)));
    for (const std::string& a : individuals)
        nk.strong.push_back(Axiom::concept_assertion(dom, a));
    return out;
}

ReducedTask reduce_task(const DKB& kb, const CircConfig& cfg, const Query& q,
                        QueryKind target) {
    ReducedTask out;
    out.kb = kb;
    out.cfg = cfg;
    out.query = q;
    if (q.kind == target) return out; // nothing to do

    if (q.kind == QueryKind::Consistent || target == QueryKind::Consistent)
        throw Error("direction unavailable for this fragment/semantics: consistency "
                    "does not interreduce with the concept-level tasks");

    FragmentReport r = classify(kb);
    if (!r.elbot && !r.dllite)
        throw Error("direction unavailable for this fragment/semantics: the KB has "
                    "neither a basic-concept nor a conjunction/existential reading");
    const bool el = r.elbot; // preferred reading when both apply
    const bool fix = cfg.mode == CircMode::Fix;

    std::vector<ConceptPtr> extras;
    if (q.lhs) extras.push_back(q.lhs);
    if (q.rhs) extras.push_back(q.rhs);
    std::vector<std::string> extra_inds;
    if (!q.ind.empty()) extra_inds.push_back(q.ind);
    FreshPool pool(kb, cfg, extras, extra_inds);

    // A name is minimized unless the semantics fixes everything; under
    // fixed-name semantics fresh roles take over (roles are never fixed
    // unless listed, and fresh ones never are).
    auto neg_basic = [](const ConceptPtr& d) {
        return d->kind == ConceptKind::Not ? d->children[0] : Concept::negation(d);
    };

    if (target == QueryKind::Subsumption && q.kind == QueryKind::Satisfiable) {
        // C is circ-unsatisfiable iff C is below an always-empty concept.
        if (el) {
            out.query = Query::subsumption(q.lhs, Concept::bot());
        } else {
            ConceptPtr abot = Concept::make_name(pool.concept_name("A_bot"));
            out.kb.strong.push_back(Axiom::inclusion(abot, Concept::negation(abot)));
            out.query = Query::subsumption(q.lhs, abot);
        }
        out.negated = true;
        return out;
    }

    if (target == QueryKind::Satisfiable && q.kind == QueryKind::Subsumption) {
        // C <= D iff "C and not D" has no circ-model element.
        ConceptPtr marker = fix
            ? Concept::exists(Role(pool.role_name("R_q")))
            : ConceptPtr(Concept::make_name(pool.concept_name("A_q")));
        if (el) {
            out.kb.strong.push_back(
                Axiom::inclusion(Concept::conj({marker, q.rhs}), Concept::bot()));
            out.query = Query::satisfiable(Concept::conj({q.lhs, marker}));
        } else {
            out.kb.strong.push_back(Axiom::inclusion(marker, q.lhs));
            out.kb.strong.push_back(Axiom::inclusion(marker, neg_basic(q.rhs)));
            out.query = Query::satisfiable(marker);
        }
        out.negated = true;
        return out;
    }

    if (target == QueryKind::Subsumption && q.kind == QueryKind::Instance) {
        // Pin a fresh marker to the individual and minimize it: in every
        // minimal model the marker denotes exactly {a}, so the instance
        // check becomes a subsumption check.
        ConceptPtr marker;
        std::string lbl;
        if (fix) {
            std::string rq = pool.role_name("R_q");
            marker = Concept::exists(Role(rq));
            out.kb.strong.push_back(Axiom::role_assertion(Role(rq), q.ind, q.ind));
            lbl = pool.label("d_" + rq);
        } else {
            std::string aq = pool.concept_name("A_q");
            marker = Concept::make_name(aq);
            out.kb.strong.push_back(Axiom::concept_assertion(marker, q.ind));
            lbl = pool.label("d_" + aq);
        }
        out.kb.defeasible.push_back(Axiom::defeasible(marker, Concept::bot(), lbl));
        out.query = Query::subsumption(marker, q.lhs);
        return out;
    }

    if (target == QueryKind::Instance && q.kind == QueryKind::Satisfiable) {
        std::string w = pool.individual("w");
        if (!el) {
            // Basic-concept KBs ask the complement directly of a fresh
            // individual; no new axioms are needed.
            out.query = Query::instance(neg_basic(q.lhs), w);
            out.negated = true;
            return out;
        }
        // Excluded middle over a fresh complement: two bottom-priority
        // defaults push every element into C or into the complement, so C is
        // unsatisfiable iff the fresh individual always lands in the
        // complement.
        ConceptPtr c = q.lhs;
        bool add_edges = false;
        if (!kb.defeasible.empty() && kb.priority.mode == PriorityMode::Specificity) {
            if (!fix)
                throw Error(
                    "direction unavailable for this fragment/semantics: specificity "
                    "cannot place the new defaults below the originals while names "
                    "are minimized; use explicit priorities or fixed-name semantics");
            GdiNormalization norm = normalize_gdis(kb, cfg, {w});
            c = norm.relativize(q.lhs);
            out.kb = std::move(norm.kb);
            out.cfg = norm.cfg;
            // After normalization every original default has a guard-name
            // LHS strictly below top, so specificity already ranks the new
            // top-LHS defaults underneath all of them.
            pool = FreshPool(out.kb, out.cfg, {c});
        } else if (!kb.defeasible.empty()) {
            out.kb.priority.mode = PriorityMode::Explicit;
            out.kb.priority.numeric.clear();
            out.kb.priority.edges = materialized_edges(kb);
            add_edges = true;
        }
        ConceptPtr marker = fix
            ? Concept::exists(Role(pool.role_name("R_q")))
            : ConceptPtr(Concept::make_name(pool.concept_name("C_bar")));
        out.kb.strong.push_back(
            Axiom::inclusion(Concept::conj({marker, c}), Concept::bot()));
        std::string l1 = pool.label("d_q");
        std::string l2 = pool.label("d_q_bar");
        out.kb.defeasible.push_back(Axiom::defeasible(Concept::top(), c, l1));
        out.kb.defeasible.push_back(Axiom::defeasible(Concept::top(), marker, l2));
        if (add_edges)
            for (const Axiom& d : kb.defeasible) {
                out.kb.priority.edges.insert({d.label, l1});
                out.kb.priority.edges.insert({d.label, l2});
            }
        out.query = Query::instance(marker, w);
        out.negated = true;
        return out;
    }

    throw Error("direction unavailable for this fragment/semantics: no reduction "
                "into the requested task from the given one");
}

} // namespace circex
