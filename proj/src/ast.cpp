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

#include "circex/ast.hpp"

#include <algorithm>
#include <functional>

namespace circex {

struct ConceptFactory {
    static ConceptPtr make(ConceptKind k) {
        return ConceptPtr(new Concept(k));
    }
    static Concept* mut(const ConceptPtr& c) { return const_cast<Concept*>(c.get()); }
};

ConceptPtr Concept::top() {
    static ConceptPtr t = ConceptFactory::make(ConceptKind::Top);
    return t;
}

ConceptPtr Concept::bot() {
    static ConceptPtr b = ConceptFactory::make(ConceptKind::Bot);
    return b;
}

ConceptPtr Concept::make_name(const std::string& n) {
    auto c = ConceptFactory::make(ConceptKind::Name);
    ConceptFactory::mut(c)->name = n;
    return c;
}

ConceptPtr Concept::nominal(const std::string& ind) {
    auto c = ConceptFactory::make(ConceptKind::Nominal);
    ConceptFactory::mut(c)->name = ind;
    return c;
}

ConceptPtr Concept::negation(ConceptPtr x) {
    auto c = ConceptFactory::make(ConceptKind::Not);
    ConceptFactory::mut(c)->children.push_back(std::move(x));
    return c;
}

ConceptPtr Concept::conj(std::vector<ConceptPtr> cs) {
    if (cs.empty()) return top();
    if (cs.size() == 1) return cs[0];
    auto c = ConceptFactory::make(ConceptKind::And);
    ConceptFactory::mut(c)->children = std::move(cs);
    return c;
}

ConceptPtr Concept::disj(std::vector<ConceptPtr> cs) {
    if (cs.empty()) return bot();
    if (cs.size() == 1) return cs[0];
    auto c = ConceptFactory::make(ConceptKind::Or);
    ConceptFactory::mut(c)->children = std::move(cs);
    return c;
}

ConceptPtr Concept::exists(Role r, ConceptPtr filler) {
    auto c = ConceptFactory::make(ConceptKind::Exists);
    ConceptFactory::mut(c)->role = std::move(r);
    if (filler) ConceptFactory::mut(c)->children.push_back(std::move(filler));
    return c;
}

int Concept::compare(const Concept& o) const {
    if (kind != o.kind) return kind < o.kind ? -1 : 1;
    if (name != o.name) return name < o.name ? -1 : 1;
    if (role != o.role) return role < o.role ? -1 : 1;
    if (children.size() != o.children.size())
        return children.size() < o.children.size() ? -1 : 1;
    for (size_t i = 0; i < children.size(); ++i) {
        int c = children[i]->compare(*o.children[i]);
        if (c != 0) return c;
    }
    return 0;
}

size_t Concept::hash() const {
    size_t h = static_cast<size_t>(kind) * 0x9e3779b97f4a7c15ull;
    h ^= std::hash<std::string>()(name) + (h << 6);
    h ^= std::hash<std::string>()(role.name) + (role.inverse ? 0x55u : 0u) + (h >> 2);
    for (const auto& ch : children) h ^= ch->hash() + 0x9e3779b9u + (h << 6) + (h >> 2);
    return h;
}

int Concept::depth() const {
    switch (kind) {
        case ConceptKind::Top:
        case ConceptKind::Bot:
        case ConceptKind::Name:
        case ConceptKind::Nominal:
            return 0;
        case ConceptKind::Not:
            return children[0]->depth();
        case ConceptKind::And:
        case ConceptKind::Or: {
            int d = 0;
            for (const auto& ch : children) d = std::max(d, ch->depth());
            return d;
        }
        case ConceptKind::Exists:
            return 1 + (children.empty() ? 0 : children[0]->depth());
    }
    return 0;
}

bool concept_eq(const ConceptPtr& a, const ConceptPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->equals(*b);
}

std::vector<ConceptPtr> flatten_conj(const ConceptPtr& c) {
    std::vector<ConceptPtr> out;
    std::function<void(const ConceptPtr&)> go = [&](const ConceptPtr& x) {
        if (x->kind == ConceptKind::And) {
            for (const auto& ch : x->children) go(ch);
        } else if (x->kind != ConceptKind::Top) {
            out.push_back(x);
        }
    };
    go(c);
    return out;
}

void collect_subconcepts(const ConceptPtr& c, ConceptSet& out) {
    if (!c) return;
    out.insert(c);
    for (const auto& ch : c->children) collect_subconcepts(ch, out);
}

Axiom Axiom::inclusion(ConceptPtr l, ConceptPtr r) {
    Axiom a;
    a.kind = AxiomKind::Inclusion;
    a.lhs = std::move(l);
    a.rhs = std::move(r);
    return a;
}

Axiom Axiom::defeasible(ConceptPtr l, ConceptPtr r, std::string label) {
    Axiom a;
    a.kind = AxiomKind::Defeasible;
    a.lhs = std::move(l);
    a.rhs = std::move(r);
    a.label = std::move(label);
    return a;
}

Axiom Axiom::definition(ConceptPtr name, ConceptPtr body) {
    Axiom a;
    a.kind = AxiomKind::Definition;
    a.lhs = std::move(name);
    a.rhs = std::move(body);
    return a;
}

Axiom Axiom::role_inclusion(Role l, Role r) {
    Axiom a;
    a.kind = AxiomKind::RoleInclusion;
    a.lrole = std::move(l);
    a.rrole = std::move(r);
    return a;
}

Axiom Axiom::concept_assertion(ConceptPtr c, std::string ind) {
    Axiom a;
    a.kind = AxiomKind::ConceptAssertion;
    a.lhs = std::move(c);
    a.ind = std::move(ind);
    return a;
}

Axiom Axiom::role_assertion(Role r, std::string x, std::string y) {
    Axiom a;
    a.kind = AxiomKind::RoleAssertion;
    a.lrole = std::move(r);
    a.ind = std::move(x);
    a.ind2 = std::move(y);
    return a;
}

const Axiom* DKB::find_defeasible(const std::string& label) const {
    for (const auto& d : defeasible)
        if (d.label == label) return &d;
    return nullptr;
}

Query Query::subsumption(ConceptPtr c, ConceptPtr d) {
    Query q;
    q.kind = QueryKind::Subsumption;
    q.lhs = std::move(c);
    q.rhs = std::move(d);
    return q;
}

Query Query::instance(ConceptPtr c, std::string a) {
    Query q;
    q.kind = QueryKind::Instance;
    q.lhs = std::move(c);
    q.ind = std::move(a);
    return q;
}

Query Query::satisfiable(ConceptPtr c) {
    Query q;
    q.kind = QueryKind::Satisfiable;
    q.lhs = std::move(c);
    return q;
}

Query Query::consistent() {
    Query q;
    q.kind = QueryKind::Consistent;
    return q;
}

void Signature::add_concept(const std::string& n) {
    if (std::find(concept_names.begin(), concept_names.end(), n) == concept_names.end())
        concept_names.push_back(n);
}

void Signature::add_role(const std::string& n) {
    if (std::find(role_names.begin(), role_names.end(), n) == role_names.end())
        role_names.push_back(n);
}

void Signature::add_individual(const std::string& n) {
    if (std::find(individuals.begin(), individuals.end(), n) == individuals.end())
        individuals.push_back(n);
}

void Signature::index() {
    std::sort(concept_names.begin(), concept_names.end());
    std::sort(role_names.begin(), role_names.end());
    std::sort(individuals.begin(), individuals.end());
    concept_id.clear();
    role_id.clear();
    individual_id.clear();
    for (size_t i = 0; i < concept_names.size(); ++i) concept_id[concept_names[i]] = (int)i;
    for (size_t i = 0; i < role_names.size(); ++i) role_id[role_names[i]] = (int)i;
    for (size_t i = 0; i < individuals.size(); ++i) individual_id[individuals[i]] = (int)i;
}

int Signature::concept_of(const std::string& n) const {
    auto it = concept_id.find(n);
    if (it == concept_id.end()) throw Error("unknown concept name: " + n);
    return it->second;
}

int Signature::role_of(const std::string& n) const {
    auto it = role_id.find(n);
    if (it == role_id.end()) throw Error("unknown role name: " + n);
    return it->second;
}

int Signature::individual_of(const std::string& n) const {
    auto it = individual_id.find(n);
    if (it == individual_id.end()) throw Error("unknown individual: " + n);
    return it->second;
}

void collect_symbols(const ConceptPtr& c, Signature& sig) {
    if (!c) return;
    switch (c->kind) {
        case ConceptKind::Name:
            sig.add_concept(c->name);
            break;
        case ConceptKind::Nominal:
            sig.add_individual(c->name);
            break;
        case ConceptKind::Exists:
            sig.add_role(c->role.name);
            break;
        default:
            break;
    }
    for (const auto& ch : c->children) collect_symbols(ch, sig);
}

Signature signature_of(const DKB& kb, const std::vector<ConceptPtr>& extra,
                       const std::vector<std::string>& extra_inds) {
    Signature sig;
    auto do_axiom = [&](const Axiom& a) {
        collect_symbols(a.lhs, sig);
        collect_symbols(a.rhs, sig);
        switch (a.kind) {
            case AxiomKind::RoleInclusion:
                sig.add_role(a.lrole.name);
                sig.add_role(a.rrole.name);
                break;
            case AxiomKind::ConceptAssertion:
                sig.add_individual(a.ind);
                break;
            case AxiomKind::RoleAssertion:
                sig.add_role(a.lrole.name);
                sig.add_individual(a.ind);
                sig.add_individual(a.ind2);
                break;
            default:
                break;
        }
    };
    for (const auto& a : kb.strong) do_axiom(a);
    for (const auto& a : kb.defeasible) do_axiom(a);
    for (const auto& r : kb.declared_roles) sig.add_role(r);
    for (const auto& c : extra) collect_symbols(c, sig);
    for (const auto& i : extra_inds) sig.add_individual(i);
    sig.index();
    return sig;
}

ConceptSet closure_of(const DKB& kb, const std::vector<ConceptPtr>& extra) {
    ConceptSet out;
    for (const auto& a : kb.strong) {
        collect_subconcepts(a.lhs, out);
        collect_subconcepts(a.rhs, out);
    }
    for (const auto& a : kb.defeasible) {
        collect_subconcepts(a.lhs, out);
        collect_subconcepts(a.rhs, out);
    }
    for (const auto& c : extra) collect_subconcepts(c, out);
    return out;
}

} // namespace circex
