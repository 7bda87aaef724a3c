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

#include "circex/interpretation.hpp"

#include <sstream>

namespace circex {

Interpretation Interpretation::empty(std::shared_ptr<const Signature> sig, int domain) {
    if (domain < 1 || domain > 64) throw Error("domain size out of range (1..64)");
    Interpretation I;
    I.sig = std::move(sig);
    I.domain = domain;
    I.concepts.assign(I.sig->concept_names.size(), 0);
    I.roles.assign(I.sig->role_names.size(), std::vector<uint64_t>(domain, 0));
    I.inds.assign(I.sig->individuals.size(), 0);
    return I;
}

bool Interpretation::operator==(const Interpretation& o) const {
    return domain == o.domain && concepts == o.concepts && roles == o.roles && inds == o.inds;
}

namespace {

// Successor masks of role r (resolving inverses by transposing).
std::vector<uint64_t> successors(const Interpretation& I, const Role& r) {
    int id = I.sig->role_of(r.name);
    if (!r.inverse) return I.roles[id];
    std::vector<uint64_t> t(I.domain, 0);
    for (int x = 0; x < I.domain; ++x) {
        uint64_t row = I.roles[id][x];
        while (row) {
            int y = __builtin_ctzll(row);
            row &= row - 1;
            t[y] |= (1ull << x);
        }
    }
    return t;
}

} // namespace

uint64_t eval_concept(const Interpretation& I, const ConceptPtr& c) {
    const uint64_t all = I.universe();
    switch (c->kind) {
        case ConceptKind::Top:
            return all;
        case ConceptKind::Bot:
            return 0;
        case ConceptKind::Name:
            return I.concepts[I.sig->concept_of(c->name)];
        case ConceptKind::Nominal:
            return 1ull << I.inds[I.sig->individual_of(c->name)];
        case ConceptKind::Not:
            return all & ~eval_concept(I, c->children[0]);
        case ConceptKind::And: {
            uint64_t m = all;
            for (const auto& ch : c->children) m &= eval_concept(I, ch);
            return m;
        }
        case ConceptKind::Or: {
            uint64_t m = 0;
            for (const auto& ch : c->children) m |= eval_concept(I, ch);
            return m;
        }
        case ConceptKind::Exists: {
            auto succ = successors(I, c->role);
            uint64_t filler = c->children.empty() ? all : eval_concept(I, c->children[0]);
            uint64_t m = 0;
            for (int x = 0; x < I.domain; ++x)
                if (succ[x] & filler) m |= (1ull << x);
            return m;
        }
    }
    return 0;
}

uint64_t satisfied_set(const Interpretation& I, const ConceptPtr& lhs, const ConceptPtr& rhs) {
    return (I.universe() & ~eval_concept(I, lhs)) | eval_concept(I, rhs);
}

bool satisfies_axiom(const Interpretation& I, const Axiom& a) {
    const uint64_t all = I.universe();
    switch (a.kind) {
        case AxiomKind::Inclusion:
        case AxiomKind::Defeasible: // classical reading
            return satisfied_set(I, a.lhs, a.rhs) == all;
        case AxiomKind::Definition: {
            return eval_concept(I, a.lhs) == eval_concept(I, a.rhs);
        }
        case AxiomKind::RoleInclusion: {
            auto sub = successors(I, a.lrole);
            auto sup = successors(I, a.rrole);
            for (int x = 0; x < I.domain; ++x)
                if (sub[x] & ~sup[x]) return false;
            return true;
        }
        case AxiomKind::ConceptAssertion: {
            int e = I.inds[I.sig->individual_of(a.ind)];
            return (eval_concept(I, a.lhs) >> e) & 1u;
        }
        case AxiomKind::RoleAssertion: {
            auto succ = successors(I, a.lrole);
            int x = I.inds[I.sig->individual_of(a.ind)];
            int y = I.inds[I.sig->individual_of(a.ind2)];
            return (succ[x] >> y) & 1u;
        }
    }
    return false;
}

bool satisfies_strong(const Interpretation& I, const DKB& kb) {
    for (const auto& a : kb.strong)
        if (!satisfies_axiom(I, a)) return false;
    return true;
}

std::vector<bool> fixed_concept_flags(const Signature& sig, const CircConfig& cfg) {
    std::vector<bool> f(sig.concept_names.size(), false);
    switch (cfg.mode) {
        case CircMode::Var:
            break;
        case CircMode::Fix:
            f.assign(f.size(), true);
            break;
        case CircMode::Custom:
            for (size_t i = 0; i < sig.concept_names.size(); ++i)
                f[i] = cfg.fixed_concepts.count(sig.concept_names[i]) > 0;
            break;
    }
    return f;
}

std::vector<bool> fixed_role_flags(const Signature& sig, const CircConfig& cfg) {
    std::vector<bool> f(sig.role_names.size(), false);
    for (size_t i = 0; i < sig.role_names.size(); ++i)
        f[i] = cfg.fixed_roles.count(sig.role_names[i]) > 0;
    return f;
}

bool preferred(const Interpretation& I, const Interpretation& J, const DKB& kb,
               const CircConfig& cfg, const PrecRel& prec) {
    if (I.domain != J.domain) return false;
    if (I.inds != J.inds) return false;
    auto fc = fixed_concept_flags(*I.sig, cfg);
    for (size_t i = 0; i < fc.size(); ++i)
        if (fc[i] && I.concepts[i] != J.concepts[i]) return false;
    auto fr = fixed_role_flags(*I.sig, cfg);
    for (size_t i = 0; i < fr.size(); ++i)
        if (fr[i] && I.roles[i] != J.roles[i]) return false;

    const int m = (int)kb.defeasible.size();
    if (m == 0) return false; // condition (5) cannot hold
    std::vector<uint64_t> satI(m), satJ(m);
    for (int i = 0; i < m; ++i) {
        satI[i] = satisfied_set(I, kb.defeasible[i].lhs, kb.defeasible[i].rhs);
        satJ[i] = satisfied_set(J, kb.defeasible[i].lhs, kb.defeasible[i].rhs);
    }
    auto superset = [](uint64_t a, uint64_t b) { return (a & b) == b; };
    auto strict = [&](int i) { return superset(satI[i], satJ[i]) && satI[i] != satJ[i]; };

    bool any_strict = false;
    for (int i = 0; i < m; ++i)
        if (strict(i)) { any_strict = true; break; }
    if (!any_strict) return false;

    for (int i = 0; i < m; ++i) {
        if (superset(satI[i], satJ[i])) continue;
        bool compensated = false;
        for (int j = 0; j < m && !compensated; ++j)
            if (prec.less(j, i) && strict(j)) compensated = true;
        if (!compensated) return false;
    }
    return true;
}

Interpretation complete_interpretation(std::shared_ptr<const Signature> sig, int domain) {
    Interpretation I = Interpretation::empty(std::move(sig), domain);
    uint64_t all = I.universe();
    for (auto& c : I.concepts) c = all;
    for (auto& r : I.roles)
        for (auto& row : r) row = all;
    return I;
}

std::string print_interpretation(const Interpretation& I) {
    std::ostringstream os;
    os << "domain: " << I.domain << "\n";
    for (size_t i = 0; i < I.sig->concept_names.size(); ++i) {
        os << I.sig->concept_names[i] << ": {";
        bool first = true;
        for (int x = 0; x < I.domain; ++x)
            if ((I.concepts[i] >> x) & 1u) {
                if (!first) os << ", ";
                os << (x + 1);
                first = false;
            }
        os << "}\n";
    }
    for (size_t r = 0; r < I.sig->role_names.size(); ++r) {
        os << I.sig->role_names[r] << ": {";
        bool first = true;
        for (int x = 0; x < I.domain; ++x) {
            uint64_t row = I.roles[r][x];
            while (row) {
                int y = __builtin_ctzll(row);
                row &= row - 1;
                if (!first) os << ", ";
                os << "(" << (x + 1) << "," << (y + 1) << ")";
                first = false;
            }
        }
        os << "}\n";
    }
    for (size_t a = 0; a < I.sig->individuals.size(); ++a)
        os << I.sig->individuals[a] << " -> " << (I.inds[a] + 1) << "\n";
    return os.str();
}

} // namespace circex
