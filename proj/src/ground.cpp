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

#include "circex/ground.hpp"

#include "circex/oracle.hpp"

namespace circex {

Grounder::Grounder(const DKB& kb, std::shared_ptr<const Signature> sig, int domain)
    : kb_(kb), sig_(std::move(sig)), domain_(domain) {
    if (domain_ < 1 || domain_ > 64) throw Error("internal: domain size out of range");
    const int n = domain_;
    const int nc = (int)sig_->concept_names.size();
    const int nr = (int)sig_->role_names.size();
    const int ni = (int)sig_->individuals.size();
    cbase_ = solver_.num_vars() + 1;
    for (int i = 0; i < nc * n; ++i) solver_.new_var();
    rbase_ = solver_.num_vars() + 1;
    for (int i = 0; i < nr * n * n; ++i) solver_.new_var();
    ibase_ = solver_.num_vars() + 1;
    for (int i = 0; i < ni * n; ++i) solver_.new_var();
    // Each individual denotes exactly one element.
    for (int a = 0; a < ni; ++a) {
        std::vector<sat::Lit> one;
        for (int x = 0; x < n; ++x) one.push_back(ind_lit(a, x));
        solver_.add_clause(one);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                solver_.add_clause({-ind_lit(a, x), -ind_lit(a, y)});
    }
}

sat::Lit Grounder::concept_lit(int cid, int x) const { return cbase_ + cid * domain_ + x; }
sat::Lit Grounder::role_lit(int rid, int x, int y) const {
    return rbase_ + (rid * domain_ + x) * domain_ + y;
}
sat::Lit Grounder::ind_lit(int iid, int x) const { return ibase_ + iid * domain_ + x; }

sat::Lit Grounder::true_lit() {
    if (!true_) {
        true_ = solver_.new_var();
        solver_.add_clause({true_});
    }
    return true_;
}

sat::Lit Grounder::conj_lit(const std::vector<sat::Lit>& ls) {
    if (ls.empty()) return true_lit();
    if (ls.size() == 1) return ls[0];
    sat::Lit t = solver_.new_var();
    std::vector<sat::Lit> back{t};
    for (sat::Lit l : ls) {
        solver_.add_clause({-t, l});
        back.push_back(-l);
    }
    solver_.add_clause(back);
    return t;
}

sat::Lit Grounder::disj_lit(const std::vector<sat::Lit>& ls) {
    if (ls.empty()) return -true_lit();
    if (ls.size() == 1) return ls[0];
    sat::Lit t = solver_.new_var();
    std::vector<sat::Lit> fwd{-t};
    for (sat::Lit l : ls) {
        solver_.add_clause({-l, t});
        fwd.push_back(l);
    }
    solver_.add_clause(fwd);
    return t;
}

sat::Lit Grounder::lit_of(const ConceptPtr& c, int x) {
    switch (c->kind) {
    case ConceptKind::Top: return true_lit();
    case ConceptKind::Bot: return -true_lit();
    case ConceptKind::Name: {
        auto it = sig_->concept_id.find(c->name);
        if (it == sig_->concept_id.end())
            throw Error("internal: concept name missing from the signature: " + c->name);
        return concept_lit(it->second, x);
    }
    case ConceptKind::Nominal: {
        auto it = sig_->individual_id.find(c->name);
        if (it == sig_->individual_id.end())
            throw Error("internal: individual missing from the signature: " + c->name);
        return ind_lit(it->second, x);
    }
    case ConceptKind::Not: return -lit_of(c->children[0], x);
    default: break;
    }
    auto key = std::make_pair(c.get(), x);
    auto hit = defined_.find(key);
    if (hit != defined_.end()) return hit->second;
    sat::Lit t = 0;
    if (c->kind == ConceptKind::And || c->kind == ConceptKind::Or) {
        std::vector<sat::Lit> parts;
        for (const auto& ch : c->children) parts.push_back(lit_of(ch, x));
        t = c->kind == ConceptKind::And ? conj_lit(parts) : disj_lit(parts);
    } else { // Exists
        std::vector<sat::Lit> per_target;
        ConceptPtr filler = c->unqualified_exists() ? nullptr : c->filler();
        auto it = sig_->role_id.find(c->role.name);
        if (it == sig_->role_id.end())
            throw Error("internal: role missing from the signature: " + c->role.name);
        int rid = it->second;
        for (int y = 0; y < domain_; ++y) {
            sat::Lit edge =
                c->role.inverse ? role_lit(rid, y, x) : role_lit(rid, x, y);
            per_target.push_back(filler ? conj_lit({edge, lit_of(filler, y)}) : edge);
        }
        t = disj_lit(per_target);
    }
    defined_[key] = t;
    return t;
}

sat::Lit Grounder::sat_lit(int di, int x) {
    auto key = std::make_pair(di, x);
    auto hit = sat_defined_.find(key);
    if (hit != sat_defined_.end()) return hit->second;
    const Axiom& d = kb_.defeasible[di];
    sat::Lit t = disj_lit({-lit_of(d.lhs, x), lit_of(d.rhs, x)});
    sat_defined_[key] = t;
    return t;
}

void Grounder::add_strong() {
    for (const Axiom& a : kb_.strong) {
        switch (a.kind) {
        case AxiomKind::Inclusion:
            for (int x = 0; x < domain_; ++x)
                solver_.add_clause({-lit_of(a.lhs, x), lit_of(a.rhs, x)});
            break;
        case AxiomKind::Definition:
            for (int x = 0; x < domain_; ++x) {
                solver_.add_clause({-lit_of(a.lhs, x), lit_of(a.rhs, x)});
                solver_.add_clause({lit_of(a.lhs, x), -lit_of(a.rhs, x)});
            }
            break;
        case AxiomKind::RoleInclusion: {
            int lr = sig_->role_id.at(a.lrole.name);
            int rr = sig_->role_id.at(a.rrole.name);
            for (int x = 0; x < domain_; ++x)
                for (int y = 0; y < domain_; ++y) {
                    sat::Lit from =
                        a.lrole.inverse ? role_lit(lr, y, x) : role_lit(lr, x, y);
                    sat::Lit to =
                        a.rrole.inverse ? role_lit(rr, y, x) : role_lit(rr, x, y);
                    solver_.add_clause({-from, to});
                }
            break;
        }
        case AxiomKind::ConceptAssertion: {
            int aid = sig_->individual_id.at(a.ind);
            for (int x = 0; x < domain_; ++x)
                solver_.add_clause({-ind_lit(aid, x), lit_of(a.lhs, x)});
            break;
        }
        case AxiomKind::RoleAssertion: {
            int aid = sig_->individual_id.at(a.ind);
            int bid = sig_->individual_id.at(a.ind2);
            int rid = sig_->role_id.at(a.lrole.name);
            for (int x = 0; x < domain_; ++x)
                for (int y = 0; y < domain_; ++y) {
                    sat::Lit edge =
                        a.lrole.inverse ? role_lit(rid, y, x) : role_lit(rid, x, y);
                    solver_.add_clause({-ind_lit(aid, x), -ind_lit(bid, y), edge});
                }
            break;
        }
        case AxiomKind::Defeasible:
            throw Error("internal: defeasible axiom in the strong list");
        }
    }
}

void Grounder::add_query_refutation(const Query& q) {
    switch (q.kind) {
    case QueryKind::Subsumption: {
        // Some element in lhs but not rhs.
        std::vector<sat::Lit> witness;
        for (int x = 0; x < domain_; ++x)
            witness.push_back(conj_lit({lit_of(q.lhs, x), -lit_of(q.rhs, x)}));
        solver_.add_clause(witness);
        break;
    }
    case QueryKind::Instance: {
        auto it = sig_->individual_id.find(q.ind);
        if (it == sig_->individual_id.end())
            throw Error("internal: query individual missing from the signature");
        for (int x = 0; x < domain_; ++x)
            solver_.add_clause({-ind_lit(it->second, x), -lit_of(q.lhs, x)});
        break;
    }
    case QueryKind::Satisfiable: {
        std::vector<sat::Lit> witness;
        for (int x = 0; x < domain_; ++x) witness.push_back(lit_of(q.lhs, x));
        solver_.add_clause(witness);
        break;
    }
    case QueryKind::Consistent:
        break; // any model will do
    }
}

void Grounder::pin_individuals(const Interpretation& I) {
    for (size_t a = 0; a < I.inds.size(); ++a)
        solver_.add_clause({ind_lit((int)a, I.inds[a])});
}

void Grounder::pin_fixed(const Interpretation& I, const CircConfig& cfg) {
    std::vector<bool> fc = fixed_concept_flags(*sig_, cfg);
    std::vector<bool> fr = fixed_role_flags(*sig_, cfg);
    for (size_t c = 0; c < fc.size(); ++c) {
        if (!fc[c]) continue;
        for (int x = 0; x < domain_; ++x) {
            sat::Lit l = concept_lit((int)c, x);
            solver_.add_clause({(I.concepts[c] >> x) & 1 ? l : -l});
        }
    }
    for (size_t r = 0; r < fr.size(); ++r) {
        if (!fr[r]) continue;
        for (int x = 0; x < domain_; ++x)
            for (int y = 0; y < domain_; ++y) {
                sat::Lit l = role_lit((int)r, x, y);
                solver_.add_clause({(I.roles[r][x] >> y) & 1 ? l : -l});
            }
    }
}

void Grounder::require_preferred_to(const Interpretation& I, const PrecRel& prec) {
    const int m = (int)kb_.defeasible.size();
    if (m == 0) {
        solver_.add_clause({}); // nothing can strictly improve
        return;
    }
    std::vector<uint64_t> base(m);
    for (int i = 0; i < m; ++i)
        base[i] = satisfied_set(I, kb_.defeasible[i].lhs, kb_.defeasible[i].rhs);

    std::vector<sat::Lit> keeps(m), strict(m);
    for (int i = 0; i < m; ++i) {
        std::vector<sat::Lit> kept, gained;
        for (int x = 0; x < domain_; ++x) {
            if ((base[i] >> x) & 1) kept.push_back(sat_lit(i, x));
            else gained.push_back(sat_lit(i, x));
        }
        keeps[i] = conj_lit(kept);
        strict[i] = conj_lit({keeps[i], disj_lit(gained)});
    }
    // Every loss on some axiom is paid for by a strict gain on a
    // higher-priority one; and something strictly gains.
    for (int i = 0; i < m; ++i) {
        std::vector<sat::Lit> cl{keeps[i]};
        for (int j = 0; j < m; ++j)
            if (prec.less(j, i)) cl.push_back(strict[j]);
        solver_.add_clause(cl);
    }
    solver_.add_clause(strict);
}

void Grounder::block_pattern(const Interpretation& I, const CircConfig& cfg) {
    std::vector<sat::Lit> cl;
    for (size_t a = 0; a < I.inds.size(); ++a)
        cl.push_back(-ind_lit((int)a, I.inds[a]));
    std::vector<bool> fc = fixed_concept_flags(*sig_, cfg);
    std::vector<bool> fr = fixed_role_flags(*sig_, cfg);
    for (size_t c = 0; c < fc.size(); ++c) {
        if (!fc[c]) continue;
        for (int x = 0; x < domain_; ++x) {
            sat::Lit l = concept_lit((int)c, x);
            cl.push_back((I.concepts[c] >> x) & 1 ? -l : l);
        }
    }
    for (size_t r = 0; r < fr.size(); ++r) {
        if (!fr[r]) continue;
        for (int x = 0; x < domain_; ++x)
            for (int y = 0; y < domain_; ++y) {
                sat::Lit l = role_lit((int)r, x, y);
                cl.push_back((I.roles[r][x] >> y) & 1 ? -l : l);
            }
    }
    for (int i = 0; i < (int)kb_.defeasible.size(); ++i) {
        uint64_t s = satisfied_set(I, kb_.defeasible[i].lhs, kb_.defeasible[i].rhs);
        for (int x = 0; x < domain_; ++x) {
            sat::Lit l = sat_lit(i, x);
            cl.push_back((s >> x) & 1 ? -l : l);
        }
    }
    solver_.add_clause(cl);
}

Interpretation Grounder::extract() {
    Interpretation I = Interpretation::empty(sig_, domain_);
    for (size_t c = 0; c < sig_->concept_names.size(); ++c)
        for (int x = 0; x < domain_; ++x)
            if (solver_.value(concept_lit((int)c, x))) I.concepts[c] |= 1ull << x;
    for (size_t r = 0; r < sig_->role_names.size(); ++r)
        for (int x = 0; x < domain_; ++x)
            for (int y = 0; y < domain_; ++y)
                if (solver_.value(role_lit((int)r, x, y))) I.set_pair((int)r, x, y);
    for (size_t a = 0; a < sig_->individuals.size(); ++a)
        for (int x = 0; x < domain_; ++x)
            if (solver_.value(ind_lit((int)a, x))) {
                I.inds[a] = x;
                break;
            }
    return I;
}

std::optional<Interpretation> ground_countermodel(const DKB& kb, const CircConfig& cfg,
                                                  const PrecRel& prec, const Query& q,
                                                  std::shared_ptr<const Signature> sig,
                                                  int domain) {
    const uint64_t budget = oracle_budget();
    Grounder main(kb, sig, domain);
    main.solver().set_conflict_limit(budget);
    main.add_strong();
    main.add_query_refutation(q);
    for (uint64_t round = 0;; ++round) {
        if (round > budget)
            throw Error("budget exceeded: candidate models over domain " +
                        std::to_string(domain) + " (raise CIRCEX_BUDGET to allow this)");
        if (!main.solver().solve()) return std::nullopt;
        Interpretation I = main.extract();
        Grounder improve(kb, sig, domain);
        improve.solver().set_conflict_limit(budget);
        improve.add_strong();
        improve.pin_individuals(I);
        improve.pin_fixed(I, cfg);
        improve.require_preferred_to(I, prec);
        if (!improve.solver().solve()) return I; // nothing beats it: minimal
        main.block_pattern(I, cfg);
    }
}

} // namespace circex
