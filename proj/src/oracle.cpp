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

#include "circex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

namespace circex {

uint64_t oracle_budget() {
    if (const char* env = std::getenv("CIRCEX_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4'000'000ull;
}

namespace {

long double space_size(size_t nc, size_t nr, size_t ni, int domain) {
    return std::pow(2.0L, (long double)(nc * domain + nr * domain * domain)) *
           std::pow((long double)domain, (long double)ni);
}

[[noreturn]] void throw_budget(long double total, int domain) {
    throw Error("budget exceeded: about " + std::to_string((double)total) +
                " interpretations over domain " + std::to_string(domain) +
                " (raise CIRCEX_BUDGET to allow this)");
}

using SatVec = std::vector<uint64_t>;

SatVec sat_vector(const Interpretation& I, const DKB& kb) {
    SatVec v(kb.defeasible.size());
    for (size_t i = 0; i < kb.defeasible.size(); ++i)
        v[i] = satisfied_set(I, kb.defeasible[i].lhs, kb.defeasible[i].rhs);
    return v;
}

// w is strictly preferred to v under the two satisfaction-set conditions.
bool vec_preferred(const SatVec& w, const SatVec& v, const PrecRel& prec) {
    const int m = (int)w.size();
    if (m == 0) return false;
    auto superset = [](uint64_t a, uint64_t b) { return (a & b) == b; };
    std::vector<bool> strict(m);
    bool any = false;
    for (int i = 0; i < m; ++i) {
        strict[i] = superset(w[i], v[i]) && w[i] != v[i];
        any = any || strict[i];
    }
    if (!any) return false;
    for (int i = 0; i < m; ++i) {
        if (superset(w[i], v[i])) continue;
        bool compensated = false;
        for (int j = 0; j < m && !compensated; ++j)
            if (prec.less(j, i) && strict[j]) compensated = true;
        if (!compensated) return false;
    }
    return true;
}

// Group key: individuals plus all fixed extensions, flattened.
std::vector<uint64_t> group_key(const Interpretation& I, const std::vector<bool>& fc,
                                const std::vector<bool>& fr) {
    std::vector<uint64_t> key;
    key.reserve(I.inds.size() + I.concepts.size() + I.roles.size() * I.domain);
    for (int e : I.inds) key.push_back((uint64_t)e);
    for (size_t i = 0; i < I.concepts.size(); ++i)
        if (fc[i]) key.push_back(I.concepts[i]);
    for (size_t r = 0; r < I.roles.size(); ++r)
        if (fr[r])
            for (int x = 0; x < I.domain; ++x) key.push_back(I.roles[r][x]);
    return key;
}

// Stream every minimal model over the domain; fn returning true stops.
bool for_each_minimal_model(const DKB& kb, const CircConfig& cfg, const PrecRel& prec,
                            const std::shared_ptr<const Signature>& sig, int domain,
                            uint64_t budget,
                            const std::function<bool(const Interpretation&)>& fn) {
    auto fc = fixed_concept_flags(*sig, cfg);
    auto fr = fixed_role_flags(*sig, cfg);
    std::map<std::vector<uint64_t>, std::set<SatVec>> groups;
    for_each_interpretation(sig, domain, budget, [&](const Interpretation& I) {
        if (satisfies_strong(I, kb)) groups[group_key(I, fc, fr)].insert(sat_vector(I, kb));
        return false;
    });
    return for_each_interpretation(sig, domain, budget, [&](const Interpretation& I) {
        if (!satisfies_strong(I, kb)) return false;
        SatVec v = sat_vector(I, kb);
        const std::set<SatVec>& peers = groups[group_key(I, fc, fr)];
        for (const SatVec& w : peers)
            if (vec_preferred(w, v, prec)) return false;
        return fn(I);
    });
}

} // namespace

bool for_each_interpretation(const std::shared_ptr<const Signature>& sig, int domain,
                             uint64_t budget,
                             const std::function<bool(const Interpretation&)>& fn) {
    size_t nc = sig->concept_names.size();
    size_t nr = sig->role_names.size();
    size_t ni = sig->individuals.size();
    long double total = space_size(nc, nr, ni, domain);
    if (total > (long double)budget) throw_budget(total, domain);
    Interpretation I = Interpretation::empty(sig, domain);
    uint64_t cmax = I.universe();
    std::vector<uint64_t> cvals(nc, 0), rvals(nr * domain, 0);
    std::vector<int> ivals(ni, 0);
    for (;;) {
        for (size_t i = 0; i < nc; ++i) I.concepts[i] = cvals[i];
        for (size_t r = 0; r < nr; ++r)
            for (int x = 0; x < domain; ++x) I.roles[r][x] = rvals[r * domain + x];
        for (size_t k = 0; k < ni; ++k) I.inds[k] = ivals[k];
        if (fn(I)) return true;
        size_t pos = 0;
        bool carry = true;
        while (carry && pos < nc) {
            if (cvals[pos] < cmax) { ++cvals[pos]; carry = false; }
            else cvals[pos++] = 0;
        }
        size_t rpos = 0;
        while (carry && rpos < rvals.size()) {
            if (rvals[rpos] < cmax) { ++rvals[rpos]; carry = false; }
            else rvals[rpos++] = 0;
        }
        size_t ipos = 0;
        while (carry && ipos < ni) {
            if (ivals[ipos] < domain - 1) { ++ivals[ipos]; carry = false; }
            else ivals[ipos++] = 0;
        }
        if (carry) return false;
    }
}

bool is_circ_model(const Interpretation& I, const DKB& kb, const CircConfig& cfg,
                   const PrecRel& prec) {
    if (!satisfies_strong(I, kb)) return false;
    if (kb.defeasible.empty()) return true;
    const Signature& sig = *I.sig;
    auto fc = fixed_concept_flags(sig, cfg);
    auto fr = fixed_role_flags(sig, cfg);
    size_t free_c = 0, free_r = 0;
    for (bool f : fc)
        if (!f) ++free_c;
    for (bool f : fr)
        if (!f) ++free_r;
    long double total = space_size(free_c, free_r, 0, I.domain);
    if (total > (long double)oracle_budget()) throw_budget(total, I.domain);

    SatVec mine = sat_vector(I, kb);
    Interpretation J = I; // pinned parts stay, free parts cycle below
    uint64_t cmax = J.universe();
    std::vector<size_t> cids, rslots;
    for (size_t i = 0; i < fc.size(); ++i)
        if (!fc[i]) cids.push_back(i);
    for (size_t r = 0; r < fr.size(); ++r)
        if (!fr[r])
            for (int x = 0; x < I.domain; ++x) rslots.push_back(r * I.domain + x);
    std::vector<uint64_t> cvals(cids.size(), 0), rvals(rslots.size(), 0);
    for (;;) {
        for (size_t i = 0; i < cids.size(); ++i) J.concepts[cids[i]] = cvals[i];
        for (size_t i = 0; i < rslots.size(); ++i)
            J.roles[rslots[i] / I.domain][rslots[i] % I.domain] = rvals[i];
        if (satisfies_strong(J, kb) && vec_preferred(sat_vector(J, kb), mine, prec))
            return false;
        size_t pos = 0;
        bool carry = true;
        while (carry && pos < cvals.size()) {
            if (cvals[pos] < cmax) { ++cvals[pos]; carry = false; }
            else cvals[pos++] = 0;
        }
        size_t rpos = 0;
        while (carry && rpos < rvals.size()) {
            if (rvals[rpos] < cmax) { ++rvals[rpos]; carry = false; }
            else rvals[rpos++] = 0;
        }
        if (carry) return true;
    }
}

std::vector<Interpretation> enumerate_minimal_models(const DKB& kb, const CircConfig& cfg,
                                                     const PrecRel& prec, int n,
                                                     std::shared_ptr<const Signature> sig) {
    if (!sig) sig = std::make_shared<Signature>(signature_of(kb));
    std::vector<Interpretation> out;
    for_each_minimal_model(kb, cfg, prec, sig, n, oracle_budget(),
                           [&](const Interpretation& I) {
                               out.push_back(I);
                               return false;
                           });
    return out;
}

bool query_witnessed(const Interpretation& I, const Query& q) {
    switch (q.kind) {
    case QueryKind::Subsumption:
        return (eval_concept(I, q.lhs) & ~eval_concept(I, q.rhs) & I.universe()) != 0;
    case QueryKind::Instance: {
        auto it = I.sig->individual_id.find(q.ind);
        if (it == I.sig->individual_id.end())
            throw Error("internal: query individual missing from the signature");
        return ((eval_concept(I, q.lhs) >> I.inds[it->second]) & 1u) == 0;
    }
    case QueryKind::Satisfiable:
        return eval_concept(I, q.lhs) != 0;
    case QueryKind::Consistent:
        return true;
    }
    return false;
}

OracleAnswer oracle_decide(const DKB& kb, const CircConfig& cfg, const PrecRel& prec,
                           const Query& q, int max_domain) {
    std::vector<ConceptPtr> extra;
    std::vector<std::string> extra_inds;
    if (q.lhs) extra.push_back(q.lhs);
    if (q.rhs) extra.push_back(q.rhs);
    if (q.kind == QueryKind::Instance) extra_inds.push_back(q.ind);
    auto sig = std::make_shared<Signature>(signature_of(kb, extra, extra_inds));

    OracleAnswer out;
    for (int d = 1; d <= max_domain; ++d) {
        out.domain = d;
        bool found = for_each_minimal_model(kb, cfg, prec, sig, d, oracle_budget(),
                                            [&](const Interpretation& I) {
                                                if (!query_witnessed(I, q)) return false;
                                                out.witness = I;
                                                return true;
                                            });
        if (found) {
            out.definitive = true;
            out.answer = (q.kind == QueryKind::Satisfiable || q.kind == QueryKind::Consistent);
            return out;
        }
    }
    out.definitive = false;
    out.domain = max_domain;
    // No witness: subsumption/instance hold as far as we looked; the others fail.
    out.answer = (q.kind == QueryKind::Subsumption || q.kind == QueryKind::Instance);
    return out;
}

} // namespace circex
