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

#include "circex/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <tuple>

#include "circex/fragments.hpp"
#include "circex/syntax.hpp"

namespace circex {

bool NameSet::includes(const NameSet& o) const {
    if (o.bot && !bot) return false;
    return std::includes(names.begin(), names.end(), o.names.begin(), o.names.end());
}

namespace {

uint64_t search_budget() {
    if (const char* env = std::getenv("CIRCEX_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4'000'000ull;
}

// Enumerate every interpretation over sig with the given domain size, calling
// pred on each; stops early when pred holds. When the space exceeds budget
// nothing is enumerated and exhausted is false.
bool search_space(const std::shared_ptr<const Signature>& sig, int domain, uint64_t budget,
                  const std::function<bool(const Interpretation&)>& pred, bool& exhausted) {
    size_t nc = sig->concept_names.size();
    size_t nr = sig->role_names.size();
    size_t ni = sig->individuals.size();
    long double total = std::pow(2.0L, (long double)(nc * domain + nr * domain * domain)) *
                        std::pow((long double)domain, (long double)ni);
    if (total > (long double)budget) {
        exhausted = false;
        return false;
    }
    exhausted = true;
    Interpretation I = Interpretation::empty(sig, domain);
    uint64_t cmax = I.universe();
    std::vector<uint64_t> cvals(nc, 0);
    std::vector<uint64_t> rvals(nr * domain, 0);
    std::vector<int> ivals(ni, 0);
    for (;;) {
        for (size_t i = 0; i < nc; ++i) I.concepts[i] = cvals[i];
        for (size_t r = 0; r < nr; ++r)
            for (int x = 0; x < domain; ++x) I.roles[r][x] = rvals[r * domain + x];
        for (size_t k = 0; k < ni; ++k) I.inds[k] = ivals[k];
        if (pred(I)) return true;
        // Odometer advance: concepts, then role rows, then individuals.
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

} // namespace

namespace detail {

// ---------------------------------------------------------------------------
// Completion engine for conjunction/existential KBs (optionally with a role
// hierarchy). Complex concepts are given fresh names with definitional
// axioms in both directions; individuals become nodes of the same table.
// ---------------------------------------------------------------------------
class ElEngine {
public:
    explicit ElEngine(const std::vector<Axiom>& strong) {
        node_top_ = new_node("");
        node_bot_ = new_node("");
        // Role hierarchy first, so edges added during intake propagate.
        for (const Axiom& ax : strong)
            if (ax.kind == AxiomKind::RoleInclusion)
                role_edges_.emplace_back(role_node(ax.lrole.name), role_node(ax.rrole.name));
        close_roles();
        for (const Axiom& ax : strong) {
            switch (ax.kind) {
            case AxiomKind::Inclusion:
                add_ax_sub(concept_node(ax.lhs), concept_node(ax.rhs));
                break;
            case AxiomKind::Definition: {
                int a = concept_node(ax.lhs);
                int b = concept_node(ax.rhs);
                add_ax_sub(a, b);
                add_ax_sub(b, a);
                break;
            }
            case AxiomKind::RoleInclusion:
                break; // handled above
            case AxiomKind::ConceptAssertion:
                add_ax_sub(individual_node(ax.ind), concept_node(ax.lhs));
                break;
            case AxiomKind::RoleAssertion: {
                std::string a = ax.lrole.inverse ? ax.ind2 : ax.ind;
                std::string b = ax.lrole.inverse ? ax.ind : ax.ind2;
                add_edge(role_node(ax.lrole.name), individual_node(a), individual_node(b));
                break;
            }
            case AxiomKind::Defeasible:
                throw Error("internal: defeasible axiom in classical engine");
            }
        }
        saturate();
    }

    bool inconsistent() {
        saturate();
        if (S_[node_top_].count(node_bot_)) return true;
        for (const auto& [name, node] : ind_id_) {
            (void)name;
            if (S_[node].count(node_bot_)) return true;
        }
        return false;
    }

    bool subsumes(const ConceptPtr& c, const ConceptPtr& d) {
        int x = concept_node(c);
        int y = concept_node(d);
        saturate();
        return S_[x].count(y) || S_[x].count(node_bot_) || inconsistent();
    }

    bool entails(const ConceptPtr& c, const std::string& a) {
        int y = concept_node(c);
        int n = individual_node(a);
        saturate();
        return S_[n].count(y) || inconsistent();
    }

    NameSet sup_cls(const ConceptPtr& h) {
        int x = concept_node(h);
        saturate();
        NameSet out;
        if (inconsistent() || S_[x].count(node_bot_)) {
            out.bot = true;
            for (const auto& [name, node] : real_id_) {
                (void)node;
                out.names.insert(name);
            }
            return out;
        }
        for (int y : S_[x])
            if (!real_[y].empty()) out.names.insert(real_[y]);
        return out;
    }

    std::set<std::string> non_empty(const ConceptPtr& h) {
        int x = concept_node(h);
        saturate();
        std::set<std::string> out;
        if (inconsistent()) {
            for (const auto& [name, node] : real_id_) {
                (void)node;
                out.insert(name);
            }
            return out;
        }
        // Everything reachable from h or an individual through entailed
        // existential successors is forced nonempty alongside them.
        std::set<int> seen;
        std::deque<int> work;
        auto push = [&](int n) {
            if (seen.insert(n).second) work.push_back(n);
        };
        push(x);
        for (const auto& [name, node] : ind_id_) {
            (void)name;
            push(node);
        }
        while (!work.empty()) {
            int n = work.front();
            work.pop_front();
            for (int y : S_[n])
                if (!real_[y].empty()) out.insert(real_[y]);
            for (const auto& [r, y] : out_edges_[n]) {
                (void)r;
                push(y);
            }
        }
        return out;
    }

    std::set<std::string> real_names() const {
        std::set<std::string> out;
        for (const auto& [name, node] : real_id_) {
            (void)node;
            out.insert(name);
        }
        return out;
    }

private:
    int node_top_ = 0, node_bot_ = 1;

    std::vector<std::string> real_; // node -> concept name, "" for pseudo nodes
    std::map<std::string, int> real_id_;
    std::map<ConceptPtr, int, ConceptPtrLess> memo_;
    std::map<std::string, int> ind_id_;

    std::map<std::string, int> role_id_;
    std::vector<std::vector<int>> role_up_; // role -> supers including itself
    std::vector<std::pair<int, int>> role_edges_;

    std::vector<std::vector<int>> ax_sub_;                 // a -> {b} : a <= b
    std::vector<std::vector<std::pair<int, int>>> ax_conj_; // a -> {(a2,b)} : a & a2 <= b
    std::vector<std::vector<std::pair<int, int>>> ax_exr_;  // a -> {(r,b)} : a <= exists r . b
    std::map<std::pair<int, int>, std::vector<int>> ax_exl_; // (r,a) -> {b} : exists r . a <= b

    std::vector<std::set<int>> S_;
    std::vector<std::set<std::pair<int, int>>> edges_; // per role: (x,y)
    std::vector<std::vector<std::pair<int, int>>> in_edges_;  // y -> (r,x)
    std::vector<std::vector<std::pair<int, int>>> out_edges_; // x -> (r,y)

    std::deque<std::pair<int, int>> qs_;    // (x, a) newly derived a in S[x]
    std::deque<std::array<int, 3>> qe_;     // (r, x, y) newly derived edge

    int new_node(const std::string& real_name) {
        int n = (int)S_.size();
        real_.push_back(real_name);
        ax_sub_.emplace_back();
        ax_conj_.emplace_back();
        ax_exr_.emplace_back();
        in_edges_.emplace_back();
        out_edges_.emplace_back();
        S_.emplace_back();
        add_s(n, n);
        if (n != node_top_) add_s(n, node_top_);
        return n;
    }

    int role_node(const std::string& r) {
        auto it = role_id_.find(r);
        if (it != role_id_.end()) return it->second;
        int id = (int)role_up_.size();
        role_id_[r] = id;
        role_up_.push_back({id});
        edges_.emplace_back();
        return id;
    }

    void close_roles() {
        size_t n = role_up_.size();
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) reach[i][i] = true;
        for (auto& [a, b] : role_edges_) reach[a][b] = true;
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i)
                if (reach[i][k])
                    for (size_t j = 0; j < n; ++j)
                        if (reach[k][j]) reach[i][j] = true;
        for (size_t i = 0; i < n; ++i) {
            role_up_[i].clear();
            for (size_t j = 0; j < n; ++j)
                if (reach[i][j]) role_up_[i].push_back((int)j);
        }
    }

    int individual_node(const std::string& a) {
        auto it = ind_id_.find(a);
        if (it != ind_id_.end()) return it->second;
        int n = new_node("");
        ind_id_[a] = n;
        return n;
    }

    int concept_node(const ConceptPtr& c) {
        auto it = memo_.find(c);
        if (it != memo_.end()) return it->second;
        int node = -1;
        switch (c->kind) {
        case ConceptKind::Top:
            node = node_top_;
            break;
        case ConceptKind::Bot:
            node = node_bot_;
            break;
        case ConceptKind::Name: {
            auto r = real_id_.find(c->name);
            if (r != real_id_.end()) node = r->second;
            else {
                node = new_node(c->name);
                real_id_[c->name] = node;
            }
            break;
        }
        case ConceptKind::And: {
            std::vector<int> parts;
            for (const auto& ch : c->children) parts.push_back(concept_node(ch));
            node = new_node("");
            for (int p : parts) add_ax_sub(node, p);
            int acc = parts[0];
            for (size_t i = 1; i < parts.size(); ++i) {
                int next = (i + 1 == parts.size()) ? node : new_node("");
                add_ax_conj(acc, parts[i], next);
                acc = next;
            }
            break;
        }
        case ConceptKind::Exists: {
            if (c->role.inverse)
                throw Error("unsupported fragment: inverse role in completion engine");
            int f = c->filler() ? concept_node(c->filler()) : node_top_;
            int r = role_node(c->role.name);
            node = new_node("");
            add_ax_exr(node, r, f);
            add_ax_exl(r, f, node);
            break;
        }
        default:
            throw Error("unsupported fragment: concept outside the completion grammar");
        }
        memo_[c] = node;
        return node;
    }

    void add_s(int x, int a) {
        if (S_[x].insert(a).second) qs_.push_back({x, a});
    }

    void add_edge(int r, int x, int y) {
        for (int s : role_up_[r]) {
            if (edges_[s].insert({x, y}).second) {
                in_edges_[y].emplace_back(s, x);
                out_edges_[x].emplace_back(s, y);
                qe_.push_back({s, x, y});
            }
        }
    }

    void add_ax_sub(int a, int b) {
        ax_sub_[a].push_back(b);
        for (int x = 0; x < (int)S_.size(); ++x)
            if (S_[x].count(a)) add_s(x, b);
    }

    void add_ax_conj(int a1, int a2, int b) {
        ax_conj_[a1].emplace_back(a2, b);
        ax_conj_[a2].emplace_back(a1, b);
        for (int x = 0; x < (int)S_.size(); ++x)
            if (S_[x].count(a1) && S_[x].count(a2)) add_s(x, b);
    }

    void add_ax_exr(int a, int r, int b) {
        ax_exr_[a].emplace_back(r, b);
        for (int x = 0; x < (int)S_.size(); ++x)
            if (S_[x].count(a)) add_edge(r, x, b);
    }

    void add_ax_exl(int r, int a, int b) {
        ax_exl_[{r, a}].push_back(b);
        for (const auto& [x, y] : std::set<std::pair<int, int>>(edges_[r]))
            if (S_[y].count(a)) add_s(x, b);
    }

    void saturate() {
        while (!qs_.empty() || !qe_.empty()) {
            if (!qs_.empty()) {
                auto [x, a] = qs_.front();
                qs_.pop_front();
                for (int b : ax_sub_[a]) add_s(x, b);
                for (const auto& [a2, b] : ax_conj_[a])
                    if (S_[x].count(a2)) add_s(x, b);
                for (const auto& [r, b] : ax_exr_[a]) add_edge(r, x, b);
                // x occurs as a filler: feed predecessor rules.
                for (size_t i = 0; i < in_edges_[x].size(); ++i) {
                    auto [r, p] = in_edges_[x][i];
                    auto it = ax_exl_.find({r, a});
                    if (it != ax_exl_.end())
                        for (int b : it->second) add_s(p, b);
                    if (a == node_bot_) add_s(p, node_bot_);
                }
            } else {
                auto [r, x, y] = qe_.front();
                qe_.pop_front();
                for (int a : std::vector<int>(S_[y].begin(), S_[y].end())) {
                    auto it = ax_exl_.find({r, a});
                    if (it != ax_exl_.end())
                        for (int b : it->second) add_s(x, b);
                }
                if (S_[y].count(node_bot_)) add_s(x, node_bot_);
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Inclusion-closure engine for basic-concept KBs: positive inclusions as a
// reachability relation over basic concepts, negative inclusions propagated
// backward, unsatisfiable basics by fixpoint, per-individual type closure.
// ---------------------------------------------------------------------------
class DlLiteEngine {
public:
    explicit DlLiteEngine(const std::vector<Axiom>& strong) {
        for (const Axiom& ax : strong) {
            switch (ax.kind) {
            case AxiomKind::Inclusion: {
                int l = basic_id(ax.lhs);
                std::vector<ConceptPtr> parts;
                if (ax.rhs->kind == ConceptKind::And) parts = ax.rhs->children;
                else parts.push_back(ax.rhs);
                for (const auto& part : parts) {
                    if (part->kind == ConceptKind::Not)
                        nis_.emplace_back(l, basic_id(part->children[0]));
                    else
                        pis_.emplace_back(l, basic_id(part));
                }
                break;
            }
            case AxiomKind::Definition: {
                int a = basic_id(ax.lhs);
                int b = basic_id(ax.rhs);
                pis_.emplace_back(a, b);
                pis_.emplace_back(b, a);
                break;
            }
            case AxiomKind::RoleInclusion:
                role_node(ax.lrole);
                role_node(ax.rrole);
                role_edges_.emplace_back(ax.lrole, ax.rrole);
                break;
            case AxiomKind::ConceptAssertion:
                asserted_[ax.ind].insert(basic_id(ax.lhs));
                break;
            case AxiomKind::RoleAssertion: {
                Role r = ax.lrole.inverse ? Role(ax.lrole.name) : ax.lrole;
                std::string a = ax.lrole.inverse ? ax.ind2 : ax.ind;
                std::string b = ax.lrole.inverse ? ax.ind : ax.ind2;
                asserted_[a].insert(exists_id(r));
                asserted_[b].insert(exists_id(r.inverted()));
                break;
            }
            case AxiomKind::Defeasible:
                throw Error("internal: defeasible axiom in classical engine");
            }
        }
        dirty_ = true;
    }

    bool handles_lhs(const ConceptPtr& c) const {
        if (c->kind == ConceptKind::Top || c->kind == ConceptKind::Bot) return true;
        return dllite_rhs(c);
    }
    bool handles_rhs(const ConceptPtr& c) const {
        if (c->kind == ConceptKind::And) {
            for (const auto& part : c->children)
                if (!handles_rhs(part)) return false;
            return true;
        }
        return handles_lhs(c);
    }

    bool inconsistent() {
        ensure();
        return inconsistent_;
    }

    bool subsumes(const ConceptPtr& c, const ConceptPtr& d) {
        ensure_concepts({c, d});
        ensure();
        if (inconsistent_) return true;
        if (d->kind == ConceptKind::And) {
            for (const auto& part : d->children)
                if (!subsumes(c, part)) return false;
            return true;
        }
        if (d->kind == ConceptKind::Top) return true;
        if (c->kind == ConceptKind::Bot) return true;
        if (c->kind == ConceptKind::Top) {
            if (d->kind == ConceptKind::Not) return unsat_[basic_id(d->children[0])];
            return false; // an isolated fresh point realizes top and nothing else
        }
        if (c->kind == ConceptKind::Not) {
            int x = basic_id(c->children[0]);
            if (d->kind == ConceptKind::Not) {
                int y = basic_id(d->children[0]);
                return reach_[y].count(x) || unsat_[y];
            }
            return false; // isolated fresh point again
        }
        int x = basic_id(c);
        if (unsat_[x]) return true;
        if (d->kind == ConceptKind::Bot) return false;
        if (d->kind == ConceptKind::Not) return disj(x, basic_id(d->children[0]));
        return reach_[x].count(basic_id(d)) != 0;
    }

    bool entails(const ConceptPtr& c, const std::string& a) {
        ensure_concepts({c});
        ensure();
        if (inconsistent_) return true;
        if (c->kind == ConceptKind::Top) return true;
        if (c->kind == ConceptKind::Bot) return false;
        if (c->kind == ConceptKind::And) {
            for (const auto& part : c->children)
                if (!entails(part, a)) return false;
            return true;
        }
        auto ty = types_.find(a);
        if (c->kind == ConceptKind::Not) {
            int x = basic_id(c->children[0]);
            if (disj(x, x)) return true;
            if (ty != types_.end())
                for (int y : ty->second)
                    if (disj(x, y)) return true;
            return false;
        }
        int x = basic_id(c);
        return ty != types_.end() && ty->second.count(x) != 0;
    }

    NameSet sup_cls(const ConceptPtr& h) {
        ensure_concepts({h});
        ensure();
        int x = basic_id(h);
        NameSet out;
        if (inconsistent_ || unsat_[x]) {
            out.bot = true;
            for (size_t i = 0; i < basics_.size(); ++i)
                if (std::get<0>(basics_[i]) == 0) out.names.insert(std::get<1>(basics_[i]));
            return out;
        }
        for (int y : reach_[x])
            if (std::get<0>(basics_[y]) == 0) out.names.insert(std::get<1>(basics_[y]));
        return out;
    }

    // True when every concept mentioned is basic (or negated basic / top /
    // bot), so that the closure tables answer the query.
    bool handles_query(const ConceptPtr& c, bool rhs) const {
        return rhs ? handles_rhs(c) : handles_lhs(c);
    }

private:
    // (kind, name, role-name, inverse): kind 0 = concept name, 1 = exists.
    using Key = std::tuple<int, std::string, std::string, bool>;

    std::map<Key, int> id_;
    std::vector<Key> basics_;
    std::vector<std::pair<int, int>> pis_;
    std::vector<std::pair<int, int>> nis_;
    std::vector<std::pair<Role, Role>> role_edges_;
    std::set<Role> roles_;
    std::map<std::string, std::set<int>> asserted_;

    bool dirty_ = true;
    std::vector<std::set<int>> reach_;
    std::vector<std::vector<bool>> disj0_;
    std::vector<bool> unsat_;
    std::map<std::string, std::set<int>> types_;
    bool inconsistent_ = false;

    int intern(const Key& k) {
        auto it = id_.find(k);
        if (it != id_.end()) return it->second;
        int id = (int)basics_.size();
        id_[k] = id;
        basics_.push_back(k);
        dirty_ = true;
        return id;
    }

    void role_node(const Role& r) {
        Role plain(r.name);
        if (roles_.insert(plain).second) {
            exists_id(plain);
            exists_id(plain.inverted());
        }
    }

    int exists_id(const Role& r) {
        return intern(Key{1, "", r.name, r.inverse});
    }

    int basic_id(const ConceptPtr& c) {
        if (c->kind == ConceptKind::Name) return intern(Key{0, c->name, "", false});
        if (c->kind == ConceptKind::Exists && c->unqualified_exists()) {
            role_node(c->role);
            return exists_id(c->role);
        }
        throw Error("internal: non-basic concept in closure engine");
    }

    void ensure_concepts(std::initializer_list<ConceptPtr> cs) {
        for (const auto& c : cs) register_query_concept(c);
    }

    void register_query_concept(const ConceptPtr& c) {
        switch (c->kind) {
        case ConceptKind::Name:
            intern(Key{0, c->name, "", false});
            break;
        case ConceptKind::Exists:
            role_node(c->role);
            exists_id(c->role);
            break;
        case ConceptKind::Not:
        case ConceptKind::And:
            for (const auto& ch : c->children) register_query_concept(ch);
            break;
        default:
            break;
        }
    }

    bool disj(int x, int y) const {
        return disj0_[x][y] || unsat_[x] || unsat_[y];
    }

    void ensure() {
        if (!dirty_) return;
        dirty_ = false;
        size_t n = basics_.size();

        // Role hierarchy closure, closed under inversion.
        std::map<Role, std::set<Role>> rsup;
        for (const Role& r : roles_) {
            rsup[r].insert(r);
            rsup[r.inverted()].insert(r.inverted());
        }
        for (auto& [l, r] : role_edges_) {
            rsup[l].insert(r);
            rsup[l.inverted()].insert(r.inverted());
        }
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto& [r, sup] : rsup) {
                std::set<Role> next = sup;
                for (const Role& s : sup) {
                    auto it = rsup.find(s);
                    if (it != rsup.end()) next.insert(it->second.begin(), it->second.end());
                }
                if (next.size() != sup.size()) {
                    sup = std::move(next);
                    grew = true;
                }
            }
        }

        // Positive-inclusion adjacency: explicit inclusions plus those the
        // role hierarchy induces between unqualified existentials.
        std::vector<std::set<int>> up(n);
        for (auto& [a, b] : pis_) up[a].insert(b);
        for (auto& [r, sup] : rsup) {
            auto it = id_.find(Key{1, "", r.name, r.inverse});
            if (it == id_.end()) continue;
            for (const Role& s : sup) {
                auto jt = id_.find(Key{1, "", s.name, s.inverse});
                if (jt != id_.end()) up[it->second].insert(jt->second);
            }
        }

        reach_.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            std::deque<int> work{(int)i};
            reach_[i].insert((int)i);
            while (!work.empty()) {
                int x = work.front();
                work.pop_front();
                for (int y : up[x])
                    if (reach_[i].insert(y).second) work.push_back(y);
            }
        }

        std::vector<std::vector<int>> below(n);
        for (size_t i = 0; i < n; ++i)
            for (int y : reach_[i]) below[y].push_back((int)i);

        disj0_.assign(n, std::vector<bool>(n, false));
        for (auto& [u, v] : nis_) {
            for (int x : below[u])
                for (int y : below[v]) {
                    disj0_[x][y] = true;
                    disj0_[y][x] = true;
                }
        }

        unsat_.assign(n, false);
        for (size_t i = 0; i < n; ++i)
            if (disj0_[i][i]) unsat_[i] = true;
        grew = true;
        while (grew) {
            grew = false;
            for (size_t i = 0; i < n; ++i) {
                if (unsat_[i]) continue;
                for (int y : reach_[i])
                    if (unsat_[y]) { unsat_[i] = true; grew = true; break; }
            }
            for (const Role& r : roles_) {
                auto a = id_.find(Key{1, "", r.name, false});
                auto b = id_.find(Key{1, "", r.name, true});
                if (a == id_.end() || b == id_.end()) continue;
                if (unsat_[a->second] != unsat_[b->second]) {
                    unsat_[a->second] = unsat_[b->second] = true;
                    grew = true;
                }
            }
        }

        types_.clear();
        inconsistent_ = false;
        for (auto& [ind, bs] : asserted_) {
            std::set<int>& t = types_[ind];
            for (int b : bs) t.insert(reach_[b].begin(), reach_[b].end());
            for (int x : t) {
                if (inconsistent_) break;
                for (int y : t)
                    if (disj(x, y)) { inconsistent_ = true; break; }
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Sound derivational prover with bounded countermodel search, for KBs and
// queries outside the two closed fragments. Assertions are encoded as
// nominal inclusions so instance checking reuses subsumption goals.
// ---------------------------------------------------------------------------
class Prover {
public:
    explicit Prover(const std::vector<Axiom>& strong) : strong_(strong) {
        for (const Axiom& ax : strong) {
            switch (ax.kind) {
            case AxiomKind::Inclusion:
                add_inclusion(ax.lhs, ax.rhs);
                break;
            case AxiomKind::Definition:
                add_inclusion(ax.lhs, ax.rhs);
                add_inclusion(ax.rhs, ax.lhs);
                break;
            case AxiomKind::RoleInclusion:
                role_edges_.emplace_back(ax.lrole, ax.rrole);
                break;
            case AxiomKind::ConceptAssertion:
                add_inclusion(Concept::nominal(ax.ind), ax.lhs);
                break;
            case AxiomKind::RoleAssertion: {
                std::string a = ax.lrole.inverse ? ax.ind2 : ax.ind;
                std::string b = ax.lrole.inverse ? ax.ind : ax.ind2;
                add_inclusion(Concept::nominal(a),
                              Concept::exists(Role(ax.lrole.name), Concept::nominal(b)));
                break;
            }
            case AxiomKind::Defeasible:
                throw Error("internal: defeasible axiom in classical engine");
            }
        }
        close_roles();
    }

    bool subsumes(const ConceptPtr& c, const ConceptPtr& d) {
        if (prove(c, d)) return true;
        bool found = false, searched_any = false;
        for (int domain = 1; domain <= 3 && !found; ++domain) {
            bool exhausted = false;
            DKB tmp;
            tmp.strong = strong_;
            auto sig = std::make_shared<Signature>(signature_of(tmp, {c, d}));
            found = search_space(sig, domain, search_budget(),
                                 [&](const Interpretation& I) {
                                     if (!satisfies_strong(I, tmp)) return false;
                                     uint64_t cx = eval_concept(I, c);
                                     uint64_t dx = eval_concept(I, d);
                                     return (cx & ~dx) != 0;
                                 },
                                 exhausted);
            searched_any = searched_any || exhausted;
        }
        if (found) return false;
        (void)searched_any;
        throw Error("unsupported fragment: classical subsumption undecided for '" +
                    render_concept(c) + " <= " + render_concept(d) + "'");
    }

    bool entails(const ConceptPtr& c, const std::string& a) {
        return subsumes(Concept::nominal(a), c);
    }

    bool consistent() {
        DKB tmp;
        tmp.strong = strong_;
        auto sig = std::make_shared<Signature>(signature_of(tmp));
        for (int domain = 1; domain <= 3; ++domain) {
            bool exhausted = false;
            if (search_space(sig, domain, search_budget(),
                             [&](const Interpretation& I) { return satisfies_strong(I, tmp); },
                             exhausted))
                return true;
        }
        if (prove(Concept::top(), Concept::bot())) return false;
        for (const std::string& a : sig->individuals)
            if (prove(Concept::nominal(a), Concept::bot())) return false;
        throw Error("unsupported fragment: classical consistency undecided");
    }

private:
    std::vector<Axiom> strong_;
    std::vector<std::pair<ConceptPtr, ConceptPtr>> incl_;
    std::vector<std::vector<ConceptPtr>> disjoint_; // conjunct lists entailing bot
    std::vector<std::pair<Role, Role>> role_edges_;
    std::map<Role, std::set<Role>> role_sup_;

    using Goal = std::pair<ConceptPtr, ConceptPtr>;
    struct GoalLess {
        bool operator()(const Goal& a, const Goal& b) const {
            int c = a.first->compare(*b.first);
            if (c != 0) return c < 0;
            return a.second->compare(*b.second) < 0;
        }
    };
    std::map<Goal, bool, GoalLess> goals_; // proven flag

    void add_inclusion(const ConceptPtr& l, const ConceptPtr& r) {
        incl_.emplace_back(l, r);
        if (r->kind == ConceptKind::Bot) {
            disjoint_.push_back(flatten_conj(l));
        } else if (r->kind == ConceptKind::Not) {
            std::vector<ConceptPtr> parts = flatten_conj(l);
            parts.push_back(r->children[0]);
            disjoint_.push_back(std::move(parts));
        }
    }

    void close_roles() {
        for (auto& [l, r] : role_edges_) {
            role_sup_[l].insert(r);
            role_sup_[l.inverted()].insert(r.inverted());
        }
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto& [r, sup] : role_sup_) {
                std::set<Role> next = sup;
                for (const Role& s : sup) {
                    auto it = role_sup_.find(s);
                    if (it != role_sup_.end()) next.insert(it->second.begin(), it->second.end());
                }
                if (next.size() != sup.size()) {
                    sup = std::move(next);
                    grew = true;
                }
            }
        }
    }

    bool sub_role(const Role& a, const Role& b) const {
        if (a == b) return true;
        auto it = role_sup_.find(a);
        return it != role_sup_.end() && it->second.count(b) != 0;
    }

    // Registers the goal and returns its current status.
    bool st(const ConceptPtr& c, const ConceptPtr& d) {
        Goal g{c, d};
        auto it = goals_.find(g);
        if (it != goals_.end()) return it->second;
        bool trivial = c->equals(*d) || d->kind == ConceptKind::Top ||
                       c->kind == ConceptKind::Bot;
        goals_[g] = trivial;
        return trivial;
    }

    bool eval_rules(const ConceptPtr& c, const ConceptPtr& d) {
        if (c->equals(*d)) return true;
        if (d->kind == ConceptKind::Top) return true;
        if (c->kind == ConceptKind::Bot) return true;
        // An empty left side is below everything.
        if (!(d->kind == ConceptKind::Bot) && st(c, Concept::bot())) return true;
        if (c->kind == ConceptKind::And) {
            for (const auto& ch : c->children)
                if (st(ch, d)) return true;
        }
        if (c->kind == ConceptKind::Or) {
            bool all = true;
            for (const auto& ch : c->children) all = st(ch, d) && all;
            if (all) return true;
        }
        if (d->kind == ConceptKind::And) {
            bool all = true;
            for (const auto& ch : d->children) all = st(c, ch) && all;
            if (all) return true;
        }
        if (d->kind == ConceptKind::Or) {
            for (const auto& ch : d->children)
                if (st(c, ch)) return true;
        }
        if (c->kind == ConceptKind::Not && c->children[0]->kind == ConceptKind::Not) {
            if (st(c->children[0]->children[0], d)) return true;
        }
        if (d->kind == ConceptKind::Not) {
            const ConceptPtr& y = d->children[0];
            if (y->kind == ConceptKind::Not && st(c, y->children[0])) return true;
            if (c->kind == ConceptKind::Not && st(y, c->children[0])) return true;
            // Disjointness through an axiom whose conjuncts split over c and y.
            for (const auto& parts : disjoint_) {
                bool all = true;
                for (const auto& g : parts) {
                    if (!st(c, g) && !st(y, g)) { all = false; break; }
                }
                if (all) return true;
            }
        }
        if (c->kind == ConceptKind::Exists && d->kind == ConceptKind::Exists &&
            sub_role(c->role, d->role)) {
            ConceptPtr cf = c->filler() ? c->filler() : Concept::top();
            ConceptPtr df = d->filler() ? d->filler() : Concept::top();
            if (st(cf, df)) return true;
        }
        for (const auto& [e, f] : incl_) {
            if (st(c, e) && st(f, d)) return true;
        }
        return false;
    }

    bool prove(const ConceptPtr& c, const ConceptPtr& d) {
        st(c, d);
        bool changed = true;
        while (changed) {
            changed = false;
            size_t before = goals_.size();
            std::vector<Goal> keys;
            keys.reserve(goals_.size());
            for (const auto& [g, proven] : goals_)
                if (!proven) keys.push_back(g);
            for (const auto& g : keys) {
                if (goals_[g]) continue;
                if (eval_rules(g.first, g.second)) {
                    goals_[g] = true;
                    changed = true;
                }
            }
            if (goals_.size() != before) changed = true;
        }
        return goals_[{c, d}];
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

ClassicalKB::ClassicalKB(std::vector<Axiom> strong) : strong_(std::move(strong)) {
    DKB tmp;
    tmp.strong = strong_;
    FragmentReport rep = classify(tmp);
    if (rep.elbot) el_ = std::make_unique<detail::ElEngine>(strong_);
    if (rep.dllite) dllite_ = std::make_unique<detail::DlLiteEngine>(strong_);
}

ClassicalKB::~ClassicalKB() = default;
ClassicalKB::ClassicalKB(ClassicalKB&&) noexcept = default;
ClassicalKB& ClassicalKB::operator=(ClassicalKB&&) noexcept = default;

detail::Prover& ClassicalKB::prover() {
    if (!prover_) prover_ = std::make_unique<detail::Prover>(strong_);
    return *prover_;
}

bool ClassicalKB::consistent() {
    if (el_) return !el_->inconsistent();
    if (dllite_) return !dllite_->inconsistent();
    return prover().consistent();
}

bool ClassicalKB::subsumes(const ConceptPtr& c, const ConceptPtr& d) {
    if (el_ && el_concept(c, true) && el_concept(d, true)) return el_->subsumes(c, d);
    if (dllite_ && dllite_->handles_query(c, false) && dllite_->handles_query(d, true))
        return dllite_->subsumes(c, d);
    return prover().subsumes(c, d);
}

bool ClassicalKB::entails_assertion(const ConceptPtr& c, const std::string& a) {
    if (el_ && el_concept(c, true)) return el_->entails(c, a);
    if (dllite_ && dllite_->handles_query(c, true)) return dllite_->entails(c, a);
    return prover().entails(c, a);
}

NameSet ClassicalKB::sup_cls(const ConceptPtr& h) {
    if (el_ && el_concept(h, true)) return el_->sup_cls(h);
    if (dllite_ && dllite_basic(h)) return dllite_->sup_cls(h);
    // Fall back to name-by-name subsumption over the visible signature.
    DKB tmp;
    tmp.strong = strong_;
    Signature sig = signature_of(tmp, {h});
    NameSet out;
    for (const std::string& n : sig.concept_names)
        if (subsumes(h, Concept::make_name(n))) out.names.insert(n);
    out.bot = subsumes(h, Concept::bot());
    return out;
}

std::set<std::string> ClassicalKB::non_empty(const ConceptPtr& h) {
    if (el_ && el_concept(h, true)) return el_->non_empty(h);
    throw Error("unsupported fragment: nonemptiness analysis needs a "
                "conjunction/existential KB");
}

bool subsumes(const std::vector<Axiom>& strong, const ConceptPtr& c, const ConceptPtr& d) {
    return ClassicalKB(strong).subsumes(c, d);
}

bool consistent(const std::vector<Axiom>& strong) {
    return ClassicalKB(strong).consistent();
}

bool entails_assertion(const std::vector<Axiom>& strong, const ConceptPtr& c,
                       const std::string& a) {
    return ClassicalKB(strong).entails_assertion(c, a);
}

NameSet sup_cls(const std::vector<Axiom>& strong, const ConceptPtr& h) {
    return ClassicalKB(strong).sup_cls(h);
}

std::set<std::string> non_empty(const std::vector<Axiom>& strong, const ConceptPtr& h) {
    return ClassicalKB(strong).non_empty(h);
}

PriorityRel specificity(const DKB& kb) {
    PriorityRel rel;
    rel.mode = PriorityMode::Explicit;
    size_t m = kb.defeasible.size();
    if (m == 0) return rel;
    ClassicalKB ck(kb.strong);
    std::vector<std::vector<bool>> sub(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (i != j) sub[i][j] = ck.subsumes(kb.defeasible[i].lhs, kb.defeasible[j].lhs);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (i != j && sub[i][j] && !sub[j][i])
                rel.edges.insert({kb.defeasible[i].label, kb.defeasible[j].label});
    return rel;
}

PrecRel precedence(const DKB& kb) {
    PrecRel p;
    p.m = (int)kb.defeasible.size();
    p.lt.assign((size_t)p.m * p.m, false);
    if (p.m == 0) return p;
    std::map<std::string, int> index;
    for (int i = 0; i < p.m; ++i) index[kb.defeasible[i].label] = i;
    auto mark = [&](const std::pair<std::string, std::string>& e) {
        auto i = index.find(e.first);
        auto j = index.find(e.second);
        if (i != index.end() && j != index.end())
            p.lt[(size_t)i->second * p.m + j->second] = true;
    };
    switch (kb.priority.mode) {
    case PriorityMode::Empty:
        break;
    case PriorityMode::Explicit:
        for (const auto& e : explicit_priority_closure(kb)) mark(e);
        break;
    case PriorityMode::Specificity:
        for (const auto& e : specificity(kb).edges) mark(e);
        break;
    }
    return p;
}

namespace {

struct Unfolder {
    std::map<std::string, ConceptPtr> raw;
    std::map<std::string, ConceptPtr> full;
    std::map<std::string, int> state;

    explicit Unfolder(const std::vector<Axiom>& defs) {
        for (const Axiom& ax : defs) {
            if (ax.kind != AxiomKind::Definition) continue;
            const std::string& n = ax.lhs->name;
            if (raw.count(n)) throw Error("duplicate definition for '" + n + "'");
            raw[n] = ax.rhs;
        }
    }

    ConceptPtr expand_name(const std::string& n) {
        auto it = raw.find(n);
        if (it == raw.end()) return nullptr;
        auto hit = full.find(n);
        if (hit != full.end()) return hit->second;
        int& s = state[n];
        if (s == 1) throw Error("cyclic terminology through '" + n + "'");
        s = 1;
        ConceptPtr body = apply(it->second);
        s = 2;
        full[n] = body;
        return body;
    }

    ConceptPtr apply(const ConceptPtr& c) {
        switch (c->kind) {
        case ConceptKind::Name: {
            ConceptPtr body = expand_name(c->name);
            return body ? body : c;
        }
        case ConceptKind::And: {
            std::vector<ConceptPtr> parts;
            for (const auto& ch : c->children) parts.push_back(apply(ch));
            return Concept::conj(std::move(parts));
        }
        case ConceptKind::Or: {
            std::vector<ConceptPtr> parts;
            for (const auto& ch : c->children) parts.push_back(apply(ch));
            return Concept::disj(std::move(parts));
        }
        case ConceptKind::Not:
            return Concept::negation(apply(c->children[0]));
        case ConceptKind::Exists:
            if (c->filler()) return Concept::exists(c->role, apply(c->filler()));
            return c;
        default:
            return c;
        }
    }
};

} // namespace

ConceptPtr unfold_concept(const ConceptPtr& c, const std::vector<Axiom>& defs) {
    Unfolder u(defs);
    return u.apply(c);
}

Axiom unfold_axiom(const Axiom& ax, const std::vector<Axiom>& defs) {
    Unfolder u(defs);
    Axiom out = ax;
    switch (ax.kind) {
    case AxiomKind::Inclusion:
    case AxiomKind::Defeasible:
        out.lhs = u.apply(ax.lhs);
        out.rhs = u.apply(ax.rhs);
        break;
    case AxiomKind::Definition:
        out.rhs = u.apply(ax.rhs);
        break;
    case AxiomKind::ConceptAssertion:
        out.lhs = u.apply(ax.lhs);
        break;
    case AxiomKind::RoleInclusion:
    case AxiomKind::RoleAssertion:
        break;
    }
    return out;
}

} // namespace circex
