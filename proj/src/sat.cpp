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

#include "circex/sat.hpp"

#include <algorithm>
#include <cstdlib>

#include "circex/ast.hpp" // Error

namespace circex::sat {

Solver::Solver() = default;
Solver::~Solver() = default;

int Solver::new_var() {
    ++nvars_;
    watches_.push_back({});
    watches_.push_back({});
    assigns_.push_back(kUndef);
    phase_.push_back(0);
    reason_.push_back(-1);
    level_.push_back(0);
    activity_.push_back(0.0);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    heap_insert(nvars_ - 1);
    return nvars_;
}

void Solver::attach(int ci) {
    const Clause& c = clauses_[ci];
    watches_[ineg(c.lits[0])].push_back(ci);
    watches_[ineg(c.lits[1])].push_back(ci);
}

void Solver::add_clause(const std::vector<Lit>& lits) {
    if (!ok_) return;
    if (decision_level() != 0) cancel_until(0);
    // Normalize: sort, dedupe, drop false literals, detect tautology.
    std::vector<int> ps;
    ps.reserve(lits.size());
    for (Lit l : lits) {
        if (l == 0 || std::abs(l) > nvars_)
            throw Error("internal: SAT literal out of range");
        ps.push_back(ilit(l));
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<int> out;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i + 1 < ps.size() && ps[i + 1] == ineg(ps[i])) return; // tautology
        if (lit_true(ps[i]) && level_[ivar(ps[i])] == 0) return;   // satisfied
        if (lit_false(ps[i]) && level_[ivar(ps[i])] == 0) continue; // dead literal
        out.push_back(ps[i]);
    }
    if (out.empty()) {
        ok_ = false;
        return;
    }
    if (out.size() == 1) {
        if (lit_false(out[0])) { ok_ = false; return; }
        if (lit_undef(out[0])) {
            enqueue(out[0], -1);
            if (propagate() != -1) ok_ = false;
        }
        return;
    }
    clauses_.push_back(Clause{std::move(out), false, 0.0});
    attach((int)clauses_.size() - 1);
}

void Solver::enqueue(int p, int reason) {
    int v = ivar(p);
    assigns_[v] = (uint8_t)((p & 1) ^ 1);
    phase_[v] = assigns_[v];
    reason_[v] = reason;
    level_[v] = decision_level();
    trail_.push_back(p);
}

int Solver::propagate() {
    while (qhead_ < trail_.size()) {
        int p = trail_[qhead_++]; // p became true; scan watchers of ~p
        std::vector<int>& ws = watches_[p];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            int ci = ws[i];
            Clause& c = clauses_[ci];
            // Ensure the false literal (~p) sits at position 1.
            int false_lit = ineg(p);
            if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
            if (lit_true(c.lits[0])) { ws[keep++] = ci; continue; }
            bool moved = false;
            for (size_t k = 2; k < c.lits.size(); ++k) {
                if (!lit_false(c.lits[k])) {
                    std::swap(c.lits[1], c.lits[k]);
                    watches_[ineg(c.lits[1])].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Unit or conflicting.
            ws[keep++] = ci;
            if (lit_false(c.lits[0])) {
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c.lits[0], ci);
        }
        ws.resize(keep);
    }
    return -1;
}

void Solver::cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (int i = (int)trail_.size() - 1; i >= trail_lim_[lvl]; --i) {
        int v = ivar(trail_[i]);
        assigns_[v] = kUndef;
        reason_[v] = -1;
        if (heap_pos_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
}

int Solver::analyze(int confl, std::vector<int>& learnt) {
    learnt.clear();
    learnt.push_back(0); // slot for the asserting literal
    int counter = 0;
    int p = -1;
    size_t index = trail_.size();
    do {
        Clause& c = clauses_[confl];
        if (c.learnt) c.activity += var_inc_;
        for (size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
            int q = c.lits[k];
            int v = ivar(q);
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            bump_var(v);
            if (level_[v] == decision_level()) ++counter;
            else learnt.push_back(q);
        }
        // Pick the next literal on the trail to resolve on.
        while (!seen_[ivar(trail_[--index])]) {}
        p = trail_[index];
        seen_[ivar(p)] = 0;
        confl = reason_[ivar(p)];
        --counter;
    } while (counter > 0);
    learnt[0] = ineg(p);

    int back = 0;
    for (size_t i = 1; i < learnt.size(); ++i) back = std::max(back, level_[ivar(learnt[i])]);
    // Move a literal of the backjump level into the second watch slot.
    if (learnt.size() > 1) {
        size_t at = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[ivar(learnt[i])] > level_[ivar(learnt[at])]) at = i;
        std::swap(learnt[1], learnt[at]);
    }
    for (size_t i = 1; i < learnt.size(); ++i) seen_[ivar(learnt[i])] = 0;
    return back;
}

void Solver::bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (int i = 0; i < nvars_; ++i) activity_[i] *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_sift_up(heap_pos_[v]);
}

void Solver::decay_activities() { var_inc_ /= 0.95; }

int Solver::pick_branch() {
    while (!heap_.empty()) {
        int v = heap_pop();
        if (assigns_[v] == kUndef) return v;
    }
    return -1;
}

bool Solver::solve(const std::vector<Lit>& assumptions) {
    if (!ok_) return false;
    cancel_until(0);
    if (propagate() != -1) { ok_ = false; return false; }

    uint64_t restart_limit = 100;
    uint64_t conflicts_here = 0, since_restart = 0;
    std::vector<int> learnt;
    for (;;) {
        int confl = propagate();
        if (confl != -1) {
            ++conflicts_;
            ++conflicts_here;
            ++since_restart;
            if (decision_level() == 0) { ok_ = false; return false; }
            int back = analyze(confl, learnt);
            cancel_until(std::max(back, 0));
            if (learnt.size() == 1) {
                if (decision_level() > 0) cancel_until(0);
                if (lit_false(learnt[0])) { ok_ = false; return false; }
                if (lit_undef(learnt[0])) enqueue(learnt[0], -1);
            } else {
                clauses_.push_back(Clause{learnt, true, var_inc_});
                attach((int)clauses_.size() - 1);
                enqueue(learnt[0], (int)clauses_.size() - 1);
            }
            decay_activities();
            if (conflict_limit_ && conflicts_here > conflict_limit_)
                throw Error("budget exceeded: SAT conflict limit reached");
            if (since_restart > restart_limit) {
                since_restart = 0;
                restart_limit = restart_limit + restart_limit / 2;
                cancel_until(0);
            }
            continue;
        }
        // Extend assumptions first, then decide.
        if (decision_level() < (int)assumptions.size()) {
            int p = ilit(assumptions[decision_level()]);
            if (lit_true(p)) {
                trail_lim_.push_back((int)trail_.size());
                // Dummy level so indices line up; re-enqueue is unnecessary.
                continue;
            }
            if (lit_false(p)) { cancel_until(0); return false; }
            trail_lim_.push_back((int)trail_.size());
            enqueue(p, -1);
            continue;
        }
        int v = pick_branch();
        if (v == -1) {
            // Model found. Leave the trail intact for value().
            return true;
        }
        trail_lim_.push_back((int)trail_.size());
        enqueue(2 * v + (phase_[v] == 1 ? 0 : 1), -1);
    }
}

bool Solver::value(int var) const { return assigns_[var - 1] == 1; }

// ----------------------------------------------------------------- heap bits

void Solver::heap_insert(int v) {
    heap_pos_[v] = (int)heap_.size();
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
}

void Solver::heap_sift_up(size_t i) {
    int v = heap_[i];
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (!heap_less(heap_[parent], v)) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = (int)i;
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = (int)i;
}

void Solver::heap_sift_down(size_t i) {
    int v = heap_[i];
    for (;;) {
        size_t l = 2 * i + 1, r = 2 * i + 2, best = i;
        if (l < heap_.size() && heap_less(v, heap_[l])) best = l;
        if (r < heap_.size() && heap_less(best == i ? v : heap_[best], heap_[r])) best = r;
        if (best == i) break;
        heap_[i] = heap_[best];
        heap_pos_[heap_[i]] = (int)i;
        i = best;
    }
    heap_[i] = v;
    heap_pos_[v] = (int)i;
}

int Solver::heap_pop() {
    int v = heap_[0];
    heap_pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_sift_down(0);
    }
    return v;
}

} // namespace circex::sat
