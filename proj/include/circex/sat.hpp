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

#ifndef CIRCEX_SAT_HPP
#define CIRCEX_SAT_HPP

#include <cstdint>
#include <vector>

namespace circex::sat {

// DIMACS-style literals: +v / -v for variable v >= 1.
using Lit = int;

// Conflict-driven clause-learning solver: two-watched-literal propagation,
// first-UIP learning, activity-ordered decisions with phase saving, and
// geometric restarts. Clauses may be added between solve calls.
class Solver {
public:
    Solver();
    ~Solver();
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    int new_var();                              // 1-based
    int num_vars() const { return nvars_; }
    void add_clause(const std::vector<Lit>& lits);

    // True iff satisfiable under the assumptions. The empty-assumption state
    // stays usable after either outcome; once the instance is contradictory
    // on its own, every later call returns false immediately.
    bool solve(const std::vector<Lit>& assumptions = {});

    bool okay() const { return ok_; }           // no top-level contradiction
    bool value(int var) const;                  // valid after a true solve()
    uint64_t conflicts() const { return conflicts_; }

    // Abort with Error("budget exceeded ...") after this many conflicts in
    // one solve call (0 = unlimited).
    void set_conflict_limit(uint64_t limit) { conflict_limit_ = limit; }

private:
    // Internal literal encoding: variable v (0-based) and sign s -> 2v+s,
    // where s = 1 means negated.
    static int ilit(Lit l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
    static int ineg(int p) { return p ^ 1; }
    static int ivar(int p) { return p >> 1; }

    struct Clause {
        std::vector<int> lits;
        bool learnt = false;
        double activity = 0.0;
    };

    enum : uint8_t { kUndef = 2 };

    int nvars_ = 0;
    bool ok_ = true;
    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_; // per internal literal: clause ids
    std::vector<uint8_t> assigns_;          // per var: 0 false, 1 true, 2 undef
    std::vector<uint8_t> phase_;            // saved phase per var
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::vector<int> reason_;   // per var: clause id or -1
    std::vector<int> level_;    // per var
    size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int> heap_;     // binary max-heap of vars
    std::vector<int> heap_pos_; // var -> heap index or -1

    uint64_t conflicts_ = 0;
    uint64_t conflict_limit_ = 0;
    std::vector<uint8_t> seen_;

    bool lit_true(int p) const {
        uint8_t a = assigns_[ivar(p)];
        return a != kUndef && a == (uint8_t)((p & 1) ^ 1);
    }
    bool lit_false(int p) const {
        uint8_t a = assigns_[ivar(p)];
        return a != kUndef && a == (uint8_t)(p & 1);
    }
    bool lit_undef(int p) const { return assigns_[ivar(p)] == kUndef; }

    int decision_level() const { return (int)trail_lim_.size(); }
    void enqueue(int p, int reason);
    int propagate(); // returns conflicting clause id or -1
    void cancel_until(int lvl);
    int analyze(int confl, std::vector<int>& learnt); // returns backjump level
    int pick_branch();
    void bump_var(int v);
    void decay_activities();
    void attach(int ci);

    // heap helpers
    void heap_insert(int v);
    void heap_sift_up(size_t i);
    void heap_sift_down(size_t i);
    int heap_pop();
    bool heap_less(int a, int b) const { return activity_[a] < activity_[b]; }
};

} // namespace circex::sat

#endif
