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

#ifndef CIRCEX_AST_HPP
#define CIRCEX_AST_HPP

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circex {

// A role is a role name, possibly inverted. Inverses only occur where the
// surface grammar allows them (DL-lite style KBs); EL-family KBs never
// produce inverse = true.
struct Role {
    std::string name;
    bool inverse = false;

    Role() = default;
    Role(std::string n, bool inv = false) : name(std::move(n)), inverse(inv) {}

    Role inverted() const { return Role(name, !inverse); }

    bool operator==(const Role& o) const { return name == o.name && inverse == o.inverse; }
    bool operator!=(const Role& o) const { return !(*this == o); }
    bool operator<(const Role& o) const {
        if (name != o.name) return name < o.name;
        return inverse < o.inverse;
    }
};

enum class ConceptKind { Top, Bot, Name, Nominal, Not, And, Or, Exists };

class Concept;
using ConceptPtr = std::shared_ptr<const Concept>;

// Immutable concept tree. And/Or keep children in construction order;
// structural comparison is used for sets and caches.
class Concept {
public:
    ConceptKind kind;
    std::string name;                 // Name: concept name; Nominal: individual name
    Role role;                        // Exists
    std::vector<ConceptPtr> children; // Not: 1; And/Or: >= 2; Exists: 0 (unqualified) or 1

    static ConceptPtr top();
    static ConceptPtr bot();
    static ConceptPtr make_name(const std::string& n);
    static ConceptPtr nominal(const std::string& ind);
    static ConceptPtr negation(ConceptPtr c);
    static ConceptPtr conj(std::vector<ConceptPtr> cs);
    static ConceptPtr disj(std::vector<ConceptPtr> cs);
    static ConceptPtr exists(Role r, ConceptPtr filler = nullptr);

    bool is(ConceptKind k) const { return kind == k; }
    // Unqualified existential: no filler or filler == Top.
    bool unqualified_exists() const {
        return kind == ConceptKind::Exists &&
               (children.empty() || children[0]->kind == ConceptKind::Top);
    }
    const ConceptPtr filler() const { return children.empty() ? nullptr : children[0]; }

    int compare(const Concept& o) const;
    bool equals(const Concept& o) const { return compare(o) == 0; }
    size_t hash() const;

    // Quantifier depth: names/nominals/top/bot are 0, Exists adds 1.
    int depth() const;

private:
    Concept(ConceptKind k) : kind(k) {}
    friend struct ConceptFactory;
};

struct ConceptPtrLess {
    bool operator()(const ConceptPtr& a, const ConceptPtr& b) const {
        return a->compare(*b) < 0;
    }
};
using ConceptSet = std::set<ConceptPtr, ConceptPtrLess>;

bool concept_eq(const ConceptPtr& a, const ConceptPtr& b);

// Flatten nested And into a conjunct list (Top conjuncts dropped).
std::vector<ConceptPtr> flatten_conj(const ConceptPtr& c);

// All subconcepts of c, including c itself.
void collect_subconcepts(const ConceptPtr& c, ConceptSet& out);

enum class AxiomKind {
    Inclusion,        // lhs <= rhs (strong)
    Defeasible,       // lhs <=n rhs, labeled
    Definition,       // lhs (a Name) == rhs
    RoleInclusion,    // lrole <= rrole
    ConceptAssertion, // lhs(ind)
    RoleAssertion     // lrole(ind, ind2)
};

struct Axiom {
    AxiomKind kind;
    ConceptPtr lhs, rhs;
    Role lrole, rrole;
    std::string label;      // defeasible only
    std::string ind, ind2;

    static Axiom inclusion(ConceptPtr l, ConceptPtr r);
    static Axiom defeasible(ConceptPtr l, ConceptPtr r, std::string label = "");
    static Axiom definition(ConceptPtr name, ConceptPtr body);
    static Axiom role_inclusion(Role l, Role r);
    static Axiom concept_assertion(ConceptPtr c, std::string a);
    static Axiom role_assertion(Role r, std::string a, std::string b);
};

enum class PriorityMode { Specificity, Explicit, Empty };

// Priority relation over defeasible-axiom labels. An edge (d1, d2) means
// d1 overrides d2 (d1 has higher priority). The numeric map, when present,
// induces the edges {(d1,d2) | h(d1) < h(d2)}.
struct PriorityRel {
    PriorityMode mode = PriorityMode::Specificity;
    std::set<std::pair<std::string, std::string>> edges; // Explicit mode
    std::map<std::string, int> numeric;                  // optional, Explicit mode
};

struct DKB {
    std::vector<Axiom> strong;     // everything except Defeasible
    std::vector<Axiom> defeasible; // labels unique, file order
    PriorityRel priority;
    std::set<std::string> declared_roles;

    const Axiom* find_defeasible(const std::string& label) const;
};

enum class CircMode { Var, Fix, Custom };

struct CircConfig {
    CircMode mode = CircMode::Var;
    std::set<std::string> fixed_concepts; // Custom mode only
    std::set<std::string> fixed_roles;
    bool bounded_only = false;
};

enum class QueryKind { Subsumption, Instance, Satisfiable, Consistent };

struct Query {
    QueryKind kind = QueryKind::Consistent;
    ConceptPtr lhs, rhs; // Subsumption: lhs <= rhs; Instance/Satisfiable: lhs
    std::string ind;     // Instance

    static Query subsumption(ConceptPtr c, ConceptPtr d);
    static Query instance(ConceptPtr c, std::string a);
    static Query satisfiable(ConceptPtr c);
    static Query consistent();
};

// Symbol table shared by a DKB and the interpretations built for it.
// Names are sorted so ids are stable across runs.
struct Signature {
    std::vector<std::string> concept_names;
    std::vector<std::string> role_names;
    std::vector<std::string> individuals;
    std::map<std::string, int> concept_id;
    std::map<std::string, int> role_id;
    std::map<std::string, int> individual_id;

    void add_concept(const std::string& n);
    void add_role(const std::string& n);
    void add_individual(const std::string& n);
    void index(); // rebuild id maps (sorts names)

    int concept_of(const std::string& n) const;
    int role_of(const std::string& n) const;
    int individual_of(const std::string& n) const;
};

// Signature of kb plus any extra concepts (queries).
Signature signature_of(const DKB& kb, const std::vector<ConceptPtr>& extra = {},
                       const std::vector<std::string>& extra_inds = {});

// Subconcept closure of all axiom sides of kb plus extras.
ConceptSet closure_of(const DKB& kb, const std::vector<ConceptPtr>& extra = {});

void collect_symbols(const ConceptPtr& c, Signature& sig);

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace circex

#endif
