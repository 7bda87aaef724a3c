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

#include "circex/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace circex {

namespace {

const char* kKeywords[] = {"top", "bot", "not", "exists", "inv", "prefer"};

bool is_keyword(const std::string& s) {
    for (const char* k : kKeywords)
        if (s == k) return true;
    return false;
}

bool name_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool name_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '\'' || c == '@';
}

enum class Tok {
    Name,
    KwTop,
    KwBot,
    KwNot,
    KwExists,
    KwInv,
    Subsume,   // <=
    Defeasible, // <=n
    Define,    // ==
    Less,      // <
    Amp,
    Pipe,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    End
};

struct Token {
    Tok kind;
    std::string text;
    int col;
};

std::vector<Token> lex_line(const std::string& s, int line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        int col = (int)i + 1;
        if (c == '#') break;
        if (name_start(c)) {
            size_t j = i;
            while (j < s.size() && name_char(s[j])) ++j;
            std::string w = s.substr(i, j - i);
            Tok k = Tok::Name;
            if (w == "top") k = Tok::KwTop;
            else if (w == "bot") k = Tok::KwBot;
            else if (w == "not") k = Tok::KwNot;
            else if (w == "exists") k = Tok::KwExists;
            else if (w == "inv") k = Tok::KwInv;
            out.push_back({k, w, col});
            i = j;
            continue;
        }
        if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
            // "<=n" only when the n is not the start of a longer name
            if (i + 2 < s.size() && s[i + 2] == 'n' &&
                (i + 3 >= s.size() || !name_char(s[i + 3]))) {
                out.push_back({Tok::Defeasible, "<=n", col});
                i += 3;
            } else {
                out.push_back({Tok::Subsume, "<=", col});
                i += 2;
            }
            continue;
        }
        if (c == '=' && i + 1 < s.size() && s[i + 1] == '=') {
            out.push_back({Tok::Define, "==", col});
            i += 2;
            continue;
        }
        Tok k;
        switch (c) {
            case '<': k = Tok::Less; break;
            case '&': k = Tok::Amp; break;
            case '|': k = Tok::Pipe; break;
            case '.': k = Tok::Dot; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case ',': k = Tok::Comma; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), col});
        ++i;
    }
    out.push_back({Tok::End, "", (int)s.size() + 1});
    return out;
}

// Recursive-descent concept parser over one line's tokens.
struct ConceptParser {
    const std::vector<Token>& toks;
    size_t pos = 0;
    int line;
    bool allow_or;
    const std::set<std::string>* roles; // known role names, may be null

    const Token& cur() const { return toks[pos]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line, cur().col, msg + (cur().kind == Tok::End
                                                     ? " (at end of line)"
                                                     : " near '" + cur().text + "'"));
    }
    Token expect(Tok k, const std::string& what) {
        if (cur().kind != k) fail("expected " + what);
        return toks[pos++];
    }

    Role parse_role() {
        if (cur().kind == Tok::KwInv) {
            ++pos;
            expect(Tok::LParen, "'('");
            Token n = expect(Tok::Name, "role name");
            expect(Tok::RParen, "')'");
            return Role(n.text, true);
        }
        Token n = expect(Tok::Name, "role name");
        return Role(n.text, false);
    }

    ConceptPtr parse() {
        ConceptPtr c = parse_disj();
        return c;
    }

    ConceptPtr parse_disj() {
        std::vector<ConceptPtr> parts{parse_conj()};
        while (cur().kind == Tok::Pipe) {
            if (!allow_or) fail("disjunction is only allowed in queries");
            ++pos;
            parts.push_back(parse_conj());
        }
        return parts.size() == 1 ? parts[0] : Concept::disj(std::move(parts));
    }

    ConceptPtr parse_conj() {
        std::vector<ConceptPtr> parts{parse_unary()};
        while (cur().kind == Tok::Amp) {
            ++pos;
            parts.push_back(parse_unary());
        }
        return parts.size() == 1 ? parts[0] : Concept::conj(std::move(parts));
    }

    ConceptPtr parse_unary() {
        switch (cur().kind) {
            case Tok::KwTop:
                ++pos;
                return Concept::top();
            case Tok::KwBot:
                ++pos;
                return Concept::bot();
            case Tok::KwNot: {
                ++pos;
                return Concept::negation(parse_unary());
            }
            case Tok::KwExists: {
                ++pos;
                Role r = parse_role();
                ConceptPtr filler;
                if (cur().kind == Tok::Dot) {
                    ++pos;
                    filler = parse_unary();
                }
                return Concept::exists(r, filler);
            }
            case Tok::LBrace: {
                ++pos;
                Token n = expect(Tok::Name, "individual name");
                expect(Tok::RBrace, "'}'");
                return Concept::nominal(n.text);
            }
            case Tok::LParen: {
                ++pos;
                ConceptPtr c = parse_disj();
                expect(Tok::RParen, "')'");
                return c;
            }
            case Tok::Name: {
                Token n = toks[pos++];
                return Concept::make_name(n.text);
            }
            default:
                fail("expected a concept");
        }
    }
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

} // namespace

ParsedKB parse_kb(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string l;
        while (std::getline(is, l)) lines.push_back(l);
    }

    ParsedKB out;
    DKB& kb = out.kb;
    CircConfig& cfg = out.cfg;
    bool semantics_given = false, priority_given = false;
    std::set<std::string> roles; // role names by declaration or usage
    std::vector<std::pair<int, std::pair<std::string, std::string>>> prefer_lines;

    // First pass: directives and role usage, so `R <= S` between known role
    // names can be read as a role inclusion in the second pass.
    std::vector<std::vector<Token>> toks(lines.size());
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string stripped = trim(lines[ln].substr(0, lines[ln].find('#')));
        if (stripped.empty()) continue;
        size_t colon = stripped.find(':');
        size_t sp = stripped.find_first_of(" \t");
        if (colon != std::string::npos && (sp == std::string::npos || colon < sp)) {
            std::string head = trim(stripped.substr(0, colon));
            std::string rest = trim(stripped.substr(colon + 1));
            int line = (int)ln + 1;
            if (head == "semantics") {
                if (rest == "var") cfg.mode = CircMode::Var;
                else if (rest == "fix") cfg.mode = CircMode::Fix;
                else if (rest == "custom") cfg.mode = CircMode::Custom;
                else throw ParseError(line, 1, "semantics must be var, fix or custom");
                semantics_given = true;
            } else if (head == "priority") {
                if (rest == "specificity") kb.priority.mode = PriorityMode::Specificity;
                else if (rest == "explicit") kb.priority.mode = PriorityMode::Explicit;
                else if (rest == "empty") kb.priority.mode = PriorityMode::Empty;
                else throw ParseError(line, 1, "priority must be specificity, explicit or empty");
                priority_given = true;
            } else if (head == "fixed") {
                for (const auto& w : split_ws(rest)) cfg.fixed_concepts.insert(w);
            } else if (head == "fixed-roles") {
                for (const auto& w : split_ws(rest)) {
                    cfg.fixed_roles.insert(w);
                    roles.insert(w);
                }
            } else if (head == "bounded-only") {
                if (rest == "true") cfg.bounded_only = true;
                else if (rest == "false") cfg.bounded_only = false;
                else throw ParseError(line, 1, "bounded-only must be true or false");
            } else if (head == "roles") {
                for (const auto& w : split_ws(rest)) roles.insert(w);
            } else {
                throw ParseError(line, 1, "unknown directive '" + head + "'");
            }
            continue;
        }
        toks[ln] = lex_line(stripped, (int)ln + 1);
        const auto& tv = toks[ln];
        for (size_t i = 0; i + 1 < tv.size(); ++i) {
            if (tv[i].kind == Tok::KwExists && tv[i + 1].kind == Tok::Name)
                roles.insert(tv[i + 1].text);
            if (tv[i].kind == Tok::KwInv && i + 2 < tv.size() && tv[i + 2].kind == Tok::Name)
                roles.insert(tv[i + 2].text);
        }
        // R(a,b) usage
        if (tv.size() >= 7 && tv[0].kind == Tok::Name && tv[1].kind == Tok::LParen &&
            tv[2].kind == Tok::Name && tv[3].kind == Tok::Comma)
            roles.insert(tv[0].text);
    }

    kb.declared_roles = roles;

    int auto_label = 0;
    std::set<std::string> used_labels;
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        if (toks[ln].empty() || toks[ln][0].kind == Tok::End) continue;
        const auto& tv = toks[ln];
        int line = (int)ln + 1;

        if (tv[0].kind == Tok::Name && tv[0].text == "prefer") {
            // prefer d1 < d2
            if (tv.size() < 5 || tv[1].kind != Tok::Name || tv[2].kind != Tok::Less ||
                tv[3].kind != Tok::Name || tv[4].kind != Tok::End)
                throw ParseError(line, tv[0].col, "expected 'prefer LABEL < LABEL'");
            prefer_lines.push_back({line, {tv[1].text, tv[3].text}});
            continue;
        }

        size_t pos = 0;
        std::string label;
        if (tv[pos].kind == Tok::LBracket) {
            if (tv.size() < 3 || tv[pos + 1].kind != Tok::Name || tv[pos + 2].kind != Tok::RBracket)
                throw ParseError(line, tv[pos].col, "expected '[label]'");
            label = tv[pos + 1].text;
            pos += 3;
        }

        // Assertion forms: NAME(NAME) or NAME(NAME, NAME), nothing else after.
        if (tv.size() - pos >= 5 && tv[pos].kind == Tok::Name && tv[pos + 1].kind == Tok::LParen &&
            tv[pos + 2].kind == Tok::Name) {
            if (tv[pos + 3].kind == Tok::RParen && tv[pos + 4].kind == Tok::End) {
                if (!label.empty())
                    throw ParseError(line, tv[0].col, "labels are only allowed on defeasible axioms");
                if (roles.count(tv[pos].text))
                    throw ParseError(line, tv[pos].col,
                                     "'" + tv[pos].text + "' is a role; role assertions need two individuals");
                kb.strong.push_back(
                    Axiom::concept_assertion(Concept::make_name(tv[pos].text), tv[pos + 2].text));
                continue;
            }
            if (tv.size() - pos >= 7 && tv[pos + 3].kind == Tok::Comma &&
                tv[pos + 4].kind == Tok::Name && tv[pos + 5].kind == Tok::RParen &&
                tv[pos + 6].kind == Tok::End) {
                if (!label.empty())
                    throw ParseError(line, tv[0].col, "labels are only allowed on defeasible axioms");
                kb.strong.push_back(
                    Axiom::role_assertion(Role(tv[pos].text), tv[pos + 2].text, tv[pos + 4].text));
                continue;
            }
        }

        // Find the connective at depth 0.
        int connective = -1; // index in tv
        Tok conn = Tok::End;
        for (size_t i = pos; i < tv.size(); ++i) {
            if (tv[i].kind == Tok::Subsume || tv[i].kind == Tok::Defeasible ||
                tv[i].kind == Tok::Define) {
                connective = (int)i;
                conn = tv[i].kind;
                break;
            }
        }
        if (connective < 0)
            throw ParseError(line, tv[pos].col, "expected an axiom ('<=', '<=n', '==' or assertion)");

        std::vector<Token> left(tv.begin() + pos, tv.begin() + connective);
        left.push_back({Tok::End, "", tv[connective].col});
        std::vector<Token> right(tv.begin() + connective + 1, tv.end());

        if (conn == Tok::Define) {
            if (!label.empty())
                throw ParseError(line, tv[0].col, "labels are only allowed on defeasible axioms");
            if (left.size() != 2 || left[0].kind != Tok::Name)
                throw ParseError(line, tv[pos].col, "definition left side must be a concept name");
            ConceptParser cp{right, 0, line, false, &roles};
            ConceptPtr body = cp.parse();
            if (cp.cur().kind != Tok::End) cp.fail("unexpected input after definition");
            kb.strong.push_back(Axiom::definition(Concept::make_name(left[0].text), body));
            continue;
        }

        // Role inclusion: both sides are role expressions and at least one is
        // inv(...) or both bare names known as roles.
        bool lhs_role_expr =
            (left.size() == 2 && left[0].kind == Tok::Name && roles.count(left[0].text)) ||
            (left.size() == 5 && left[0].kind == Tok::KwInv);
        bool rhs_role_expr =
            (right.size() == 2 && right[0].kind == Tok::Name && roles.count(right[0].text)) ||
            (right.size() == 5 && right[0].kind == Tok::KwInv);
        if (conn == Tok::Subsume && lhs_role_expr && rhs_role_expr) {
            if (!label.empty())
                throw ParseError(line, tv[0].col, "labels are only allowed on defeasible axioms");
            auto parse_side = [&](const std::vector<Token>& side) {
                ConceptParser cp{side, 0, line, false, &roles};
                return cp.parse_role();
            };
            kb.strong.push_back(Axiom::role_inclusion(parse_side(left), parse_side(right)));
            continue;
        }

        ConceptParser lp{left, 0, line, false, &roles};
        ConceptPtr lhs = lp.parse();
        if (lp.cur().kind != Tok::End) lp.fail("unexpected input before the connective");
        ConceptParser rp{right, 0, line, false, &roles};
        ConceptPtr rhs = rp.parse();
        if (rp.cur().kind != Tok::End) rp.fail("unexpected input after the axiom");

        if (conn == Tok::Defeasible) {
            if (label.empty()) {
                do {
                    label = "d" + std::to_string(++auto_label);
                } while (used_labels.count(label));
            }
            if (used_labels.count(label))
                throw ParseError(line, tv[0].col, "duplicate defeasible label '" + label + "'");
            used_labels.insert(label);
            kb.defeasible.push_back(Axiom::defeasible(lhs, rhs, label));
        } else {
            if (!label.empty())
                throw ParseError(line, tv[0].col, "labels are only allowed on defeasible axioms");
            kb.strong.push_back(Axiom::inclusion(lhs, rhs));
        }
    }

    if (!prefer_lines.empty()) {
        if (priority_given && kb.priority.mode != PriorityMode::Explicit)
            throw ParseError(prefer_lines[0].first, 1,
                             "prefer lines require 'priority: explicit'");
        kb.priority.mode = PriorityMode::Explicit;
        for (const auto& [line, edge] : prefer_lines) {
            if (!kb.find_defeasible(edge.first))
                throw ParseError(line, 1, "unknown defeasible label '" + edge.first + "'");
            if (!kb.find_defeasible(edge.second))
                throw ParseError(line, 1, "unknown defeasible label '" + edge.second + "'");
            if (edge.first == edge.second)
                throw ParseError(line, 1, "a defeasible axiom cannot override itself");
            kb.priority.edges.insert(edge);
        }
        explicit_priority_closure(kb); // cycle check
    }
    if (!cfg.fixed_roles.empty() && !cfg.bounded_only)
        throw ParseError(1, 1, "fixed-roles requires 'bounded-only: true'");
    if (!semantics_given && !cfg.fixed_concepts.empty()) cfg.mode = CircMode::Custom;
    if (!cfg.fixed_concepts.empty() && cfg.mode != CircMode::Custom)
        throw ParseError(1, 1, "'fixed:' requires 'semantics: custom'");
    return out;
}

Query parse_query(const std::string& raw) {
    std::string line = trim(raw);
    auto starts = [&](const char* p) {
        size_t n = std::strlen(p);
        return line.size() >= n && line.compare(0, n, p) == 0;
    };
    if (line == "consistent?") return Query::consistent();
    if (starts("subsumed?")) {
        std::string rest = line.substr(9);
        auto tv = lex_line(rest, 1);
        int at = -1;
        for (size_t i = 0; i < tv.size(); ++i)
            if (tv[i].kind == Tok::Subsume) { at = (int)i; break; }
        if (at < 0) throw ParseError(1, 1, "expected 'subsumed? C <= D'");
        std::vector<Token> left(tv.begin(), tv.begin() + at);
        left.push_back({Tok::End, "", 0});
        std::vector<Token> right(tv.begin() + at + 1, tv.end());
        ConceptParser lp{left, 0, 1, true, nullptr};
        ConceptPtr c = lp.parse();
        if (lp.cur().kind != Tok::End) lp.fail("unexpected input");
        ConceptParser rp{right, 0, 1, true, nullptr};
        ConceptPtr d = rp.parse();
        if (rp.cur().kind != Tok::End) rp.fail("unexpected input");
        return Query::subsumption(c, d);
    }
    if (starts("satisfiable?")) {
        auto tv = lex_line(line.substr(12), 1);
        ConceptParser cp{tv, 0, 1, true, nullptr};
        ConceptPtr c = cp.parse();
        if (cp.cur().kind != Tok::End) cp.fail("unexpected input");
        return Query::satisfiable(c);
    }
    if (starts("instance?")) {
        std::string rest = trim(line.substr(9));
        // The individual is the trailing "(name)".
        if (rest.size() < 3 || rest.back() != ')')
            throw ParseError(1, 1, "expected 'instance? C(a)'");
        size_t open = rest.rfind('(');
        if (open == std::string::npos)
            throw ParseError(1, 1, "expected 'instance? C(a)'");
        std::string ind = trim(rest.substr(open + 1, rest.size() - open - 2));
        if (ind.empty() || !name_start(ind[0]) ||
            !std::all_of(ind.begin(), ind.end(), name_char))
            throw ParseError(1, (int)open + 1, "expected an individual name in '(...)'");
        auto tv = lex_line(rest.substr(0, open), 1);
        ConceptParser cp{tv, 0, 1, true, nullptr};
        ConceptPtr c = cp.parse();
        if (cp.cur().kind != Tok::End) cp.fail("unexpected input");
        return Query::instance(c, ind);
    }
    throw ParseError(1, 1,
                     "expected one of: consistent? / subsumed? C <= D / satisfiable? C / "
                     "instance? C(a)");
}

namespace {

int prec_level(const ConceptPtr& c) {
    switch (c->kind) {
        case ConceptKind::Or: return 0;
        case ConceptKind::And: return 1;
        default: return 2;
    }
}

std::string render_at(const ConceptPtr& c, int min_level) {
    std::string s;
    switch (c->kind) {
        case ConceptKind::Top: s = "top"; break;
        case ConceptKind::Bot: s = "bot"; break;
        case ConceptKind::Name: s = c->name; break;
        case ConceptKind::Nominal: s = "{" + c->name + "}"; break;
        case ConceptKind::Not: s = "not " + render_at(c->children[0], 2); break;
        case ConceptKind::And: {
            bool first = true;
            for (const auto& ch : c->children) {
                if (!first) s += " & ";
                s += render_at(ch, 2);
                first = false;
            }
            break;
        }
        case ConceptKind::Or: {
            bool first = true;
            for (const auto& ch : c->children) {
                if (!first) s += " | ";
                s += render_at(ch, 1);
                first = false;
            }
            break;
        }
        case ConceptKind::Exists: {
            s = "exists ";
            s += c->role.inverse ? "inv(" + c->role.name + ")" : c->role.name;
            if (!c->children.empty()) s += " . " + render_at(c->children[0], 2);
            break;
        }
    }
    if (prec_level(c) < min_level) return "(" + s + ")";
    return s;
}

std::string render_role(const Role& r) {
    return r.inverse ? "inv(" + r.name + ")" : r.name;
}

} // namespace

std::string render_concept(const ConceptPtr& c) { return render_at(c, 0); }

std::set<std::pair<std::string, std::string>> explicit_priority_closure(const DKB& kb) {
    std::vector<std::string> labels;
    for (const auto& d : kb.defeasible) labels.push_back(d.label);
    std::map<std::string, int> id;
    for (size_t i = 0; i < labels.size(); ++i) id[labels[i]] = (int)i;
    size_t n = labels.size();
    std::vector<bool> lt(n * n, false);
    if (!kb.priority.numeric.empty()) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                auto hi = kb.priority.numeric.find(labels[i]);
                auto hj = kb.priority.numeric.find(labels[j]);
                if (hi != kb.priority.numeric.end() && hj != kb.priority.numeric.end() &&
                    hi->second < hj->second)
                    lt[i * n + j] = true;
            }
    }
    for (const auto& e : kb.priority.edges) {
        auto a = id.find(e.first), b = id.find(e.second);
        if (a == id.end() || b == id.end())
            throw Error("priority edge refers to unknown label '" +
                        (a == id.end() ? e.first : e.second) + "'");
        lt[a->second * n + b->second] = true;
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (lt[i * n + k])
                for (size_t j = 0; j < n; ++j)
                    if (lt[k * n + j]) lt[i * n + j] = true;
    for (size_t i = 0; i < n; ++i)
        if (lt[i * n + i]) throw Error("priority cycle through '" + labels[i] + "'");
    std::set<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (lt[i * n + j]) out.insert({labels[i], labels[j]});
    return out;
}

std::string render_kb(const DKB& kb, const CircConfig& cfg) {
    std::ostringstream os;
    switch (cfg.mode) {
        case CircMode::Var: os << "semantics: var\n"; break;
        case CircMode::Fix: os << "semantics: fix\n"; break;
        case CircMode::Custom: os << "semantics: custom\n"; break;
    }
    switch (kb.priority.mode) {
        case PriorityMode::Specificity: os << "priority: specificity\n"; break;
        case PriorityMode::Explicit: os << "priority: explicit\n"; break;
        case PriorityMode::Empty: os << "priority: empty\n"; break;
    }
    if (!cfg.fixed_concepts.empty()) {
        os << "fixed:";
        for (const auto& a : cfg.fixed_concepts) os << " " << a;
        os << "\n";
    }
    if (cfg.bounded_only) os << "bounded-only: true\n";
    if (!cfg.fixed_roles.empty()) {
        os << "fixed-roles:";
        for (const auto& r : cfg.fixed_roles) os << " " << r;
        os << "\n";
    }
    Signature sig = signature_of(kb);
    if (!sig.role_names.empty()) {
        os << "roles:";
        for (const auto& r : sig.role_names) os << " " << r;
        os << "\n";
    }
    for (const auto& a : kb.strong) {
        switch (a.kind) {
            case AxiomKind::Inclusion:
                os << render_concept(a.lhs) << " <= " << render_concept(a.rhs) << "\n";
                break;
            case AxiomKind::Definition:
                os << render_concept(a.lhs) << " == " << render_concept(a.rhs) << "\n";
                break;
            case AxiomKind::RoleInclusion:
                os << render_role(a.lrole) << " <= " << render_role(a.rrole) << "\n";
                break;
            case AxiomKind::ConceptAssertion:
                os << render_concept(a.lhs) << "(" << a.ind << ")\n";
                break;
            case AxiomKind::RoleAssertion:
                // inv(R)(a, b) is stored as given but means R(b, a)
                if (a.lrole.inverse)
                    os << a.lrole.name << "(" << a.ind2 << ", " << a.ind << ")\n";
                else
                    os << a.lrole.name << "(" << a.ind << ", " << a.ind2 << ")\n";
                break;
            default:
                throw Error("defeasible axiom stored in the strong list");
        }
    }
    for (const auto& d : kb.defeasible)
        os << "[" << d.label << "] " << render_concept(d.lhs) << " <=n "
           << render_concept(d.rhs) << "\n";
    if (kb.priority.mode == PriorityMode::Explicit) {
        auto closure = explicit_priority_closure(kb);
        // covering edges only
        for (const auto& e : closure) {
            bool covered = false;
            for (const auto& mid : closure) {
                if (mid.first != e.first) continue;
                if (closure.count({mid.second, e.second})) { covered = true; break; }
            }
            if (!covered) os << "prefer " << e.first << " < " << e.second << "\n";
        }
    }
    return os.str();
}

std::string render_query(const Query& q) {
    switch (q.kind) {
        case QueryKind::Consistent: return "consistent?";
        case QueryKind::Satisfiable: return "satisfiable? " + render_concept(q.lhs);
        case QueryKind::Subsumption:
            return "subsumed? " + render_concept(q.lhs) + " <= " + render_concept(q.rhs);
        case QueryKind::Instance: {
            std::string c = render_concept(q.lhs);
            // keep the trailing "(a)" parse unambiguous
            return "instance? " + c + "(" + q.ind + ")";
        }
    }
    return "";
}

} // namespace circex
