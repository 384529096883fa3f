// Copyright 2026 The kpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kpd/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lexer.hpp"

namespace kpd::syntax {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

// ---------------------------------------------------------------------------
// AST helpers

std::string Term::str() const {
  if (offset == 0) return name;
  return name + "+" + std::to_string(offset);
}

bool Formula::isModalFree() const {
  if (kind == Kind::Modal) return false;
  return std::all_of(children.begin(), children.end(),
                     [](const FormulaPtr& c) { return c->isModalFree(); });
}

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr atom(std::string predicate, std::vector<Term> args, SourceLoc loc) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.name = std::move(predicate);
  f.terms = std::move(args);
  f.loc = loc;
  return make(std::move(f));
}

FormulaPtr equal(Term lhs, Term rhs, SourceLoc loc) {
  Formula f;
  f.kind = Formula::Kind::Equal;
  f.terms = {std::move(lhs), std::move(rhs)};
  f.loc = loc;
  return make(std::move(f));
}

FormulaPtr neg(FormulaPtr g, SourceLoc loc) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.children = {std::move(g)};
  f.loc = loc;
  return make(std::move(f));
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b, SourceLoc loc) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.children = {std::move(a), std::move(b)};
  f.loc = loc;
  return make(std::move(f));
}

FormulaPtr disj(FormulaPtr a, FormulaPtr b, SourceLoc loc) {
  Formula f;
  f.kind = Formula::Kind::Or;
  f.children = {std::move(a), std::move(b)};
  f.loc = loc;
  return make(std::move(f));
}

namespace {

FormulaPtr quantifier(Formula::Kind kind, std::string var, std::string sort,
                      FormulaPtr body, SourceLoc loc) {
  Formula f;
  f.kind = kind;
  f.name = std::move(var);
  f.sort = std::move(sort);
  f.children = {std::move(body)};
  f.loc = loc;
  return make(std::move(f));
}

}  // namespace

FormulaPtr forall(std::string var, std::string sort, FormulaPtr body, SourceLoc loc) {
  return quantifier(Formula::Kind::Forall, std::move(var), std::move(sort),
                    std::move(body), loc);
}

FormulaPtr exists(std::string var, std::string sort, FormulaPtr body, SourceLoc loc) {
  return quantifier(Formula::Kind::Exists, std::move(var), std::move(sort),
                    std::move(body), loc);
}

FormulaPtr modal(FormulaPtr inner, SourceLoc loc) {
  if (inner->containsModal()) {
    throw NestingError("modal operator K may not occur inside another K", loc);
  }
  Formula f;
  f.kind = Formula::Kind::Modal;
  f.children = {std::move(inner)};
  f.loc = loc;
  return make(std::move(f));
}

FormulaPtr top() {
  static const FormulaPtr t = [] {
    Formula f;
    f.kind = Formula::Kind::True;
    return make(std::move(f));
  }();
  return t;
}

FormulaPtr bottom() {
  static const FormulaPtr b = [] {
    Formula f;
    f.kind = Formula::Kind::False;
    return make(std::move(f));
  }();
  return b;
}

bool sameFormula(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.name != b.name || a.sort != b.sort ||
      a.terms != b.terms || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!sameFormula(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

std::set<std::string> Definition::definedPredicates() const {
  std::set<std::string> out;
  for (const Rule& r : rules) {
    if (!r.isModalHead()) out.insert(r.head->name);
  }
  return out;
}

bool Domain::contains(std::string_view c) const {
  if (numeric) {
    if (c.empty() || !std::all_of(c.begin(), c.end(), [](char ch) {
          return std::isdigit(static_cast<unsigned char>(ch));
        })) {
      return false;
    }
    if (c.size() > 1 && c[0] == '0') return false;
    long v = std::stol(std::string(c));
    return v >= lo && v <= hi;
  }
  return std::find(constants.begin(), constants.end(), c) != constants.end();
}

const Domain* Theory::domain(std::string_view name) const {
  for (const Domain& d : domains) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const PredicateDecl* Theory::predicate(std::string_view name) const {
  for (const PredicateDecl& p : predicates) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool sameTheory(const Theory& a, const Theory& b) {
  if (a.domains.size() != b.domains.size() ||
      a.predicates.size() != b.predicates.size() ||
      a.definition.rules.size() != b.definition.rules.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.domains.size(); ++i) {
    const Domain& x = a.domains[i];
    const Domain& y = b.domains[i];
    if (x.name != y.name || x.numeric != y.numeric || x.constants != y.constants ||
        (x.numeric && (x.lo != y.lo || x.hi != y.hi))) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.predicates.size(); ++i) {
    if (a.predicates[i].name != b.predicates[i].name ||
        a.predicates[i].sorts != b.predicates[i].sorts) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.definition.rules.size(); ++i) {
    const Rule& x = a.definition.rules[i];
    const Rule& y = b.definition.rules[i];
    if (!sameFormula(*x.head, *y.head) || !sameFormula(*x.body, *y.body)) return false;
  }
  return sameFormula(*a.constraint, *b.constraint);
}

// ---------------------------------------------------------------------------
// Printing. Binary connectives and quantifiers are always parenthesized so
// the output re-parses to the same tree.

namespace {

bool printsAtomically(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Not:
    case Formula::Kind::Modal:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return true;
    case Formula::Kind::Equal:
      return false;
  }
  return false;
}

void printTo(std::ostream& os, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
      os << "true";
      return;
    case Formula::Kind::False:
      os << "false";
      return;
    case Formula::Kind::Atom:
      os << f.name;
      if (!f.terms.empty()) {
        os << '(';
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
          if (i) os << ", ";
          os << f.terms[i].str();
        }
        os << ')';
      }
      return;
    case Formula::Kind::Equal:
      os << f.terms[0].str() << " = " << f.terms[1].str();
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Modal: {
      os << (f.kind == Formula::Kind::Not ? "~" : "K ");
      const Formula& c = *f.children[0];
      if (printsAtomically(c)) {
        printTo(os, c);
      } else {
        os << '(';
        printTo(os, c);
        os << ')';
      }
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
      os << '(';
      printTo(os, *f.children[0]);
      os << (f.kind == Formula::Kind::And ? " & " : " | ");
      printTo(os, *f.children[1]);
      os << ')';
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      os << '(' << (f.kind == Formula::Kind::Forall ? "forall " : "exists ") << f.name;
      if (!f.sort.empty()) os << ':' << f.sort;
      os << ' ';
      printTo(os, *f.children[0]);
      os << ')';
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::ostringstream os;
  printTo(os, f);
  return os.str();
}

std::string print(const Rule& r) {
  std::ostringstream os;
  printTo(os, *r.head);
  if (r.body->kind != Formula::Kind::True) {
    os << " <- ";
    printTo(os, *r.body);
  }
  os << '.';
  return os.str();
}

std::string print(const Theory& t) {
  std::ostringstream os;
  for (const Domain& d : t.domains) {
    os << "domain " << d.name << " = ";
    if (d.numeric) {
      os << d.lo << ".." << d.hi;
    } else {
      os << '{';
      for (std::size_t i = 0; i < d.constants.size(); ++i) {
        if (i) os << ", ";
        os << d.constants[i];
      }
      os << '}';
    }
    os << ".\n";
  }
  for (const PredicateDecl& p : t.predicates) {
    os << "pred " << p.name;
    if (!p.sorts.empty()) {
      os << '(';
      for (std::size_t i = 0; i < p.sorts.size(); ++i) {
        if (i) os << ", ";
        os << p.sorts[i];
      }
      os << ')';
    }
    os << ".\n";
  }
  os << "define {\n";
  for (const Rule& r : t.definition.rules) os << "  " << print(r) << '\n';
  os << "}\n";
  os << "constraint " << print(*t.constraint) << ".\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "domain", "pred", "define", "constraint", "forall", "exists", "K", "true", "false"};

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Theory theory() {
    Theory th;
    std::vector<FormulaPtr> constraints;
    while (!ts_.at(Tok::End)) {
      if (ts_.atKeyword("domain")) {
        th.domains.push_back(domainDecl());
      } else if (ts_.atKeyword("pred")) {
        th.predicates.push_back(predDecl());
      } else if (ts_.atKeyword("define")) {
        defineBlock(th.definition);
      } else {
        if (ts_.atKeyword("constraint")) ts_.next();
        constraints.push_back(formula());
        ts_.expect(Tok::Dot, "after constraint");
      }
    }
    if (constraints.size() == 1) {
      th.constraint = constraints.front();
    } else if (!constraints.empty()) {
      FormulaPtr c = constraints.front();
      for (std::size_t i = 1; i < constraints.size(); ++i) {
        c = conj(c, constraints[i], constraints[i]->loc);
      }
      th.constraint = c;
    }
    return th;
  }

  FormulaPtr standaloneFormula() {
    FormulaPtr f = formula();
    ts_.accept(Tok::Dot);
    if (!ts_.at(Tok::End)) ts_.fail("trailing input after formula");
    return f;
  }

 private:
  Domain domainDecl() {
    ts_.expectKeyword("domain");
    Domain d;
    d.name = ts_.expect(Tok::Ident, "as domain name").text;
    ts_.expect(Tok::Eq, "after domain name");
    if (ts_.accept(Tok::LBrace)) {
      if (!ts_.at(Tok::RBrace)) {
        do {
          Token c = ts_.peek();
          if (c.kind != Tok::Ident && c.kind != Tok::Int) ts_.fail("expected a constant");
          if (!detail::isConstantName(c.text)) {
            throw SyntaxError("constants must start with an uppercase letter or digit: '" +
                                  c.text + "'",
                              c.loc);
          }
          ts_.next();
          d.constants.push_back(c.text);
        } while (ts_.accept(Tok::Comma));
      }
      ts_.expect(Tok::RBrace, "closing domain");
    } else {
      Token lo = ts_.expect(Tok::Int, "as range start");
      ts_.expect(Tok::DotDot, "in range");
      Token hi = ts_.expect(Tok::Int, "as range end");
      d.numeric = true;
      d.lo = std::stoi(lo.text);
      d.hi = std::stoi(hi.text);
      if (d.hi < d.lo) throw SyntaxError("empty range", hi.loc);
      for (int v = d.lo; v <= d.hi; ++v) d.constants.push_back(std::to_string(v));
    }
    ts_.expect(Tok::Dot, "after domain declaration");
    return d;
  }

  PredicateDecl predDecl() {
    ts_.expectKeyword("pred");
    PredicateDecl p;
    Token name = ts_.expect(Tok::Ident, "as predicate name");
    if (kKeywords.contains(name.text)) {
      throw SyntaxError("reserved word used as predicate: " + name.text, name.loc);
    }
    p.name = name.text;
    if (ts_.accept(Tok::LParen)) {
      if (!ts_.at(Tok::RParen)) {
        do {
          p.sorts.push_back(ts_.expect(Tok::Ident, "as argument sort").text);
        } while (ts_.accept(Tok::Comma));
      }
      ts_.expect(Tok::RParen, "closing argument sorts");
    }
    ts_.expect(Tok::Dot, "after predicate declaration");
    return p;
  }

  void defineBlock(Definition& def) {
    ts_.expectKeyword("define");
    ts_.expect(Tok::LBrace, "opening definition");
    while (!ts_.at(Tok::RBrace)) {
      if (ts_.at(Tok::End)) ts_.fail("unterminated definition");
      def.rules.push_back(rule());
    }
    ts_.expect(Tok::RBrace, "closing definition");
  }

  Rule rule() {
    Rule r;
    r.loc = ts_.peek().loc;
    if (ts_.atKeyword("K")) {
      SourceLoc kl = ts_.next().loc;
      r.head = modal(unary(), kl);
    } else {
      Token name = ts_.peek();
      if (name.kind != Tok::Ident || kKeywords.contains(name.text)) {
        ts_.fail("expected an atom or a modal literal as rule head");
      }
      r.head = atomOrEquality();
      if (r.head->kind != Formula::Kind::Atom) {
        throw SyntaxError("rule head must be an atom", r.head->loc);
      }
    }
    r.body = ts_.accept(Tok::Arrow) ? formula() : top();
    ts_.expect(Tok::Dot, "after rule");
    return r;
  }

  FormulaPtr formula() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr l = implies();
    while (ts_.at(Tok::Iff)) {
      SourceLoc loc = ts_.next().loc;
      FormulaPtr r = implies();
      l = conj(disj(neg(l, loc), r, loc), disj(l, neg(r, loc), loc), loc);
    }
    return l;
  }

  FormulaPtr implies() {
    FormulaPtr l = disjunction();
    if (ts_.at(Tok::Implies)) {
      SourceLoc loc = ts_.next().loc;
      FormulaPtr r = implies();
      return disj(neg(l, loc), r, loc);
    }
    return l;
  }

  FormulaPtr disjunction() {
    FormulaPtr l = conjunction();
    while (ts_.at(Tok::Bar)) {
      SourceLoc loc = ts_.next().loc;
      l = disj(l, conjunction(), loc);
    }
    return l;
  }

  FormulaPtr conjunction() {
    FormulaPtr l = unary();
    while (ts_.at(Tok::Amp)) {
      SourceLoc loc = ts_.next().loc;
      l = conj(l, unary(), loc);
    }
    return l;
  }

  FormulaPtr unary() {
    if (ts_.at(Tok::Tilde)) {
      SourceLoc loc = ts_.next().loc;
      return neg(unary(), loc);
    }
    if (ts_.atKeyword("K")) {
      SourceLoc loc = ts_.next().loc;
      return modal(unary(), loc);
    }
    if (ts_.atKeyword("forall") || ts_.atKeyword("exists")) {
      Token q = ts_.next();
      Token var = ts_.expect(Tok::Ident, "as quantified variable");
      if (detail::isConstantName(var.text) || kKeywords.contains(var.text)) {
        throw SyntaxError("quantified variable must start with a lowercase letter: '" +
                              var.text + "'",
                          var.loc);
      }
      std::string sort;
      if (ts_.accept(Tok::Colon)) sort = ts_.expect(Tok::Ident, "as variable sort").text;
      FormulaPtr body = formula();
      return q.text == "forall" ? forall(var.text, sort, body, q.loc)
                                : exists(var.text, sort, body, q.loc);
    }
    return primary();
  }

  FormulaPtr primary() {
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      FormulaPtr f = formula();
      ts_.expect(Tok::RParen, "closing parenthesis");
      return f;
    }
    if (ts_.atKeyword("true")) {
      ts_.next();
      return top();
    }
    if (ts_.atKeyword("false")) {
      ts_.next();
      return bottom();
    }
    if (ts_.at(Tok::Ident) || ts_.at(Tok::Int)) return atomOrEquality();
    ts_.fail("expected a formula");
  }

  Term term() {
    Token t = ts_.peek();
    if (t.kind != Tok::Ident && t.kind != Tok::Int) ts_.fail("expected a term");
    if (t.kind == Tok::Ident && kKeywords.contains(t.text)) {
      ts_.fail("reserved word used as term");
    }
    ts_.next();
    Term out = detail::isConstantName(t.text) ? Term::constant(t.text)
                                              : Term::variable(t.text);
    if (ts_.at(Tok::Plus)) {
      SourceLoc loc = ts_.next().loc;
      Token k = ts_.expect(Tok::Int, "as successor offset");
      if (!out.isVariable()) {
        throw SyntaxError("successor offset only allowed on variables", loc);
      }
      out.offset = std::stoi(k.text);
    }
    return out;
  }

  FormulaPtr atomOrEquality() {
    Token head = ts_.peek();
    bool isTermStart = head.kind == Tok::Int ||
                       ts_.peek(1).kind == Tok::Eq || ts_.peek(1).kind == Tok::NotEq ||
                       ts_.peek(1).kind == Tok::Plus;
    if (isTermStart) {
      Term lhs = term();
      bool negated = false;
      if (ts_.accept(Tok::NotEq)) {
        negated = true;
      } else {
        ts_.expect(Tok::Eq, "in equality");
      }
      Term rhs = term();
      FormulaPtr eq = equal(std::move(lhs), std::move(rhs), head.loc);
      return negated ? neg(eq, head.loc) : eq;
    }
    if (kKeywords.contains(head.text)) ts_.fail("unexpected keyword");
    ts_.next();
    std::vector<Term> args;
    if (ts_.accept(Tok::LParen)) {
      if (!ts_.at(Tok::RParen)) {
        do {
          args.push_back(term());
        } while (ts_.accept(Tok::Comma));
      }
      ts_.expect(Tok::RParen, "closing atom arguments");
    }
    return atom(head.text, std::move(args), head.loc);
  }

  TokenStream ts_;
};

// ---------------------------------------------------------------------------
// Sort resolution

std::string locStr(SourceLoc loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
}

class Resolver {
 public:
  explicit Resolver(Theory& th) : th_(th) {}

  void run() {
    std::set<std::string> seen;
    for (const Domain& d : th_.domains) {
      if (!seen.insert(d.name).second) throw SortError("duplicate domain " + d.name);
    }
    seen.clear();
    for (const PredicateDecl& p : th_.predicates) {
      if (!seen.insert(p.name).second) throw SortError("duplicate predicate " + p.name);
      for (const std::string& s : p.sorts) {
        if (!th_.domain(s)) {
          throw SortError("predicate " + p.name + " uses undeclared sort " + s);
        }
      }
    }
    for (Rule& r : th_.definition.rules) resolveRule(r);
    th_.constraint = resolve(th_.constraint, {});
  }

  FormulaPtr resolveStandalone(const FormulaPtr& f) { return resolve(f, {}); }

 private:
  using Scope = std::map<std::string, std::string>;

  void collectFree(const Formula& f, std::set<std::string>& bound,
                   std::vector<std::string>& out) {
    auto note = [&](const Term& t) {
      if (t.isVariable() && !bound.contains(t.name) &&
          std::find(out.begin(), out.end(), t.name) == out.end()) {
        out.push_back(t.name);
      }
    };
    switch (f.kind) {
      case Formula::Kind::Atom:
      case Formula::Kind::Equal:
        for (const Term& t : f.terms) note(t);
        return;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        bool fresh = bound.insert(f.name).second;
        collectFree(*f.children[0], bound, out);
        if (fresh) bound.erase(f.name);
        return;
      }
      default:
        for (const FormulaPtr& c : f.children) collectFree(*c, bound, out);
    }
  }

  void inferSorts(const Formula& f, const std::string& var, std::set<std::string>& sorts) {
    switch (f.kind) {
      case Formula::Kind::Atom: {
        const PredicateDecl* p = th_.predicate(f.name);
        if (!p) return;
        for (std::size_t i = 0; i < f.terms.size() && i < p->sorts.size(); ++i) {
          if (f.terms[i].isVariable() && f.terms[i].name == var) sorts.insert(p->sorts[i]);
        }
        return;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        if (f.name == var) return;
        inferSorts(*f.children[0], var, sorts);
        return;
      default:
        for (const FormulaPtr& c : f.children) inferSorts(*c, var, sorts);
    }
  }

  std::string sortOf(const std::string& var, std::initializer_list<const Formula*> scopes,
                     SourceLoc loc) {
    std::set<std::string> sorts;
    for (const Formula* f : scopes) inferSorts(*f, var, sorts);
    if (sorts.size() > 1) {
      std::string all;
      for (const std::string& s : sorts) all += (all.empty() ? "" : ", ") + s;
      throw SortError(locStr(loc) + "variable " + var + " used with several sorts (" + all + ")");
    }
    if (sorts.empty()) {
      throw GroundError(locStr(loc) + "unbounded variable " + var +
                        ": no sort can be inferred; add a sort annotation");
    }
    return *sorts.begin();
  }

  void resolveRule(Rule& r) {
    std::set<std::string> bound;
    std::vector<std::string> vars;
    collectFree(*r.head, bound, vars);
    collectFree(*r.body, bound, vars);
    Scope scope;
    r.vars.clear();
    for (const std::string& v : vars) {
      scope[v] = sortOf(v, {r.head.get(), r.body.get()}, r.loc);
      r.vars.emplace_back(v, scope[v]);
    }
    r.head = resolve(r.head, scope);
    r.body = resolve(r.body, scope);
  }

  void checkTerm(const Term& t, const std::string& sort, const Scope& scope, SourceLoc loc) {
    const Domain* d = th_.domain(sort);
    if (t.isVariable()) {
      auto it = scope.find(t.name);
      if (it == scope.end()) {
        throw GroundError(locStr(loc) + "unbounded variable " + t.name);
      }
      if (it->second != sort) {
        throw SortError(locStr(loc) + "variable " + t.name + " has sort " + it->second +
                        " but sort " + sort + " is expected");
      }
      if (t.offset != 0 && !d->numeric) {
        throw SortError(locStr(loc) + "successor on non-numeric sort " + sort);
      }
      return;
    }
    if (!d->contains(t.name)) {
      throw SortError(locStr(loc) + "unknown constant " + t.name + " of sort " + sort);
    }
  }

  bool inAnyDomain(const std::string& c) const {
    return std::any_of(th_.domains.begin(), th_.domains.end(),
                       [&](const Domain& d) { return d.contains(c); });
  }

  FormulaPtr resolve(const FormulaPtr& fp, const Scope& scope) {
    const Formula& f = *fp;
    switch (f.kind) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return fp;
      case Formula::Kind::Atom: {
        const PredicateDecl* p = th_.predicate(f.name);
        if (!p) {
          if (!f.terms.empty()) {
            throw SortError(locStr(f.loc) + "undeclared predicate " + f.name);
          }
          th_.predicates.push_back(PredicateDecl{f.name, {}});
          return fp;
        }
        if (p->sorts.size() != f.terms.size()) {
          throw SortError(locStr(f.loc) + "predicate " + f.name + " expects " +
                          std::to_string(p->sorts.size()) + " argument(s), got " +
                          std::to_string(f.terms.size()));
        }
        std::vector<std::string> sorts = p->sorts;
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
          checkTerm(f.terms[i], sorts[i], scope, f.loc);
        }
        return fp;
      }
      case Formula::Kind::Equal: {
        const Term& a = f.terms[0];
        const Term& b = f.terms[1];
        auto sortOfTerm = [&](const Term& t) -> std::string {
          if (!t.isVariable()) return {};
          auto it = scope.find(t.name);
          if (it == scope.end()) throw GroundError(locStr(f.loc) + "unbounded variable " + t.name);
          return it->second;
        };
        std::string sa = sortOfTerm(a), sb = sortOfTerm(b);
        if (!sa.empty() && !sb.empty() && sa != sb) {
          throw SortError(locStr(f.loc) + "equality between sorts " + sa + " and " + sb);
        }
        if (!sa.empty() && !b.isVariable()) checkTerm(b, sa, scope, f.loc);
        if (!sb.empty() && !a.isVariable()) checkTerm(a, sb, scope, f.loc);
        if (sa.empty() && sb.empty()) {
          for (const Term& t : f.terms) {
            if (!inAnyDomain(t.name)) throw SortError(locStr(f.loc) + "unknown constant " + t.name);
          }
        }
        return fp;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        std::string sort = f.sort;
        if (sort.empty()) {
          sort = sortOf(f.name, {f.children[0].get()}, f.loc);
        } else if (!th_.domain(sort)) {
          throw SortError(locStr(f.loc) + "undeclared sort " + sort);
        }
        Scope inner = scope;
        inner[f.name] = sort;
        FormulaPtr body = resolve(f.children[0], inner);
        return quantifier(f.kind, f.name, sort, body, f.loc);
      }
      case Formula::Kind::Not:
      case Formula::Kind::Modal:
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        Formula copy = f;
        for (FormulaPtr& c : copy.children) c = resolve(c, scope);
        return make(std::move(copy));
      }
    }
    return fp;
  }

  Theory& th_;
};

}  // namespace

Theory parse(std::string_view text) {
  Parser p(text);
  Theory th = p.theory();
  Resolver(th).run();
  return th;
}

FormulaPtr parseFormula(std::string_view text, const Theory& context) {
  Parser p(text);
  FormulaPtr f = p.standaloneFormula();
  Theory copy = context;
  return Resolver(copy).resolveStandalone(f);
}

}  // namespace kpd::syntax
