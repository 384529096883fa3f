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

#include "kpd/ground.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kpd {

using K = GroundFormula::Kind;

bool GroundFormula::isModalFree() const {
  if (kind == K::Modal) return false;
  return std::all_of(children.begin(), children.end(),
                     [](const GFormula& c) { return c->isModalFree(); });
}

namespace gf {

namespace {

GFormula make(K kind, std::vector<GFormula> children = {}, AtomId a = 0) {
  auto f = std::make_shared<GroundFormula>();
  f->kind = kind;
  f->atom = a;
  f->children = std::move(children);
  return f;
}

GFormula junction(K kind, std::vector<GFormula> parts) {
  const K unit = kind == K::And ? K::True : K::False;
  const K zero = kind == K::And ? K::False : K::True;
  std::vector<GFormula> flat;
  for (GFormula& p : parts) {
    if (p->kind == unit) continue;
    if (p->kind == zero) return zero == K::True ? top() : bottom();
    if (p->kind == kind) {
      flat.insert(flat.end(), p->children.begin(), p->children.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return unit == K::True ? top() : bottom();
  if (flat.size() == 1) return flat.front();
  return make(kind, std::move(flat));
}

}  // namespace

GFormula atom(AtomId a) { return make(K::Atom, {}, a); }

GFormula top() {
  static const GFormula t = make(K::True);
  return t;
}

GFormula bottom() {
  static const GFormula b = make(K::False);
  return b;
}

GFormula neg(GFormula f) {
  if (f->kind == K::True) return bottom();
  if (f->kind == K::False) return top();
  return make(K::Not, {std::move(f)});
}

GFormula conj(std::vector<GFormula> parts) { return junction(K::And, std::move(parts)); }
GFormula disj(std::vector<GFormula> parts) { return junction(K::Or, std::move(parts)); }

GFormula modal(GFormula inner) {
  if (!inner->isModalFree()) {
    throw NestingError("modal operator K may not occur inside another K", {});
  }
  return make(K::Modal, {std::move(inner)});
}

bool same(const GroundFormula& a, const GroundFormula& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (a.kind == K::Atom && a.atom != b.atom) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

namespace {

void printTo(std::ostream& os, const GroundFormula& f, const Vocabulary& v) {
  switch (f.kind) {
    case K::True:
      os << "true";
      return;
    case K::False:
      os << "false";
      return;
    case K::Atom:
      os << v.name(f.atom);
      return;
    case K::Not:
    case K::Modal:
      os << (f.kind == K::Not ? "~" : "K ");
      printTo(os, *f.children[0], v);
      return;
    case K::And:
    case K::Or:
      os << '(';
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) os << (f.kind == K::And ? " & " : " | ");
        printTo(os, *f.children[i], v);
      }
      os << ')';
      return;
  }
}

}  // namespace

std::string print(const GroundFormula& f, const Vocabulary& vocab) {
  std::ostringstream os;
  printTo(os, f, vocab);
  return os.str();
}

}  // namespace gf

void GroundDefinition::index(std::size_t vocabSize) {
  byHead_.assign(vocabSize, {});
  learn_.clear();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].isModalHead()) {
      learn_.push_back(i);
    } else {
      byHead_.at(rules[i].headAtom()).push_back(i);
    }
  }
}

bool GroundTheory::isModalFree() const {
  if (!constraint->isModalFree()) return false;
  return std::all_of(definition.rules.begin(), definition.rules.end(),
                     [](const GroundRule& r) {
                       return !r.isModalHead() && r.body->isModalFree();
                     });
}

void classifyAtoms(const syntax::Definition& def, Vocabulary& vocab) {
  const std::set<std::string> defined = def.definedPredicates();
  for (std::size_t a = 0; a < vocab.size(); ++a) {
    auto id = static_cast<AtomId>(a);
    vocab.setDefined(id, defined.contains(vocab.atom(id).predicate));
  }
}

namespace {

/// Thrown when a successor term leaves its numeric range.
struct OutOfRange {};

class Grounder {
 public:
  explicit Grounder(const syntax::Theory& th) : th_(th) {}

  GroundTheory run() {
    auto vocab = std::make_shared<Vocabulary>();
    for (const syntax::PredicateDecl& p : th_.predicates) {
      std::vector<std::string> args;
      addInstances(*vocab, p, args);
    }
    classifyAtoms(th_.definition, *vocab);
    vocab_ = vocab.get();

    GroundTheory out;
    out.domains = th_.domains;
    out.predicates = th_.predicates;
    for (std::size_t i = 0; i < th_.definition.rules.size(); ++i) {
      const syntax::Rule& r = th_.definition.rules[i];
      Binding b;
      groundRule(r, i, 0, b, out.definition.rules);
    }
    out.definition.defined = vocab->definedAtoms();
    out.definition.index(vocab->size());
    try {
      Binding b;
      out.constraint = formula(*th_.constraint, b);
    } catch (const OutOfRange&) {
      throw GroundError("successor term out of range in a constraint");
    }
    out.vocab = std::move(vocab);
    return out;
  }

 private:
  struct Bound {
    std::string value;
    std::string sort;
  };
  using Binding = std::map<std::string, Bound>;

  void addInstances(Vocabulary& vocab, const syntax::PredicateDecl& p,
                    std::vector<std::string>& args) {
    if (args.size() == p.sorts.size()) {
      vocab.add(GroundAtom{p.name, args});
      return;
    }
    for (const std::string& c : th_.domain(p.sorts[args.size()])->constants) {
      args.push_back(c);
      addInstances(vocab, p, args);
      args.pop_back();
    }
  }

  void groundRule(const syntax::Rule& r, std::size_t source, std::size_t k, Binding& b,
                  std::vector<GroundRule>& out) {
    if (k == r.vars.size()) {
      try {
        GroundRule g;
        g.head = formula(*r.head, b);
        g.body = formula(*r.body, b);
        g.source = source;
        out.push_back(std::move(g));
      } catch (const OutOfRange&) {
        // Instance mentions a successor past the end of its range; dropped.
      }
      return;
    }
    const auto& [var, sort] = r.vars[k];
    for (const std::string& c : th_.domain(sort)->constants) {
      b[var] = Bound{c, sort};
      groundRule(r, source, k + 1, b, out);
    }
    b.erase(var);
  }

  std::string term(const syntax::Term& t, const Binding& b) {
    if (!t.isVariable()) return t.name;
    auto it = b.find(t.name);
    if (it == b.end()) throw GroundError("unbounded variable " + t.name);
    if (t.offset == 0) return it->second.value;
    const syntax::Domain* d = th_.domain(it->second.sort);
    std::string v = std::to_string(std::stol(it->second.value) + t.offset);
    if (!d->contains(v)) throw OutOfRange{};
    return v;
  }

  GFormula formula(const syntax::Formula& f, Binding& b) {
    using SK = syntax::Formula::Kind;
    switch (f.kind) {
      case SK::True:
        return gf::top();
      case SK::False:
        return gf::bottom();
      case SK::Atom: {
        GroundAtom a{f.name, {}};
        for (const syntax::Term& t : f.terms) a.args.push_back(term(t, b));
        auto id = vocab_->find(a.str());
        if (!id) throw GroundError("atom outside the vocabulary: " + a.str());
        return gf::atom(*id);
      }
      case SK::Equal:
        return term(f.terms[0], b) == term(f.terms[1], b) ? gf::top() : gf::bottom();
      case SK::Not:
        return gf::neg(formula(*f.children[0], b));
      case SK::Modal:
        return gf::modal(formula(*f.children[0], b));
      case SK::And:
      case SK::Or: {
        std::vector<GFormula> parts;
        for (const syntax::FormulaPtr& c : f.children) parts.push_back(formula(*c, b));
        return f.kind == SK::And ? gf::conj(std::move(parts)) : gf::disj(std::move(parts));
      }
      case SK::Forall:
      case SK::Exists: {
        const syntax::Domain* d = th_.domain(f.sort);
        if (!d) throw GroundError("quantifier over unresolved sort for " + f.name);
        std::optional<Bound> shadowed;
        if (auto it = b.find(f.name); it != b.end()) shadowed = it->second;
        std::vector<GFormula> parts;
        for (const std::string& c : d->constants) {
          b[f.name] = Bound{c, f.sort};
          parts.push_back(formula(*f.children[0], b));
        }
        if (shadowed) {
          b[f.name] = *shadowed;
        } else {
          b.erase(f.name);
        }
        return f.kind == SK::Forall ? gf::conj(std::move(parts)) : gf::disj(std::move(parts));
      }
    }
    return gf::top();
  }

  const syntax::Theory& th_;
  const Vocabulary* vocab_ = nullptr;
};

syntax::FormulaPtr toSyntax(const GroundFormula& f, const Vocabulary& v) {
  switch (f.kind) {
    case K::True:
      return syntax::top();
    case K::False:
      return syntax::bottom();
    case K::Atom: {
      const GroundAtom& a = v.atom(f.atom);
      std::vector<syntax::Term> args;
      for (const std::string& c : a.args) args.push_back(syntax::Term::constant(c));
      return syntax::atom(a.predicate, std::move(args));
    }
    case K::Not:
      return syntax::neg(toSyntax(*f.children[0], v));
    case K::Modal:
      return syntax::modal(toSyntax(*f.children[0], v));
    case K::And:
    case K::Or: {
      syntax::FormulaPtr acc = toSyntax(*f.children[0], v);
      for (std::size_t i = 1; i < f.children.size(); ++i) {
        syntax::FormulaPtr next = toSyntax(*f.children[i], v);
        acc = f.kind == K::And ? syntax::conj(acc, next) : syntax::disj(acc, next);
      }
      return acc;
    }
  }
  return syntax::top();
}

}  // namespace

GroundTheory ground(const syntax::Theory& theory) { return Grounder(theory).run(); }

syntax::Theory toSyntax(const GroundTheory& g) {
  syntax::Theory th;
  th.domains = g.domains;
  th.predicates = g.predicates;
  for (const GroundRule& r : g.definition.rules) {
    syntax::Rule sr;
    sr.head = toSyntax(*r.head, *g.vocab);
    sr.body = toSyntax(*r.body, *g.vocab);
    th.definition.rules.push_back(std::move(sr));
  }
  th.constraint = toSyntax(*g.constraint, *g.vocab);
  return th;
}

std::string print(const GroundTheory& g) { return syntax::print(toSyntax(g)); }

GroundTheory loadTheory(std::string_view text) { return ground(syntax::parse(text)); }

}  // namespace kpd
