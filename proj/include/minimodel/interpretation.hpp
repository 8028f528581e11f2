#pragma once

// Finite interpretations and ALCIO concept evaluation.
//
// Domain elements are dense ids 0..n-1 named by strings; extensions are kept
// sparse (names with empty extensions are simply absent). The text format is
// line oriented, domain line first:
//
//   domain: e0 e1 e2
//   ind ann = e0
//   conc Movie: e2
//   role likes: e0 -> e2 e1 -> e2
//
// Comparison implements the minimal-model order: two interpretations are
// comparable only over the same domain and individual map, and are ordered by
// pointwise inclusion of every concept and role extension.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "minimodel/syntax.hpp"

namespace minimodel {

using Bits = boost::dynamic_bitset<>;

struct Interpretation {
  std::vector<std::string> domain;                        // names; id = index
  std::map<std::string, int> individuals;                 // individual -> id
  std::map<std::string, std::set<int>> concepts;          // non-empty extensions
  std::map<std::string, std::set<std::pair<int, int>>> roles;

  int size() const { return static_cast<int>(domain.size()); }

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

// Distinct individuals denote distinct elements. Operations that assume the
// unique name assumption check this explicitly rather than trusting callers.
inline bool una_holds(const Interpretation& i) {
  std::set<int> seen;
  for (const auto& [_, e] : i.individuals)
    if (!seen.insert(e).second) return false;
  return true;
}

namespace detail {

inline void check_element(int e, int n, const char* what) {
  if (e < 0 || e >= n)
    throw std::runtime_error(std::string(what) + " references element id out of range");
}

}  // namespace detail

inline void validate(const Interpretation& i) {
  if (i.domain.empty()) throw std::runtime_error("domain must be non-empty");
  std::set<std::string> names(i.domain.begin(), i.domain.end());
  if (names.size() != i.domain.size())
    throw std::runtime_error("duplicate element name in domain");
  int n = i.size();
  for (const auto& [ind, e] : i.individuals) detail::check_element(e, n, ind.c_str());
  for (const auto& [c, ext] : i.concepts)
    for (int e : ext) detail::check_element(e, n, c.c_str());
  for (const auto& [r, ext] : i.roles)
    for (auto [s, o] : ext) {
      detail::check_element(s, n, r.c_str());
      detail::check_element(o, n, r.c_str());
    }
}

// ---- evaluation -------------------------------------------------------------

// Evaluates concepts against one interpretation, memoizing per AST node and
// caching per-role successor lists. Cheap to construct; keep one around when
// evaluating many concepts against the same interpretation.
class Evaluator {
 public:
  explicit Evaluator(const Interpretation& i) : i_(i), n_(i.size()) {}

  Bits eval(const ConceptRef& c) {
    auto it = memo_.find(c.get());
    if (it != memo_.end()) return it->second;
    Bits result = compute(c);
    memo_.emplace(c.get(), result);
    return result;
  }

  const Interpretation& interpretation() const { return i_; }

 private:
  const Interpretation& i_;
  int n_;
  std::unordered_map<const Concept*, Bits> memo_;
  // successor bitsets per role, forward and backward
  std::map<std::string, std::pair<std::vector<Bits>, std::vector<Bits>>> adj_;

  const std::vector<Bits>& successors(const Role& r) {
    auto it = adj_.find(r.name);
    if (it == adj_.end()) {
      std::vector<Bits> fwd(n_, Bits(n_)), bwd(n_, Bits(n_));
      if (auto re = i_.roles.find(r.name); re != i_.roles.end())
        for (auto [s, o] : re->second) {
          fwd[s].set(o);
          bwd[o].set(s);
        }
      it = adj_.emplace(r.name, std::make_pair(std::move(fwd), std::move(bwd))).first;
    }
    return r.inverse ? it->second.second : it->second.first;
  }

  Bits compute(const ConceptRef& c) {
    Bits out(n_);
    switch (c->kind) {
      case ConceptKind::Top: out.set(); break;
      case ConceptKind::Bot: break;
      case ConceptKind::Name:
        if (auto e = i_.concepts.find(c->label); e != i_.concepts.end())
          for (int x : e->second) out.set(x);
        break;
      case ConceptKind::Nominal: {
        auto e = i_.individuals.find(c->label);
        if (e == i_.individuals.end())
          throw std::runtime_error("unknown individual: " + c->label);
        out.set(e->second);
        break;
      }
      case ConceptKind::Not: out = ~eval(c->kids[0]); break;
      case ConceptKind::And:
        out.set();
        for (const auto& k : c->kids) out &= eval(k);
        break;
      case ConceptKind::Or:
        for (const auto& k : c->kids) out |= eval(k);
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        Bits body = eval(c->kids[0]);
        const auto& succ = successors(c->role);
        bool ex = c->kind == ConceptKind::Exists;
        for (int d = 0; d < n_; ++d) {
          if (ex ? succ[d].intersects(body) : succ[d].is_subset_of(body)) out.set(d);
        }
        break;
      }
    }
    return out;
  }
};

inline std::set<int> eval_concept(const Interpretation& i, const ConceptRef& c) {
  Evaluator ev(i);
  Bits b = ev.eval(c);
  std::set<int> out;
  for (int d = 0; d < i.size(); ++d)
    if (b.test(d)) out.insert(d);
  return out;
}

// ---- modelhood --------------------------------------------------------------

// True iff every assertion holds and every inclusion's lhs extension is
// contained in its rhs extension. An assertion over an unmapped individual
// makes the answer false, with the reason reported through `why` when given;
// it is not an error.
inline bool is_model(const Interpretation& i, const KnowledgeBase& kb,
                     std::string* why = nullptr) {
  auto report = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (const auto& as : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&as)) {
      auto e = i.individuals.find(ca->individual);
      if (e == i.individuals.end())
        return report("individual '" + ca->individual + "' is not mapped");
      auto ext = i.concepts.find(ca->concept_name);
      if (ext == i.concepts.end() || !ext->second.count(e->second))
        return report("assertion " + ca->concept_name + "(" + ca->individual + ") violated");
    } else {
      const auto& ra = std::get<RoleAssertion>(as);
      auto s = i.individuals.find(ra.subject);
      auto o = i.individuals.find(ra.object);
      if (s == i.individuals.end())
        return report("individual '" + ra.subject + "' is not mapped");
      if (o == i.individuals.end())
        return report("individual '" + ra.object + "' is not mapped");
      auto ext = i.roles.find(ra.role);
      if (ext == i.roles.end() || !ext->second.count({s->second, o->second}))
        return report("assertion " + ra.role + "(" + ra.subject + ", " + ra.object +
                      ") violated");
    }
  }
  Evaluator ev(i);
  for (const auto& ax : kb.tbox) {
    Bits lhs = ev.eval(ax.lhs);
    Bits rhs = ev.eval(ax.rhs);
    if (!lhs.is_subset_of(rhs)) {
      if (why) {
        int d = static_cast<int>((lhs & ~rhs).find_first());
        *why = "axiom " + to_string(ax.lhs) + " [= " + to_string(ax.rhs) +
               " violated at element " + i.domain[d];
      }
      return false;
    }
  }
  return true;
}

// ---- comparison -------------------------------------------------------------

enum class Comparison : std::uint8_t { Equal, StrictlySmaller, StrictlyLarger, Incomparable };

inline std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "Equal";
    case Comparison::StrictlySmaller: return "StrictlySmaller";
    case Comparison::StrictlyLarger: return "StrictlyLarger";
    case Comparison::Incomparable: return "Incomparable";
  }
  return "?";
}

// Order of Definition 1 style: requires identical domain and individual map,
// then compares every predicate extension by inclusion.
inline Comparison compare(const Interpretation& a, const Interpretation& b) {
  if (a.domain != b.domain || a.individuals != b.individuals)
    return Comparison::Incomparable;
  bool a_le_b = true, b_le_a = true;

  auto fold = [&](const auto& exts_a, const auto& exts_b) {
    auto ita = exts_a.begin();
    auto itb = exts_b.begin();
    while (ita != exts_a.end() || itb != exts_b.end()) {
      if (itb == exts_b.end() || (ita != exts_a.end() && ita->first < itb->first)) {
        if (!ita->second.empty()) a_le_b = false;  // present only in a
        ++ita;
      } else if (ita == exts_a.end() || itb->first < ita->first) {
        if (!itb->second.empty()) b_le_a = false;  // present only in b
        ++itb;
      } else {
        const auto& ea = ita->second;
        const auto& eb = itb->second;
        if (!std::includes(eb.begin(), eb.end(), ea.begin(), ea.end())) a_le_b = false;
        if (!std::includes(ea.begin(), ea.end(), eb.begin(), eb.end())) b_le_a = false;
        ++ita;
        ++itb;
      }
    }
  };
  fold(a.concepts, b.concepts);
  fold(a.roles, b.roles);

  if (a_le_b && b_le_a) return Comparison::Equal;
  if (a_le_b) return Comparison::StrictlySmaller;
  if (b_le_a) return Comparison::StrictlyLarger;
  return Comparison::Incomparable;
}

// ---- text format ------------------------------------------------------------

inline std::string render_interpretation(const Interpretation& i) {
  std::ostringstream os;
  os << "domain:";
  for (const auto& e : i.domain) os << ' ' << e;
  os << '\n';
  for (const auto& [ind, e] : i.individuals) os << "ind " << ind << " = " << i.domain[e] << '\n';
  for (const auto& [c, ext] : i.concepts) {
    if (ext.empty()) continue;
    os << "conc " << c << ':';
    for (int e : ext) os << ' ' << i.domain[e];
    os << '\n';
  }
  for (const auto& [r, ext] : i.roles) {
    if (ext.empty()) continue;
    os << "role " << r << ':';
    for (auto [s, o] : ext) os << ' ' << i.domain[s] << " -> " << i.domain[o];
    os << '\n';
  }
  return os.str();
}

inline Interpretation parse_interpretation(std::string_view text) {
  Interpretation out;
  std::map<std::string, int> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(lineno, 1, msg); };
  auto lookup = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it == ids.end()) fail("unknown domain element '" + name + "'");
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "domain:") {
      if (!out.domain.empty()) fail("duplicate domain line");
      std::string e;
      while (ls >> e) {
        if (!ids.emplace(e, static_cast<int>(out.domain.size())).second)
          fail("duplicate element '" + e + "'");
        out.domain.push_back(e);
      }
      if (out.domain.empty()) fail("domain must be non-empty");
      continue;
    }
    if (out.domain.empty()) fail("the domain line must come first");
    if (head == "ind") {
      std::string ind, eq, e;
      if (!(ls >> ind >> eq >> e) || eq != "=") fail("expected: ind NAME = ELEM");
      if (!out.individuals.emplace(ind, lookup(e)).second)
        fail("individual '" + ind + "' mapped twice");
    } else if (head == "conc" || head == "role") {
      std::string pred;
      if (!(ls >> pred)) fail("expected: " + head + " NAME: ...");
      if (pred.size() > 1 && pred.back() == ':') {
        pred.pop_back();
      } else {
        std::string colon;
        if (!(ls >> colon) || colon != ":") fail("expected ':' after the predicate name");
      }
      if (head == "conc") {
        auto& ext = out.concepts[pred];
        std::string e;
        while (ls >> e) ext.insert(lookup(e));
      } else {
        auto& ext = out.roles[pred];
        std::string s, arrow, o;
        while (ls >> s) {
          if (!(ls >> arrow >> o) || arrow != "->") fail("expected: ELEM -> ELEM");
          ext.insert({lookup(s), lookup(o)});
        }
      }
    } else {
      fail("unrecognized line '" + head + "'");
    }
  }
  if (out.domain.empty()) fail("missing domain line");
  validate(out);
  return out;
}

}  // namespace minimodel
