#pragma once

// Bounded satisfiability of a goal concept in some minimal model.
//
// solve_bounded tries every domain size up to the caller's budget. Each size
// is handled by one of two engines. When no axiom mentions negation or a
// value restriction, concept membership can only grow as facts are added, and
// every minimal model arises by closing the ABox under violated inclusions;
// the closure search walks those completions depth first, branching on
// disjuncts and on witness targets for existentials. Otherwise the
// exhaustive engine decides every grounded fact with the drop branch first,
// which visits each model after all of its submodels, so a completed
// assignment is minimal exactly when it contains none of the models found
// before it.
//
// A failed search only shows there is no hit within the budget. The verdict
// is upgraded to a genuine Unsat when the KB sits in the EL/ELIO(bot) family,
// is not cyclic either as written or after modal-depth normalization, the
// goal stays in the same family, and the budget covers small_model_bound;
// under those conditions every minimal model shrinks onto a domain within the
// bound without disturbing the goal.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "minimodel/acyclicity.hpp"
#include "minimodel/interpretation.hpp"
#include "minimodel/minimality.hpp"
#include "minimodel/normalize.hpp"
#include "minimodel/syntax.hpp"

namespace minimodel {

enum class SolveVerdict { Sat, UnsatWithinBound, Unsat };

inline std::string to_string(SolveVerdict v) {
  switch (v) {
    case SolveVerdict::Sat: return "Sat";
    case SolveVerdict::UnsatWithinBound: return "UnsatWithinBound";
    case SolveVerdict::Unsat: return "Unsat";
  }
  return "";
}

struct SolveStats {
  int domains_tried = 0;
  long long nodes = 0;              // search tree nodes across all domain sizes
  long long candidates = 0;         // completed candidate models examined
  long long minimality_checks = 0;  // full smaller-model searches run
};

struct SolveOutcome {
  SolveVerdict verdict = SolveVerdict::UnsatWithinBound;
  std::optional<Interpretation> witness;  // set exactly when verdict == Sat
  boost::multiprecision::cpp_int bound;   // small-model bound of the KB
  SolveStats stats;
};

// Domain size that suffices to witness minimal-model satisfiability for
// weakly acyclic KBs of the EL/ELIO(bot) family: one guessing chain of length
// |T| * 2^|T| per chase round, |T| rounds, per named individual. |T| counts
// the axioms after modal-depth normalization, since that is the shape the
// argument runs on; for ALC-family KBs (where the normalizer does not apply)
// the raw axiom count is used and the value is only a heuristic report.
inline boost::multiprecision::cpp_int small_model_bound(const KnowledgeBase& kb) {
  using boost::multiprecision::cpp_int;
  DlFragment f = classify_fragment(kb);
  const bool alc = f == DlFragment::ALC || f == DlFragment::ALCIO;
  const std::size_t t = alc ? kb.tbox.size() : normalize_md1(kb).tbox.size();
  const std::size_t ni = std::max<std::size_t>(1, signature(kb).individuals.size());
  if (t == 0) return cpp_int(ni);
  cpp_int chain = cpp_int(t) << t;  // |T| * 2^|T|
  return cpp_int(ni) * boost::multiprecision::pow(chain, static_cast<unsigned>(t));
}

namespace detail {

inline bool concept_is_monotone(const ConceptRef& c) {
  if (c->kind == ConceptKind::Not || c->kind == ConceptKind::Forall) return false;
  for (const auto& k : c->kids)
    if (!concept_is_monotone(k)) return false;
  return true;
}

inline bool tbox_is_monotone(const std::vector<Axiom>& tbox) {
  for (const auto& ax : tbox)
    if (!concept_is_monotone(ax.lhs) || !concept_is_monotone(ax.rhs)) return false;
  return true;
}

// Concept compiled against dense predicate tables: names and roles resolved
// to ids, nominals to their pinned element. Keeps the hot evaluation loops
// free of string lookups.
struct CNode {
  ConceptKind kind;
  int pred = -1;  // concept id for Name, role id for Exists/Forall
  bool inverse = false;
  int elem = -1;  // Nominal
  std::vector<CNode> kids;
};

// Depth-first completion of the ABox for monotone TBoxes at a fixed domain
// size. An obligation is an axiom violated at an element; satisfying it adds
// facts, branching over disjuncts and over existential witnesses. Witness
// targets range over the elements that already carry facts (plus the source
// itself) and one bare element: bare elements are interchangeable, so trying
// more of them only repeats candidates up to renaming. Individuals count as
// carrying facts from the start, since renaming must fix them. A completed
// closure is a model; it is reported when the goal holds somewhere in it and
// the full minimality check passes.
//
// Two refinements keep the walk affordable without changing what it visits.
// Obligations whose right side adds facts deterministically are discharged
// before branching ones, so consequences shared by sibling subtrees land once
// above the branch point; which violated obligation is picked never affects
// the set of reachable closures, only the path to them. And when the
// obligation is a bare existential (filler TOP) over a role that is never
// inverted, targets whose memberships can never matter to any restriction on
// that role produce subtrees identical up to retargeting one edge, so a
// single representative stands for all of them. "Never matter" is judged
// against a one-off upper bound: the facts closed under all inclusions at
// once, with every existential sent to every element, which no branch can
// exceed.
class ClosureSearch {
 public:
  ClosureSearch(const KnowledgeBase& kb, const ConceptRef& goal, int n,
                const std::vector<std::string>& inds, SolveStats& stats)
      : kb_(kb), n_(n), full_(dense::full_mask(n)), stats_(stats) {
    for (size_t j = 0; j < inds.size(); ++j) ind_elem_[inds[j]] = static_cast<int>(j);
    ind_names_ = inds;
    Signature sig = signature(kb);
    for (const auto& c : sig.concept_names) concept_id(c);
    for (const auto& r : sig.role_names) role_id(r);
    for (const auto& ax : kb.tbox) {
      lhs_.push_back(compile(ax.lhs));
      rhs_.push_back(compile(ax.rhs));
    }
    goal_ = compile(goal);

    conc_.assign(cnames_.size(), 0);
    succ_.assign(rnames_.size(), std::vector<std::uint64_t>(n_, 0));
    pred_ = succ_;
    active_ref_.assign(n_, 0);
    for (size_t j = 0; j < inds.size(); ++j) touch_add(static_cast<int>(j));

    concept_axioms_.assign(cnames_.size(), {});
    role_axioms_.assign(rnames_.size(), {});
    for (size_t ax = 0; ax < kb.tbox.size(); ++ax) {
      std::set<std::string> cs, rs, is;
      collect_names(kb.tbox[ax].lhs, cs, rs, is);
      collect_names(kb.tbox[ax].rhs, cs, rs, is);
      for (const auto& c : cs) concept_axioms_[cid_.at(c)].push_back(static_cast<int>(ax));
      for (const auto& r : rs) role_axioms_[rid_.at(r)].push_back(static_cast<int>(ax));
    }
    maybe_.assign(kb.tbox.size(), 1);

    for (const auto& as : kb.abox) {
      if (const auto* ca = std::get_if<ConceptAssertion>(&as)) {
        add_concept(cid_.at(ca->concept_name), ind_elem_.at(ca->individual));
      } else {
        const auto& ra = std::get<RoleAssertion>(as);
        add_role(rid_.at(ra.role), ind_elem_.at(ra.subject), ind_elem_.at(ra.object));
      }
    }

    viol_.assign(kb.tbox.size(), 0);
    rhs_det_.resize(kb.tbox.size());
    for (size_t ax = 0; ax < kb.tbox.size(); ++ax)
      rhs_det_[ax] = rhs_deterministic(rhs_[ax]) ? 1 : 0;

    role_collapsible_.assign(rnames_.size(), 1);
    std::vector<std::vector<const CNode*>> fillers(rnames_.size());
    for (const auto& c : lhs_) scan_role_usages(c, fillers);
    for (const auto& c : rhs_) scan_role_usages(c, fillers);
    scan_role_usages(goal_, fillers);
    saturate_upper();
    role_relevant_.assign(rnames_.size(), 0);
    for (size_t r = 0; r < rnames_.size(); ++r)
      for (const CNode* f : fillers[r])
        if (f->kind != ConceptKind::Top) role_relevant_[r] |= ub_evalset(*f);
  }

  std::optional<Interpretation> run() {
    if (step()) return result_;
    return std::nullopt;
  }

 private:
  struct Item {
    const CNode* c;
    int d;
  };
  struct TrailEntry {
    bool is_role;
    int pred;
    int a;
    int b;
  };

  const KnowledgeBase& kb_;
  int n_;
  std::uint64_t full_;
  SolveStats& stats_;
  std::vector<std::string> cnames_, rnames_, ind_names_;
  std::map<std::string, int> cid_, rid_, ind_elem_;
  std::vector<CNode> lhs_, rhs_;
  CNode goal_;
  std::vector<std::uint64_t> conc_;
  std::vector<std::vector<std::uint64_t>> succ_, pred_;
  std::vector<int> active_ref_;
  std::uint64_t active_mask_ = 0;
  std::vector<std::vector<int>> concept_axioms_, role_axioms_;
  std::vector<std::uint8_t> maybe_;   // violation mask may be stale
  std::vector<std::uint64_t> viol_;   // per axiom, elements where it is violated
  std::vector<std::uint8_t> rhs_det_;  // rhs free of disjunction and existentials
  std::vector<std::uint8_t> role_collapsible_;  // role never occurs inverted
  std::vector<std::uint64_t> role_relevant_;    // targets some filler can reach
  std::vector<std::uint64_t> ub_conc_;
  std::vector<std::vector<std::uint64_t>> ub_succ_, ub_pred_;
  std::vector<TrailEntry> trail_;
  std::vector<Item> todo_;
  std::optional<dense::Grounding> ground_;  // reused across minimality checks
  std::optional<Interpretation> result_;

  int concept_id(const std::string& s) {
    auto it = cid_.find(s);
    if (it != cid_.end()) return it->second;
    cnames_.push_back(s);
    return cid_[s] = static_cast<int>(cnames_.size()) - 1;
  }
  int role_id(const std::string& s) {
    auto it = rid_.find(s);
    if (it != rid_.end()) return it->second;
    rnames_.push_back(s);
    return rid_[s] = static_cast<int>(rnames_.size()) - 1;
  }

  CNode compile(const ConceptRef& c) {
    CNode out;
    out.kind = c->kind;
    switch (c->kind) {
      case ConceptKind::Name: out.pred = concept_id(c->label); break;
      case ConceptKind::Nominal: {
        auto it = ind_elem_.find(c->label);
        if (it == ind_elem_.end())
          throw std::runtime_error("unknown individual: " + c->label);
        out.elem = it->second;
        break;
      }
      case ConceptKind::Exists:
      case ConceptKind::Forall:
        out.pred = role_id(c->role.name);
        out.inverse = c->role.inverse;
        break;
      default: break;
    }
    out.kids.reserve(c->kids.size());
    for (const auto& k : c->kids) out.kids.push_back(compile(k));
    return out;
  }

  void touch_add(int d) {
    if (active_ref_[d]++ == 0) active_mask_ |= 1ull << d;
  }
  void touch_remove(int d) {
    if (--active_ref_[d] == 0) active_mask_ &= ~(1ull << d);
  }
  void mark_axioms(const std::vector<int>& axs) {
    for (int a : axs) maybe_[a] = 1;
  }

  void add_concept(int cid, int d) {
    if (conc_[cid] >> d & 1) return;  // duplicate ABox assertion
    conc_[cid] |= 1ull << d;
    touch_add(d);
    mark_axioms(concept_axioms_[cid]);
    trail_.push_back({false, cid, d, -1});
  }
  void add_role(int rid, int a, int b) {
    if (succ_[rid][a] >> b & 1) return;
    succ_[rid][a] |= 1ull << b;
    pred_[rid][b] |= 1ull << a;
    touch_add(a);
    if (b != a) touch_add(b);
    mark_axioms(role_axioms_[rid]);
    trail_.push_back({true, rid, a, b});
  }
  void undo_to(size_t saved) {
    while (trail_.size() > saved) {
      TrailEntry e = trail_.back();
      trail_.pop_back();
      if (e.is_role) {
        succ_[e.pred][e.a] &= ~(1ull << e.b);
        pred_[e.pred][e.b] &= ~(1ull << e.a);
        touch_remove(e.a);
        if (e.b != e.a) touch_remove(e.b);
        mark_axioms(role_axioms_[e.pred]);
      } else {
        conc_[e.pred] &= ~(1ull << e.a);
        touch_remove(e.a);
        mark_axioms(concept_axioms_[e.pred]);
      }
    }
  }

  bool eval1(const CNode& c, int d) const {
    switch (c.kind) {
      case ConceptKind::Top: return true;
      case ConceptKind::Bot: return false;
      case ConceptKind::Name: return conc_[c.pred] >> d & 1;
      case ConceptKind::Nominal: return c.elem == d;
      case ConceptKind::Not: return !eval1(c.kids[0], d);
      case ConceptKind::And:
        for (const auto& k : c.kids)
          if (!eval1(k, d)) return false;
        return true;
      case ConceptKind::Or:
        for (const auto& k : c.kids)
          if (eval1(k, d)) return true;
        return false;
      case ConceptKind::Exists: {
        std::uint64_t ts = c.inverse ? pred_[c.pred][d] : succ_[c.pred][d];
        while (ts) {
          int t = std::countr_zero(ts);
          ts &= ts - 1;
          if (eval1(c.kids[0], t)) return true;
        }
        return false;
      }
      case ConceptKind::Forall: {
        std::uint64_t ts = c.inverse ? pred_[c.pred][d] : succ_[c.pred][d];
        while (ts) {
          int t = std::countr_zero(ts);
          ts &= ts - 1;
          if (!eval1(c.kids[0], t)) return false;
        }
        return true;
      }
    }
    return false;
  }

  // Extension of a concept over the whole domain as one bit mask, against the
  // given predicate tables.
  std::uint64_t evalset_in(const CNode& c, const std::vector<std::uint64_t>& conc,
                           const std::vector<std::vector<std::uint64_t>>& succ,
                           const std::vector<std::vector<std::uint64_t>>& pred) const {
    switch (c.kind) {
      case ConceptKind::Top: return full_;
      case ConceptKind::Bot: return 0;
      case ConceptKind::Name: return conc[c.pred];
      case ConceptKind::Nominal: return 1ull << c.elem;
      case ConceptKind::Not: return full_ & ~evalset_in(c.kids[0], conc, succ, pred);
      case ConceptKind::And: {
        std::uint64_t m = full_;
        for (const auto& k : c.kids) {
          m &= evalset_in(k, conc, succ, pred);
          if (!m) break;
        }
        return m;
      }
      case ConceptKind::Or: {
        std::uint64_t m = 0;
        for (const auto& k : c.kids) m |= evalset_in(k, conc, succ, pred);
        return m;
      }
      case ConceptKind::Exists: {
        std::uint64_t ts = evalset_in(c.kids[0], conc, succ, pred);
        if (!ts) return 0;
        const auto& edges = c.inverse ? pred[c.pred] : succ[c.pred];
        std::uint64_t out = 0;
        for (int d = 0; d < n_; ++d)
          if (edges[d] & ts) out |= 1ull << d;
        return out;
      }
      case ConceptKind::Forall: {
        std::uint64_t ts = evalset_in(c.kids[0], conc, succ, pred);
        const auto& edges = c.inverse ? pred[c.pred] : succ[c.pred];
        std::uint64_t out = 0;
        for (int d = 0; d < n_; ++d)
          if (!(edges[d] & ~ts)) out |= 1ull << d;
        return out;
      }
    }
    return 0;
  }
  std::uint64_t evalset(const CNode& c) const {
    return evalset_in(c, conc_, succ_, pred_);
  }
  std::uint64_t ub_evalset(const CNode& c) const {
    return evalset_in(c, ub_conc_, ub_succ_, ub_pred_);
  }

  static bool rhs_deterministic(const CNode& c) {
    if (c.kind == ConceptKind::Or || c.kind == ConceptKind::Exists) return false;
    for (const auto& k : c.kids)
      if (!rhs_deterministic(k)) return false;
    return true;
  }

  void scan_role_usages(const CNode& c, std::vector<std::vector<const CNode*>>& fillers) {
    if (c.kind == ConceptKind::Exists || c.kind == ConceptKind::Forall) {
      if (c.inverse)
        role_collapsible_[c.pred] = 0;
      else
        fillers[c.pred].push_back(&c.kids[0]);
    }
    for (const auto& k : c.kids) scan_role_usages(k, fillers);
  }

  // Close the starting facts under every inclusion at once, sending each
  // existential to every element. The result bounds every state any branch
  // can reach: a membership absent here is absent throughout the search.
  void saturate_upper() {
    ub_conc_ = conc_;
    ub_succ_ = succ_;
    ub_pred_ = pred_;
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t ax = 0; ax < lhs_.size(); ++ax) {
        std::uint64_t v = ub_evalset(lhs_[ax]);
        if (v) ub_expand(rhs_[ax], v, grew);
      }
    }
  }
  void ub_expand(const CNode& c, std::uint64_t at, bool& grew) {
    switch (c.kind) {
      case ConceptKind::Top:
      case ConceptKind::Bot:
      case ConceptKind::Nominal:
        return;
      case ConceptKind::Name: {
        std::uint64_t before = ub_conc_[c.pred];
        ub_conc_[c.pred] |= at;
        if (ub_conc_[c.pred] != before) grew = true;
        return;
      }
      case ConceptKind::And:
      case ConceptKind::Or:
        for (const auto& k : c.kids) ub_expand(k, at, grew);
        return;
      case ConceptKind::Exists: {
        auto& fwd = ub_succ_[c.pred];
        auto& bwd = ub_pred_[c.pred];
        for (int x = 0; x < n_; ++x) {
          std::uint64_t hit = (at >> x & 1) ? full_ : 0;
          std::uint64_t add_f = c.inverse ? at : hit;
          std::uint64_t add_b = c.inverse ? hit : at;
          std::uint64_t bf = fwd[x], bb = bwd[x];
          fwd[x] |= add_f;
          bwd[x] |= add_b;
          if (fwd[x] != bf || bwd[x] != bb) grew = true;
        }
        ub_expand(c.kids[0], full_, grew);
        return;
      }
      case ConceptKind::Not:
      case ConceptKind::Forall:
        throw std::logic_error("non-monotone construct in closure search");
    }
  }

  // First violated (axiom, element), taking axioms that complete without
  // branching ahead of the rest so shared consequences land once, above the
  // branch point. Violation masks are cached per axiom and recomputed only
  // after a fact on one of the axiom's predicates has changed.
  bool find_obligation(int& ax_out, int& d_out) {
    int pick = -1;
    for (size_t ax = 0; ax < lhs_.size(); ++ax) {
      if (maybe_[ax]) {
        viol_[ax] = evalset(lhs_[ax]) & ~evalset(rhs_[ax]);
        maybe_[ax] = 0;
      }
      if (!viol_[ax]) continue;
      if (rhs_det_[ax]) {
        pick = static_cast<int>(ax);
        break;
      }
      if (pick < 0) pick = static_cast<int>(ax);
    }
    if (pick < 0) return false;
    ax_out = pick;
    d_out = std::countr_zero(viol_[pick]);
    return true;
  }

  bool step() {
    ++stats_.nodes;
    if (!todo_.empty()) {
      Item it = todo_.back();
      todo_.pop_back();
      bool r = satisfy(it);
      todo_.push_back(it);
      return r;
    }
    int ax, d;
    if (find_obligation(ax, d)) {
      todo_.push_back({&rhs_[ax], d});
      bool r = step();
      todo_.pop_back();
      return r;
    }
    return on_closure();
  }

  // Make *it.c true at it.d (branching as needed), then resume the search.
  bool satisfy(Item it) {
    const CNode& c = *it.c;
    int d = it.d;
    if (eval1(c, d)) return step();
    switch (c.kind) {
      case ConceptKind::Top: return step();  // eval1 already covers this
      case ConceptKind::Bot: return false;
      case ConceptKind::Nominal: return false;  // wrong element, no way to fix
      case ConceptKind::Name: {
        size_t saved = trail_.size();
        add_concept(c.pred, d);
        bool r = step();
        undo_to(saved);
        return r;
      }
      case ConceptKind::And: {
        for (size_t j = c.kids.size(); j-- > 0;) todo_.push_back({&c.kids[j], d});
        bool r = step();
        todo_.resize(todo_.size() - c.kids.size());
        return r;
      }
      case ConceptKind::Or: {
        for (const auto& k : c.kids) {
          todo_.push_back({&k, d});
          bool r = step();
          todo_.pop_back();
          if (r) return true;
        }
        return false;
      }
      case ConceptKind::Exists: {
        // the source joins the fact-carrying elements once the edge lands, so
        // it is always a legal target; one bare element beyond that suffices
        std::uint64_t base = active_mask_ | (1ull << d);
        std::uint64_t bare = ~base & full_;
        if (c.kids[0].kind == ConceptKind::Top && role_collapsible_[c.pred]) {
          // the edge is the whole obligation, and no restriction over this
          // role can tell targets outside every filler's reach apart: their
          // subtrees match up to retargeting the edge, so keep one of them
          std::uint64_t junk = base & ~(role_relevant_[c.pred] | (1ull << d));
          if (junk) base = (base ^ junk) | (junk & -junk);
        }
        std::uint64_t cand = base;
        while (cand) {
          int t = std::countr_zero(cand);
          cand &= cand - 1;
          if (try_target(c, d, t)) return true;
        }
        if (bare && try_target(c, d, std::countr_zero(bare))) return true;
        return false;
      }
      case ConceptKind::Not:
      case ConceptKind::Forall:
        throw std::logic_error("non-monotone construct in closure search");
    }
    return false;
  }

  bool try_target(const CNode& c, int d, int t) {
    int src = c.inverse ? t : d;
    int dst = c.inverse ? d : t;
    bool have = succ_[c.pred][src] >> dst & 1;
    size_t saved = trail_.size();
    if (!have) add_role(c.pred, src, dst);
    todo_.push_back({&c.kids[0], t});
    bool r = step();
    todo_.pop_back();
    if (!have) undo_to(saved);
    return r;
  }

  bool goal_nonempty() const { return evalset(goal_) != 0; }

  bool on_closure() {
    ++stats_.candidates;
    if (!goal_nonempty()) return false;
    Interpretation cand = rebuild();
    ++stats_.minimality_checks;
    if (!ground_) {
      // Register every name this search can ever emit once, then reuse the
      // grounding across candidates. A closure is a model by construction,
      // so minimality is just the absence of a strictly smaller model.
      Interpretation shell;
      shell.domain = cand.domain;
      shell.individuals = cand.individuals;
      for (const auto& c : cnames_) shell.concepts[c];
      for (const auto& r : rnames_) shell.roles[r];
      ground_.emplace(kb_, shell);
    }
    ground_->load(cand);
    std::vector<size_t> droppable;
    for (size_t f = 0; f < ground_->facts().size(); ++f)
      if (!ground_->facts()[f].forced) droppable.push_back(f);
    if (dense::SmallerModelSearch(*ground_, droppable).run()) return false;
    result_ = std::move(cand);
    return true;
  }

  Interpretation rebuild() const {
    Interpretation out;
    for (int d = 0; d < n_; ++d) out.domain.push_back("e" + std::to_string(d));
    for (size_t j = 0; j < ind_names_.size(); ++j)
      out.individuals[ind_names_[j]] = static_cast<int>(j);
    for (size_t c = 0; c < cnames_.size(); ++c) {
      std::uint64_t m = conc_[c];
      while (m) {
        int d = std::countr_zero(m);
        m &= m - 1;
        out.concepts[cnames_[c]].insert(d);
      }
    }
    for (size_t r = 0; r < rnames_.size(); ++r)
      for (int a = 0; a < n_; ++a) {
        std::uint64_t m = succ_[r][a];
        while (m) {
          int b = std::countr_zero(m);
          m &= m - 1;
          out.roles[rnames_[r]].insert({a, b});
        }
      }
    return out;
  }
};

inline Interpretation full_universe(const KnowledgeBase& kb, int n,
                                    const std::vector<std::string>& inds) {
  Interpretation out;
  for (int d = 0; d < n; ++d) out.domain.push_back("e" + std::to_string(d));
  for (size_t j = 0; j < inds.size(); ++j) out.individuals[inds[j]] = static_cast<int>(j);
  Signature sig = signature(kb);
  for (const auto& c : sig.concept_names)
    for (int d = 0; d < n; ++d) out.concepts[c].insert(d);
  for (const auto& r : sig.role_names)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out.roles[r].insert({a, b});
  return out;
}

// Exhaustive minimal-model enumeration at a fixed domain size, for TBoxes
// where truth is not monotone in the facts. Grounds the KB against the full
// fact universe and decides facts in a fixed order, dropping before keeping,
// so every model is reached after all of its submodels: a completed
// assignment is minimal exactly when it contains no model found earlier.
// Interval evaluation prunes assignments that already violate an axiom, and a
// partial assignment whose kept facts cover a found model can only complete
// to supersets of it.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const KnowledgeBase& kb, const ConceptRef& goal, int n,
                   const std::vector<std::string>& inds, SolveStats& stats)
      : kb_(kb), goal_(goal), stats_(stats), base_(full_universe(kb, n, inds)),
        g_(kb, base_) {
    for (size_t f = 0; f < g_.facts().size(); ++f) {
      if (g_.facts()[f].forced) continue;
      g_.set_state(f, dense::FactState::Undecided);
      order_.push_back(f);
    }
  }

  std::optional<Interpretation> run() {
    dfs(0);
    return result_;
  }

 private:
  const KnowledgeBase& kb_;
  ConceptRef goal_;
  SolveStats& stats_;
  Interpretation base_;
  dense::Grounding g_;
  std::vector<size_t> order_;
  std::vector<boost::dynamic_bitset<>> found_;  // kept-fact sets of minimal models
  std::optional<Interpretation> result_;

  boost::dynamic_bitset<> in_bits() const {
    boost::dynamic_bitset<> bits(order_.size());
    for (size_t j = 0; j < order_.size(); ++j)
      if (g_.fact_states()[order_[j]] == dense::FactState::In) bits.set(j);
    return bits;
  }

  bool any_violation() const {
    for (size_t ax = 0; ax < g_.axiom_count(); ++ax)
      if (g_.surely_violated(ax)) return true;
    return false;
  }

  bool dominated() const {
    boost::dynamic_bitset<> ins = in_bits();
    for (const auto& f : found_)
      if (f.is_subset_of(ins)) return true;
    return false;
  }

  // Same forcing discipline as the smaller-model search: elements certainly
  // in a lhs must keep name-shaped rhs conjuncts.
  bool propagate(std::vector<size_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ax = 0; ax < g_.axiom_count(); ++ax) {
        if (g_.surely_violated(ax)) return false;
        const std::vector<int>& cids = g_.rhs_name_cids(ax);
        if (cids.empty()) continue;
        std::uint64_t lhs_cert = g_.lhs_certain(ax);
        for (int cidx : cids) {
          std::uint64_t need = lhs_cert;
          while (need) {
            int d = std::countr_zero(need);
            need &= need - 1;
            int pos = g_.find_fact(cidx, d);
            if (pos < 0) continue;
            if (g_.fact_states()[pos] == dense::FactState::Undecided) {
              g_.set_state(pos, dense::FactState::In);
              trail.push_back(pos);
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  bool dfs(size_t idx) {
    ++stats_.nodes;
    if (any_violation()) return false;
    if (dominated()) return false;
    while (idx < order_.size() &&
           g_.fact_states()[order_[idx]] != dense::FactState::Undecided)
      ++idx;
    if (idx == order_.size()) return leaf();

    size_t f = order_[idx];
    for (dense::FactState choice : {dense::FactState::Out, dense::FactState::In}) {
      g_.set_state(f, choice);
      std::vector<size_t> trail;
      if (propagate(trail)) {
        if (dfs(idx + 1)) return true;
      }
      for (size_t t : trail) g_.set_state(t, dense::FactState::Undecided);
      g_.set_state(f, dense::FactState::Undecided);
    }
    return false;
  }

  bool leaf() {
    ++stats_.candidates;
    found_.push_back(in_bits());
    Interpretation m = g_.rebuild(base_);
    if (eval_concept(m, goal_).empty()) return false;
    ++stats_.minimality_checks;
    if (!is_minimal(m, kb_))
      throw std::logic_error("exhaustive enumeration produced a non-minimal model");
    result_ = std::move(m);
    return true;
  }
};

}  // namespace detail

// Is the goal satisfied in some minimal model of kb with at most max_domain
// elements? Domain sizes are tried in increasing order; the witness is a
// minimal model in which the goal holds. Only the unique name assumption is
// supported here; solve_no_una covers the other reading.
inline SolveOutcome solve_bounded(const KnowledgeBase& kb, const ConceptRef& goal,
                                  int max_domain, bool una = true) {
  if (!una)
    throw std::runtime_error("solve_bounded assumes unique names; use solve_no_una");
  if (max_domain < 1) throw std::runtime_error("max domain must be at least 1");
  dense::check_domain(max_domain);
  std::vector<std::string> inds = detail::individuals_in_order(kb);
  if (static_cast<int>(inds.size()) > max_domain)
    throw std::runtime_error("domain size is smaller than the number of individuals");
  {
    std::set<std::string> cs, rs, is;
    detail::collect_names(goal, cs, rs, is);
    for (const auto& x : is)
      if (std::find(inds.begin(), inds.end(), x) == inds.end())
        throw std::runtime_error("unknown individual: " + x);
  }

  SolveOutcome out;
  out.bound = small_model_bound(kb);

  const bool monotone = detail::tbox_is_monotone(kb.tbox);
  const int k0 = std::max(1, static_cast<int>(inds.size()));
  for (int k = k0; k <= max_domain; ++k) {
    ++out.stats.domains_tried;
    std::optional<Interpretation> w;
    if (monotone) {
      detail::ClosureSearch search(kb, goal, k, inds, out.stats);
      w = search.run();
    } else {
      detail::ExhaustiveSearch search(kb, goal, k, inds, out.stats);
      w = search.run();
    }
    if (w) {
      if (!is_model(*w, kb) || eval_concept(*w, goal).empty())
        throw std::logic_error("solver produced an invalid witness");
      out.verdict = SolveVerdict::Sat;
      out.witness = std::move(w);
      return out;
    }
  }

  auto el_family = [](DlFragment f) {
    return f == DlFragment::EL || f == DlFragment::ELbot || f == DlFragment::ELIO ||
           f == DlFragment::ELIObot;
  };
  bool genuine = el_family(classify_fragment(kb)) && el_family(classify_fragment(goal));
  if (genuine)
    genuine = classify_acyclicity(kb.tbox).classification != Acyclicity::Cyclic;
  if (genuine)
    genuine =
        classify_acyclicity(normalize_md1(kb).tbox).classification != Acyclicity::Cyclic;
  if (genuine) genuine = boost::multiprecision::cpp_int(max_domain) >= out.bound;
  out.verdict = genuine ? SolveVerdict::Unsat : SolveVerdict::UnsatWithinBound;
  return out;
}

// Minimal-model satisfiability without the unique name assumption, for KBs
// and goals in EL/ELIO without bottom. Merging everything onto one element
// and chasing the axioms there yields the least model: at a single element an
// inclusion rhs holds exactly when all its concept names hold and all its
// roles loop, so adding precisely those facts is the one minimal way to
// discharge a violated axiom, and each axiom needs discharging at most once.
// The goal holds in some minimal model iff it holds in this fixpoint.
inline SolveOutcome solve_no_una(const KnowledgeBase& kb, const ConceptRef& goal) {
  DlFragment fk = classify_fragment(kb);
  DlFragment fg = classify_fragment(goal);
  auto ok = [](DlFragment f) { return f == DlFragment::EL || f == DlFragment::ELIO; };
  if (!ok(fk) || !ok(fg)) throw std::runtime_error("fragment not supported");

  Interpretation i;
  i.domain = {"e0"};
  for (const auto& x : detail::individuals_in_order(kb)) i.individuals[x] = 0;
  for (const auto& as : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&as))
      i.concepts[ca->concept_name].insert(0);
    else
      i.roles[std::get<RoleAssertion>(as).role].insert({0, 0});
  }

  SolveOutcome out;
  out.bound = small_model_bound(kb);
  out.stats.domains_tried = 1;

  std::vector<bool> fired(kb.tbox.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ax = 0; ax < kb.tbox.size(); ++ax) {
      if (fired[ax]) continue;
      ++out.stats.nodes;
      if (eval_concept(i, kb.tbox[ax].lhs).empty()) continue;
      if (!eval_concept(i, kb.tbox[ax].rhs).empty()) continue;
      std::set<std::string> cs, rs, is;
      detail::collect_names(kb.tbox[ax].rhs, cs, rs, is);
      for (const auto& c : cs) i.concepts[c].insert(0);
      for (const auto& r : rs) i.roles[r].insert({0, 0});
      fired[ax] = true;
      changed = true;
    }
  }

  if (!is_model(i, kb)) throw std::logic_error("fixpoint interpretation is not a model");
  ++out.stats.minimality_checks;
  if (!is_minimal(i, kb)) throw std::logic_error("fixpoint interpretation is not minimal");
  ++out.stats.candidates;
  if (!eval_concept(i, goal).empty()) {
    out.verdict = SolveVerdict::Sat;
    out.witness = std::move(i);
  } else {
    out.verdict = SolveVerdict::Unsat;
  }
  return out;
}

}  // namespace minimodel
