#pragma once

// Global and pointwise minimality of finite models, plus a brute-force
// enumeration oracle for minimal models.
//
// The smaller-model search grounds the KB against the candidate model: the
// candidate's extensions are flattened into fact atoms, ABox-required facts
// are pinned, and the search explores keep/drop assignments of the remaining
// facts. Partial assignments are judged with interval (three-valued)
// evaluation: every concept gets a certain set and a possible set, and a
// ground constraint "d in C implies d in D" is hopeless as soon as d is
// certainly in C but no longer possibly in D. That check, plus forcing of
// name-shaped right-hand sides, prunes the exponential space enough for the
// model sizes this artifact targets.
//
// Dense engines index the domain by bit position and therefore cap the domain
// at 64 elements; the public entry points validate this.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "minimodel/interpretation.hpp"
#include "minimodel/syntax.hpp"

namespace minimodel {

// One grounded predicate membership. Concept facts use slot a only (b = -1).
struct FactAtom {
  bool is_role;
  std::string pred;
  int a;
  int b;
  bool forced;

  friend bool operator==(const FactAtom&, const FactAtom&) = default;
};

namespace dense {

constexpr int kMaxDomain = 64;

inline void check_domain(int n) {
  if (n > kMaxDomain)
    throw std::runtime_error("domain too large for the minimality engine (max 64 elements)");
}

inline std::uint64_t full_mask(int n) {
  return n == 64 ? ~0ull : ((1ull << n) - 1);
}

// Upper/lower extension bounds for every predicate under a partial fact
// assignment. Facts start undecided (possible but not certain); deciding a
// fact moves one bit. Exact evaluation is the special case cert == poss.
struct State {
  int n = 0;
  std::vector<std::uint64_t> concept_cert, concept_poss;        // per concept id
  std::vector<std::vector<std::uint64_t>> succ_cert, succ_poss; // per role id, per source
  std::vector<std::vector<std::uint64_t>> pred_cert, pred_poss; // per role id, per target
};

enum class FactState : std::uint8_t { Undecided, In, Out };

struct Fact {
  int pred;  // concept id or role id
  bool is_role;
  int a;
  int b;
  bool forced;
  std::string pred_name;  // for ordering and reporting
};

// Interval evaluation of a concept. Returns certain and possible element
// masks; they coincide once every relevant fact is decided.
struct Interval {
  std::uint64_t cert;
  std::uint64_t poss;
};

// Axiom sides compiled against the grounding's id tables, so evaluation in
// the search loop is pure mask work with no name lookups. pred is -1 for
// names the grounding never saw (their extension is empty by construction).
struct GNode {
  ConceptKind kind;
  int pred = -1;
  bool inverse = false;
  int elem = -1;  // nominal element
  std::vector<GNode> kids;
};

class Grounding {
 public:
  Grounding(const KnowledgeBase& kb, const Interpretation& i) : kb_(&kb), n_(i.size()) {
    check_domain(n_);
    Signature sig = signature(kb);
    for (const auto& c : sig.concept_names) concept_id(c);
    for (const auto& r : sig.role_names) role_id(r);
    for (const auto& [c, _] : i.concepts) concept_id(c);
    for (const auto& [r, _] : i.roles) role_id(r);
    individuals_ = i.individuals;

    state_.n = n_;
    state_.concept_cert.assign(cnames_.size(), 0);
    state_.concept_poss.assign(cnames_.size(), 0);
    state_.succ_cert.assign(rnames_.size(), std::vector<std::uint64_t>(n_, 0));
    state_.succ_poss.assign(rnames_.size(), std::vector<std::uint64_t>(n_, 0));
    state_.pred_cert = state_.succ_cert;
    state_.pred_poss = state_.succ_poss;

    for (const auto& ax : kb.tbox) {
      lhs_g_.push_back(compile(ax.lhs));
      rhs_g_.push_back(compile(ax.rhs));
    }
    ax_stale_.assign(kb.tbox.size(), 1);
    ax_lhs_.resize(kb.tbox.size());
    ax_rhs_.resize(kb.tbox.size());
    index_rhs_names();
    index_constraints();

    // merged name order across both predicate kinds, so the fact ordering
    // matches sorting by (name, a, b)
    {
      std::set<std::string> all(cnames_.begin(), cnames_.end());
      all.insert(rnames_.begin(), rnames_.end());
      std::map<std::string, int> rank;
      int k = 0;
      for (const auto& s : all) rank[s] = k++;
      crank_.resize(cnames_.size());
      rrank_.resize(rnames_.size());
      for (size_t c = 0; c < cnames_.size(); ++c) crank_[c] = rank[cnames_[c]];
      for (size_t r = 0; r < rnames_.size(); ++r) rrank_[r] = rank[rnames_[r]];
    }

    for (const auto& as : kb.abox) {
      if (const auto* ca = std::get_if<ConceptAssertion>(&as))
        forced_ids_.insert(
            {false, concept_id(ca->concept_name), individuals_.at(ca->individual), -1});
      else {
        const auto& ra = std::get<RoleAssertion>(as);
        forced_ids_.insert({true, role_id(ra.role), individuals_.at(ra.subject),
                           individuals_.at(ra.object)});
      }
    }

    cfact_.assign(cnames_.size() * static_cast<size_t>(std::max(n_, 1)), -1);
    load(i);
  }

  // Point the grounding at another candidate over the same domain and
  // individual map. Names must have been seen at construction time; anything
  // search-related (facts, states, caches) is rebuilt from scratch.
  void load(const Interpretation& i) {
    facts_.clear();
    for (const auto& [c, ext] : i.concepts) {
      int id = cid_.at(c);
      for (int e : ext)
        facts_.push_back(Fact{id, false, e, -1, forced_ids_.count({false, id, e, -1}) > 0, c});
    }
    for (const auto& [r, ext] : i.roles) {
      int id = rid_.at(r);
      for (auto [s, o] : ext)
        facts_.push_back(Fact{id, true, s, o, forced_ids_.count({true, id, s, o}) > 0, r});
    }
    std::sort(facts_.begin(), facts_.end(), [this](const Fact& x, const Fact& y) {
      int rx = x.is_role ? rrank_[x.pred] : crank_[x.pred];
      int ry = y.is_role ? rrank_[y.pred] : crank_[y.pred];
      if (rx != ry) return rx < ry;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });
    states_.assign(facts_.size(), FactState::In);

    std::fill(state_.concept_cert.begin(), state_.concept_cert.end(), 0);
    std::fill(state_.concept_poss.begin(), state_.concept_poss.end(), 0);
    for (auto& v : state_.succ_cert) std::fill(v.begin(), v.end(), 0);
    for (auto& v : state_.succ_poss) std::fill(v.begin(), v.end(), 0);
    for (auto& v : state_.pred_cert) std::fill(v.begin(), v.end(), 0);
    for (auto& v : state_.pred_poss) std::fill(v.begin(), v.end(), 0);
    std::fill(cfact_.begin(), cfact_.end(), -1);
    for (size_t f = 0; f < facts_.size(); ++f) {
      apply_in(facts_[f]);
      if (!facts_[f].is_role)
        cfact_[facts_[f].pred * static_cast<size_t>(n_) + facts_[f].a] = static_cast<int>(f);
    }
    std::fill(ax_stale_.begin(), ax_stale_.end(), 1);
  }

  static std::set<std::pair<std::string, std::pair<int, int>>> forced_facts(
      const KnowledgeBase& kb, const Interpretation& i) {
    std::set<std::pair<std::string, std::pair<int, int>>> out;
    for (const auto& as : kb.abox) {
      if (const auto* ca = std::get_if<ConceptAssertion>(&as))
        out.insert({ca->concept_name, {i.individuals.at(ca->individual), -1}});
      else {
        const auto& ra = std::get<RoleAssertion>(as);
        out.insert({ra.role, {i.individuals.at(ra.subject), i.individuals.at(ra.object)}});
      }
    }
    return out;
  }

  int n() const { return n_; }
  const std::vector<Fact>& facts() const { return facts_; }
  const std::vector<FactState>& fact_states() const { return states_; }

  void set_state(size_t f, FactState s) {
    const Fact& fa = facts_[f];
    if (states_[f] == FactState::In) retract_in(fa);
    else if (states_[f] == FactState::Out) retract_out(fa);
    states_[f] = s;
    if (s == FactState::In) apply_in(fa);
    else if (s == FactState::Out) apply_out(fa);
    for (int ax : constraints_mentioning(fa)) ax_stale_[ax] = 1;
  }

  size_t axiom_count() const { return lhs_g_.size(); }

  // Elements where the axiom cannot be satisfied anymore.
  std::uint64_t surely_violated(size_t ax) const {
    refresh(ax);
    return ax_lhs_[ax].cert & ~ax_rhs_[ax].poss;
  }

  // Fixpoint forcing: pin facts that every completion of the current partial
  // assignment must keep. An element certainly in a lhs needs the rhs, and
  // whenever the rhs can only be met one way within the still-possible facts,
  // that way is pinned In. Returns false once some axiom is past saving;
  // `trail` collects every pinned fact so the caller can revert.
  bool propagate_forced(std::vector<size_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ax = 0; ax < lhs_g_.size(); ++ax) {
        if (surely_violated(ax)) return false;
        std::uint64_t pending = ax_lhs_[ax].cert & ~ax_rhs_[ax].cert;
        while (pending) {
          int d = std::countr_zero(pending);
          pending &= pending - 1;
          if (!force_unique(rhs_g_[ax], d, trail, changed)) return false;
        }
      }
    }
    return true;
  }

  const std::vector<int>& constraints_mentioning(const Fact& f) const {
    return f.is_role ? role_axioms_[f.pred] : concept_axioms_[f.pred];
  }

  const KnowledgeBase& kb() const { return *kb_; }

  Interpretation rebuild(const Interpretation& base) const {
    Interpretation out;
    out.domain = base.domain;
    out.individuals = base.individuals;
    for (size_t f = 0; f < facts_.size(); ++f) {
      if (states_[f] != FactState::In) continue;
      const Fact& fa = facts_[f];
      if (fa.is_role) out.roles[fa.pred_name].insert({fa.a, fa.b});
      else out.concepts[fa.pred_name].insert(fa.a);
    }
    return out;
  }

 private:
  const KnowledgeBase* kb_;
  int n_;
  std::vector<std::string> cnames_, rnames_;
  std::map<std::string, int> cid_, rid_;
  std::map<std::string, int> individuals_;
  State state_;
  std::vector<Fact> facts_;
  std::vector<FactState> states_;
  std::vector<GNode> lhs_g_, rhs_g_;
  std::vector<int> crank_, rrank_;  // merged name order of predicate ids
  std::set<std::tuple<bool, int, int, int>> forced_ids_;
  std::vector<int> cfact_;  // concept id * n + element -> fact position
  std::vector<int> rfact_;  // (role id * n + src) * n + dst -> fact position
  std::vector<std::vector<int>> concept_axioms_, role_axioms_;  // pred id -> axiom indexes
  mutable std::vector<std::uint8_t> ax_stale_;
  mutable std::vector<Interval> ax_lhs_, ax_rhs_;

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

  GNode compile(const ConceptRef& c) const {
    GNode g;
    g.kind = c->kind;
    switch (c->kind) {
      case ConceptKind::Top:
      case ConceptKind::Bot:
        break;
      case ConceptKind::Name: {
        auto it = cid_.find(c->label);
        g.pred = it == cid_.end() ? -1 : it->second;
        break;
      }
      case ConceptKind::Nominal: {
        auto it = individuals_.find(c->label);
        if (it == individuals_.end()) throw std::runtime_error("unknown individual: " + c->label);
        g.elem = it->second;
        break;
      }
      case ConceptKind::Not:
      case ConceptKind::And:
      case ConceptKind::Or:
        for (const auto& k : c->kids) g.kids.push_back(compile(k));
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        auto it = rid_.find(c->role.name);
        g.pred = it == rid_.end() ? -1 : it->second;
        g.inverse = c->role.inverse;
        g.kids.push_back(compile(c->kids[0]));
        break;
      }
    }
    return g;
  }

  Interval geval(const GNode& c) const {
    const std::uint64_t full = full_mask(n_);
    switch (c.kind) {
      case ConceptKind::Top: return {full, full};
      case ConceptKind::Bot: return {0, 0};
      case ConceptKind::Name:
        if (c.pred < 0) return {0, 0};
        return {state_.concept_cert[c.pred], state_.concept_poss[c.pred]};
      case ConceptKind::Nominal: {
        std::uint64_t m = 1ull << c.elem;
        return {m, m};
      }
      case ConceptKind::Not: {
        Interval k = geval(c.kids[0]);
        return {full & ~k.poss, full & ~k.cert};
      }
      case ConceptKind::And: {
        Interval acc{full, full};
        for (const auto& k : c.kids) {
          Interval v = geval(k);
          acc.cert &= v.cert;
          acc.poss &= v.poss;
        }
        return acc;
      }
      case ConceptKind::Or: {
        Interval acc{0, 0};
        for (const auto& k : c.kids) {
          Interval v = geval(k);
          acc.cert |= v.cert;
          acc.poss |= v.poss;
        }
        return acc;
      }
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        Interval body = geval(c.kids[0]);
        Interval out{0, 0};
        for (int d = 0; d < n_; ++d) {
          std::uint64_t ec = 0, ep = 0;
          if (c.pred >= 0) {
            ec = c.inverse ? state_.pred_cert[c.pred][d] : state_.succ_cert[c.pred][d];
            ep = c.inverse ? state_.pred_poss[c.pred][d] : state_.succ_poss[c.pred][d];
          }
          bool in_cert, in_poss;
          if (c.kind == ConceptKind::Exists) {
            in_cert = (ec & body.cert) != 0;
            in_poss = (ep & body.poss) != 0;
          } else {
            in_cert = (ep & ~body.cert) == 0;
            in_poss = (ec & ~body.poss) == 0;
          }
          if (in_cert) out.cert |= 1ull << d;
          if (in_poss) out.poss |= 1ull << d;
        }
        return out;
      }
    }
    throw std::logic_error("unreachable concept kind");
  }

  void refresh(size_t ax) const {
    if (!ax_stale_[ax]) return;
    ax_lhs_[ax] = geval(lhs_g_[ax]);
    ax_rhs_[ax] = geval(rhs_g_[ax]);
    ax_stale_[ax] = 0;
  }

  void index_rhs_names() {
    rhs_cids_.resize(rhs_g_.size());
    for (size_t ax = 0; ax < rhs_g_.size(); ++ax) {
      const GNode& r = rhs_g_[ax];
      auto& out = rhs_cids_[ax];
      if (r.kind == ConceptKind::Name) {
        if (r.pred >= 0) out.push_back(r.pred);
      } else if (r.kind == ConceptKind::And) {
        bool ok = true;
        for (const GNode& k : r.kids) {
          if (k.kind != ConceptKind::Name) continue;
          if (k.pred < 0) {
            ok = false;
            break;
          }
          out.push_back(k.pred);
        }
        if (!ok) out.clear();
      }
    }
  }

  void apply_in(const Fact& f) {
    if (f.is_role) {
      state_.succ_cert[f.pred][f.a] |= 1ull << f.b;
      state_.succ_poss[f.pred][f.a] |= 1ull << f.b;
      state_.pred_cert[f.pred][f.b] |= 1ull << f.a;
      state_.pred_poss[f.pred][f.b] |= 1ull << f.a;
    } else {
      state_.concept_cert[f.pred] |= 1ull << f.a;
      state_.concept_poss[f.pred] |= 1ull << f.a;
    }
  }
  void retract_in(const Fact& f) {
    if (f.is_role) {
      state_.succ_cert[f.pred][f.a] &= ~(1ull << f.b);
      state_.pred_cert[f.pred][f.b] &= ~(1ull << f.a);
    } else {
      state_.concept_cert[f.pred] &= ~(1ull << f.a);
    }
  }
  void apply_out(const Fact& f) {
    if (f.is_role) {
      state_.succ_poss[f.pred][f.a] &= ~(1ull << f.b);
      state_.pred_poss[f.pred][f.b] &= ~(1ull << f.a);
    } else {
      state_.concept_poss[f.pred] &= ~(1ull << f.a);
    }
  }
  void retract_out(const Fact& f) {
    if (f.is_role) {
      state_.succ_poss[f.pred][f.a] |= 1ull << f.b;
      state_.pred_poss[f.pred][f.b] |= 1ull << f.a;
    } else {
      state_.concept_poss[f.pred] |= 1ull << f.a;
    }
  }

  void index_constraints() {
    concept_axioms_.assign(cnames_.size(), {});
    role_axioms_.assign(rnames_.size(), {});
    for (size_t ax = 0; ax < kb_->tbox.size(); ++ax) {
      std::set<std::string> cs, rs, is;
      detail::collect_names(kb_->tbox[ax].lhs, cs, rs, is);
      detail::collect_names(kb_->tbox[ax].rhs, cs, rs, is);
      for (const auto& c : cs)
        if (auto it = cid_.find(c); it != cid_.end())
          concept_axioms_[it->second].push_back(static_cast<int>(ax));
      for (const auto& r : rs)
        if (auto it = rid_.find(r); it != rid_.end())
          role_axioms_[it->second].push_back(static_cast<int>(ax));
    }
  }
};

// Complete search for a strictly smaller model. `droppable` selects which
// facts may be dropped (everything non-forced for global minimality, the
// facts touching one element for the pointwise check).
class SmallerModelSearch {
 public:
  SmallerModelSearch(Grounding& g, std::vector<size_t> droppable)
      : g_(g), droppable_(std::move(droppable)) {}

  // Depth-first, drop-before-keep, facts in (predicate, elements) order.
  bool run() {
    for (size_t f : droppable_) g_.set_state(f, FactState::Undecided);
    bool found = dfs(0, 0);
    if (!found)
      for (size_t f : droppable_) g_.set_state(f, FactState::In);
    return found;
  }

 private:
  Grounding& g_;
  std::vector<size_t> droppable_;

  bool any_violation() const {
    for (size_t ax = 0; ax < g_.axiom_count(); ++ax)
      if (g_.surely_violated(ax)) return true;
    return false;
  }

  // Force-keep name conjuncts demanded by certainly-fired constraints.
  // Returns false on a definite violation; fills `trail` with forced facts.
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
            if (pos < 0) continue;  // fact not even present in the candidate
            if (g_.fact_states()[pos] == FactState::Undecided) {
              g_.set_state(pos, FactState::In);
              trail.push_back(pos);
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  bool dfs(size_t idx, int drops) {
    while (idx < droppable_.size() && g_.fact_states()[droppable_[idx]] != FactState::Undecided)
      ++idx;
    if (idx == droppable_.size()) return drops > 0 && !any_violation();

    size_t f = droppable_[idx];
    for (FactState choice : {FactState::Out, FactState::In}) {
      g_.set_state(f, choice);
      std::vector<size_t> trail;
      if (propagate(trail)) {
        int d = drops + (choice == FactState::Out ? 1 : 0);
        if (dfs(idx + 1, d)) return true;
      }
      for (size_t t : trail) g_.set_state(t, FactState::Undecided);
      g_.set_state(f, FactState::Undecided);
    }
    return false;
  }
};

}  // namespace dense

inline std::vector<FactAtom> fact_atoms(const Interpretation& i, const KnowledgeBase& kb) {
  auto forced = dense::Grounding::forced_facts(kb, i);
  std::vector<FactAtom> out;
  for (const auto& [c, ext] : i.concepts)
    for (int e : ext) out.push_back({false, c, e, -1, forced.count({c, {e, -1}}) > 0});
  for (const auto& [r, ext] : i.roles)
    for (auto [s, o] : ext) out.push_back({true, r, s, o, forced.count({r, {s, o}}) > 0});
  std::sort(out.begin(), out.end(), [](const FactAtom& x, const FactAtom& y) {
    return std::tie(x.pred, x.a, x.b) < std::tie(y.pred, y.a, y.b);
  });
  return out;
}

namespace detail {

inline void require_model(const Interpretation& i, const KnowledgeBase& kb) {
  if (!is_model(i, kb)) throw std::runtime_error("not a model");
}

inline std::optional<Interpretation> smaller_model_search(const Interpretation& i,
                                                          const KnowledgeBase& kb,
                                                          std::optional<int> only_element) {
  dense::Grounding g(kb, i);
  std::vector<size_t> droppable;
  const auto& facts = g.facts();
  for (size_t f = 0; f < facts.size(); ++f) {
    if (facts[f].forced) continue;
    if (only_element &&
        !(facts[f].a == *only_element || (facts[f].is_role && facts[f].b == *only_element)))
      continue;
    droppable.push_back(f);
  }
  dense::SmallerModelSearch search(g, droppable);
  if (!search.run()) return std::nullopt;
  Interpretation j = g.rebuild(i);
  // independent re-validation of the witness
  if (!is_model(j, kb) || compare(j, i) != Comparison::StrictlySmaller)
    throw std::logic_error("smaller-model search produced an invalid witness");
  return j;
}

}  // namespace detail

// Some strictly smaller model over the same domain and individual map, if one
// exists. Requires i to be a model of kb.
inline std::optional<Interpretation> exists_smaller_model(const Interpretation& i,
                                                          const KnowledgeBase& kb) {
  detail::require_model(i, kb);
  return detail::smaller_model_search(i, kb, std::nullopt);
}

inline bool is_minimal(const Interpretation& i, const KnowledgeBase& kb) {
  return !exists_smaller_model(i, kb).has_value();
}

// No strictly smaller model that agrees with i outside a single element.
inline bool is_pointwise_minimal(const Interpretation& i, const KnowledgeBase& kb) {
  detail::require_model(i, kb);
  for (int e = 0; e < i.size(); ++e)
    if (detail::smaller_model_search(i, kb, e)) return false;
  return true;
}

// ---- brute-force enumeration oracle ------------------------------------------

namespace detail {

// Individuals in first-appearance order (ABox first, then concept syntax),
// used to lay out the lowest element ids.
inline std::vector<std::string> individuals_in_order(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& s) {
    if (seen.insert(s).second) out.push_back(s);
  };
  for (const auto& as : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&as)) add(ca->individual);
    else {
      const auto& ra = std::get<RoleAssertion>(as);
      add(ra.subject);
      add(ra.object);
    }
  }
  std::set<std::string> cs, rs, is;
  for (const auto& ax : kb.tbox) {
    collect_names(ax.lhs, cs, rs, is);
    collect_names(ax.rhs, cs, rs, is);
  }
  for (const auto& i : is) add(i);
  return out;
}

// Canonical rendering up to permutation of the domain. Permutations fixing
// the individual images merge models that differ only in anonymous-element
// names; without UNA the individual map itself is permuted along.
inline std::string canonical_form(const Interpretation& i, bool permute_individuals) {
  int n = i.size();
  std::set<int> named, active;
  if (!permute_individuals)
    for (const auto& [_, e] : i.individuals) named.insert(e);
  else
    for (const auto& [_, e] : i.individuals) active.insert(e);
  for (const auto& [_, ext] : i.concepts)
    for (int e : ext) active.insert(e);
  for (const auto& [_, ext] : i.roles)
    for (auto [s, o] : ext) {
      active.insert(s);
      active.insert(o);
    }

  // Only elements that occur in some fact influence the rendering. Active
  // anonymous elements are relabeled onto the lowest anonymous ids (in every
  // order); inactive ones never show up in the string and can stay put.
  std::vector<int> movable, targets;
  for (int d = 0; d < n; ++d)
    if (!named.count(d) && active.count(d)) movable.push_back(d);
  for (int d = 0; d < n && targets.size() < movable.size(); ++d)
    if (!named.count(d)) targets.push_back(d);
  if (movable.size() > 8) throw std::runtime_error("oracle instance too large");

  std::string best;
  std::vector<int> perm(n);
  for (int d = 0; d < n; ++d) perm[d] = d;
  std::vector<int> arrangement = targets;
  do {
    for (size_t k = 0; k < movable.size(); ++k) perm[movable[k]] = arrangement[k];
    std::string s;
    for (const auto& [ind, e] : i.individuals) s += ind + "=" + std::to_string(perm[e]) + ";";
    for (const auto& [c, ext] : i.concepts) {
      if (ext.empty()) continue;
      std::set<int> mapped;
      for (int e : ext) mapped.insert(perm[e]);
      s += c + ":";
      for (int e : mapped) s += std::to_string(e) + ",";
      s += ";";
    }
    for (const auto& [r, ext] : i.roles) {
      if (ext.empty()) continue;
      std::set<std::pair<int, int>> mapped;
      for (auto [x, y] : ext) mapped.insert({perm[x], perm[y]});
      s += r + ":";
      for (auto [x, y] : mapped) s += std::to_string(x) + ">" + std::to_string(y) + ",";
      s += ";";
    }
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return best;
}

}  // namespace detail

// All minimal models of kb over a domain of the given size, deduplicated up
// to renaming of anonymous elements. Enumerates every fact subset above the
// ABox-forced ones in increasing cardinality, so minimality can be tested
// against previously found models alone. Intended as an oracle: the fact
// universe is capped (default 24 facts).
inline std::vector<Interpretation> enumerate_minimal_models(const KnowledgeBase& kb,
                                                            int domain_size, bool una,
                                                            int cap = 24) {
  Signature sig = signature(kb);
  std::vector<std::string> inds = detail::individuals_in_order(kb);
  if (una && domain_size < static_cast<int>(inds.size()))
    throw std::runtime_error("domain size is smaller than the number of individuals");
  if (domain_size < 1) throw std::runtime_error("domain size must be at least 1");
  dense::check_domain(domain_size);

  const int n = domain_size;
  long long universe = static_cast<long long>(sig.concept_names.size()) * n +
                       static_cast<long long>(sig.role_names.size()) * n * n;
  if (universe > cap || universe > 62) throw std::runtime_error("oracle instance too large");

  // dense fact table over the full signature
  struct F {
    bool is_role;
    int pred;
    int a, b;
  };
  std::vector<F> facts;
  for (size_t c = 0; c < sig.concept_names.size(); ++c)
    for (int a = 0; a < n; ++a) facts.push_back({false, static_cast<int>(c), a, -1});
  for (size_t r = 0; r < sig.role_names.size(); ++r)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) facts.push_back({true, static_cast<int>(r), a, b});
  const int nf = static_cast<int>(facts.size());

  std::vector<Interpretation> out;
  std::set<std::string> canon_seen;

  // candidate individual maps: one under UNA, all maps otherwise
  std::vector<std::map<std::string, int>> maps;
  if (una) {
    std::map<std::string, int> m;
    for (size_t k = 0; k < inds.size(); ++k) m[inds[k]] = static_cast<int>(k);
    maps.push_back(std::move(m));
  } else {
    std::vector<int> v(inds.size(), 0);
    while (true) {
      std::map<std::string, int> m;
      for (size_t k = 0; k < inds.size(); ++k) m[inds[k]] = v[k];
      maps.push_back(std::move(m));
      size_t k = 0;
      while (k < v.size() && ++v[k] == n) v[k++] = 0;
      if (k == v.size()) break;
    }
    if (inds.empty()) maps.assign(1, {});
  }

  for (const auto& imap : maps) {
    Interpretation base;
    for (int d = 0; d < n; ++d) base.domain.push_back("e" + std::to_string(d));
    base.individuals = imap;

    std::uint64_t forced = 0;
    {
      Interpretation tmp = base;  // big enough to resolve individuals
      auto fs = dense::Grounding::forced_facts(kb, tmp);
      for (int f = 0; f < nf; ++f) {
        const F& fa = facts[f];
        const std::string& nm =
            fa.is_role ? sig.role_names[fa.pred] : sig.concept_names[fa.pred];
        if (fs.count({nm, {fa.a, fa.b}})) forced |= 1ull << f;
      }
    }

    std::vector<int> free_idx;
    for (int f = 0; f < nf; ++f)
      if (!(forced >> f & 1)) free_idx.push_back(f);
    const int k = static_cast<int>(free_idx.size());

    // exact evaluation over a fact mask
    std::vector<std::uint64_t> cext(sig.concept_names.size());
    std::vector<std::vector<std::uint64_t>> rsucc(sig.role_names.size()),
        rpred(sig.role_names.size());
    auto eval_mask = [&](std::uint64_t mask) {
      std::fill(cext.begin(), cext.end(), 0);
      for (auto& v : rsucc) v.assign(n, 0);
      for (auto& v : rpred) v.assign(n, 0);
      std::uint64_t m = mask;
      while (m) {
        int f = std::countr_zero(m);
        m &= m - 1;
        const F& fa = facts[f];
        if (fa.is_role) {
          rsucc[fa.pred][fa.a] |= 1ull << fa.b;
          rpred[fa.pred][fa.b] |= 1ull << fa.a;
        } else {
          cext[fa.pred] |= 1ull << fa.a;
        }
      }
    };
    std::map<std::string, int> cids, rids;
    for (size_t c = 0; c < sig.concept_names.size(); ++c) cids[sig.concept_names[c]] = c;
    for (size_t r = 0; r < sig.role_names.size(); ++r) rids[sig.role_names[r]] = r;

    auto eval_concept_mask = [&](const auto& self, const ConceptRef& c) -> std::uint64_t {
      std::uint64_t full = dense::full_mask(n);
      switch (c->kind) {
        case ConceptKind::Top: return full;
        case ConceptKind::Bot: return 0;
        case ConceptKind::Name: {
          auto it = cids.find(c->label);
          return it == cids.end() ? 0 : cext[it->second];
        }
        case ConceptKind::Nominal: {
          auto it = imap.find(c->label);
          if (it == imap.end()) throw std::runtime_error("unknown individual: " + c->label);
          return 1ull << it->second;
        }
        case ConceptKind::Not: return full & ~self(self, c->kids[0]);
        case ConceptKind::And: {
          std::uint64_t acc = full;
          for (const auto& kid : c->kids) acc &= self(self, kid);
          return acc;
        }
        case ConceptKind::Or: {
          std::uint64_t acc = 0;
          for (const auto& kid : c->kids) acc |= self(self, kid);
          return acc;
        }
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
          std::uint64_t body = self(self, c->kids[0]);
          auto it = rids.find(c->role.name);
          std::uint64_t outm = 0;
          for (int d = 0; d < n; ++d) {
            std::uint64_t edges = 0;
            if (it != rids.end())
              edges = c->role.inverse ? rpred[it->second][d] : rsucc[it->second][d];
            bool in = c->kind == ConceptKind::Exists ? (edges & body) != 0
                                                     : (edges & ~body) == 0;
            if (in) outm |= 1ull << d;
          }
          return outm;
        }
      }
      throw std::logic_error("unreachable concept kind");
    };

    auto is_model_mask = [&](std::uint64_t mask) {
      eval_mask(mask);
      for (const auto& ax : kb.tbox) {
        std::uint64_t lhs = eval_concept_mask(eval_concept_mask, ax.lhs);
        std::uint64_t rhs = eval_concept_mask(eval_concept_mask, ax.rhs);
        if (lhs & ~rhs) return false;
      }
      return true;
    };

    std::vector<std::uint64_t> minimal_masks;
    auto subsumed = [&](std::uint64_t mask) {
      for (std::uint64_t m : minimal_masks)
        if ((m & ~mask) == 0) return true;
      return false;
    };

    // increasing-cardinality enumeration: any proper subset of a mask is
    // visited before it, so the antichain test is exact
    for (int c = 0; c <= k; ++c) {
      std::uint64_t sub = (c == 0) ? 0 : (1ull << c) - 1;
      while (true) {
        std::uint64_t mask = forced;
        std::uint64_t s = sub;
        while (s) {
          int bit = std::countr_zero(s);
          s &= s - 1;
          mask |= 1ull << free_idx[bit];
        }
        if (!subsumed(mask) && is_model_mask(mask)) minimal_masks.push_back(mask);
        if (c == 0) break;
        // Gosper's hack: next bit pattern with c bits
        std::uint64_t lo = sub & (~sub + 1);
        std::uint64_t carry = sub + lo;
        sub = (((sub ^ carry) >> 2) / lo) | carry;
        if (sub >= (1ull << k)) break;
      }
    }

    for (std::uint64_t mask : minimal_masks) {
      Interpretation m = base;
      std::uint64_t mm = mask;
      while (mm) {
        int f = std::countr_zero(mm);
        mm &= mm - 1;
        const F& fa = facts[f];
        if (fa.is_role) m.roles[sig.role_names[fa.pred]].insert({fa.a, fa.b});
        else m.concepts[sig.concept_names[fa.pred]].insert(fa.a);
      }
      if (canon_seen.insert(detail::canonical_form(m, !una)).second) out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace minimodel
