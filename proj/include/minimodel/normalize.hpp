#pragma once

// Modal-depth reduction for ELIO-bottom knowledge bases.
//
// normalize_md1 rewrites every TBox axiom to modal depth at most one by
// naming nested subconcepts. The result is a conservative extension of the
// input: restricted to the original signature, its minimal models are exactly
// the minimal models of the input, and its acyclicity class is unchanged.
// The ABox and the goal concept are carried through untouched.
//
// Three rewrite steps, applied to a fixpoint:
//   * a right side that is a conjunction deeper than one is split into one
//     axiom per conjunct;
//   * a left side deeper than one has each existential subterm of depth one
//     sitting under another quantifier replaced by a fresh name N, with the
//     companion axiom  exists r. B [= N  emitted in front;
//   * a right side  exists r. B  with a deep body keeps only a fresh witness
//     name,  exists r. N,  with the companion  N [= B  emitted behind.
// Identical subterms reuse their fresh name, so the output stays small and
// byte-reproducible. Left and right companions point in opposite directions,
// which is why the two reuse tables are kept separate.

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "minimodel/syntax.hpp"

namespace minimodel {
namespace detail {

class Md1Rewriter {
 public:
  explicit Md1Rewriter(const KnowledgeBase& kb) {
    // Fresh names use the reserved "__n" prefix. If the input already uses
    // such names, numbering starts above them instead of colliding.
    for (const auto& nm : signature(kb).concept_names) {
      if (nm.size() <= 3 || nm.compare(0, 3, "__n") != 0) continue;
      std::string digits = nm.substr(3);
      if (digits.find_first_not_of("0123456789") != std::string::npos) continue;
      try {
        counter_ = std::max(counter_, static_cast<int>(std::stoul(digits)));
      } catch (const std::out_of_range&) {
      }
    }
    queue_.assign(kb.tbox.begin(), kb.tbox.end());
  }

  std::vector<Axiom> run() {
    std::vector<Axiom> out;
    std::set<Axiom, AxiomLess> seen;
    while (!queue_.empty()) {
      Axiom ax = queue_.front();
      queue_.pop_front();
      if (modal_depth(ax.lhs) <= 1 && modal_depth(ax.rhs) <= 1) {
        if (seen.insert(ax).second) out.push_back(std::move(ax));
        continue;
      }
      step(std::move(ax));
    }
    return out;
  }

 private:
  int counter_ = 0;
  std::map<std::string, std::string> lhs_reuse_;  // printed exists r. B -> name
  std::map<std::string, std::string> rhs_reuse_;  // printed body B -> name
  std::deque<Axiom> queue_;

  std::string fresh() { return "__n" + std::to_string(++counter_); }

  void step(Axiom ax) {
    if (ax.rhs->kind == ConceptKind::And && modal_depth(ax.rhs) > 1) {
      for (auto it = ax.rhs->kids.rbegin(); it != ax.rhs->kids.rend(); ++it)
        queue_.push_front(Axiom{ax.lhs, *it});
      return;
    }
    if (modal_depth(ax.lhs) > 1) {
      std::vector<Axiom> companions;
      ConceptRef lhs = abstract_nested(ax.lhs, 0, companions);
      queue_.push_front(Axiom{std::move(lhs), ax.rhs});
      for (auto it = companions.rbegin(); it != companions.rend(); ++it)
        queue_.push_front(std::move(*it));
      return;
    }
    // Only a deep existential can remain on the right at this point.
    if (ax.rhs->kind != ConceptKind::Exists)
      throw std::logic_error("normalization reached an unexpected axiom shape");
    const ConceptRef& body = ax.rhs->kids[0];
    std::string key = to_string(body);
    auto it = rhs_reuse_.find(key);
    bool known = it != rhs_reuse_.end();
    std::string nm = known ? it->second : fresh();
    if (!known) {
      rhs_reuse_.emplace(std::move(key), nm);
      queue_.push_front(Axiom{name(nm), body});
    }
    queue_.push_front(Axiom{ax.lhs, exists(ax.rhs->role, name(nm))});
  }

  // Replaces every depth-one existential nested under a quantifier with a
  // fresh name; one call shrinks the modal depth of the left side by one.
  ConceptRef abstract_nested(const ConceptRef& c, int depth, std::vector<Axiom>& companions) {
    switch (c->kind) {
      case ConceptKind::Exists: {
        if (depth >= 1 && modal_depth(c) == 1) {
          std::string key = to_string(c);
          auto it = lhs_reuse_.find(key);
          if (it != lhs_reuse_.end()) return name(it->second);
          std::string nm = fresh();
          lhs_reuse_.emplace(std::move(key), nm);
          companions.push_back(Axiom{c, name(nm)});
          return name(nm);
        }
        return exists(c->role, abstract_nested(c->kids[0], depth + 1, companions));
      }
      case ConceptKind::And: {
        std::vector<ConceptRef> parts;
        parts.reserve(c->kids.size());
        for (const auto& k : c->kids) parts.push_back(abstract_nested(k, depth, companions));
        return conj(std::move(parts));
      }
      default:
        return c;  // names, nominals, TOP, BOT carry no depth
    }
  }
};

}  // namespace detail

inline KnowledgeBase normalize_md1(const KnowledgeBase& kb) {
  DlFragment f = classify_fragment(kb);
  if (f == DlFragment::ALC || f == DlFragment::ALCIO)
    throw std::runtime_error("fragment not supported");
  detail::Md1Rewriter rw(kb);
  return KnowledgeBase{rw.run(), kb.abox, kb.goal};
}

}  // namespace minimodel
