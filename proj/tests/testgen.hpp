#pragma once

// Seeded random structure generators shared by the unit tests. Everything is
// driven by an explicit std::mt19937 so failures reproduce from the seed
// printed by the test.

#include <random>
#include <string>
#include <vector>

#include "minimodel/syntax.hpp"

namespace testgen {

using minimodel::ConceptRef;

struct Vocab {
  std::vector<std::string> concepts;
  std::vector<std::string> roles;
  std::vector<std::string> individuals;
  bool allow_alc = true;       // not / or / forall
  bool allow_inverse = true;
  bool allow_nominal = true;
  bool allow_bot = true;
};

inline Vocab small_vocab() {
  return Vocab{{"A", "B", "C"}, {"r", "s"}, {"a", "b"}};
}

inline Vocab el_vocab() {
  Vocab v = small_vocab();
  v.allow_alc = false;
  v.allow_inverse = false;
  v.allow_nominal = false;
  v.allow_bot = false;
  return v;
}

template <class Rng>
const std::string& pick(const std::vector<std::string>& xs, Rng& rng) {
  std::uniform_int_distribution<size_t> d(0, xs.size() - 1);
  return xs[d(rng)];
}

template <class Rng>
minimodel::Role random_role(const Vocab& v, Rng& rng) {
  minimodel::Role r{pick(v.roles, rng), false};
  if (v.allow_inverse && std::uniform_int_distribution<int>(0, 3)(rng) == 0) r.inverse = true;
  return r;
}

template <class Rng>
ConceptRef random_concept(const Vocab& v, int depth, Rng& rng) {
  using namespace minimodel;
  std::uniform_int_distribution<int> die(0, depth > 0 ? 9 : 4);
  switch (die(rng)) {
    case 0: return top();
    case 1: return v.allow_bot ? bot() : name(pick(v.concepts, rng));
    case 2:
    case 3: return name(pick(v.concepts, rng));
    case 4:
      return v.allow_nominal ? nominal(pick(v.individuals, rng)) : name(pick(v.concepts, rng));
    case 5:
      if (v.allow_alc) return neg(random_concept(v, depth - 1, rng));
      return exists(random_role(v, rng), random_concept(v, depth - 1, rng));
    case 6: {
      std::vector<ConceptRef> parts{random_concept(v, depth - 1, rng),
                                    random_concept(v, depth - 1, rng)};
      return conj(std::move(parts));
    }
    case 7: {
      if (v.allow_alc)
        return disj(random_concept(v, depth - 1, rng), random_concept(v, depth - 1, rng));
      return conj(random_concept(v, depth - 1, rng), random_concept(v, depth - 1, rng));
    }
    case 8: return exists(random_role(v, rng), random_concept(v, depth - 1, rng));
    default:
      if (v.allow_alc) return forall(random_role(v, rng), random_concept(v, depth - 1, rng));
      return exists(random_role(v, rng), random_concept(v, depth - 1, rng));
  }
}

template <class Rng>
minimodel::KnowledgeBase random_kb(const Vocab& v, int axioms, int assertions, int depth,
                                   Rng& rng) {
  minimodel::KnowledgeBase kb;
  std::set<minimodel::Axiom, minimodel::AxiomLess> seen;
  for (int i = 0; i < axioms; ++i) {
    minimodel::Axiom ax{random_concept(v, depth, rng), random_concept(v, depth, rng)};
    if (seen.insert(ax).second) kb.tbox.push_back(ax);
  }
  std::uniform_int_distribution<int> coin(0, 1);
  std::set<minimodel::Assertion> seen_as;
  for (int i = 0; i < assertions; ++i) {
    minimodel::Assertion as;
    if (coin(rng))
      as = minimodel::ConceptAssertion{pick(v.concepts, rng), pick(v.individuals, rng)};
    else
      as = minimodel::RoleAssertion{pick(v.roles, rng), pick(v.individuals, rng),
                                    pick(v.individuals, rng)};
    if (seen_as.insert(as).second) kb.abox.push_back(as);
  }
  return kb;
}

}  // namespace testgen
