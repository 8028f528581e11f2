#include <catch2/catch_amalgamated.hpp>

#include "minimodel/interpretation.hpp"
#include "testgen.hpp"

using namespace minimodel;

namespace {

// Two elements d, e mapped from a, b; A holds everywhere; r is the 2-cycle.
Interpretation two_cycle() {
  Interpretation i;
  i.domain = {"d", "e"};
  i.individuals = {{"a", 0}, {"b", 1}};
  i.concepts["A"] = {0, 1};
  i.roles["r"] = {{0, 1}, {1, 0}};
  return i;
}

KnowledgeBase cycle_kb() {
  return parse_kb("exists r. A [= A\nr(a, b)\nr(b, a)\n");
}

}  // namespace

TEST_CASE("existential evaluation over a role cycle") {
  Interpretation i = two_cycle();
  CHECK(eval_concept(i, parse_concept("exists r. A")) == std::set<int>{0, 1});
  CHECK(eval_concept(i, parse_concept("exists r. not A")).empty());
  CHECK(eval_concept(i, parse_concept("forall r. A")) == std::set<int>{0, 1});
}

TEST_CASE("contradictions evaluate to the empty set") {
  Interpretation i = two_cycle();
  CHECK(eval_concept(i, parse_concept("(TOP and not TOP)")).empty());
  CHECK(eval_concept(i, parse_concept("BOT")).empty());
  CHECK(eval_concept(i, parse_concept("TOP")) == std::set<int>{0, 1});
}

TEST_CASE("nominals evaluate through the individual map") {
  Interpretation i = two_cycle();
  CHECK(eval_concept(i, parse_concept("{b}")) == std::set<int>{1});
  CHECK(eval_concept(i, parse_concept("not {b}")) == std::set<int>{0});
  CHECK_THROWS_WITH(eval_concept(i, parse_concept("{zed}")), "unknown individual: zed");
}

TEST_CASE("inverse roles look up predecessors") {
  Interpretation i;
  i.domain = {"ann", "bob", "m"};
  i.individuals = {{"ann", 0}, {"bob", 1}};
  i.concepts["Fan"] = {0};
  i.concepts["Critic"] = {1};
  i.concepts["Movie"] = {2};
  i.roles["likes"] = {{0, 2}};
  i.roles["dislikes"] = {{1, 2}};
  auto goal = parse_concept("(Movie and exists dislikes^-. TOP)");
  CHECK(eval_concept(i, goal) == std::set<int>{2});
}

TEST_CASE("modelhood checks assertions and inclusions") {
  Interpretation i = two_cycle();
  KnowledgeBase kb = cycle_kb();
  CHECK(is_model(i, kb));

  SECTION("emptying A keeps the axiom vacuously satisfied") {
    i.concepts.erase("A");
    CHECK(is_model(i, kb));
  }
  SECTION("a violated concept assertion is reported") {
    KnowledgeBase one = parse_kb("A(a)\n");
    Interpretation j;
    j.domain = {"d"};
    j.individuals = {{"a", 0}};
    std::string why;
    CHECK_FALSE(is_model(j, one, &why));
    CHECK(why == "assertion A(a) violated");
  }
  SECTION("an unmapped individual is a diagnostic, not an exception") {
    i.individuals.erase("b");
    std::string why;
    CHECK_FALSE(is_model(i, kb, &why));
    CHECK(why == "individual 'b' is not mapped");
  }
  SECTION("a violated inclusion names the element") {
    i.concepts["A"] = {0};  // d has an r-successor in A via (d,e)? no: e not in A; (e,d): e sees A
    std::string why;
    CHECK_FALSE(is_model(i, kb, &why));
    CHECK(why.find("axiom") == 0);
    CHECK(why.find("violated at element e") != std::string::npos);
  }
}

TEST_CASE("comparison follows pointwise extension inclusion") {
  Interpretation i = two_cycle();
  Interpretation j = i;
  j.concepts["A"].clear();

  CHECK(compare(j, i) == Comparison::StrictlySmaller);
  CHECK(compare(i, j) == Comparison::StrictlyLarger);
  CHECK(compare(i, i) == Comparison::Equal);

  SECTION("absent and empty extensions are the same thing") {
    Interpretation k = i;
    k.concepts.erase("A");
    CHECK(compare(j, k) == Comparison::Equal);
  }
  SECTION("different domains are incomparable") {
    Interpretation k = i;
    k.domain.push_back("f");
    CHECK(compare(i, k) == Comparison::Incomparable);
  }
  SECTION("different individual maps are incomparable") {
    Interpretation k = i;
    k.individuals["a"] = 1;
    k.individuals["b"] = 0;
    CHECK(compare(i, k) == Comparison::Incomparable);
  }
  SECTION("crossing extensions are incomparable") {
    Interpretation k = i;
    k.concepts["A"] = {0};
    k.concepts["B"] = {1};
    Interpretation l = i;
    l.concepts["A"] = {1};
    CHECK(compare(k, l) == Comparison::Incomparable);
  }
}

TEST_CASE("interpretation text round trips") {
  Interpretation i;
  i.domain = {"e0", "e1", "e2"};
  i.individuals = {{"ann", 0}, {"bob", 1}};
  i.concepts["Movie"] = {2};
  i.roles["likes"] = {{0, 2}, {1, 2}};
  Interpretation back = parse_interpretation(render_interpretation(i));
  CHECK(back == i);

  Interpretation spaced = parse_interpretation(
      "domain: x y\n"
      "# comment\n"
      "ind a = x\n"
      "conc A : y\n"
      "role r : x -> y y -> y\n");
  CHECK(spaced.concepts["A"] == std::set<int>{1});
  CHECK(spaced.roles["r"].size() == 2);

  CHECK_THROWS_AS(parse_interpretation("conc A: x\n"), ParseError);
  CHECK_THROWS_AS(parse_interpretation("domain: x x\n"), ParseError);
  CHECK_THROWS_AS(parse_interpretation("domain: x\nconc A: y\n"), ParseError);
  CHECK_THROWS_AS(parse_interpretation("domain: x\nrole r: x ->\n"), ParseError);
}

TEST_CASE("una check spots shared elements") {
  Interpretation i = two_cycle();
  CHECK(una_holds(i));
  i.individuals["b"] = 0;
  CHECK_FALSE(una_holds(i));
}

namespace {

template <class Rng>
Interpretation random_interpretation(const testgen::Vocab& v, int n, Rng& rng) {
  Interpretation i;
  for (int e = 0; e < n; ++e) i.domain.push_back("e" + std::to_string(e));
  int next = 0;
  for (const auto& ind : v.individuals) i.individuals[ind] = next++ % n;
  std::uniform_int_distribution<int> coin(0, 2);
  for (const auto& c : v.concepts)
    for (int e = 0; e < n; ++e)
      if (coin(rng) == 0) i.concepts[c].insert(e);
  for (const auto& r : v.roles)
    for (int s = 0; s < n; ++s)
      for (int o = 0; o < n; ++o)
        if (coin(rng) == 0) i.roles[r].insert({s, o});
  return i;
}

// Drop a random selection of facts, keeping domain and individual map.
template <class Rng>
Interpretation drop_some(const Interpretation& i, Rng& rng) {
  Interpretation j = i;
  std::uniform_int_distribution<int> coin(0, 3);
  for (auto& [_, ext] : j.concepts) {
    std::set<int> kept;
    for (int e : ext)
      if (coin(rng) != 0) kept.insert(e);
    ext = kept;
  }
  for (auto& [_, ext] : j.roles) {
    std::set<std::pair<int, int>> kept;
    for (auto p : ext)
      if (coin(rng) != 0) kept.insert(p);
    ext = kept;
  }
  return j;
}

}  // namespace

TEST_CASE("evaluation agrees with negation normal form") {
  std::mt19937 rng(7);
  auto v = testgen::small_vocab();
  for (int trial = 0; trial < 200; ++trial) {
    Interpretation i = random_interpretation(v, 3, rng);
    ConceptRef c = testgen::random_concept(v, 3, rng);
    INFO("concept: " << to_string(c));
    CHECK(eval_concept(i, c) == eval_concept(i, nnf(c)));
  }
}

TEST_CASE("dropping facts shrinks positive-existential extensions") {
  std::mt19937 rng(11);
  auto v = testgen::small_vocab();
  v.allow_alc = false;  // monotonicity holds for not/forall-free concepts
  for (int trial = 0; trial < 200; ++trial) {
    Interpretation i = random_interpretation(v, 3, rng);
    Interpretation j = drop_some(i, rng);
    REQUIRE(compare(j, i) != Comparison::Incomparable);
    ConceptRef c = testgen::random_concept(v, 3, rng);
    auto ej = eval_concept(j, c);
    auto ei = eval_concept(i, c);
    INFO("concept: " << to_string(c));
    CHECK(std::includes(ei.begin(), ei.end(), ej.begin(), ej.end()));
  }
}

TEST_CASE("comparison is a partial order for a fixed domain and map") {
  std::mt19937 rng(13);
  auto v = testgen::small_vocab();
  for (int trial = 0; trial < 100; ++trial) {
    Interpretation a = random_interpretation(v, 3, rng);
    Interpretation b = drop_some(a, rng);
    Interpretation c = drop_some(b, rng);
    // antisymmetry
    if (compare(a, b) == Comparison::StrictlySmaller)
      CHECK(compare(b, a) == Comparison::StrictlyLarger);
    // transitivity along the constructed chain
    if (compare(c, b) == Comparison::StrictlySmaller &&
        compare(b, a) == Comparison::StrictlySmaller)
      CHECK(compare(c, a) == Comparison::StrictlySmaller);
  }
}
