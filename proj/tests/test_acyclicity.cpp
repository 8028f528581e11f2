#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "minimodel/acyclicity.hpp"
#include "minimodel/minimality.hpp"
#include "testgen.hpp"

using namespace minimodel;

namespace {

// ---- independent re-derivation of the graph, straight from the equations ----

struct OccOracle {
  std::set<DgNode> pos, neg, ex;
};

OccOracle occ_oracle(const ConceptRef& c) {
  OccOracle o;
  switch (c->kind) {
    case ConceptKind::Top: o.pos = {top_node()}; break;
    case ConceptKind::Bot: o.neg = {top_node()}; break;
    case ConceptKind::Name: o.pos = {concept_node(c->label)}; break;
    case ConceptKind::Nominal: o.pos = {nominal_node(c->label)}; break;
    case ConceptKind::Not:
      if (c->kids[0]->kind == ConceptKind::Name) o.neg = {concept_node(c->kids[0]->label)};
      break;
    case ConceptKind::And:
    case ConceptKind::Or:
      for (const auto& k : c->kids) {
        OccOracle ko = occ_oracle(k);
        o.pos.insert(ko.pos.begin(), ko.pos.end());
        o.neg.insert(ko.neg.begin(), ko.neg.end());
        o.ex.insert(ko.ex.begin(), ko.ex.end());
      }
      break;
    case ConceptKind::Exists: {
      OccOracle ko = occ_oracle(c->kids[0]);
      o.pos = ko.pos;
      o.pos.insert(role_node(c->role.name));
      o.neg = ko.neg;
      o.ex = o.pos;
      break;
    }
    case ConceptKind::Forall: {
      OccOracle ko = occ_oracle(c->kids[0]);
      o.pos = ko.pos;
      o.neg = ko.neg;
      o.neg.insert(role_node(c->role.name));
      o.ex = ko.ex;
      break;
    }
  }
  return o;
}

void collect_nodes_oracle(const ConceptRef& c, std::set<DgNode>& out) {
  if (c->kind == ConceptKind::Top || c->kind == ConceptKind::Bot) out.insert(top_node());
  if (c->kind == ConceptKind::Name) out.insert(concept_node(c->label));
  if (c->kind == ConceptKind::Nominal) out.insert(nominal_node(c->label));
  if (c->kind == ConceptKind::Exists || c->kind == ConceptKind::Forall)
    out.insert(role_node(c->role.name));
  for (const auto& k : c->kids) collect_nodes_oracle(k, out);
}

// enumerate candidate pairs over the node set and test Occ membership
std::vector<DgEdge> edge_oracle(const std::vector<Axiom>& tbox) {
  std::set<DgNode> nodes;
  for (const Axiom& ax : tbox) {
    collect_nodes_oracle(ax.lhs, nodes);
    collect_nodes_oracle(ax.rhs, nodes);
  }
  std::map<std::pair<DgNode, DgNode>, bool> acc;
  for (const Axiom& ax : tbox) {
    OccOracle o = occ_oracle(nnf(disj(neg(ax.lhs), ax.rhs)));
    for (const DgNode& p1 : nodes)
      for (const DgNode& p2 : nodes)
        if (o.neg.count(p1) && o.pos.count(p2)) acc[{p1, p2}] |= o.ex.count(p2) > 0;
  }
  std::vector<DgEdge> out;
  for (const auto& [pair, star] : acc) out.push_back({pair.first, pair.second, star});
  std::sort(out.begin(), out.end());
  return out;
}

// naive classification through a Floyd-Warshall closure
Acyclicity classify_oracle(const std::vector<Axiom>& tbox) {
  std::vector<DgEdge> edges = edge_oracle(tbox);
  std::set<DgNode> node_set;
  for (const DgEdge& e : edges) {
    node_set.insert(e.src);
    node_set.insert(e.dst);
  }
  std::vector<DgNode> nodes(node_set.begin(), node_set.end());
  auto idx = [&](const DgNode& n) {
    return std::find(nodes.begin(), nodes.end(), n) - nodes.begin();
  };
  size_t n = nodes.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const DgEdge& e : edges) reach[idx(e.src)][idx(e.dst)] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;

  bool top_reaches = false;
  for (size_t j = 0; j < n; ++j)
    if (std::find(nodes.begin(), nodes.end(), top_node()) != nodes.end() &&
        reach[idx(top_node())][j])
      top_reaches = true;
  bool any_cycle = false, star_cycle = false;
  for (size_t i = 0; i < n; ++i) any_cycle |= reach[i][i];
  for (const DgEdge& e : edges)
    if (e.star && (e.src == e.dst || reach[idx(e.dst)][idx(e.src)])) star_cycle = true;

  if (!any_cycle && !top_reaches) return Acyclicity::StronglyAcyclic;
  if (!star_cycle && !top_reaches) return Acyclicity::WeaklyAcyclic;
  return Acyclicity::Cyclic;
}

bool has_edge(const DependencyGraph& g, const DgNode& s, const DgNode& d, bool star) {
  for (const DgEdge& e : g.edges)
    if (e.src == s && e.dst == d && e.star == star) return true;
  return false;
}

// Example 3's two-tree construction at depth 1
KnowledgeBase binary_tree_kb() {
  return parse_kb(
      "L0 [= (exists r0. L1 and exists l0. L1)\n"
      "L1 [= Lp0\n"
      "Lp0 [= exists pick. TOP\n"
      "(Lp0 and exists pick. Left) [= exists lp0. Lp1l\n"
      "(Lp0 and exists pick. Right) [= exists rp0. Lp1r\n"
      "(Lp1l and Lp1r) [= Lp1\n"
      "L0(a)\nLeft(o)\nRight(op)\n");
}

// Example 4's truth-value gadget
KnowledgeBase truth_value_kb() {
  return parse_kb(
      "N1 [= exists val. TV\n"
      "N2 [= exists val. TV\n"
      "N1 [= exists read. TOP\n"
      "exists val. T [= Tp\n"
      "exists val. F [= Fp\n"
      "(Tp and exists read. (N2 and Tp)) [= Goal\n"
      "(Fp and exists read. (N2 and Fp)) [= Goal\n"
      "N1(a)\nN2(b)\nT(v1)\nF(v2)\n");
}

}  // namespace

TEST_CASE("occurrence sets follow the recursive equations") {
  auto occ = occurrence_sets(parse_concept("exists r. A"));
  CHECK(occ.pos == std::set<DgNode>{role_node("r"), concept_node("A")});
  CHECK(occ.neg.empty());
  CHECK(occ.pos_exists == std::set<DgNode>{role_node("r"), concept_node("A")});

  occ = occurrence_sets(parse_concept("forall r. not A"));
  CHECK(occ.pos.empty());
  CHECK(occ.neg == std::set<DgNode>{role_node("r"), concept_node("A")});
  CHECK(occ.pos_exists.empty());

  occ = occurrence_sets(parse_concept("{a}"));
  CHECK(occ.pos == std::set<DgNode>{nominal_node("a")});
  CHECK(occ.neg.empty());
  CHECK(occ.pos_exists.empty());
}

TEST_CASE("occurrence sets reject concepts outside NNF") {
  CHECK_THROWS_WITH(occurrence_sets(neg(parse_concept("(A and B)"))), "concept not in NNF");
  CHECK_THROWS_WITH(occurrence_sets(neg(parse_concept("exists r. A"))), "concept not in NNF");
}

TEST_CASE("dependency graph of a propagating axiom") {
  KnowledgeBase kb = parse_kb("exists r. A [= A\n");
  DependencyGraph g = build_dependency_graph(kb.tbox);
  REQUIRE(g.edges.size() == 2);
  CHECK(has_edge(g, role_node("r"), concept_node("A"), false));
  CHECK(has_edge(g, concept_node("A"), concept_node("A"), false));
}

TEST_CASE("dependency graph of an existential right-hand side") {
  KnowledgeBase kb = parse_kb("A [= exists r. B\n");
  DependencyGraph g = build_dependency_graph(kb.tbox);
  REQUIRE(g.edges.size() == 2);
  CHECK(has_edge(g, concept_node("A"), role_node("r"), true));
  CHECK(has_edge(g, concept_node("A"), concept_node("B"), true));
}

TEST_CASE("the empty TBox yields the empty graph") {
  DependencyGraph g = build_dependency_graph({});
  CHECK(g.nodes.empty());
  CHECK(g.edges.empty());
  CHECK(classify_acyclicity({}).classification == Acyclicity::StronglyAcyclic);
}

TEST_CASE("Top on the left makes every target reachable from Top") {
  KnowledgeBase kb = parse_kb("TOP [= A\n");
  AcyclicityReport report = classify_acyclicity(kb.tbox);
  CHECK(report.classification == Acyclicity::Cyclic);
  REQUIRE(report.top_path.has_value());
  CHECK(*report.top_path == std::vector<DgNode>{top_node(), concept_node("A")});
}

TEST_CASE("Bot on the right is a negative Top occurrence and harmless") {
  KnowledgeBase kb = parse_kb("A [= BOT\n");
  DependencyGraph g = build_dependency_graph(kb.tbox);
  CHECK(g.edges.empty());
  CHECK(g.nodes.count(top_node()) == 1);
  CHECK(classify_acyclicity(kb.tbox).classification == Acyclicity::StronglyAcyclic);
}

TEST_CASE("nominals take edges in but never out") {
  KnowledgeBase to_nominal = parse_kb("A [= {a}\n");
  DependencyGraph g = build_dependency_graph(to_nominal.tbox);
  REQUIRE(g.edges.size() == 1);
  CHECK(has_edge(g, concept_node("A"), nominal_node("a"), false));

  KnowledgeBase from_nominal = parse_kb("{a} [= A\n");
  g = build_dependency_graph(from_nominal.tbox);
  CHECK(g.edges.empty());
  CHECK(g.nodes.count(nominal_node("a")) == 1);
}

TEST_CASE("a plain self-loop is weakly but not strongly acyclic") {
  KnowledgeBase kb = parse_kb("exists r. A [= A\n");
  AcyclicityReport report = classify_acyclicity(kb.tbox);
  CHECK(report.classification == Acyclicity::WeaklyAcyclic);
  REQUIRE(report.cycle.has_value());
  CHECK(*report.cycle == std::vector<DgNode>{concept_node("A"), concept_node("A")});
  CHECK_FALSE(report.top_path.has_value());
}

TEST_CASE("a star self-loop breaks weak acyclicity") {
  KnowledgeBase kb = parse_kb("exists r. A [= exists s. A\n");
  AcyclicityReport report = classify_acyclicity(kb.tbox);
  CHECK(report.classification == Acyclicity::Cyclic);
  REQUIRE(report.cycle.has_value());
  CHECK(*report.cycle == std::vector<DgNode>{concept_node("A"), concept_node("A")});

  DependencyGraph g = build_dependency_graph(kb.tbox);
  CHECK(has_edge(g, concept_node("A"), concept_node("A"), true));
}

TEST_CASE("the two-tree and truth-value fixtures are strongly acyclic") {
  CHECK(classify_acyclicity(binary_tree_kb().tbox).classification ==
        Acyclicity::StronglyAcyclic);
  CHECK(classify_acyclicity(truth_value_kb().tbox).classification ==
        Acyclicity::StronglyAcyclic);

  // the Top node occurs (under existentials) but has no outgoing edges
  DependencyGraph g = build_dependency_graph(truth_value_kb().tbox);
  CHECK(g.nodes.count(top_node()) == 1);
  for (const DgEdge& e : g.edges) CHECK(e.src != top_node());
}

TEST_CASE("graph rendering is sorted and marks star edges") {
  KnowledgeBase kb = parse_kb("exists r. A [= A\nA [= exists s. B\n");
  DependencyGraph g = build_dependency_graph(kb.tbox);
  CHECK(render_dependency_graph(g) ==
        "EDGE A A\n"
        "EDGE A B STAR\n"
        "EDGE A s STAR\n"
        "EDGE r A\n");
}

TEST_CASE("edges match the naive membership oracle") {
  testgen::Vocab v = testgen::small_vocab();
  std::mt19937 rng(24680);
  for (int trial = 0; trial < 250; ++trial) {
    std::uniform_int_distribution<int> nax(1, 4);
    KnowledgeBase kb = testgen::random_kb(v, nax(rng), 0, 2, rng);
    INFO("trial " << trial << "\n" << render_kb(kb));

    DependencyGraph g = build_dependency_graph(kb.tbox);
    CHECK(g.edges == edge_oracle(kb.tbox));

    AcyclicityReport report = classify_acyclicity(kb.tbox);
    CHECK(report.classification == classify_oracle(kb.tbox));

    // witnesses must re-validate against the graph
    if (report.cycle) {
      REQUIRE(report.cycle->size() >= 2);
      CHECK(report.cycle->front() == report.cycle->back());
      for (size_t k = 0; k + 1 < report.cycle->size(); ++k) {
        bool present = has_edge(g, (*report.cycle)[k], (*report.cycle)[k + 1], true) ||
                       has_edge(g, (*report.cycle)[k], (*report.cycle)[k + 1], false);
        CHECK(present);
      }
    }
    if (report.top_path) {
      CHECK(report.top_path->front() == top_node());
      for (size_t k = 0; k + 1 < report.top_path->size(); ++k) {
        bool present = has_edge(g, (*report.top_path)[k], (*report.top_path)[k + 1], true) ||
                       has_edge(g, (*report.top_path)[k], (*report.top_path)[k + 1], false);
        CHECK(present);
      }
    }
  }
}

TEST_CASE("minimality and pointwise minimality coincide when strongly acyclic at depth one") {
  testgen::Vocab v{{"A", "B"}, {"r"}, {"a"}};
  std::mt19937 rng(13579);
  int done = 0;
  for (int attempt = 0; attempt < 600 && done < 40; ++attempt) {
    std::uniform_int_distribution<int> nax(1, 3), nas(0, 2);
    KnowledgeBase kb = testgen::random_kb(v, nax(rng), nas(rng), 1, rng);
    if (classify_acyclicity(kb.tbox).classification != Acyclicity::StronglyAcyclic) continue;
    INFO("attempt " << attempt << "\n" << render_kb(kb));

    // brute-force every interpretation over two elements
    Interpretation base;
    base.domain = {"e0", "e1"};
    bool uses_a = false;
    std::set<std::string> cs, rs, is;
    for (const auto& ax : kb.tbox) {
      detail::collect_names(ax.lhs, cs, rs, is);
      detail::collect_names(ax.rhs, cs, rs, is);
    }
    uses_a = !kb.abox.empty() || is.count("a");
    if (uses_a) base.individuals["a"] = 0;

    Signature sig = signature(kb);
    struct F {
      bool role;
      std::string pred;
      int a, b;
    };
    std::vector<F> facts;
    for (const auto& c : sig.concept_names)
      for (int d = 0; d < 2; ++d) facts.push_back({false, c, d, -1});
    for (const auto& r : sig.role_names)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) facts.push_back({true, r, x, y});
    REQUIRE(facts.size() <= 12);

    int models_seen = 0;
    for (std::uint64_t mask = 0; mask < (1ull << facts.size()); ++mask) {
      Interpretation i = base;
      for (size_t f = 0; f < facts.size(); ++f) {
        if (!(mask >> f & 1)) continue;
        if (facts[f].role) i.roles[facts[f].pred].insert({facts[f].a, facts[f].b});
        else i.concepts[facts[f].pred].insert(facts[f].a);
      }
      if (!is_model(i, kb)) continue;
      if (++models_seen > 6) break;  // a handful per KB is plenty
      CHECK(is_minimal(i, kb) == is_pointwise_minimal(i, kb));
    }
    if (models_seen > 0) ++done;
  }
  CHECK(done == 40);
}
