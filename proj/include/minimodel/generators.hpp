#pragma once

// Generators for the benchmark families exercised by the bounded solver and
// the minimality checker. Each returns a knowledge base with its goal concept
// filled in, so the result can be written out with render_kb, read back with
// parse_kb, or handed straight to solve_bounded.
//
//   * gen_cert3col_alc and gen_cert3col_el encode the same game over a
//     labeled graph: an assignment to the n*n Boolean variables selects the
//     edges whose two-literal clause it satisfies, and the goal is reachable
//     in a minimal model exactly when some assignment leaves the selected
//     subgraph without a proper 3-coloring. The first variant spends
//     disjunctions on the guessing; the second compensates with marker
//     individuals and a marking chain and stays within EL.
//   * gen_recttile asks whether some rectangle can be tiled by a Wang tile
//     set with matching colors inside and the border color on the outside.
//     The returned witness builder turns a concrete tiling into the
//     interpretation certifying it.
//   * gen_btree produces a chain of 4n+3 axioms whose minimal witnesses
//     unfold into a full binary tree with 2^n distinct leaf elements.
//   * gen_gadget is a fixed four-individual base whose minimal models must
//     realize one shared truth value at two individuals.
//   * gen_circuit compiles a Boolean circuit and an input vector into
//     inclusions over a single individual; the goal holds exactly when the
//     circuit accepts the input.
//
// parse_labeled_graph, parse_tile_set and parse_circuit read the plain text
// formats understood by the command line generator; eval_circuit is the
// direct evaluator the circuit encoding is measured against.

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minimodel/interpretation.hpp"
#include "minimodel/syntax.hpp"

namespace minimodel {

// ---- generator inputs ------------------------------------------------------

// A literal over the Boolean variable x(i,j).
struct GraphLiteral {
  int i = 0;
  int j = 0;
  bool positive = true;
};

struct LabeledEdge {
  int u = 0;
  int v = 0;
  GraphLiteral first;
  GraphLiteral second;
};

// An undirected graph on vertices 0..n-1. Every edge carries a two-literal
// clause over the variables x(i,j) with 0 <= i,j < n; the edge is selected
// by an assignment when the clause holds under it.
struct LabeledGraph {
  int n = 0;
  std::vector<LabeledEdge> edges;
};

struct WangTile {
  int north = 0;
  int east = 0;
  int south = 0;
  int west = 0;
};

// Colors are arbitrary integers; border is the color required on the outer
// rim of the rectangle.
struct WangTileSet {
  std::vector<WangTile> tiles;
  int border = 0;
};

struct BooleanCircuit {
  enum class Op { Input, And, Or, Not };
  struct Gate {
    Op op = Op::Input;
    // Input: a is a position in the input vector. And, Or: a and b are gate
    // indices. Not: a is a gate index. Gate references must point backwards.
    int a = 0;
    int b = 0;
  };
  std::vector<Gate> gates;
  int output = -1;  // negative selects the last gate
};

// ---- shared construction helpers -------------------------------------------

namespace detail {

// Keeps the tbox/abox deduplication invariant that parse_kb establishes.
struct KbBuilder {
  KnowledgeBase kb;
  std::set<Axiom, AxiomLess> seen_axioms;
  std::set<Assertion> seen_assertions;

  void axiom(ConceptRef lhs, ConceptRef rhs) {
    Axiom ax{std::move(lhs), std::move(rhs)};
    if (seen_axioms.insert(ax).second) kb.tbox.push_back(std::move(ax));
  }
  void fact(std::string concept_name, std::string individual) {
    Assertion as = ConceptAssertion{std::move(concept_name), std::move(individual)};
    if (seen_assertions.insert(as).second) kb.abox.push_back(std::move(as));
  }
  void fact(std::string role, std::string subject, std::string object) {
    Assertion as = RoleAssertion{std::move(role), std::move(subject), std::move(object)};
    if (seen_assertions.insert(as).second) kb.abox.push_back(std::move(as));
  }
};

inline std::string numbered(const char* stem, int k) { return stem + std::to_string(k); }

inline std::string grid_name(const char* stem, int i, int j) {
  return stem + std::to_string(i) + "_" + std::to_string(j);
}

inline void check_graph(const LabeledGraph& g) {
  if (g.n < 1) throw std::runtime_error("graph needs at least one vertex");
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto bad = [&](int x) { return x < 0 || x >= g.n; };
    const LabeledEdge& ed = g.edges[e];
    if (bad(ed.u) || bad(ed.v))
      throw std::runtime_error("edge " + std::to_string(e) + ": vertex index out of range");
    if (bad(ed.first.i) || bad(ed.first.j) || bad(ed.second.i) || bad(ed.second.j))
      throw std::runtime_error("edge " + std::to_string(e) + ": variable index out of range");
  }
}

// ABox skeleton shared by both selected-subgraph generators: vertex markers,
// one variable individual and one edge individual per pair (i,j), the two
// endpoint links of every edge individual, and the clause wiring of the
// edges that are actually present. Both p-links of a present edge point at
// the variable individual of the corresponding literal; the polarity sits on
// the edge as a pos/neg marker.
inline void cert3col_shared_abox(const LabeledGraph& g, KbBuilder& b) {
  for (int k = 0; k < g.n; ++k) b.fact("N", numbered("u", k));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      b.fact("V", grid_name("v", i, j));
      b.fact("E", grid_name("e", i, j));
      b.fact("l1", grid_name("e", i, j), numbered("u", i));
      b.fact("l2", grid_name("e", i, j), numbered("u", j));
    }
  for (const LabeledEdge& ed : g.edges) {
    const std::string e = grid_name("e", ed.u, ed.v);
    b.fact("p1", e, grid_name("v", ed.first.i, ed.first.j));
    b.fact(ed.first.positive ? "pos1" : "neg1", e);
    b.fact("p2", e, grid_name("v", ed.second.i, ed.second.j));
    b.fact(ed.second.positive ? "pos2" : "neg2", e);
  }
}

}  // namespace detail

// ---- selected-subgraph colorability, disjunctive variant --------------------

// Minimal models guess a truth value for every variable individual (V is
// covered by T or F) and one of three colors for every vertex individual.
// An edge whose clause is satisfied becomes Sel; a selected edge with equal
// endpoint colors floods all three color concepts through the s links, which
// makes the goal hold at every vertex individual. The goal is therefore
// reachable exactly when some assignment selects a subgraph that cannot be
// properly 3-colored.
inline KnowledgeBase gen_cert3col_alc(const LabeledGraph& g) {
  detail::check_graph(g);
  detail::KbBuilder b;

  b.axiom(name("V"), disj(name("T"), name("F")));
  b.axiom(name("N"), disj({name("C1"), name("C2"), name("C3")}));
  for (int s = 1; s <= 2; ++s) {
    const std::string p = detail::numbered("p", s);
    b.axiom(disj(conj(name(detail::numbered("pos", s)), exists(p, name("T"))),
                 conj(name(detail::numbered("neg", s)), exists(p, name("F")))),
            name("Sel"));
  }
  for (int c = 1; c <= 3; ++c) {
    ConceptRef color = name(detail::numbered("C", c));
    b.axiom(exists("s", conj({name("Sel"), exists("l1", color), exists("l2", color)})),
            conj({name("C1"), name("C2"), name("C3")}));
  }

  detail::cert3col_shared_abox(g, b);
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        b.fact("s", detail::numbered("u", k), detail::grid_name("e", i, j));

  b.kb.goal = conj(name("C1"), name("C2"));
  return std::move(b.kb);
}

// ---- selected-subgraph colorability, EL variant ------------------------------

// Same game without disjunction. Truth values are guessed by pointing
// hasValue at one of the two marker individuals t1/t2 and pulling the marker
// back; colors are guessed by making one hascolor target Choice among the
// three pre-colored individuals of each vertex. A marking chain through all
// variable individuals checks that every guess landed on a marker (Ok) and
// carries Marked back to the chain head, so the goal First and C1 and C2
// can only be reached through the flooding triggered by a monochromatic
// selected edge. The TBox does not depend on the instance; only the ABox
// grows with the graph.
inline KnowledgeBase gen_cert3col_el(const LabeledGraph& g) {
  detail::check_graph(g);
  detail::KbBuilder b;

  b.axiom(name("V"), exists("hasValue", top()));
  b.axiom(exists("hasValue", name("T")), name("T"));
  b.axiom(exists("hasValue", name("F")), name("F"));
  b.axiom(exists("hasValue", name("T")), name("Ok"));
  b.axiom(exists("hasValue", name("F")), name("Ok"));
  b.axiom(name("N"), exists("hascolor", name("Choice")));
  for (int c = 1; c <= 3; ++c)
    b.axiom(exists("hascolor", conj(name("Choice"), name(detail::numbered("C", c) + "p"))),
            name(detail::numbered("C", c)));
  for (int s = 1; s <= 2; ++s) {
    const std::string p = detail::numbered("p", s);
    b.axiom(conj(name(detail::numbered("pos", s)), exists(p, name("T"))), name("Sel"));
    b.axiom(conj(name(detail::numbered("neg", s)), exists(p, name("F"))), name("Sel"));
  }
  for (int c = 1; c <= 3; ++c) {
    ConceptRef color = name(detail::numbered("C", c));
    b.axiom(exists("s", conj({name("Sel"), exists("l1", color), exists("l2", color)})),
            name("Choice"));
  }
  b.axiom(conj(name("Last"), name("Ok")), name("Marked"));
  b.axiom(conj(name("Ok"), exists("next", name("Marked"))), name("Marked"));

  detail::cert3col_shared_abox(g, b);
  b.fact("T", "t1");
  b.fact("F", "t2");
  for (int k = 0; k < g.n; ++k)
    for (int c = 1; c <= 3; ++c) {
      const std::string marker = detail::grid_name("c", k, c);
      b.fact("hascolor", detail::numbered("u", k), marker);
      b.fact(detail::numbered("C", c) + "p", marker);
    }
  for (int k = 0; k < g.n; ++k)
    for (int c = 1; c <= 3; ++c)
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
          b.fact("s", detail::grid_name("c", k, c), detail::grid_name("e", i, j));

  // the marking chain visits every guessing individual once
  std::vector<std::string> chain;
  for (int k = 0; k < g.n; ++k) chain.push_back(detail::numbered("u", k));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) chain.push_back(detail::grid_name("v", i, j));
  for (size_t m = 0; m + 1 < chain.size(); ++m) b.fact("next", chain[m], chain[m + 1]);
  b.fact("First", chain.front());
  b.fact("Last", chain.back());

  b.kb.goal = conj({name("First"), name("C1"), name("C2")});
  return std::move(b.kb);
}

// ---- rectangle tiling --------------------------------------------------------

namespace detail {

inline const std::vector<std::string>& rt_positions() {
  static const std::vector<std::string> pos = {"C", "S", "N", "E", "W", "SE", "SW", "NE", "NW"};
  return pos;
}

// Valid successor positions, read off the reference layout of a rectangle:
// the top row is NW N .. N NE, interior rows are W C .. C E, the bottom row
// is SW S .. S SE. A position admits another as horizontal successor when it
// sits directly left of it somewhere in that layout, and as vertical
// successor when it sits directly below it.
inline const std::map<std::string, std::vector<std::string>>& rt_h_succ() {
  static const std::map<std::string, std::vector<std::string>> succ = {
      {"NW", {"N", "NE"}}, {"N", {"N", "NE"}}, {"W", {"C", "E"}},
      {"C", {"C", "E"}},   {"SW", {"S", "SE"}}, {"S", {"S", "SE"}},
  };
  return succ;
}

inline const std::map<std::string, std::vector<std::string>>& rt_v_succ() {
  static const std::map<std::string, std::vector<std::string>> succ = {
      {"SW", {"W", "NW"}}, {"W", {"W", "NW"}}, {"S", {"C", "N"}},
      {"C", {"C", "N"}},   {"SE", {"E", "NE"}}, {"E", {"E", "NE"}},
  };
  return succ;
}

// Which tile colors a position exposes on the rectangle border.
inline std::vector<int> rt_border_colors(const WangTile& t, const std::string& p) {
  if (p == "N") return {t.north};
  if (p == "S") return {t.south};
  if (p == "E") return {t.east};
  if (p == "W") return {t.west};
  if (p == "NE") return {t.north, t.east};
  if (p == "NW") return {t.north, t.west};
  if (p == "SE") return {t.south, t.east};
  if (p == "SW") return {t.south, t.west};
  return {};
}

inline bool rt_in(const std::vector<std::string>& set, const std::string& p) {
  for (const std::string& q : set)
    if (q == p) return true;
  return false;
}

}  // namespace detail

struct RecttileProblem {
  KnowledgeBase kb;
  WangTileSet tiles;

  // Builds the interpretation certifying that tile_at tiles a width x height
  // rectangle. tile_at(i, j) names the tile in column i and row j, both
  // 1-based, with (1, 1) the south-west corner. Throws when the rectangle is
  // smaller than 2 x 2, a tile index is out of range, or the tiling breaks a
  // horizontal, vertical or border constraint.
  Interpretation witness(int width, int height,
                         const std::function<int(int, int)>& tile_at) const {
    const int m = width;
    const int n = height;
    if (m < 2 || n < 2) throw std::runtime_error("rectangle must be at least 2 by 2");

    std::vector<std::vector<int>> sigma(m + 1, std::vector<int>(n + 1, 0));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) {
        int t = tile_at(i, j);
        if (t < 0 || t >= static_cast<int>(tiles.tiles.size()))
          throw std::runtime_error("tile index out of range at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
        sigma[i][j] = t;
      }
    auto fail = [](const char* what, int i, int j) {
      throw std::runtime_error(std::string("tiling violates a ") + what + " constraint at (" +
                               std::to_string(i) + ", " + std::to_string(j) + ")");
    };
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i < m; ++i)
        if (tiles.tiles[sigma[i][j]].east != tiles.tiles[sigma[i + 1][j]].west)
          fail("horizontal adjacency", i, j);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j < n; ++j)
        if (tiles.tiles[sigma[i][j]].north != tiles.tiles[sigma[i][j + 1]].south)
          fail("vertical adjacency", i, j);
    for (int i = 1; i <= m; ++i) {
      if (tiles.tiles[sigma[i][1]].south != tiles.border) fail("border color", i, 1);
      if (tiles.tiles[sigma[i][n]].north != tiles.border) fail("border color", i, n);
    }
    for (int j = 1; j <= n; ++j) {
      if (tiles.tiles[sigma[1][j]].west != tiles.border) fail("border color", 1, j);
      if (tiles.tiles[sigma[m][j]].east != tiles.border) fail("border color", m, j);
    }

    // The choice elements exist only where some axiom demands an s-successor:
    // placing X is offered at C, N and E positions, continuing horizontally
    // at C, N, S, W and SW, continuing vertically at C, E, S, W and SW. On
    // the grid these are exactly the three index ranges below.
    auto is_x_cell = [&](int i, int j) {
      return i >= 2 && j >= 2 && !(i == m && j == n);
    };
    auto h_cell = [&](int i, int j) { return i <= m - 1 && !(i == 1 && j == n); };
    auto v_cell = [&](int i, int j) { return j <= n - 1 && !(i == m && j == 1); };
    bool any_x = false;
    for (int i = 1; i <= m && !any_x; ++i)
      for (int j = 1; j <= n && !any_x; ++j) any_x = is_x_cell(i, j);

    Interpretation out;
    std::map<std::string, int> id;
    auto add = [&](const std::string& label) {
      id[label] = static_cast<int>(out.domain.size());
      out.domain.push_back(label);
    };
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= m; ++i) add(detail::grid_name("g", i, j));
    add("c");
    for (const std::string& p : detail::rt_positions()) add("a_" + p);
    for (size_t t = 0; t < tiles.tiles.size(); ++t) add("a_t" + std::to_string(t));
    if (any_x) add("c_isX");
    add("c_H");
    add("c_V");

    auto gid = [&](int i, int j) { return id.at(detail::grid_name("g", i, j)); };
    out.individuals["a"] = gid(1, 1);
    out.individuals["c"] = id.at("c");
    for (const std::string& p : detail::rt_positions()) out.individuals["a_" + p] = id.at("a_" + p);
    for (size_t t = 0; t < tiles.tiles.size(); ++t)
      out.individuals["a_t" + std::to_string(t)] = id.at("a_t" + std::to_string(t));

    auto position_of = [&](int i, int j) -> std::string {
      if (i == 1 && j == 1) return "SW";
      if (i == m && j == 1) return "SE";
      if (i == 1 && j == n) return "NW";
      if (i == m && j == n) return "NE";
      if (j == 1) return "S";
      if (j == n) return "N";
      if (i == 1) return "W";
      if (i == m) return "E";
      return "C";
    };

    std::set<int> grid;
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) grid.insert(gid(i, j));

    for (const std::string& p : detail::rt_positions()) out.concepts[p] = {id.at("a_" + p)};
    for (size_t t = 0; t < tiles.tiles.size(); ++t)
      out.concepts["Tile" + std::to_string(t)] = {id.at("a_t" + std::to_string(t))};
    for (const char* everywhere : {"Node", "X", "Flood", "HGoodP", "VGoodP", "GoodP", "HGoodT",
                                   "VGoodT", "BGoodT", "GoodT"})
      out.concepts[everywhere] = grid;
    out.concepts["PX"] = grid;
    out.concepts["PX"].insert(id.at("c"));
    out.concepts["Root"] = {gid(1, 1)};
    out.concepts["Subgoal1"] = {gid(1, 1)};
    out.concepts["Subgoal2"] = {gid(1, 1)};
    out.concepts["Goal"] = {gid(1, 1)};
    if (any_x) {
      out.concepts["isX"] = {id.at("c_isX")};
      out.concepts["Ch"].insert(id.at("c_isX"));
    }
    out.concepts["H"] = {id.at("c_H")};
    out.concepts["V"] = {id.at("c_V")};
    out.concepts["Ch"].insert(id.at("c_H"));
    out.concepts["Ch"].insert(id.at("c_V"));

    std::set<int>& any = out.concepts["Any"];
    any = {gid(1, 1), id.at("c")};
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) {
        any.insert(id.at("a_" + position_of(i, j)));
        any.insert(id.at("a_t" + std::to_string(sigma[i][j])));
      }

    auto& h = out.roles["h"];
    auto& v = out.roles["v"];
    auto& pos = out.roles["pos"];
    auto& tile = out.roles["tile"];
    auto& s = out.roles["s"];
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i < m) h.insert({gid(i, j), gid(i + 1, j)});
        if (j < n) v.insert({gid(i, j), gid(i, j + 1)});
        pos.insert({gid(i, j), id.at("a_" + position_of(i, j))});
        tile.insert({gid(i, j), id.at("a_t" + std::to_string(sigma[i][j]))});
        if (is_x_cell(i, j)) s.insert({gid(i, j), id.at("c_isX")});
        if (h_cell(i, j)) s.insert({gid(i, j), id.at("c_H")});
        if (v_cell(i, j)) s.insert({gid(i, j), id.at("c_V")});
      }
    h.insert({gid(1, 1), id.at("c")});
    v.insert({gid(1, 1), id.at("c")});
    pos.insert({id.at("c"), id.at("c")});
    tile.insert({id.at("c"), id.at("c")});
    out.roles["spy"] = {{id.at("c"), gid(1, 1)}};
    out.roles["aux"] = {{id.at("a_NE"), gid(1, 1)}};
    return out;
  }
};

// Minimal models grow a grid of nodes from the south-west corner, pick a
// position and a tile for every node, and check consistency along the way:
// GoodP/GoodT walk the grid and vouch for positions and tiles, a guessed
// path of PX nodes places the concept X somewhere, and X placed on a node
// where the grid actually closes floods the whole model, which is the only
// way to reach the goal. Any stands in for TOP throughout; the auxiliary
// element c soaks up every obligation as soon as an inconsistency reports
// back to the root through Err.
inline RecttileProblem gen_recttile(const WangTileSet& ts) {
  if (ts.tiles.empty()) throw std::runtime_error("tile set is empty");
  detail::KbBuilder b;
  const std::vector<std::string>& positions = detail::rt_positions();
  auto tile_concept = [](size_t t) { return name("Tile" + std::to_string(t)); };

  // node generation
  b.axiom(name("Node"), exists("pos", name("Any")));
  b.axiom(name("Node"), exists("tile", name("Any")));
  for (const std::string& p : positions)
    if (!detail::rt_in({"SE", "E", "NE"}, p))
      b.axiom(conj(name("Node"), exists("pos", name(p))), exists("h", name("Node")));
  for (const std::string& p : positions)
    if (!detail::rt_in({"NW", "N", "NE"}, p))
      b.axiom(conj(name("Node"), exists("pos", name(p))), exists("v", name("Node")));

  // position consistency
  for (const char* p : {"SE", "E", "NE"})
    b.axiom(exists("pos", name(p)), name("HGoodP"));
  for (const auto& [p, succs] : detail::rt_h_succ())
    for (const std::string& q : succs)
      b.axiom(conj(exists("pos", name(p)),
                   exists("h", conj(name("GoodP"), exists("pos", name(q))))),
              name("HGoodP"));
  for (const char* p : {"NW", "N", "NE"})
    b.axiom(exists("pos", name(p)), name("VGoodP"));
  for (const auto& [p, succs] : detail::rt_v_succ())
    for (const std::string& q : succs)
      b.axiom(conj(exists("pos", name(p)),
                   exists("v", conj(name("GoodP"), exists("pos", name(q))))),
              name("VGoodP"));
  b.axiom(conj(name("HGoodP"), name("VGoodP")), name("GoodP"));
  b.axiom(conj(name("GoodP"), name("Root")), name("Subgoal1"));

  // tile consistency
  for (const char* p : {"SE", "E", "NE"})
    b.axiom(exists("pos", name(p)), name("HGoodT"));
  for (const std::string& p : positions)
    if (!detail::rt_in({"SE", "E", "NE"}, p))
      for (size_t t = 0; t < ts.tiles.size(); ++t)
        for (size_t t2 = 0; t2 < ts.tiles.size(); ++t2)
          if (ts.tiles[t].east == ts.tiles[t2].west)
            b.axiom(conj({exists("pos", name(p)), exists("tile", tile_concept(t)),
                          exists("h", conj(name("GoodT"), exists("tile", tile_concept(t2))))}),
                    name("HGoodT"));
  for (const char* p : {"NW", "N", "NE"})
    b.axiom(exists("pos", name(p)), name("VGoodT"));
  for (const std::string& p : positions)
    if (!detail::rt_in({"NW", "N", "NE"}, p))
      for (size_t t = 0; t < ts.tiles.size(); ++t)
        for (size_t t2 = 0; t2 < ts.tiles.size(); ++t2)
          if (ts.tiles[t].north == ts.tiles[t2].south)
            b.axiom(conj({exists("pos", name(p)), exists("tile", tile_concept(t)),
                          exists("v", conj(name("GoodT"), exists("tile", tile_concept(t2))))}),
                    name("VGoodT"));
  b.axiom(exists("pos", name("C")), name("BGoodT"));
  for (const std::string& p : positions)
    if (p != "C")
      for (size_t t = 0; t < ts.tiles.size(); ++t) {
        bool ok = true;
        for (int color : detail::rt_border_colors(ts.tiles[t], p)) ok = ok && color == ts.border;
        if (ok)
          b.axiom(conj(exists("pos", name(p)), exists("tile", tile_concept(t))), name("BGoodT"));
      }
  b.axiom(conj({name("HGoodT"), name("VGoodT"), name("BGoodT")}), name("GoodT"));
  b.axiom(conj(name("GoodT"), name("Root")), name("Subgoal2"));

  // the guessed path that places X
  b.axiom(conj({name("Root"), name("Subgoal1"), name("Subgoal2")}), name("PX"));
  b.axiom(conj(name("PX"), exists("pos", name("NE"))), name("X"));
  b.axiom(conj({name("Node"), name("PX"), exists("pos", name("NW"))}),
          exists("h", conj(name("Node"), name("PX"))));
  b.axiom(conj({name("Node"), name("PX"), exists("pos", name("SE"))}),
          exists("v", conj(name("Node"), name("PX"))));
  for (const char* p : {"C", "N", "E"})
    b.axiom(conj(exists("pos", name(p)), name("PX")), exists("s", name("isX")));
  for (const char* p : {"C", "N", "S", "W", "SW"})
    b.axiom(conj(exists("pos", name(p)), name("PX")), exists("s", name("H")));
  for (const char* p : {"C", "E", "S", "W", "SW"})
    b.axiom(conj(exists("pos", name(p)), name("PX")), exists("s", name("V")));
  for (const std::string& p : positions)
    if (!detail::rt_in({"NE", "NW", "SE"}, p))
      b.axiom(conj(exists("pos", name(p)), name("PX")), exists("s", name("Ch")));
  b.axiom(exists("s", conj(name("Ch"), name("isX"))), name("X"));
  b.axiom(conj(name("Node"), exists("s", conj(name("Ch"), name("H")))),
          exists("h", conj(name("Node"), name("PX"))));
  b.axiom(conj(name("Node"), exists("s", conj(name("Ch"), name("V")))),
          exists("v", conj(name("Node"), name("PX"))));

  // collapsed choices report back to the root and promote c to a node
  b.axiom(exists("s", conj(name("isX"), name("H"))), name("Err"));
  b.axiom(exists("s", conj(name("isX"), name("V"))), name("Err"));
  b.axiom(exists("s", conj(name("H"), name("V"))), name("Err"));
  b.axiom(exists("h", name("Err")), name("Err"));
  b.axiom(exists("v", name("Err")), name("Err"));
  b.axiom(exists("spy", name("Err")), name("Node"));

  // flooding
  b.axiom(conj(exists("h", exists("v", name("X"))), exists("v", exists("h", name("X")))),
          name("Flood"));
  b.axiom(exists("h", name("Flood")), name("Flood"));
  b.axiom(exists("v", name("Flood")), name("Flood"));
  b.axiom(exists("pos", exists("aux", name("Flood"))), name("Flood"));
  b.axiom(name("Flood"), conj(name("X"), name("PX")));
  for (const char* p : {"C", "N", "E"})
    b.axiom(conj(exists("pos", name(p)), name("Flood")),
            exists("s", conj(name("isX"), name("Ch"))));
  for (const char* p : {"C", "N", "S", "W", "SW"})
    b.axiom(conj(exists("pos", name(p)), name("Flood")),
            exists("s", conj(name("H"), name("Ch"))));
  for (const char* p : {"C", "E", "S", "W", "SW"})
    b.axiom(conj(exists("pos", name(p)), name("Flood")),
            exists("s", conj(name("V"), name("Ch"))));
  b.axiom(conj(name("Flood"), name("Root")), name("Goal"));

  for (const std::string& p : positions) b.fact(p, "a_" + p);
  for (size_t t = 0; t < ts.tiles.size(); ++t)
    b.fact("Tile" + std::to_string(t), "a_t" + std::to_string(t));
  b.fact("Node", "a");
  b.fact("Any", "a");
  b.fact("Root", "a");
  b.fact("pos", "a", "a_SW");
  b.fact("h", "a", "c");
  b.fact("v", "a", "c");
  b.fact("PX", "c");
  b.fact("pos", "c", "c");
  b.fact("tile", "c", "c");
  b.fact("Any", "c");
  b.fact("spy", "c", "a");
  b.fact("aux", "a_NE", "a");

  b.kb.goal = name("Goal");
  return RecttileProblem{std::move(b.kb), ts};
}

// ---- binary tree unfolding ---------------------------------------------------

// A forward chain of n levels where every level spawns two successors, a
// bridge into a backward chain, and a backward chain that re-walks the tree:
// each backward level picks a direction marker and only elements reached
// through both markers advance. Minimal witnesses of the goal realize all
// 2^n leaves as distinct elements.
inline KnowledgeBase gen_btree(int n) {
  if (n < 1) throw std::runtime_error("n must be at least 1");
  detail::KbBuilder b;
  auto level = [](const char* stem, int k) { return name(stem + std::to_string(k)); };
  for (int i = 0; i < n; ++i)
    b.axiom(level("L", i),
            conj(exists(detail::numbered("r", i), level("L", i + 1)),
                 exists(detail::numbered("l", i), level("L", i + 1))));
  b.axiom(level("L", n), name("LP0"));
  for (int j = 0; j < n; ++j) {
    b.axiom(level("LP", j), exists("pick", top()));
    b.axiom(conj(level("LP", j), exists("pick", name("Left"))),
            exists(detail::numbered("lp", j), level("LPL", j + 1)));
    b.axiom(conj(level("LP", j), exists("pick", name("Right"))),
            exists(detail::numbered("rp", j), level("LPR", j + 1)));
    b.axiom(conj(level("LPL", j + 1), level("LPR", j + 1)), level("LP", j + 1));
  }
  b.fact("L0", "a");
  b.fact("Left", "o");
  b.fact("Right", "op");
  b.kb.goal = name(detail::numbered("LP", n));
  return std::move(b.kb);
}

// ---- shared guess gadget -----------------------------------------------------

// Both individuals must pick a truth value by pointing val at one of the two
// marker individuals; the goal requires a to read b and to find its own
// marker there, so every goal witness shows the same value at a and b.
inline KnowledgeBase gen_gadget() {
  detail::KbBuilder b;
  b.axiom(name("N1"), exists("val", name("TV")));
  b.axiom(name("N2"), exists("val", name("TV")));
  b.axiom(name("N1"), exists("read", top()));
  b.axiom(exists("val", name("T")), name("Tp"));
  b.axiom(exists("val", name("F")), name("Fp"));
  b.axiom(conj(name("Tp"), exists("read", conj(name("N2"), name("Tp")))), name("Goal"));
  b.axiom(conj(name("Fp"), exists("read", conj(name("N2"), name("Fp")))), name("Goal"));
  b.fact("N1", "a");
  b.fact("N2", "b");
  b.fact("T", "v1");
  b.fact("F", "v2");
  b.kb.goal = name("Goal");
  return std::move(b.kb);
}

// ---- Boolean circuits --------------------------------------------------------

namespace detail {
inline int circuit_output(const BooleanCircuit& c) {
  return c.output < 0 ? static_cast<int>(c.gates.size()) - 1 : c.output;
}

inline void check_circuit(const BooleanCircuit& c, size_t input_bits) {
  if (c.gates.empty()) throw std::runtime_error("circuit has no gates");
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const BooleanCircuit::Gate& g = c.gates[k];
    auto backward = [&](int ref) { return ref >= 0 && ref < static_cast<int>(k); };
    switch (g.op) {
      case BooleanCircuit::Op::Input:
        if (g.a < 0 || g.a >= static_cast<int>(input_bits))
          throw std::runtime_error("gate " + std::to_string(k) +
                                   " reads an input line outside the supplied bits");
        break;
      case BooleanCircuit::Op::And:
      case BooleanCircuit::Op::Or:
        if (!backward(g.a) || !backward(g.b))
          throw std::runtime_error("gate " + std::to_string(k) +
                                   " must refer to earlier gates");
        break;
      case BooleanCircuit::Op::Not:
        if (!backward(g.a))
          throw std::runtime_error("gate " + std::to_string(k) +
                                   " must refer to an earlier gate");
        break;
    }
  }
  int out = circuit_output(c);
  if (out < 0 || out >= static_cast<int>(c.gates.size()))
    throw std::runtime_error("circuit output gate out of range");
}
}  // namespace detail

inline bool eval_circuit(const BooleanCircuit& c, const std::vector<int>& bits) {
  detail::check_circuit(c, bits.size());
  std::vector<char> val(c.gates.size(), 0);
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const BooleanCircuit::Gate& g = c.gates[k];
    switch (g.op) {
      case BooleanCircuit::Op::Input: val[k] = bits[g.a] != 0; break;
      case BooleanCircuit::Op::And: val[k] = val[g.a] && val[g.b]; break;
      case BooleanCircuit::Op::Or: val[k] = val[g.a] || val[g.b]; break;
      case BooleanCircuit::Op::Not: val[k] = !val[g.a]; break;
    }
  }
  return val[detail::circuit_output(c)] != 0;
}

// One concept pair per gate over the single individual a: Gk says the gate
// evaluates to true, NGk that it evaluates to false. Input gates assert one
// of the two, inner gates propagate both polarities, and the goal is the
// positive concept of the output gate. The one-element minimal model of the
// base computes the circuit, so the goal holds exactly when it accepts.
inline KnowledgeBase gen_circuit(const BooleanCircuit& c, const std::vector<int>& bits) {
  detail::check_circuit(c, bits.size());
  detail::KbBuilder b;
  auto pos = [](int k) { return name(detail::numbered("G", k)); };
  auto neg_ = [](int k) { return name(detail::numbered("NG", k)); };
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const BooleanCircuit::Gate& g = c.gates[k];
    const int gi = static_cast<int>(k);
    switch (g.op) {
      case BooleanCircuit::Op::Input:
        b.fact(bits[g.a] != 0 ? detail::numbered("G", gi) : detail::numbered("NG", gi), "a");
        break;
      case BooleanCircuit::Op::And:
        b.axiom(conj(pos(g.a), pos(g.b)), pos(gi));
        b.axiom(neg_(g.a), neg_(gi));
        b.axiom(neg_(g.b), neg_(gi));
        break;
      case BooleanCircuit::Op::Or:
        b.axiom(pos(g.a), pos(gi));
        b.axiom(pos(g.b), pos(gi));
        b.axiom(conj(neg_(g.a), neg_(g.b)), neg_(gi));
        break;
      case BooleanCircuit::Op::Not:
        b.axiom(neg_(g.a), pos(gi));
        b.axiom(pos(g.a), neg_(gi));
        break;
    }
  }
  b.kb.goal = pos(detail::circuit_output(c));
  return std::move(b.kb);
}

// ---- input file formats ------------------------------------------------------

namespace detail {

struct InputLine {
  int number = 0;
  std::vector<std::string> tokens;
};

// Whitespace-tokenized lines; blank lines and # comments are skipped.
inline std::vector<InputLine> input_lines(std::string_view text) {
  std::vector<InputLine> out;
  int number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    InputLine parsed{number, {}};
    size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      size_t tok = k;
      while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
      if (k > tok) parsed.tokens.emplace_back(line.substr(tok, k - tok));
    }
    if (!parsed.tokens.empty()) out.push_back(std::move(parsed));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

inline int want_int(const std::string& tok, const std::string& where) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": expected an integer, got '" + tok + "'");
  }
}

// lit(i,j,+) or lit(i,j,-)
inline GraphLiteral want_literal(const std::string& tok, const std::string& where) {
  auto bad = [&]() -> std::runtime_error {
    return std::runtime_error(where + ": expected lit(i,j,+) or lit(i,j,-), got '" + tok + "'");
  };
  if (tok.size() < 10 || tok.substr(0, 4) != "lit(" || tok.back() != ')') throw bad();
  size_t c1 = tok.find(',', 4);
  size_t c2 = c1 == std::string::npos ? std::string::npos : tok.find(',', c1 + 1);
  if (c2 == std::string::npos || c2 + 2 != tok.size() - 1) throw bad();
  char sign = tok[c2 + 1];
  if (sign != '+' && sign != '-') throw bad();
  GraphLiteral lit;
  lit.i = want_int(tok.substr(4, c1 - 4), where);
  lit.j = want_int(tok.substr(c1 + 1, c2 - c1 - 1), where);
  lit.positive = sign == '+';
  return lit;
}

}  // namespace detail

// Graph files: one "n <count>" line, then one "edge i j lit(a,b,+) lit(c,d,-)"
// line per edge.
inline LabeledGraph parse_labeled_graph(std::string_view text) {
  LabeledGraph g;
  bool have_n = false;
  for (const detail::InputLine& line : detail::input_lines(text)) {
    const std::string where = "graph file line " + std::to_string(line.number);
    const std::vector<std::string>& t = line.tokens;
    if (t[0] == "n") {
      if (t.size() != 2) throw std::runtime_error(where + ": expected 'n <count>'");
      if (have_n) throw std::runtime_error(where + ": duplicate n line");
      g.n = detail::want_int(t[1], where);
      have_n = true;
    } else if (t[0] == "edge") {
      if (t.size() != 5)
        throw std::runtime_error(where + ": expected 'edge i j lit(..) lit(..)'");
      LabeledEdge e;
      e.u = detail::want_int(t[1], where);
      e.v = detail::want_int(t[2], where);
      e.first = detail::want_literal(t[3], where);
      e.second = detail::want_literal(t[4], where);
      g.edges.push_back(e);
    } else {
      throw std::runtime_error(where + ": unknown directive '" + t[0] + "'");
    }
  }
  if (!have_n) throw std::runtime_error("graph file: missing n line");
  detail::check_graph(g);
  return g;
}

// Tile files: one "tile <north> <east> <south> <west>" line per tile and one
// "border <color>" line.
inline WangTileSet parse_tile_set(std::string_view text) {
  WangTileSet ts;
  bool have_border = false;
  for (const detail::InputLine& line : detail::input_lines(text)) {
    const std::string where = "tile file line " + std::to_string(line.number);
    const std::vector<std::string>& t = line.tokens;
    if (t[0] == "tile") {
      if (t.size() != 5)
        throw std::runtime_error(where + ": expected 'tile <north> <east> <south> <west>'");
      ts.tiles.push_back(WangTile{detail::want_int(t[1], where), detail::want_int(t[2], where),
                                  detail::want_int(t[3], where), detail::want_int(t[4], where)});
    } else if (t[0] == "border") {
      if (t.size() != 2) throw std::runtime_error(where + ": expected 'border <color>'");
      if (have_border) throw std::runtime_error(where + ": duplicate border line");
      ts.border = detail::want_int(t[1], where);
      have_border = true;
    } else {
      throw std::runtime_error(where + ": unknown directive '" + t[0] + "'");
    }
  }
  if (ts.tiles.empty()) throw std::runtime_error("tile file: no tiles");
  if (!have_border) throw std::runtime_error("tile file: missing border line");
  return ts;
}

// Circuit files: one gate per line in evaluation order. "input <0|1>" carries
// the bit value directly, "and <g1> <g2>", "or <g1> <g2>" and "not <g>" refer
// to earlier lines by 0-based index. An optional final "output <g>" selects
// the output gate; the last gate is used otherwise.
inline std::pair<BooleanCircuit, std::vector<int>> parse_circuit(std::string_view text) {
  BooleanCircuit c;
  std::vector<int> bits;
  for (const detail::InputLine& line : detail::input_lines(text)) {
    const std::string where = "circuit file line " + std::to_string(line.number);
    const std::vector<std::string>& t = line.tokens;
    if (t[0] == "input") {
      if (t.size() != 2) throw std::runtime_error(where + ": expected 'input <0|1>'");
      int bit = detail::want_int(t[1], where);
      if (bit != 0 && bit != 1)
        throw std::runtime_error(where + ": input bit must be 0 or 1");
      c.gates.push_back({BooleanCircuit::Op::Input, static_cast<int>(bits.size()), 0});
      bits.push_back(bit);
    } else if (t[0] == "and" || t[0] == "or") {
      if (t.size() != 3)
        throw std::runtime_error(where + ": expected '" + t[0] + " <gate> <gate>'");
      c.gates.push_back({t[0] == "and" ? BooleanCircuit::Op::And : BooleanCircuit::Op::Or,
                         detail::want_int(t[1], where), detail::want_int(t[2], where)});
    } else if (t[0] == "not") {
      if (t.size() != 2) throw std::runtime_error(where + ": expected 'not <gate>'");
      c.gates.push_back({BooleanCircuit::Op::Not, detail::want_int(t[1], where), 0});
    } else if (t[0] == "output") {
      if (t.size() != 2) throw std::runtime_error(where + ": expected 'output <gate>'");
      if (c.output >= 0) throw std::runtime_error(where + ": duplicate output line");
      c.output = detail::want_int(t[1], where);
    } else {
      throw std::runtime_error(where + ": unknown directive '" + t[0] + "'");
    }
  }
  detail::check_circuit(c, bits.size());
  return {std::move(c), std::move(bits)};
}

}  // namespace minimodel
