#pragma once

// Occurrence analysis and acyclicity classification of TBoxes.
//
// Each inclusion C [= D is read as the NNF of (not C or D); predicates on the
// negative side of that concept may force predicates on the positive side to
// grow, which is recorded as an edge in the dependency graph. Positive
// occurrences under an existential additionally get a star flag: satisfying
// them may require inventing new elements, which is what separates weak from
// strong acyclicity.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "minimodel/syntax.hpp"

namespace minimodel {

enum class DgNodeKind { ConceptName, RoleName, Nominal, Top };

struct DgNode {
  DgNodeKind kind;
  std::string label;  // empty for Top

  friend auto operator<=>(const DgNode&, const DgNode&) = default;
};

inline DgNode concept_node(std::string s) { return {DgNodeKind::ConceptName, std::move(s)}; }
inline DgNode role_node(std::string s) { return {DgNodeKind::RoleName, std::move(s)}; }
inline DgNode nominal_node(std::string s) { return {DgNodeKind::Nominal, std::move(s)}; }
inline DgNode top_node() { return {DgNodeKind::Top, ""}; }

inline std::string to_string(const DgNode& n) {
  switch (n.kind) {
    case DgNodeKind::Nominal: return "{" + n.label + "}";
    case DgNodeKind::Top: return "TOP";
    default: return n.label;
  }
}

struct OccurrenceSets {
  std::set<DgNode> pos;         // may have to grow to satisfy the concept
  std::set<DgNode> neg;         // occur under negation (or on an lhs)
  std::set<DgNode> pos_exists;  // positive under an existential

  void merge(const OccurrenceSets& o) {
    pos.insert(o.pos.begin(), o.pos.end());
    neg.insert(o.neg.begin(), o.neg.end());
    pos_exists.insert(o.pos_exists.begin(), o.pos_exists.end());
  }
};

// The recursive occurrence equations over a concept in NNF. Top counts as a
// positive and Bot as a negative occurrence of the Top node; nominals occur
// only positively and never source an edge, since their extension is pinned
// by the individual map and cannot grow or shrink.
inline OccurrenceSets occurrence_sets(const ConceptRef& c) {
  if (!is_nnf(c)) throw std::runtime_error("concept not in NNF");
  OccurrenceSets out;
  switch (c->kind) {
    case ConceptKind::Top:
      out.pos.insert(top_node());
      break;
    case ConceptKind::Bot:
      out.neg.insert(top_node());
      break;
    case ConceptKind::Name:
      out.pos.insert(concept_node(c->label));
      break;
    case ConceptKind::Nominal:
      out.pos.insert(nominal_node(c->label));
      break;
    case ConceptKind::Not:
      if (c->kids[0]->kind == ConceptKind::Name) out.neg.insert(concept_node(c->kids[0]->label));
      break;
    case ConceptKind::And:
    case ConceptKind::Or:
      for (const auto& k : c->kids) out.merge(occurrence_sets(k));
      break;
    case ConceptKind::Exists: {
      OccurrenceSets body = occurrence_sets(c->kids[0]);
      out.pos = body.pos;
      out.pos.insert(role_node(c->role.name));
      out.neg = body.neg;
      out.pos_exists = out.pos;  // {r} plus everything positive below
      break;
    }
    case ConceptKind::Forall: {
      OccurrenceSets body = occurrence_sets(c->kids[0]);
      out.pos = body.pos;
      out.neg = body.neg;
      out.neg.insert(role_node(c->role.name));
      out.pos_exists = body.pos_exists;
      break;
    }
  }
  return out;
}

struct DgEdge {
  DgNode src;
  DgNode dst;
  bool star;

  friend auto operator<=>(const DgEdge&, const DgEdge&) = default;
};

struct DependencyGraph {
  std::set<DgNode> nodes;
  std::vector<DgEdge> edges;  // unique (src, dst) pairs, sorted
};

namespace detail {

inline void collect_dg_nodes(const ConceptRef& c, std::set<DgNode>& out) {
  switch (c->kind) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
      out.insert(top_node());
      break;
    case ConceptKind::Name:
      out.insert(concept_node(c->label));
      break;
    case ConceptKind::Nominal:
      out.insert(nominal_node(c->label));
      break;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      out.insert(role_node(c->role.name));
      break;
    default:
      break;
  }
  for (const auto& k : c->kids) collect_dg_nodes(k, out);
}

}  // namespace detail

inline DependencyGraph build_dependency_graph(const std::vector<Axiom>& tbox) {
  DependencyGraph g;
  std::map<std::pair<DgNode, DgNode>, bool> edges;
  for (const Axiom& ax : tbox) {
    detail::collect_dg_nodes(ax.lhs, g.nodes);
    detail::collect_dg_nodes(ax.rhs, g.nodes);
    OccurrenceSets occ = occurrence_sets(nnf(disj(neg(ax.lhs), ax.rhs)));
    for (const DgNode& src : occ.neg)
      for (const DgNode& dst : occ.pos)
        edges[{src, dst}] |= occ.pos_exists.count(dst) > 0;
  }
  for (const auto& [pair, star] : edges) g.edges.push_back({pair.first, pair.second, star});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

enum class Acyclicity { StronglyAcyclic, WeaklyAcyclic, Cyclic };

inline std::string to_string(Acyclicity a) {
  switch (a) {
    case Acyclicity::StronglyAcyclic: return "StronglyAcyclic";
    case Acyclicity::WeaklyAcyclic: return "WeaklyAcyclic";
    case Acyclicity::Cyclic: return "Cyclic";
  }
  return "";
}

struct AcyclicityReport {
  Acyclicity classification;
  // closed walk (first node repeated last); when weak acyclicity is violated
  // its first step is a star edge
  std::optional<std::vector<DgNode>> cycle;
  std::optional<std::vector<DgNode>> top_path;  // starts at the Top node
};

namespace detail {

// Tarjan's strongly connected components over the plain edges.
struct SccResult {
  std::vector<int> comp;  // node index -> component id
};

inline SccResult tarjan_scc(int n, const std::vector<std::vector<int>>& adj) {
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  int next_index = 0, next_comp = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            res.comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return res;
}

// Shortest path from src to dst staying inside one component; empty if none.
inline std::vector<int> path_within_component(int src, int dst, const std::vector<int>& comp,
                                              const std::vector<std::vector<int>>& adj) {
  std::vector<int> prev(comp.size(), -2);
  std::vector<int> queue{src};
  prev[src] = -1;
  for (size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    if (v == dst) break;
    for (int w : adj[v]) {
      if (comp[w] != comp[src] || prev[w] != -2) continue;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  if (prev[dst] == -2) return {};
  std::vector<int> path;
  for (int v = dst; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

inline AcyclicityReport classify_acyclicity(const std::vector<Axiom>& tbox) {
  DependencyGraph g = build_dependency_graph(tbox);
  std::vector<DgNode> nodes(g.nodes.begin(), g.nodes.end());
  std::map<DgNode, int> id;
  for (size_t k = 0; k < nodes.size(); ++k) id[nodes[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> adj(nodes.size());
  for (const DgEdge& e : g.edges) adj[id[e.src]].push_back(id[e.dst]);

  AcyclicityReport report;

  // reachability from Top: any outgoing edge already names a reachable node
  for (const DgEdge& e : g.edges)
    if (e.src == top_node()) {
      report.top_path = std::vector<DgNode>{e.src, e.dst};
      break;
    }

  detail::SccResult scc = detail::tarjan_scc(static_cast<int>(nodes.size()), adj);
  auto cycle_through = [&](const DgEdge& e) {
    // e closes a cycle: walk back from dst to src inside the component
    std::vector<int> back = detail::path_within_component(id[e.dst], id[e.src], scc.comp, adj);
    std::vector<DgNode> walk{e.src};
    for (int v : back) walk.push_back(nodes[v]);
    return walk;  // already ends at src == first element repeated
  };

  std::optional<std::vector<DgNode>> plain_cycle, star_cycle;
  for (const DgEdge& e : g.edges) {
    if (scc.comp[id[e.src]] != scc.comp[id[e.dst]]) continue;
    if (!plain_cycle) plain_cycle = cycle_through(e);
    if (e.star && !star_cycle) {
      star_cycle = cycle_through(e);
      break;
    }
  }

  if (!plain_cycle && !report.top_path) {
    report.classification = Acyclicity::StronglyAcyclic;
  } else if (!star_cycle && !report.top_path) {
    report.classification = Acyclicity::WeaklyAcyclic;
    report.cycle = plain_cycle;
  } else {
    report.classification = Acyclicity::Cyclic;
    report.cycle = star_cycle ? star_cycle : plain_cycle;
  }
  return report;
}

inline std::string render_dependency_graph(const DependencyGraph& g) {
  std::string out;
  for (const DgEdge& e : g.edges) {
    out += "EDGE " + to_string(e.src) + " " + to_string(e.dst);
    if (e.star) out += " STAR";
    out += "\n";
  }
  return out;
}

}  // namespace minimodel
