#pragma once

// Concept syntax, knowledge bases, and the textual format.
//
// Concepts are ALCIO: names, nominals {a}, TOP/BOT, not, n-ary and/or,
// exists r.C, forall r.C, with roles optionally inverted (r^-).
// A knowledge base is a TBox (inclusions C [= D) plus an ABox (assertions
// A(a), r(a,b)); an optional goal concept may ride along in the same file.
//
// The file format is line oriented and case sensitive:
//
//   # comment
//   Fan [= exists likes. Movie
//   Fan(ann)
//   likes^-(m, ann)          # stored normalized as likes(ann, m)
//   GOAL: (Movie and exists dislikes^-. TOP)
//
// and/or groups require parentheses and at least two members; "not",
// "exists", "forall", "and", "or", "TOP", "BOT" are reserved words.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace minimodel {

enum class ConceptKind : std::uint8_t {
  Top,
  Bot,
  Name,
  Nominal,
  Not,
  And,
  Or,
  Exists,
  Forall,
};

struct Role {
  std::string name;
  bool inverse = false;

  friend bool operator==(const Role&, const Role&) = default;
  friend auto operator<=>(const Role&, const Role&) = default;
};

class Concept;
using ConceptRef = std::shared_ptr<const Concept>;

// Immutable AST node. Children of And/Or are kept flattened, sorted, and
// duplicate-free so that structurally equal concepts compare equal no matter
// how they were written down. Build nodes through the factory functions
// below; they maintain those invariants.
class Concept {
 public:
  ConceptKind kind;
  std::string label;              // Name / Nominal payload
  Role role;                      // Exists / Forall only
  std::vector<ConceptRef> kids;   // Not: 1, And/Or: >= 2, quantifiers: 1

  Concept(ConceptKind k, std::string lbl, Role r, std::vector<ConceptRef> ch)
      : kind(k), label(std::move(lbl)), role(std::move(r)), kids(std::move(ch)) {}
};

int compare(const Concept& a, const Concept& b);

inline int compare(const ConceptRef& a, const ConceptRef& b) {
  if (a.get() == b.get()) return 0;
  return compare(*a, *b);
}

inline int compare(const Concept& a, const Concept& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.label.compare(b.label)) return c < 0 ? -1 : 1;
  if (int c = a.role.name.compare(b.role.name)) return c < 0 ? -1 : 1;
  if (a.role.inverse != b.role.inverse) return a.role.inverse ? 1 : -1;
  size_t n = std::min(a.kids.size(), b.kids.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = compare(a.kids[i], b.kids[i])) return c;
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  return 0;
}

inline bool equal(const ConceptRef& a, const ConceptRef& b) { return compare(a, b) == 0; }

struct ConceptLess {
  bool operator()(const ConceptRef& a, const ConceptRef& b) const { return compare(a, b) < 0; }
};

// ---- factories ------------------------------------------------------------

inline ConceptRef top() {
  static const ConceptRef t = std::make_shared<Concept>(ConceptKind::Top, "", Role{}, std::vector<ConceptRef>{});
  return t;
}

inline ConceptRef bot() {
  static const ConceptRef b = std::make_shared<Concept>(ConceptKind::Bot, "", Role{}, std::vector<ConceptRef>{});
  return b;
}

inline ConceptRef name(std::string n) {
  return std::make_shared<Concept>(ConceptKind::Name, std::move(n), Role{}, std::vector<ConceptRef>{});
}

inline ConceptRef nominal(std::string individual) {
  return std::make_shared<Concept>(ConceptKind::Nominal, std::move(individual), Role{}, std::vector<ConceptRef>{});
}

inline ConceptRef neg(ConceptRef c) {
  return std::make_shared<Concept>(ConceptKind::Not, "", Role{}, std::vector<ConceptRef>{std::move(c)});
}

namespace detail {
inline ConceptRef junction(ConceptKind k, std::vector<ConceptRef> parts) {
  std::vector<ConceptRef> flat;
  for (auto& p : parts) {
    if (p->kind == k)
      flat.insert(flat.end(), p->kids.begin(), p->kids.end());
    else
      flat.push_back(std::move(p));
  }
  std::sort(flat.begin(), flat.end(), ConceptLess{});
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const ConceptRef& a, const ConceptRef& b) { return equal(a, b); }),
             flat.end());
  if (flat.empty()) return k == ConceptKind::And ? top() : bot();
  if (flat.size() == 1) return flat.front();
  return std::make_shared<Concept>(k, "", Role{}, std::move(flat));
}
}  // namespace detail

// Empty conjunction collapses to TOP, empty disjunction to BOT; a singleton
// collapses to its only member.
inline ConceptRef conj(std::vector<ConceptRef> parts) {
  return detail::junction(ConceptKind::And, std::move(parts));
}

inline ConceptRef disj(std::vector<ConceptRef> parts) {
  return detail::junction(ConceptKind::Or, std::move(parts));
}

inline ConceptRef conj(ConceptRef a, ConceptRef b) {
  return conj(std::vector<ConceptRef>{std::move(a), std::move(b)});
}

inline ConceptRef disj(ConceptRef a, ConceptRef b) {
  return disj(std::vector<ConceptRef>{std::move(a), std::move(b)});
}

inline ConceptRef exists(Role r, ConceptRef c) {
  return std::make_shared<Concept>(ConceptKind::Exists, "", std::move(r),
                                   std::vector<ConceptRef>{std::move(c)});
}

inline ConceptRef forall(Role r, ConceptRef c) {
  return std::make_shared<Concept>(ConceptKind::Forall, "", std::move(r),
                                   std::vector<ConceptRef>{std::move(c)});
}

inline ConceptRef exists(std::string role_name, ConceptRef c) {
  return exists(Role{std::move(role_name), false}, std::move(c));
}

inline ConceptRef forall(std::string role_name, ConceptRef c) {
  return forall(Role{std::move(role_name), false}, std::move(c));
}

// ---- axioms, assertions, knowledge bases ----------------------------------

struct Axiom {
  ConceptRef lhs;
  ConceptRef rhs;

  friend bool operator==(const Axiom& a, const Axiom& b) {
    return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
  }
};

struct AxiomLess {
  bool operator()(const Axiom& a, const Axiom& b) const {
    if (int c = compare(a.lhs, b.lhs)) return c < 0;
    return compare(a.rhs, b.rhs) < 0;
  }
};

struct ConceptAssertion {
  std::string concept_name;
  std::string individual;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
  friend auto operator<=>(const ConceptAssertion&, const ConceptAssertion&) = default;
};

// Always stored with the plain role name; r^-(a,b) comes out as r(b,a).
struct RoleAssertion {
  std::string role;
  std::string subject;
  std::string object;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
  friend auto operator<=>(const RoleAssertion&, const RoleAssertion&) = default;
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

struct Signature {
  std::vector<std::string> concept_names;
  std::vector<std::string> role_names;
  std::vector<std::string> individuals;
};

struct KnowledgeBase {
  std::vector<Axiom> tbox;       // deduplicated, input order preserved
  std::vector<Assertion> abox;   // deduplicated, input order preserved
  std::optional<ConceptRef> goal;

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    if (a.tbox != b.tbox || a.abox != b.abox) return false;
    if (a.goal.has_value() != b.goal.has_value()) return false;
    return !a.goal || equal(*a.goal, *b.goal);
  }
};

namespace detail {
inline void collect_names(const ConceptRef& c, std::set<std::string>& concepts,
                          std::set<std::string>& roles, std::set<std::string>& inds) {
  switch (c->kind) {
    case ConceptKind::Name: concepts.insert(c->label); break;
    case ConceptKind::Nominal: inds.insert(c->label); break;
    case ConceptKind::Exists:
    case ConceptKind::Forall: roles.insert(c->role.name); break;
    default: break;
  }
  for (const auto& k : c->kids) collect_names(k, concepts, roles, inds);
}
}  // namespace detail

// Names syntactically present in TBox and ABox. The goal concept is not part
// of the signature; callers inspect it separately.
inline Signature signature(const KnowledgeBase& kb) {
  std::set<std::string> cs, rs, is;
  for (const auto& ax : kb.tbox) {
    detail::collect_names(ax.lhs, cs, rs, is);
    detail::collect_names(ax.rhs, cs, rs, is);
  }
  for (const auto& as : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&as)) {
      cs.insert(ca->concept_name);
      is.insert(ca->individual);
    } else {
      const auto& ra = std::get<RoleAssertion>(as);
      rs.insert(ra.role);
      is.insert(ra.subject);
      is.insert(ra.object);
    }
  }
  return Signature{{cs.begin(), cs.end()}, {rs.begin(), rs.end()}, {is.begin(), is.end()}};
}

// ---- structural utilities --------------------------------------------------

// Negation normal form. Negation survives only directly above names and
// nominals; not TOP becomes BOT and vice versa. Negated nominals are legal
// ALCIO and stay as Not(Nominal).
inline ConceptRef nnf(const ConceptRef& c) {
  struct Impl {
    static ConceptRef run(const ConceptRef& c, bool negated) {
      switch (c->kind) {
        case ConceptKind::Top: return negated ? bot() : top();
        case ConceptKind::Bot: return negated ? top() : bot();
        case ConceptKind::Name:
        case ConceptKind::Nominal: return negated ? neg(c) : c;
        case ConceptKind::Not: return run(c->kids[0], !negated);
        case ConceptKind::And:
        case ConceptKind::Or: {
          std::vector<ConceptRef> kids;
          kids.reserve(c->kids.size());
          for (const auto& k : c->kids) kids.push_back(run(k, negated));
          bool make_and = (c->kind == ConceptKind::And) != negated;
          return make_and ? conj(std::move(kids)) : disj(std::move(kids));
        }
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
          ConceptRef body = run(c->kids[0], negated);
          bool make_exists = (c->kind == ConceptKind::Exists) != negated;
          return make_exists ? exists(c->role, std::move(body))
                             : forall(c->role, std::move(body));
        }
      }
      throw std::logic_error("unreachable concept kind");
    }
  };
  return Impl::run(c, false);
}

inline bool is_nnf(const ConceptRef& c) {
  if (c->kind == ConceptKind::Not) {
    ConceptKind k = c->kids[0]->kind;
    return k == ConceptKind::Name || k == ConceptKind::Nominal;
  }
  for (const auto& k : c->kids)
    if (!is_nnf(k)) return false;
  return true;
}

inline int modal_depth(const ConceptRef& c) {
  int m = 0;
  for (const auto& k : c->kids) m = std::max(m, modal_depth(k));
  if (c->kind == ConceptKind::Exists || c->kind == ConceptKind::Forall) ++m;
  return m;
}

inline int modal_depth(const KnowledgeBase& kb) {
  int m = 0;
  for (const auto& ax : kb.tbox)
    m = std::max({m, modal_depth(ax.lhs), modal_depth(ax.rhs)});
  return m;
}

// ---- fragment classification -----------------------------------------------

enum class DlFragment : std::uint8_t { EL, ELbot, ELIO, ELIObot, ALC, ALCIO };

inline std::string to_string(DlFragment f) {
  switch (f) {
    case DlFragment::EL: return "EL";
    case DlFragment::ELbot: return "ELbot";
    case DlFragment::ELIO: return "ELIO";
    case DlFragment::ELIObot: return "ELIObot";
    case DlFragment::ALC: return "ALC";
    case DlFragment::ALCIO: return "ALCIO";
  }
  return "?";
}

namespace detail {
struct Constructs {
  bool has_bot = false;
  bool has_inverse = false;
  bool has_nominal = false;
  bool has_alc = false;  // not / or / forall anywhere

  void scan(const ConceptRef& c) {
    switch (c->kind) {
      case ConceptKind::Bot: has_bot = true; break;
      case ConceptKind::Nominal: has_nominal = true; break;
      case ConceptKind::Not:
      case ConceptKind::Or:
      case ConceptKind::Forall: has_alc = true; break;
      case ConceptKind::Exists: has_inverse |= c->role.inverse; break;
      default: break;
    }
    if (c->kind == ConceptKind::Forall) has_inverse |= c->role.inverse;
    for (const auto& k : c->kids) scan(k);
  }

  DlFragment fragment() const {
    if (has_alc) return (has_inverse || has_nominal) ? DlFragment::ALCIO : DlFragment::ALC;
    if (has_inverse || has_nominal)
      return has_bot ? DlFragment::ELIObot : DlFragment::ELIO;
    return has_bot ? DlFragment::ELbot : DlFragment::EL;
  }
};
}  // namespace detail

// Least fragment covering every construct in the TBox and ABox. The goal
// concept is deliberately ignored; classify it with classify_fragment(goal).
inline DlFragment classify_fragment(const KnowledgeBase& kb) {
  detail::Constructs cs;
  for (const auto& ax : kb.tbox) {
    cs.scan(ax.lhs);
    cs.scan(ax.rhs);
  }
  return cs.fragment();
}

inline DlFragment classify_fragment(const ConceptRef& c) {
  detail::Constructs cs;
  cs.scan(c);
  return cs.fragment();
}

// ---- printing ---------------------------------------------------------------

inline std::string to_string(const Role& r) { return r.inverse ? r.name + "^-" : r.name; }

inline void print_concept(std::ostream& os, const ConceptRef& c) {
  switch (c->kind) {
    case ConceptKind::Top: os << "TOP"; break;
    case ConceptKind::Bot: os << "BOT"; break;
    case ConceptKind::Name: os << c->label; break;
    case ConceptKind::Nominal: os << '{' << c->label << '}'; break;
    case ConceptKind::Not:
      os << "not ";
      print_concept(os, c->kids[0]);
      break;
    case ConceptKind::And:
    case ConceptKind::Or: {
      const char* sep = c->kind == ConceptKind::And ? " and " : " or ";
      os << '(';
      for (size_t i = 0; i < c->kids.size(); ++i) {
        if (i) os << sep;
        print_concept(os, c->kids[i]);
      }
      os << ')';
      break;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      os << (c->kind == ConceptKind::Exists ? "exists " : "forall ") << to_string(c->role) << ". ";
      print_concept(os, c->kids[0]);
      break;
  }
}

inline std::string to_string(const ConceptRef& c) {
  std::ostringstream os;
  print_concept(os, c);
  return os.str();
}

inline std::string render_kb(const KnowledgeBase& kb) {
  std::ostringstream os;
  for (const auto& ax : kb.tbox) {
    print_concept(os, ax.lhs);
    os << " [= ";
    print_concept(os, ax.rhs);
    os << '\n';
  }
  for (const auto& as : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&as))
      os << ca->concept_name << '(' << ca->individual << ")\n";
    else {
      const auto& ra = std::get<RoleAssertion>(as);
      os << ra.role << '(' << ra.subject << ", " << ra.object << ")\n";
    }
  }
  if (kb.goal) {
    os << "GOAL: ";
    print_concept(os, *kb.goal);
    os << '\n';
  }
  return os.str();
}

// ---- parsing ----------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  int line;
  int col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

namespace detail {

enum class Tok : std::uint8_t {
  Ident, LParen, RParen, LBrace, RBrace, Comma, Dot, Colon, Subsumes, InvMarker, Newline, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      push(Tok::Newline, "\n", col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    int start_col = col;
    auto two = text.substr(i, 2);
    if (two == "[=") {
      push(Tok::Subsumes, "[=", start_col);
      i += 2;
      col += 2;
      continue;
    }
    if (two == "^-") {
      push(Tok::InvMarker, "^-", start_col);
      i += 2;
      col += 2;
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(Tok::Ident, std::string(text.substr(i, j - i)), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    push(k, std::string(1, c), start_col);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

inline bool reserved_word(const std::string& s) {
  return s == "not" || s == "and" || s == "or" || s == "exists" || s == "forall" ||
         s == "TOP" || s == "BOT";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  KnowledgeBase parse_kb() {
    KnowledgeBase kb;
    std::set<Axiom, AxiomLess> seen_axioms;
    std::set<Assertion> seen_assertions;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        next();
        continue;
      }
      if (peek().kind == Tok::Ident && peek().text == "GOAL" && peek(1).kind == Tok::Colon) {
        Token g = next();
        next();  // colon
        if (kb.goal) throw ParseError(g.line, g.col, "duplicate GOAL line");
        kb.goal = concept_expr();
        end_of_line();
        continue;
      }
      if (peek().kind == Tok::Ident && !reserved_word(peek().text) &&
          (peek(1).kind == Tok::LParen || peek(1).kind == Tok::InvMarker)) {
        Assertion as = assertion();
        if (seen_assertions.insert(as).second) kb.abox.push_back(std::move(as));
        end_of_line();
        continue;
      }
      Axiom ax = axiom();
      if (seen_axioms.insert(ax).second) kb.tbox.push_back(std::move(ax));
      end_of_line();
    }
    return kb;
  }

  ConceptRef parse_single_concept() {
    while (peek().kind == Tok::Newline) next();
    ConceptRef c = concept_expr();
    while (peek().kind == Tok::Newline) next();
    expect(Tok::End, "end of input");
    return c;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return next();
  }

  void end_of_line() {
    if (peek().kind == Tok::End) return;
    if (peek().kind != Tok::Newline) fail(peek(), "expected end of line");
    next();
  }

  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what);
    Token t = next();
    if (reserved_word(t.text)) fail(t, "'" + t.text + "' is a reserved word");
    return t.text;
  }

  Role role() {
    Role r;
    r.name = ident("role name");
    if (peek().kind == Tok::InvMarker) {
      next();
      r.inverse = true;
    }
    return r;
  }

  Axiom axiom() {
    ConceptRef lhs = concept_expr();
    expect(Tok::Subsumes, "'[='");
    ConceptRef rhs = concept_expr();
    return Axiom{std::move(lhs), std::move(rhs)};
  }

  Assertion assertion() {
    std::string pred = ident("predicate name");
    bool inv = false;
    if (peek().kind == Tok::InvMarker) {
      next();
      inv = true;
    }
    expect(Tok::LParen, "'('");
    std::string first = ident("individual name");
    if (peek().kind == Tok::Comma) {
      next();
      std::string second = ident("individual name");
      expect(Tok::RParen, "')'");
      if (inv) std::swap(first, second);
      return RoleAssertion{std::move(pred), std::move(first), std::move(second)};
    }
    Token closing = peek();
    expect(Tok::RParen, "')'");
    if (inv) fail(closing, "inverse marker is only valid on role assertions");
    return ConceptAssertion{std::move(pred), std::move(first)};
  }

  ConceptRef concept_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        if (t.text == "TOP") { next(); return top(); }
        if (t.text == "BOT") { next(); return bot(); }
        if (t.text == "not") { next(); return neg(concept_expr()); }
        if (t.text == "exists" || t.text == "forall") {
          bool ex = t.text == "exists";
          next();
          Role r = role();
          expect(Tok::Dot, "'.'");
          ConceptRef body = concept_expr();
          return ex ? exists(std::move(r), std::move(body))
                    : forall(std::move(r), std::move(body));
        }
        if (t.text == "and" || t.text == "or") fail(t, "'" + t.text + "' is a reserved word");
        next();
        return name(t.text);
      }
      case Tok::LBrace: {
        next();
        std::string ind = ident("individual name");
        expect(Tok::RBrace, "'}'");
        return nominal(std::move(ind));
      }
      case Tok::LParen: {
        next();
        std::vector<ConceptRef> parts;
        parts.push_back(concept_expr());
        if (peek().kind != Tok::Ident || (peek().text != "and" && peek().text != "or"))
          fail(peek(), "expected 'and' or 'or'");
        std::string op = peek().text;
        while (peek().kind == Tok::Ident && peek().text == op) {
          next();
          parts.push_back(concept_expr());
        }
        if (peek().kind == Tok::Ident && (peek().text == "and" || peek().text == "or"))
          fail(peek(), "cannot mix 'and' and 'or' in one group");
        expect(Tok::RParen, "')'");
        return op == "and" ? conj(std::move(parts)) : disj(std::move(parts));
      }
      default:
        fail(t, "expected a concept");
    }
  }
};

}  // namespace detail

inline KnowledgeBase parse_kb(std::string_view text) {
  return detail::Parser(detail::lex(text)).parse_kb();
}

inline ConceptRef parse_concept(std::string_view text) {
  return detail::Parser(detail::lex(text)).parse_single_concept();
}

}  // namespace minimodel
