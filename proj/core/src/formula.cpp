#include "emu/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <vector>

#include "emu/errors.hpp"

namespace emu {

namespace {

FormulaPtr node(FormulaKind kind, FormulaPtr lhs = nullptr, FormulaPtr rhs = nullptr) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

FormulaPtr atom_node(Assertion a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Atom;
  n->atom = std::move(a);
  return n;
}

FormulaPtr named(FormulaKind kind, std::string name, FormulaPtr body = nullptr) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->name = std::move(name);
  n->lhs = std::move(body);
  return n;
}

bool is_relvar_name(std::string_view ident) {
  return !ident.empty() && std::isupper(static_cast<unsigned char>(ident.front()));
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  FormulaPtr parse_all() {
    FormulaPtr f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  bool at_ident_start() const {
    return pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
  }

  std::string read_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Keyword check that does not consume a longer identifier such as "mux".
  bool accept_keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t after = pos_ + kw.size();
    if (after < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_')) {
      return false;
    }
    pos_ = after;
    return true;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (accept("|")) lhs = node(FormulaKind::Or, lhs, parse_and());
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (accept("&")) lhs = node(FormulaKind::And, lhs, parse_unary());
    return lhs;
  }

  FormulaPtr parse_fixpoint(FormulaKind kind) {
    skip_ws();
    const std::size_t at = pos_;
    if (!at_ident_start()) throw ParseError("expected relational variable", at);
    std::string var = read_ident();
    if (!is_relvar_name(var)) throw ParseError("relational variable must start uppercase: '" + var + "'", at);
    if (!accept(".")) throw ParseError("expected '.' after bound variable", pos_);
    return named(kind, std::move(var), parse_or());
  }

  FormulaPtr parse_unary() {
    if (accept("!")) return node(FormulaKind::Not, parse_unary());
    if (accept("<>")) return node(FormulaKind::Diamond, parse_unary());
    if (accept("[]")) return node(FormulaKind::Box, parse_unary());
    if (accept_keyword("mu")) return parse_fixpoint(FormulaKind::Mu);
    if (accept_keyword("nu")) return parse_fixpoint(FormulaKind::Nu);
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of formula", pos_);
    if (accept("(")) {
      FormulaPtr f = parse_or();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (accept("@\"")) {
      const std::size_t start = pos_;
      const std::size_t close = text_.find('"', pos_);
      if (close == std::string_view::npos) throw ParseError("unterminated @\"...\" atom", start);
      Assertion a;
      try {
        a = Assertion::parse(text_.substr(start, close - start));
      } catch (const ParseError& e) {
        throw ParseError("in embedded assertion: " + std::string(e.what()), start + e.position());
      }
      if (a.references_primed()) throw ParseError("formula atoms must be pure-state assertions", start);
      pos_ = close + 1;
      return atom_node(std::move(a));
    }
    if (!at_ident_start()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    const std::size_t at = pos_;
    std::string ident = read_ident();
    if (pos_ < text_.size() && text_[pos_] == '\'') throw ParseError("primed atoms are not allowed in formulas", at);
    if (ident == "mu" || ident == "nu") throw ParseError("misplaced fixpoint keyword", at);
    if (is_relvar_name(ident)) return named(FormulaKind::RelVar, std::move(ident));
    if (ident == "true") return atom_node(Assertion::constant(true));
    if (ident == "false") return atom_node(Assertion::constant(false));
    return atom_node(Assertion::variable(std::move(ident)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Precedences for printing: Or < And < prefix operators.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Or: return 0;
    case FormulaKind::And: return 1;
    case FormulaKind::Mu:
    case FormulaKind::Nu: return -1;  // extends right; parenthesised when nested
    default: return 2;
  }
}

std::string atom_text(const Assertion& a) {
  const auto& r = a.root();
  if (r.kind == AssertionKind::True) return "true";
  if (r.kind == AssertionKind::False) return "false";
  if (r.kind == AssertionKind::Var && !r.primed && !is_relvar_name(r.var) && r.var != "mu" && r.var != "nu") {
    return r.var;
  }
  return "@\"" + a.to_string() + "\"";
}

void print(const FormulaNode& n, std::string& out) {
  auto child = [&out](const FormulaNode& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case FormulaKind::Atom: out += atom_text(n.atom); return;
    case FormulaKind::RelVar: out += n.name; return;
    case FormulaKind::Not:
    case FormulaKind::Diamond:
    case FormulaKind::Box:
      out += n.kind == FormulaKind::Not ? "!" : n.kind == FormulaKind::Diamond ? "<>" : "[]";
      child(*n.lhs, precedence(n.lhs->kind) < 2);
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const int p = precedence(n.kind);
      child(*n.lhs, precedence(n.lhs->kind) < p);
      out += n.kind == FormulaKind::And ? " & " : " | ";
      child(*n.rhs, precedence(n.rhs->kind) <= p);
      return;
    }
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      out += n.kind == FormulaKind::Mu ? "mu " : "nu ";
      out += n.name;
      out += " . ";
      print(*n.lhs, out);
      return;
  }
}

bool equal(const FormulaNode& a, const FormulaNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Atom: return a.atom == b.atom;
    case FormulaKind::RelVar: return a.name == b.name;
    case FormulaKind::Mu:
    case FormulaKind::Nu: return a.name == b.name && equal(*a.lhs, *b.lhs);
    case FormulaKind::Not:
    case FormulaKind::Diamond:
    case FormulaKind::Box: return equal(*a.lhs, *b.lhs);
    case FormulaKind::And:
    case FormulaKind::Or: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

void collect_free(const FormulaNode& n, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (n.kind) {
    case FormulaKind::Atom: return;
    case FormulaKind::RelVar:
      if (!bound.count(n.name)) out.insert(n.name);
      return;
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      const bool fresh = bound.insert(n.name).second;
      collect_free(*n.lhs, bound, out);
      if (fresh) bound.erase(n.name);
      return;
    }
    default:
      if (n.lhs) collect_free(*n.lhs, bound, out);
      if (n.rhs) collect_free(*n.rhs, bound, out);
  }
}

bool occurs_free(const FormulaNode& n, const std::string& var) {
  std::set<std::string> bound;
  std::set<std::string> free;
  collect_free(n, bound, free);
  return free.count(var) > 0;
}

std::size_t count_nodes(const FormulaNode& n) {
  std::size_t c = 1;
  if (n.lhs) c += count_nodes(*n.lhs);
  if (n.rhs) c += count_nodes(*n.rhs);
  return c;
}

void scan_modalities(const FormulaNode& n, bool& has_diamond, bool& has_box) {
  if (n.kind == FormulaKind::Diamond) has_diamond = true;
  if (n.kind == FormulaKind::Box) has_box = true;
  if (n.lhs) scan_modalities(*n.lhs, has_diamond, has_box);
  if (n.rhs) scan_modalities(*n.rhs, has_diamond, has_box);
}

// Alternation depth on a negation-free tree (negations over free variables are
// transparent). Collects the depth of every opposite-polarity fixpoint below
// the binder in which the binder's variable occurs free.
int depth_of(const FormulaNode& n) {
  switch (n.kind) {
    case FormulaKind::Atom:
    case FormulaKind::RelVar: return 0;
    case FormulaKind::Not:
    case FormulaKind::Diamond:
    case FormulaKind::Box: return depth_of(*n.lhs);
    case FormulaKind::And:
    case FormulaKind::Or: return std::max(depth_of(*n.lhs), depth_of(*n.rhs));
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      int d = std::max(1, depth_of(*n.lhs));
      const FormulaKind opposite = n.kind == FormulaKind::Mu ? FormulaKind::Nu : FormulaKind::Mu;
      std::function<void(const FormulaNode&)> visit = [&](const FormulaNode& sub) {
        if (sub.kind == opposite && occurs_free(sub, n.name)) d = std::max(d, depth_of(sub) + 1);
        if (sub.lhs) visit(*sub.lhs);
        if (sub.rhs) visit(*sub.rhs);
      };
      visit(*n.lhs);
      return d;
    }
  }
  return 0;
}

FormulaPtr rename(const FormulaNode& n, std::map<std::string, std::string>& scope, std::set<std::string>& used) {
  switch (n.kind) {
    case FormulaKind::Atom: return atom_node(n.atom);
    case FormulaKind::RelVar: {
      const auto it = scope.find(n.name);
      return named(FormulaKind::RelVar, it == scope.end() ? n.name : it->second);
    }
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      std::string fresh = n.name;
      for (int k = 1; used.count(fresh); ++k) fresh = n.name + "_" + std::to_string(k);
      used.insert(fresh);
      const auto saved = scope.find(n.name) == scope.end() ? std::optional<std::string>{} : scope[n.name];
      scope[n.name] = fresh;
      FormulaPtr body = rename(*n.lhs, scope, used);
      if (saved) scope[n.name] = *saved;
      else scope.erase(n.name);
      return named(n.kind, std::move(fresh), std::move(body));
    }
    default:
      return node(n.kind, n.lhs ? rename(*n.lhs, scope, used) : nullptr,
                  n.rhs ? rename(*n.rhs, scope, used) : nullptr);
  }
}

// `negate`: an odd number of negations sits above this node.
// `flipped`: bound variables whose binder was dualised; an occurrence of such
// a variable denotes the negation of the new variable.
FormulaPtr nnf(const FormulaNode& n, bool negate, std::set<std::string>& flipped) {
  switch (n.kind) {
    case FormulaKind::Atom: return atom_node(negate ? !n.atom : n.atom);
    case FormulaKind::RelVar: {
      const bool neg = negate != (flipped.count(n.name) > 0);
      FormulaPtr v = named(FormulaKind::RelVar, n.name);
      return neg ? node(FormulaKind::Not, v) : v;
    }
    case FormulaKind::Not: return nnf(*n.lhs, !negate, flipped);
    case FormulaKind::And:
    case FormulaKind::Or: {
      const FormulaKind k = negate ? (n.kind == FormulaKind::And ? FormulaKind::Or : FormulaKind::And) : n.kind;
      return node(k, nnf(*n.lhs, negate, flipped), nnf(*n.rhs, negate, flipped));
    }
    case FormulaKind::Diamond:
    case FormulaKind::Box: {
      const FormulaKind k =
          negate ? (n.kind == FormulaKind::Diamond ? FormulaKind::Box : FormulaKind::Diamond) : n.kind;
      return node(k, nnf(*n.lhs, negate, flipped));
    }
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      const FormulaKind k = negate ? (n.kind == FormulaKind::Mu ? FormulaKind::Nu : FormulaKind::Mu) : n.kind;
      const bool was_flipped = flipped.count(n.name) > 0;
      if (negate) flipped.insert(n.name);
      else flipped.erase(n.name);
      FormulaPtr body = nnf(*n.lhs, negate, flipped);
      if (was_flipped) flipped.insert(n.name);
      else flipped.erase(n.name);
      return named(k, n.name, std::move(body));
    }
  }
  return nullptr;
}

using Binding = std::map<std::string, std::string>;

bool alpha_eq(const FormulaNode& a, const FormulaNode& b, Binding& a_to_b, Binding& b_to_a) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Atom: return a.atom == b.atom;
    case FormulaKind::RelVar: {
      const auto ia = a_to_b.find(a.name);
      const auto ib = b_to_a.find(b.name);
      if (ia == a_to_b.end() || ib == b_to_a.end()) return ia == a_to_b.end() && ib == b_to_a.end() && a.name == b.name;
      return ia->second == b.name && ib->second == a.name;
    }
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      const Binding saved_a = a_to_b;
      const Binding saved_b = b_to_a;
      a_to_b[a.name] = b.name;
      b_to_a[b.name] = a.name;
      const bool ok = alpha_eq(*a.lhs, *b.lhs, a_to_b, b_to_a);
      a_to_b = saved_a;
      b_to_a = saved_b;
      return ok;
    }
    case FormulaKind::Not:
    case FormulaKind::Diamond:
    case FormulaKind::Box: return alpha_eq(*a.lhs, *b.lhs, a_to_b, b_to_a);
    case FormulaKind::And:
    case FormulaKind::Or:
      return alpha_eq(*a.lhs, *b.lhs, a_to_b, b_to_a) && alpha_eq(*a.rhs, *b.rhs, a_to_b, b_to_a);
  }
  return false;
}

std::string step_label(const FormulaNode& n) {
  switch (n.kind) {
    case FormulaKind::Mu: return "mu " + n.name;
    case FormulaKind::Nu: return "nu " + n.name;
    case FormulaKind::Not: return "!";
    case FormulaKind::And: return "&";
    case FormulaKind::Or: return "|";
    case FormulaKind::Diamond: return "<>";
    case FormulaKind::Box: return "[]";
    case FormulaKind::RelVar: return n.name;
    case FormulaKind::Atom: return atom_text(n.atom);
  }
  return "?";
}

}  // namespace

Formula::Formula() : root_(atom_node(Assertion::constant(true))) {}

Formula Formula::parse(std::string_view text) {
  return rename_apart(Formula(FormulaParser(text).parse_all()));
}

Formula Formula::atom(Assertion a) { return Formula(atom_node(std::move(a))); }
Formula Formula::relvar(std::string name) { return Formula(named(FormulaKind::RelVar, std::move(name))); }
Formula Formula::conj(const Formula& a, const Formula& b) { return Formula(node(FormulaKind::And, a.root_, b.root_)); }
Formula Formula::disj(const Formula& a, const Formula& b) { return Formula(node(FormulaKind::Or, a.root_, b.root_)); }
Formula Formula::diamond(const Formula& f) { return Formula(node(FormulaKind::Diamond, f.root_)); }
Formula Formula::box(const Formula& f) { return Formula(node(FormulaKind::Box, f.root_)); }
Formula Formula::mu(std::string var, const Formula& body) {
  return Formula(named(FormulaKind::Mu, std::move(var), body.root_));
}
Formula Formula::nu(std::string var, const Formula& body) {
  return Formula(named(FormulaKind::Nu, std::move(var), body.root_));
}
Formula Formula::negation(const Formula& f) { return Formula(node(FormulaKind::Not, f.root_)); }

std::string Formula::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool Formula::operator==(const Formula& other) const { return equal(*root_, *other.root_); }

std::string to_string(Fragment f) {
  switch (f) {
    case Fragment::Sys: return "sys";
    case Fragment::Env: return "env";
    case Fragment::Both: return "both";
    case Fragment::Mixed: return "mixed";
  }
  return "?";
}

Fragment classify_fragment(const Formula& f) {
  bool has_diamond = false;
  bool has_box = false;
  scan_modalities(f.root(), has_diamond, has_box);
  if (has_diamond && has_box) return Fragment::Mixed;
  if (has_diamond) return Fragment::Sys;
  if (has_box) return Fragment::Env;
  return Fragment::Both;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f.root(), bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

int alternation_depth(const Formula& f) { return depth_of(push_negations(f).root()); }

FormulaMetrics metrics(const Formula& f) {
  FormulaMetrics m;
  m.length = count_nodes(f.root());
  m.alternation_depth = alternation_depth(f);
  m.closed = is_closed(f);
  m.fragment = classify_fragment(f);
  return m;
}

std::optional<MonotonicityViolation> check_monotone(const Formula& f) {
  struct Binder {
    std::string name;
    int negations_at_binder;
  };
  std::vector<Binder> binders;
  std::vector<std::string> path;
  std::optional<MonotonicityViolation> found;

  std::function<void(const FormulaNode&, int)> walk = [&](const FormulaNode& n, int negations) {
    if (found) return;
    path.push_back(step_label(n));
    switch (n.kind) {
      case FormulaKind::RelVar: {
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          if (it->name != n.name) continue;
          if ((negations - it->negations_at_binder) % 2 != 0) {
            std::string p;
            // Report the path from the binder down to the offending occurrence.
            const std::string head = "mu " + n.name;
            const std::string head_nu = "nu " + n.name;
            std::size_t start = 0;
            for (std::size_t i = path.size(); i-- > 0;) {
              if (path[i] == head || path[i] == head_nu) {
                start = i;
                break;
              }
            }
            for (std::size_t i = start; i < path.size(); ++i) {
              if (!p.empty()) p += " / ";
              p += path[i];
            }
            found = MonotonicityViolation{n.name, p};
          }
          break;
        }
        break;
      }
      case FormulaKind::Mu:
      case FormulaKind::Nu:
        binders.push_back({n.name, negations});
        walk(*n.lhs, negations);
        binders.pop_back();
        break;
      case FormulaKind::Not: walk(*n.lhs, negations + 1); break;
      default:
        if (n.lhs) walk(*n.lhs, negations);
        if (n.rhs) walk(*n.rhs, negations);
    }
    path.pop_back();
  };
  walk(f.root(), 0);
  return found;
}

Formula push_negations(const Formula& f) {
  std::set<std::string> flipped;
  return Formula(nnf(f.root(), false, flipped));
}

Formula rename_apart(const Formula& f) {
  std::map<std::string, std::string> scope;
  std::set<std::string> used = free_variables(f);
  return Formula(rename(f.root(), scope, used));
}

bool alpha_equivalent(const Formula& a, const Formula& b) {
  Binding a_to_b;
  Binding b_to_a;
  return alpha_eq(a.root(), b.root(), a_to_b, b_to_a);
}

namespace builtin {

Formula safety() { return Formula::nu("X", Formula::diamond(Formula::relvar("X"))); }

Formula reachability(const Assertion& p) {
  return Formula::mu("X", Formula::disj(Formula::atom(p), Formula::diamond(Formula::relvar("X"))));
}

Formula buchi(const Assertion& j) {
  const Formula recur = Formula::conj(Formula::atom(j), Formula::diamond(Formula::relvar("Z")));
  return Formula::nu("Z", Formula::mu("Y", Formula::disj(recur, Formula::diamond(Formula::relvar("Y")))));
}

Formula co_buchi(const Assertion& j) {
  const Formula stay = Formula::conj(Formula::atom(j), Formula::diamond(Formula::relvar("Y")));
  return Formula::mu("X", Formula::nu("Y", Formula::disj(stay, Formula::diamond(Formula::relvar("X")))));
}

Formula dual_buchi(const Assertion& j) { return push_negations(Formula::negation(buchi(j))); }

}  // namespace builtin

Formula make_builtin(std::string_view name, const std::map<std::string, std::string>& params) {
  auto state_param = [&](const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw FormulaError("builtin '" + std::string(name) + "' needs parameter " + key);
    Assertion a = Assertion::parse(it->second);
    if (a.references_primed()) {
      throw FormulaError("parameter " + key + " must be a pure-state assertion, got '" + it->second + "'");
    }
    return a;
  };
  if (name == "safety") return builtin::safety();
  if (name == "reach" || name == "reachability") return builtin::reachability(state_param("p"));
  if (name == "buchi") return builtin::buchi(state_param("J"));
  if (name == "cobuchi" || name == "co-buchi") return builtin::co_buchi(state_param("J"));
  if (name == "dual-buchi" || name == "dual_buchi") return builtin::dual_buchi(state_param("J"));
  throw FormulaError("unknown builtin '" + std::string(name) + "'");
}

bool is_buchi_shape(const Formula& f) {
  const FormulaNode& outer = f.root();
  if (outer.kind != FormulaKind::Nu) return false;
  const FormulaNode& inner = *outer.lhs;
  if (inner.kind != FormulaKind::Mu || inner.name == outer.name) return false;
  const FormulaNode& body = *inner.lhs;
  if (body.kind != FormulaKind::Or) return false;
  const FormulaNode& recur = *body.lhs;
  const FormulaNode& step = *body.rhs;
  auto is_diamond_of = [](const FormulaNode& n, const std::string& var) {
    return n.kind == FormulaKind::Diamond && n.lhs->kind == FormulaKind::RelVar && n.lhs->name == var;
  };
  return recur.kind == FormulaKind::And && recur.lhs->kind == FormulaKind::Atom &&
         is_diamond_of(*recur.rhs, outer.name) && is_diamond_of(step, inner.name);
}

}  // namespace emu
