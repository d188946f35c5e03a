#include "emu/assertion.hpp"

#include <cctype>
#include <functional>

#include "emu/errors.hpp"

namespace emu {

namespace {

AssertionPtr make_leaf(AssertionKind kind) {
  auto n = std::make_shared<AssertionNode>();
  n->kind = kind;
  return n;
}

AssertionPtr make_var(std::string name, bool primed) {
  auto n = std::make_shared<AssertionNode>();
  n->kind = AssertionKind::Var;
  n->var = std::move(name);
  n->primed = primed;
  return n;
}

AssertionPtr make_node(AssertionKind kind, AssertionPtr lhs, AssertionPtr rhs = nullptr) {
  auto n = std::make_shared<AssertionNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AssertionPtr parse_all() {
    AssertionPtr e = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
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

  AssertionPtr parse_iff() {
    AssertionPtr lhs = parse_implies();
    if (accept("<->")) return make_node(AssertionKind::Iff, lhs, parse_iff());
    return lhs;
  }

  AssertionPtr parse_implies() {
    AssertionPtr lhs = parse_or();
    if (accept("->")) return make_node(AssertionKind::Implies, lhs, parse_implies());
    return lhs;
  }

  AssertionPtr parse_or() {
    AssertionPtr lhs = parse_and();
    while (accept("|")) lhs = make_node(AssertionKind::Or, lhs, parse_and());
    return lhs;
  }

  AssertionPtr parse_and() {
    AssertionPtr lhs = parse_unary();
    while (accept("&")) lhs = make_node(AssertionKind::And, lhs, parse_unary());
    return lhs;
  }

  AssertionPtr parse_unary() {
    if (accept("!")) return make_node(AssertionKind::Not, parse_unary());
    return parse_primary();
  }

  AssertionPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of assertion", pos_);
    if (accept("(")) {
      AssertionPtr e = parse_iff();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return e;
    }
    const char c = text_[pos_];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
      throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string ident(text_.substr(start, pos_ - start));
    bool primed = false;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      primed = true;
      ++pos_;
    }
    if (!primed && ident == "true") return make_leaf(AssertionKind::True);
    if (!primed && ident == "false") return make_leaf(AssertionKind::False);
    if (ident == "true" || ident == "false") throw ParseError("constants cannot be primed", start);
    return make_var(std::move(ident), primed);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(AssertionKind k) {
  switch (k) {
    case AssertionKind::Iff: return 0;
    case AssertionKind::Implies: return 1;
    case AssertionKind::Or: return 2;
    case AssertionKind::And: return 3;
    case AssertionKind::Not: return 4;
    default: return 5;
  }
}

void print(const AssertionNode& n, std::string& out) {
  auto child = [&out](const AssertionNode& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  const int p = precedence(n.kind);
  switch (n.kind) {
    case AssertionKind::True: out += "true"; return;
    case AssertionKind::False: out += "false"; return;
    case AssertionKind::Var:
      out += n.var;
      if (n.primed) out += '\'';
      return;
    case AssertionKind::Not:
      out += '!';
      child(*n.lhs, precedence(n.lhs->kind) < p);
      return;
    case AssertionKind::And:
    case AssertionKind::Or:
      child(*n.lhs, precedence(n.lhs->kind) < p);
      out += n.kind == AssertionKind::And ? " & " : " | ";
      child(*n.rhs, precedence(n.rhs->kind) <= p);
      return;
    case AssertionKind::Implies:
    case AssertionKind::Iff:
      child(*n.lhs, precedence(n.lhs->kind) <= p);
      out += n.kind == AssertionKind::Implies ? " -> " : " <-> ";
      child(*n.rhs, precedence(n.rhs->kind) < p);
      return;
  }
}

void collect(const AssertionNode& n, bool primed, std::set<std::string>& out) {
  if (n.kind == AssertionKind::Var) {
    if (n.primed == primed) out.insert(n.var);
    return;
  }
  if (n.lhs) collect(*n.lhs, primed, out);
  if (n.rhs) collect(*n.rhs, primed, out);
}

bool equal(const AssertionNode& a, const AssertionNode& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == AssertionKind::Var) return a.var == b.var && a.primed == b.primed;
  if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  return (!a.lhs || equal(*a.lhs, *b.lhs)) && (!a.rhs || equal(*a.rhs, *b.rhs));
}

}  // namespace

Assertion::Assertion() : root_(make_leaf(AssertionKind::True)) {}

Assertion Assertion::parse(std::string_view text) { return Assertion(Parser(text).parse_all()); }

Assertion Assertion::constant(bool value) {
  return Assertion(make_leaf(value ? AssertionKind::True : AssertionKind::False));
}

Assertion Assertion::variable(std::string name, bool primed) {
  return Assertion(make_var(std::move(name), primed));
}

Assertion operator!(const Assertion& a) { return Assertion(make_node(AssertionKind::Not, a.root_)); }

Assertion operator&&(const Assertion& a, const Assertion& b) {
  return Assertion(make_node(AssertionKind::And, a.root_, b.root_));
}

Assertion operator||(const Assertion& a, const Assertion& b) {
  return Assertion(make_node(AssertionKind::Or, a.root_, b.root_));
}

Assertion Assertion::implies(const Assertion& a, const Assertion& b) {
  return Assertion(make_node(AssertionKind::Implies, a.root_, b.root_));
}

Assertion Assertion::iff(const Assertion& a, const Assertion& b) {
  return Assertion(make_node(AssertionKind::Iff, a.root_, b.root_));
}

bool Assertion::is_constant(bool value) const {
  return root_->kind == (value ? AssertionKind::True : AssertionKind::False);
}

std::set<std::string> Assertion::unprimed_variables() const {
  std::set<std::string> out;
  collect(*root_, false, out);
  return out;
}

std::set<std::string> Assertion::primed_variables() const {
  std::set<std::string> out;
  collect(*root_, true, out);
  return out;
}

std::string Assertion::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool Assertion::operator==(const Assertion& other) const { return equal(*root_, *other.root_); }

CompiledAssertion::CompiledAssertion(const Assertion& a, const VariableSet& vars) {
  std::function<void(const AssertionNode&)> emit = [&](const AssertionNode& n) {
    switch (n.kind) {
      case AssertionKind::True: program_.push_back({Op::PushTrue, 0}); return;
      case AssertionKind::False: program_.push_back({Op::PushFalse, 0}); return;
      case AssertionKind::Var: {
        const auto idx = vars.index_of(n.var);
        if (!idx) throw MalformedAssertion("unknown identifier '" + n.var + "'");
        const auto bit = static_cast<std::uint8_t>(*idx);
        if (n.primed) {
          primed_support_ |= StateBits{1} << bit;
          program_.push_back({Op::Next, bit});
        } else {
          unprimed_support_ |= StateBits{1} << bit;
          program_.push_back({Op::Cur, bit});
        }
        return;
      }
      case AssertionKind::Not:
        emit(*n.lhs);
        program_.push_back({Op::Not, 0});
        return;
      case AssertionKind::And:
      case AssertionKind::Or:
      case AssertionKind::Implies:
      case AssertionKind::Iff: {
        emit(*n.lhs);
        emit(*n.rhs);
        const Op op = n.kind == AssertionKind::And    ? Op::And
                      : n.kind == AssertionKind::Or   ? Op::Or
                      : n.kind == AssertionKind::Iff  ? Op::Iff
                                                      : Op::Implies;
        program_.push_back({op, 0});
        return;
      }
    }
  };
  emit(a.root());
}

bool CompiledAssertion::eval(StateBits current, StateBits next) const {
  // Assertions are shallow in practice; a fixed stack keeps this allocation free.
  constexpr std::size_t kInline = 64;
  bool inline_stack[kInline];
  std::vector<bool> heap_stack;
  const bool use_heap = program_.size() > kInline;
  if (use_heap) heap_stack.resize(program_.size());
  std::size_t top = 0;
  auto push = [&](bool v) {
    if (use_heap) heap_stack[top++] = v;
    else inline_stack[top++] = v;
  };
  auto pop = [&]() -> bool { return use_heap ? static_cast<bool>(heap_stack[--top]) : inline_stack[--top]; };

  for (const Instr& ins : program_) {
    switch (ins.op) {
      case Op::PushTrue: push(true); break;
      case Op::PushFalse: push(false); break;
      case Op::Cur: push((current >> ins.var) & 1U); break;
      case Op::Next: push((next >> ins.var) & 1U); break;
      case Op::Not: push(!pop()); break;
      case Op::And: { const bool r = pop(); const bool l = pop(); push(l && r); break; }
      case Op::Or: { const bool r = pop(); const bool l = pop(); push(l || r); break; }
      case Op::Implies: { const bool r = pop(); const bool l = pop(); push(!l || r); break; }
      case Op::Iff: { const bool r = pop(); const bool l = pop(); push(l == r); break; }
    }
  }
  return pop();
}

bool eval_assertion(const Assertion& a, const VariableSet& vars, State s, std::optional<State> s_next) {
  const CompiledAssertion compiled(a, vars);
  if (compiled.uses_next() && !s_next) {
    throw ArityError("assertion '" + a.to_string() + "' reads primed variables but no next state was given");
  }
  return compiled.eval(s.bits, s_next ? s_next->bits : 0);
}

}  // namespace emu
