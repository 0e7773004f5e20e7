#include "dedmod/text.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace dedmod {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { LParen, RParen, LBrack, RBrack, Str, Colon, Dot, Ident, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

bool ident_char(char c) {
  switch (c) {
    case '(': case ')': case '[': case ']': case '"': case ':': case '.': case '#':
      return false;
    default:
      return !std::isspace(static_cast<unsigned char>(c));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.line, at.column, message);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(tok_, message); }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what + ", found " + describe(tok_));
    return next();
  }
  Token expect_ident(const char* what) { return expect(Tok::Ident, what); }
  void expect_word(const std::string& word) {
    if (tok_.kind != Tok::Ident || tok_.text != word) fail("expected '" + word + "', found " + describe(tok_));
    advance();
  }
  bool at(Tok kind) const { return tok_.kind == kind; }
  bool at_word(const std::string& w) const { return tok_.kind == Tok::Ident && tok_.text == w; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::LParen: return "'('";
      case Tok::RParen: return "')'";
      case Tok::LBrack: return "'['";
      case Tok::RBrack: return "']'";
      case Tok::Str: return "string \"" + t.text + "\"";
      case Tok::Colon: return "':'";
      case Tok::Dot: return "'.'";
      case Tok::Ident: return "'" + t.text + "'";
      case Tok::End: return "end of input";
    }
    return "?";
  }

 private:
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(cur()))) bump();
      if (pos_ < src_.size() && cur() == '#') {
        while (pos_ < src_.size() && cur() != '\n') bump();
        continue;
      }
      break;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= src_.size()) return;
    char c = cur();
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      bump();
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBrack);
      case ']': return single(Tok::RBrack);
      case ':': return single(Tok::Colon);
      case '.': return single(Tok::Dot);
      case '"': {
        bump();
        std::string s;
        while (pos_ < src_.size() && cur() != '"') {
          if (cur() == '\n') throw ParseError(tok_.line, tok_.column, "unterminated string");
          s += cur();
          bump();
        }
        if (pos_ >= src_.size()) throw ParseError(tok_.line, tok_.column, "unterminated string");
        bump();
        tok_.kind = Tok::Str;
        tok_.text = std::move(s);
        return;
      }
      default: break;
    }
    std::string s;
    while (pos_ < src_.size() && ident_char(cur())) {
      s += cur();
      bump();
    }
    tok_.kind = Tok::Ident;
    tok_.text = std::move(s);
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  Token tok_;
};

const std::set<std::string>& reserved() {
  static const std::set<std::string> words = {"top", "bot", "and", "or", "imp", "not", "iff", "forall", "exists", "~>", "->"};
  return words;
}

// Formula and term parser over a signature. Free variables get their sort
// from an annotation or from the argument position; one name has one sort
// within a parsed item.
class FormulaParser {
 public:
  FormulaParser(const Signature& sig, Lexer& lex) : sig_(sig), lex_(lex) {}

  void reset() { free_.clear(); }

  Term term(const std::optional<Sort>& expected) {
    Token t = lex_.peek();
    if (lex_.at(Tok::LParen)) {
      lex_.next();
      Token fn = lex_.expect_ident("function symbol");
      const FunctionDecl* decl = sig_.function(fn.text);
      if (!decl) lex_.fail(fn, "unknown function symbol '" + fn.text + "'");
      std::vector<Term> args;
      while (!lex_.at(Tok::RParen)) {
        if (args.size() == decl->args.size())
          lex_.fail("too many arguments for '" + fn.text + "' (arity " + std::to_string(decl->args.size()) + ")");
        args.push_back(term(decl->args[args.size()]));
      }
      if (args.size() != decl->args.size())
        lex_.fail("too few arguments for '" + fn.text + "' (arity " + std::to_string(decl->args.size()) + ")");
      lex_.next();
      return check_sort(Term::app(fn.text, std::move(args), decl->result), expected, t);
    }
    Token id = lex_.expect_ident("term");
    if (reserved().contains(id.text)) lex_.fail(id, "'" + id.text + "' is reserved");
    if (lex_.at(Tok::Colon)) {
      lex_.next();
      Token s = lex_.expect_ident("sort");
      if (!sig_.has_sort(s.text)) lex_.fail(s, "unknown sort '" + s.text + "'");
      return check_sort(variable(id, s.text), expected, t);
    }
    if (const FunctionDecl* decl = sig_.function(id.text)) {
      if (!decl->args.empty())
        lex_.fail(id, "'" + id.text + "' expects " + std::to_string(decl->args.size()) + " argument(s)");
      return check_sort(Term::app(id.text, {}, decl->result), expected, t);
    }
    if (sig_.predicate(id.text)) lex_.fail(id, "predicate '" + id.text + "' used as a term");
    std::optional<Sort> known = sort_of(id.text);
    if (!known) known = expected;
    if (!known) lex_.fail(id, "cannot infer the sort of variable '" + id.text + "'; write " + id.text + ":<sort>");
    return check_sort(variable(id, *known), expected, t);
  }

  Prop prop() {
    if (!lex_.at(Tok::LParen)) {
      Token id = lex_.expect_ident("formula");
      if (id.text == "top") return Prop::top();
      if (id.text == "bot") return Prop::bottom();
      return atom(id, {});
    }
    lex_.next();
    Token head = lex_.expect_ident("connective or predicate");
    Prop out;
    const std::string& h = head.text;
    if (h == "and" || h == "or" || h == "imp" || h == "iff") {
      Prop a = prop();
      Prop b = prop();
      out = h == "and" ? Prop::conj(a, b) : h == "or" ? Prop::disj(a, b) : h == "imp" ? Prop::imp(a, b) : Prop::iff(a, b);
    } else if (h == "not") {
      out = Prop::neg(prop());
    } else if (h == "forall" || h == "exists") {
      Token x = lex_.expect_ident("bound variable");
      lex_.expect(Tok::Colon, "':' after bound variable");
      Token s = lex_.expect_ident("sort");
      if (!sig_.has_sort(s.text)) lex_.fail(s, "unknown sort '" + s.text + "'");
      if (sig_.is_function(x.text) || sig_.predicate(x.text))
        lex_.fail(x, "'" + x.text + "' is a declared symbol, not a variable");
      Var v{x.text, s.text};
      bound_.push_back(v);
      Prop body = prop();
      bound_.pop_back();
      out = h == "forall" ? Prop::forall(v, body) : Prop::exists(v, body);
    } else if (h == "top" || h == "bot") {
      out = h == "top" ? Prop::top() : Prop::bottom();
    } else {
      return atom(head, collect_args(head));
    }
    lex_.expect(Tok::RParen, "')'");
    return out;
  }

  const Signature& sig() const { return sig_; }
  Lexer& lexer() { return lex_; }

 private:
  std::optional<Sort> sort_of(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->name == name) return it->sort;
    if (auto it = free_.find(name); it != free_.end()) return it->second;
    return std::nullopt;
  }

  Term variable(const Token& id, const Sort& s) {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->name == id.text) {
        if (it->sort != s) lex_.fail(id, "variable '" + id.text + "' is bound with sort " + it->sort);
        return Term::var(id.text, s);
      }
    auto [it, inserted] = free_.emplace(id.text, s);
    if (!inserted && it->second != s)
      lex_.fail(id, "variable '" + id.text + "' used with sorts " + it->second + " and " + s);
    return Term::var(id.text, s);
  }

  Term check_sort(Term t, const std::optional<Sort>& expected, const Token& at) {
    if (expected && t.sort() != *expected)
      lex_.fail(at, "sort mismatch: " + to_string(t) + " has sort " + t.sort() + ", expected " + *expected);
    return t;
  }

  std::vector<Term> collect_args(const Token& head) {
    const std::vector<Sort>* decl = sig_.predicate(head.text);
    if (!decl) lex_.fail(head, "unknown predicate '" + head.text + "'");
    std::vector<Term> args;
    while (!lex_.at(Tok::RParen)) {
      if (args.size() == decl->size())
        lex_.fail("too many arguments for '" + head.text + "' (arity " + std::to_string(decl->size()) + ")");
      args.push_back(term((*decl)[args.size()]));
    }
    lex_.next();
    return args;
  }

  Prop atom(const Token& id, std::vector<Term> args) {
    const std::vector<Sort>* decl = sig_.predicate(id.text);
    if (!decl) lex_.fail(id, "unknown predicate '" + id.text + "'");
    if (args.size() != decl->size())
      lex_.fail(id, "'" + id.text + "' expects " + std::to_string(decl->size()) + " argument(s)");
    return Prop::atom(id.text, std::move(args));
  }

  const Signature& sig_;
  Lexer& lex_;
  std::vector<Var> bound_;
  std::map<std::string, Sort> free_;
};

// Head symbol of the item at the cursor: `P`, `(P ...)`, `(f ...)`, `x`.
bool lhs_is_predicate(const Signature& sig, std::string_view rest) {
  Lexer probe(rest);
  if (probe.at(Tok::LParen)) probe.next();
  if (!probe.at(Tok::Ident)) return false;
  const std::string& h = probe.peek().text;
  return sig.predicate(h) != nullptr || h == "top" || h == "bot" || h == "and" || h == "or" || h == "imp" ||
         h == "not" || h == "iff" || h == "forall" || h == "exists";
}

void end_item(Lexer& lex) { lex.expect(Tok::Dot, "'.' ending the declaration"); }

}  // namespace

Term parse_term(const Signature& sig, std::string_view text) {
  Lexer lex(text);
  FormulaParser p(sig, lex);
  Term t = p.term(std::nullopt);
  if (!lex.at(Tok::End)) lex.fail("unexpected " + Lexer::describe(lex.peek()) + " after term");
  return t;
}

Prop parse_prop(const Signature& sig, std::string_view text) {
  Lexer lex(text);
  FormulaParser p(sig, lex);
  Prop a = p.prop();
  if (!lex.at(Tok::End)) lex.fail("unexpected " + Lexer::describe(lex.peek()) + " after formula");
  return a;
}

Expr parse_expr(const Signature& sig, std::string_view text) {
  if (lhs_is_predicate(sig, text)) return parse_prop(sig, text);
  return parse_term(sig, text);
}

// ---------------------------------------------------------------------------
// Theories

namespace {

std::size_t offset_of(std::string_view text, std::size_t line, std::size_t column) {
  std::size_t l = 1, off = 0;
  while (l < line && off < text.size()) {
    if (text[off] == '\n') ++l;
    ++off;
  }
  return off + column - 1;
}

}  // namespace

Theory parse_theory(std::string_view text, std::string name) {
  Theory th;
  th.name = std::move(name);
  Lexer lex(text);
  FormulaParser fp(th.signature, lex);
  while (!lex.at(Tok::End)) {
    Token kw = lex.expect_ident("declaration keyword");
    try {
      if (kw.text == "sort") {
        Token s = lex.expect_ident("sort name");
        if (reserved().contains(s.text)) lex.fail(s, "'" + s.text + "' is reserved");
        if (th.signature.has_sort(s.text)) lex.fail(s, "sort '" + s.text + "' declared twice");
        th.signature.add_sort(s.text);
        end_item(lex);
      } else if (kw.text == "func") {
        Token f = lex.expect_ident("function name");
        if (reserved().contains(f.text)) lex.fail(f, "'" + f.text + "' is reserved");
        lex.expect(Tok::Colon, "':' after function name");
        std::vector<Token> sorts;
        bool arrow = false;
        while (lex.at(Tok::Ident)) {
          Token s = lex.next();
          if (s.text == "->") {
            if (arrow) lex.fail(s, "second '->'");
            arrow = true;
            continue;
          }
          sorts.push_back(s);
        }
        if (sorts.empty()) lex.fail("missing result sort");
        if (!arrow && sorts.size() != 1) lex.fail("expected '->' before the result sort");
        std::vector<Sort> args;
        for (std::size_t i = 0; i + 1 < sorts.size(); ++i) {
          if (!th.signature.has_sort(sorts[i].text)) lex.fail(sorts[i], "unknown sort '" + sorts[i].text + "'");
          args.push_back(sorts[i].text);
        }
        if (!th.signature.has_sort(sorts.back().text))
          lex.fail(sorts.back(), "unknown sort '" + sorts.back().text + "'");
        if (th.signature.is_function(f.text) || th.signature.predicate(f.text))
          lex.fail(f, "symbol '" + f.text + "' declared twice");
        th.signature.add_function(f.text, std::move(args), sorts.back().text);
        end_item(lex);
      } else if (kw.text == "pred") {
        Token p = lex.expect_ident("predicate name");
        if (reserved().contains(p.text)) lex.fail(p, "'" + p.text + "' is reserved");
        std::vector<Sort> args;
        if (lex.at(Tok::Colon)) {
          lex.next();
          while (lex.at(Tok::Ident)) {
            Token s = lex.next();
            if (!th.signature.has_sort(s.text)) lex.fail(s, "unknown sort '" + s.text + "'");
            args.push_back(s.text);
          }
        }
        if (th.signature.is_function(p.text) || th.signature.predicate(p.text))
          lex.fail(p, "symbol '" + p.text + "' declared twice");
        th.signature.add_predicate(p.text, std::move(args));
        end_item(lex);
      } else if (kw.text == "rule") {
        Token n = lex.expect_ident("rule name");
        lex.expect(Tok::Colon, "':' after rule name");
        Token lhs_at = lex.peek();
        fp.reset();
        bool is_prop = lhs_is_predicate(th.signature, text.substr(offset_of(text, lhs_at.line, lhs_at.column)));
        if (is_prop) {
          Prop lhs = fp.prop();
          lex.expect_word("~>");
          Prop rhs = fp.prop();
          try {
            th.rules.add(RewriteRule::prop_rule(n.text, lhs, rhs));
          } catch (const Error& e) {
            lex.fail(lhs_at, e.what());
          }
        } else {
          if (lex.at(Tok::Ident) && !th.signature.is_function(lex.peek().text))
            lex.fail(lhs_at, "rule '" + n.text + "': left-hand side is a variable");
          Term lhs = fp.term(std::nullopt);
          lex.expect_word("~>");
          Term rhs = fp.term(lhs.sort());
          try {
            th.rules.add(RewriteRule::term_rule(n.text, lhs, rhs));
          } catch (const Error& e) {
            lex.fail(lhs_at, e.what());
          }
        }
        end_item(lex);
      } else if (kw.text == "assert") {
        lex.expect_word("terminating");
        th.asserted_terminating = true;
        end_item(lex);
      } else {
        lex.fail(kw, "unknown declaration '" + kw.text + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      lex.fail(kw, e.what());
    }
  }
  if (th.asserted_terminating) th.rules.assert_terminating();
  return th;
}

std::string print_theory(const Theory& th) {
  std::ostringstream out;
  for (const auto& s : th.signature.sorts()) out << "sort " << s << ".\n";
  for (const auto& f : th.signature.functions()) {
    const FunctionDecl* d = th.signature.function(f);
    out << "func " << f << " :";
    for (const auto& a : d->args) out << ' ' << a;
    out << " -> " << d->result << ".\n";
  }
  for (const auto& p : th.signature.predicates()) {
    const auto* d = th.signature.predicate(p);
    out << "pred " << p;
    if (!d->empty()) {
      out << " :";
      for (const auto& a : *d) out << ' ' << a;
    }
    out << ".\n";
  }
  for (const auto& r : th.rules.rules()) out << to_string(r) << '\n';
  if (th.asserted_terminating) out << "assert terminating.\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Proofs

namespace {

ProofTree proof_node(FormulaParser& fp) {
  Lexer& lex = fp.lexer();
  lex.expect(Tok::LParen, "'(' starting a proof node");
  Token tag_tok = lex.expect_ident("rule tag");
  auto tag = tag_from_name(tag_tok.text);
  if (!tag) lex.fail(tag_tok, "unknown rule tag '" + tag_tok.text + "'");
  RuleShape shape = shape_of(*tag);
  std::optional<Prop> conclusion;
  if (lex.at(Tok::LBrack)) {
    lex.next();
    fp.reset();
    conclusion = fp.prop();
    lex.expect(Tok::RBrack, "']' closing the conclusion");
  }
  std::vector<std::string> labels;
  while (lex.at(Tok::Str)) labels.push_back(lex.next().text);
  if (labels.size() != shape.labels)
    lex.fail(tag_tok, tag_tok.text + " expects " + std::to_string(shape.labels) + " hypothesis label(s), got " +
                          std::to_string(labels.size()));
  std::optional<Term> witness;
  std::optional<Var> eigen;
  if (shape.witness) {
    fp.reset();
    witness = fp.term(std::nullopt);
  }
  if (shape.eigenvariable) {
    Token x = lex.expect_ident("eigenvariable");
    lex.expect(Tok::Colon, "':' after eigenvariable");
    Token s = lex.expect_ident("sort");
    if (!fp.sig().has_sort(s.text)) lex.fail(s, "unknown sort '" + s.text + "'");
    if (fp.sig().is_function(x.text)) lex.fail(x, "'" + x.text + "' is a declared symbol, not a variable");
    eigen = Var{x.text, s.text};
  }
  std::vector<ProofTree> children;
  while (lex.at(Tok::LParen)) children.push_back(proof_node(fp));
  if (children.size() != shape.children)
    lex.fail(tag_tok, tag_tok.text + " expects " + std::to_string(shape.children) + " premise(s), got " +
                          std::to_string(children.size()));
  lex.expect(Tok::RParen, "')' closing the proof node");
  return ProofTree::make(*tag, std::move(children), std::move(labels), std::move(witness), std::move(eigen),
                         std::move(conclusion));
}

void print_node(const ProofTree& p, std::ostringstream& out, int indent) {
  if (indent > 0) out << '\n' << std::string(static_cast<std::size_t>(indent), ' ');
  out << '(' << tag_name(p.tag());
  if (p.conclusion()) out << " [" << to_string(*p.conclusion()) << ']';
  for (const auto& l : p.labels()) out << " \"" << l << '"';
  if (p.witness()) out << ' ' << to_string_annotated(*p.witness());
  if (p.eigenvariable()) out << ' ' << to_string(*p.eigenvariable());
  for (const auto& c : p.children()) {
    if (indent < 0) {
      out << ' ';
      print_node(c, out, -1);
    } else {
      print_node(c, out, indent + 2);
    }
  }
  out << ')';
}

}  // namespace

ProofTree parse_proof(const Signature& sig, std::string_view text) {
  Lexer lex(text);
  FormulaParser fp(sig, lex);
  ProofTree p = proof_node(fp);
  if (!lex.at(Tok::End)) lex.fail("unexpected " + Lexer::describe(lex.peek()) + " after proof");
  return p;
}

std::string print_proof(const ProofTree& proof) {
  std::ostringstream out;
  print_node(proof, out, -1);
  return out.str();
}

std::string print_proof_pretty(const ProofTree& proof) {
  std::ostringstream out;
  print_node(proof, out, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Goals

Sequent parse_goal(const Signature& sig, std::string_view text) {
  Lexer lex(text);
  FormulaParser fp(sig, lex);
  Sequent s;
  bool have_goal = false;
  std::set<std::string> labels;
  while (!lex.at(Tok::End)) {
    Token kw = lex.expect_ident("'hyp' or 'goal'");
    if (have_goal) lex.fail(kw, "declaration after the goal");
    fp.reset();
    if (kw.text == "hyp") {
      Token l = lex.expect_ident("hypothesis label");
      if (!labels.insert(l.text).second) lex.fail(l, "duplicate hypothesis label '" + l.text + "'");
      lex.expect(Tok::Colon, "':' after hypothesis label");
      s.context.push_back(Hypothesis{l.text, fp.prop()});
    } else if (kw.text == "goal") {
      s.conclusion = fp.prop();
      have_goal = true;
    } else {
      lex.fail(kw, "unknown declaration '" + kw.text + "'");
    }
    end_item(lex);
  }
  if (!have_goal) lex.fail("missing 'goal' declaration");
  return s;
}

std::string print_goal(const Sequent& goal) {
  std::string out;
  for (const auto& h : goal.context) out += "hyp " + h.label + ": " + to_string(h.formula) + ".\n";
  return out + "goal " + to_string(goal.conclusion) + ".\n";
}

}  // namespace dedmod
