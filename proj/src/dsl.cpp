#include "dcont/dsl.hpp"

#include <sstream>

namespace dcont::dsl {

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind;
  std::string text;
  std::int64_t int_val = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{Token::Kind::End, "", 0, line_, col_};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    int start_col = col_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits.push_back(text_[pos_++]);
        ++col_;
      }
      tok_ = Token{Token::Kind::Int, digits, std::stoll(digits), line_, start_col};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '-')) {
        // '-' only continues an identifier when followed by a letter, so
        // that "s - p" still lexes as subtraction.
        if (text_[pos_] == '-') {
          if (pos_ + 1 >= text_.size() ||
              !(std::isalpha(static_cast<unsigned char>(text_[pos_ + 1]))))
            break;
        }
        ident.push_back(text_[pos_++]);
        ++col_;
      }
      tok_ = Token{Token::Kind::Ident, ident, 0, line_, start_col};
      return;
    }
    // punctuation, including two-character => and ->
    if ((c == '=' || c == '-') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_ = Token{Token::Kind::Punct, std::string(1, c) + ">", 0, line_, start_col};
      pos_ += 2;
      col_ += 2;
      return;
    }
    tok_ = Token{Token::Kind::Punct, std::string(1, c), 0, line_, start_col};
    ++pos_;
    ++col_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

[[noreturn]] void parse_fail(const Token& t, const std::string& expected) {
  std::ostringstream out;
  out << "line " << t.line << ", col " << t.col << ": expected " << expected << ", got ";
  if (t.kind == Token::Kind::End)
    out << "end of input";
  else
    out << "'" << t.text << "'";
  fail("syntax-error", out.str());
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse_single_expr() {
    ExprPtr e = parse_expr();
    if (lex_.peek().kind != Token::Kind::End) parse_fail(lex_.peek(), "end of expression");
    return e;
  }

  Spec parse() {
    Spec spec;
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& t = lex_.peek();
      if (t.text == "container")
        spec.decls.push_back(parse_container());
      else if (t.text == "directed")
        spec.decls.push_back(parse_directed());
      else if (t.text == "strict")
        spec.decls.push_back(parse_strict());
      else if (t.text == "morphism")
        spec.decls.push_back(parse_morphism());
      else if (t.text == "construct")
        spec.decls.push_back(parse_construct());
      else
        parse_fail(t, "one of {container, directed, strict, morphism, construct}");
    }
    return spec;
  }

 private:
  Token expect_punct(const std::string& p) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().text != p)
      parse_fail(lex_.peek(), "'" + p + "'");
    return lex_.next();
  }

  Token expect_keyword(const std::string& k) {
    if (lex_.peek().kind != Token::Kind::Ident || lex_.peek().text != k)
      parse_fail(lex_.peek(), "'" + k + "'");
    return lex_.next();
  }

  std::string expect_ident(const std::string& what) {
    if (lex_.peek().kind != Token::Kind::Ident) parse_fail(lex_.peek(), what);
    return lex_.next().text;
  }

  bool peek_is(const std::string& text) { return lex_.peek().text == text; }

  ContainerDecl parse_container() {
    expect_keyword("container");
    ContainerDecl d;
    d.name = expect_ident("container name");
    expect_punct("{");
    expect_keyword("shapes");
    expect_punct("=");
    d.shapes = parse_set();
    expect_punct(";");
    expect_keyword("positions");
    expect_punct("(");
    d.pos_var = expect_ident("position shape variable");
    expect_punct(")");
    expect_punct("=");
    d.positions = parse_set();
    expect_punct(";");
    expect_punct("}");
    return d;
  }

  DirectedDecl parse_directed() {
    expect_keyword("directed");
    DirectedDecl d;
    d.name = expect_ident("directed container name");
    expect_keyword("on");
    d.container = expect_ident("container name");
    expect_punct("{");
    expect_keyword("down");
    expect_punct("(");
    d.down_s = expect_ident("variable");
    expect_punct(",");
    d.down_p = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.down = parse_expr();
    expect_punct(";");
    expect_keyword("root");
    expect_punct("(");
    d.root_s = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.root = parse_expr();
    expect_punct(";");
    expect_keyword("plus");
    expect_punct("(");
    d.plus_s = expect_ident("variable");
    expect_punct(",");
    d.plus_p = expect_ident("variable");
    expect_punct(",");
    d.plus_q = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.plus = parse_expr();
    if (peek_is(";")) lex_.next();
    expect_punct("}");
    return d;
  }

  StrictDecl parse_strict() {
    expect_keyword("strict");
    StrictDecl d;
    d.name = expect_ident("strict directed container name");
    expect_punct("{");
    expect_keyword("shapes");
    expect_punct("=");
    d.shapes = parse_set();
    expect_punct(";");
    expect_keyword("positions");
    expect_punct("(");
    d.pos_var = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.positions = parse_set();
    expect_punct(";");
    expect_keyword("down");
    expect_punct("(");
    d.down_s = expect_ident("variable");
    expect_punct(",");
    d.down_p = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.down = parse_expr();
    expect_punct(";");
    expect_keyword("plus");
    expect_punct("(");
    d.plus_s = expect_ident("variable");
    expect_punct(",");
    d.plus_p = expect_ident("variable");
    expect_punct(",");
    d.plus_q = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.plus = parse_expr();
    if (peek_is(";")) lex_.next();
    expect_punct("}");
    return d;
  }

  MorphismDecl parse_morphism() {
    expect_keyword("morphism");
    MorphismDecl d;
    d.name = expect_ident("morphism name");
    expect_punct(":");
    d.source = expect_ident("source container");
    expect_punct("->");
    d.target = expect_ident("target container");
    expect_punct("{");
    expect_keyword("shape");
    expect_punct("(");
    d.shape_var = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.shape = parse_expr();
    expect_punct(";");
    expect_keyword("pos");
    expect_punct("(");
    d.pos_s = expect_ident("variable");
    expect_punct(",");
    d.pos_p = expect_ident("variable");
    expect_punct(")");
    expect_punct("=");
    d.pos = parse_expr();
    if (peek_is(";")) lex_.next();
    expect_punct("}");
    return d;
  }

  ConstructDecl parse_construct() {
    expect_keyword("construct");
    ConstructDecl d;
    d.name = expect_ident("object name");
    expect_punct("=");
    d.kind = expect_ident("construction kind");
    if (d.kind != "coproduct" && d.kind != "product" && d.kind != "cofree" && d.kind != "focus")
      fail("syntax-error", "unknown construction kind '" + d.kind + "'");
    expect_punct("(");
    d.args.push_back(expect_ident("object name"));
    while (peek_is(",")) {
      lex_.next();
      std::string a = expect_ident("object name or mode");
      if (a == "recursive" || a == "bounded")
        d.mode = a;
      else
        d.args.push_back(a);
    }
    expect_punct(")");
    expect_punct(";");
    return d;
  }

  SetExprPtr parse_set() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::Ident) parse_fail(t, "a set expression");
    auto node = std::make_shared<SetExpr>();
    if (t.text == "nat") {
      lex_.next();
      node->kind = SetExpr::Kind::Nat;
    } else if (t.text == "int") {
      lex_.next();
      node->kind = SetExpr::Kind::Int;
    } else if (t.text == "unit") {
      lex_.next();
      node->kind = SetExpr::Kind::Unit;
    } else if (t.text == "fin") {
      lex_.next();
      expect_punct("(");
      node->kind = SetExpr::Kind::Fin;
      node->exprs.push_back(parse_expr());
      expect_punct(")");
    } else if (t.text == "int_range") {
      lex_.next();
      expect_punct("(");
      node->kind = SetExpr::Kind::IntRange;
      node->exprs.push_back(parse_expr());
      expect_punct(",");
      node->exprs.push_back(parse_expr());
      expect_punct(")");
    } else if (t.text == "pair") {
      lex_.next();
      expect_punct("(");
      node->kind = SetExpr::Kind::PairSet;
      node->sets.push_back(parse_set());
      expect_punct(",");
      node->sets.push_back(parse_set());
      expect_punct(")");
    } else if (t.text == "sum") {
      lex_.next();
      expect_punct("(");
      node->kind = SetExpr::Kind::SumSet;
      node->sets.push_back(parse_set());
      expect_punct(",");
      node->sets.push_back(parse_set());
      expect_punct(")");
    } else if (t.text == "sigma") {
      lex_.next();
      expect_punct("(");
      node->kind = SetExpr::Kind::Sigma;
      node->binder_a = expect_ident("binder");
      expect_punct(":");
      node->sets.push_back(parse_set());
      expect_punct(",");
      node->sets.push_back(parse_set());
      expect_punct(")");
    } else if (t.text == "case") {
      lex_.next();
      node->kind = SetExpr::Kind::CaseSum;
      node->scrutinee = parse_expr();
      expect_punct("{");
      expect_keyword("inl");
      node->binder_a = expect_ident("binder");
      expect_punct("=>");
      node->sets.push_back(parse_set());
      expect_punct(";");
      expect_keyword("inr");
      node->binder_b = expect_ident("binder");
      expect_punct("=>");
      node->sets.push_back(parse_set());
      expect_punct("}");
    } else {
      parse_fail(t, "a set expression");
    }
    return node;
  }

  ExprPtr parse_expr() { return parse_addsub(); }

  ExprPtr parse_addsub() {
    ExprPtr lhs = parse_muldiv();
    while (peek_is("+") || peek_is("-")) {
      std::string op = lex_.next().text;
      ExprPtr rhs = parse_muldiv();
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Binop;
      node->name = op;
      node->kids = {lhs, rhs};
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_muldiv() {
    ExprPtr lhs = parse_unary();
    while (peek_is("*") || peek_is("div") || peek_is("mod")) {
      std::string op = lex_.next().text;
      ExprPtr rhs = parse_unary();
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Binop;
      node->name = op;
      node->kids = {lhs, rhs};
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (peek_is("-")) {
      lex_.next();
      auto zero = std::make_shared<Expr>();
      zero->kind = Expr::Kind::Int;
      zero->int_val = 0;
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Binop;
      node->name = "-";
      node->kids = {zero, parse_unary()};
      return node;
    }
    return parse_atom();
  }

  ExprPtr unary_builtin(Expr::Kind kind) {
    lex_.next();
    expect_punct("(");
    auto node = std::make_shared<Expr>();
    node->kind = kind;
    node->kids.push_back(parse_expr());
    expect_punct(")");
    return node;
  }

  ExprPtr parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Int) {
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Int;
      node->int_val = lex_.next().int_val;
      return node;
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lex_.next();
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind != Token::Kind::Ident) parse_fail(t, "an expression");
    if (t.text == "unit") {
      lex_.next();
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Unit;
      return node;
    }
    if (t.text == "nothing") {
      lex_.next();
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Nothing;
      return node;
    }
    if (t.text == "fst") return unary_builtin(Expr::Kind::Fst);
    if (t.text == "snd") return unary_builtin(Expr::Kind::Snd);
    if (t.text == "inl") return unary_builtin(Expr::Kind::Inl);
    if (t.text == "inr") return unary_builtin(Expr::Kind::Inr);
    if (t.text == "just") return unary_builtin(Expr::Kind::Just);
    if (t.text == "pair") {
      lex_.next();
      expect_punct("(");
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::Pair;
      node->kids.push_back(parse_expr());
      expect_punct(",");
      node->kids.push_back(parse_expr());
      expect_punct(")");
      return node;
    }
    if (t.text == "case") {
      lex_.next();
      auto node = std::make_shared<Expr>();
      node->kids.push_back(parse_expr());
      expect_punct("{");
      if (peek_is("inl")) {
        node->kind = Expr::Kind::CaseSum;
        lex_.next();
        node->binder_a = expect_ident("binder");
        expect_punct("=>");
        node->kids.push_back(parse_expr());
        expect_punct(";");
        expect_keyword("inr");
        node->binder_b = expect_ident("binder");
        expect_punct("=>");
        node->kids.push_back(parse_expr());
      } else if (peek_is("just")) {
        node->kind = Expr::Kind::CaseOption;
        lex_.next();
        node->binder_a = expect_ident("binder");
        expect_punct("=>");
        node->kids.push_back(parse_expr());
        expect_punct(";");
        expect_keyword("nothing");
        expect_punct("=>");
        node->kids.push_back(parse_expr());
      } else {
        parse_fail(lex_.peek(), "'inl' or 'just'");
      }
      if (peek_is(";")) lex_.next();
      expect_punct("}");
      return node;
    }
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Kind::Var;
    node->name = lex_.next().text;
    return node;
  }

  Lexer lex_;
};

void print_expr(const ExprPtr& e, std::ostream& out) {
  switch (e->kind) {
    case Expr::Kind::Int:
      out << e->int_val;
      return;
    case Expr::Kind::Unit:
      out << "unit";
      return;
    case Expr::Kind::Var:
      out << e->name;
      return;
    case Expr::Kind::Binop:
      out << "(";
      print_expr(e->kids[0], out);
      out << " " << e->name << " ";
      print_expr(e->kids[1], out);
      out << ")";
      return;
    case Expr::Kind::Pair:
      out << "pair(";
      print_expr(e->kids[0], out);
      out << ", ";
      print_expr(e->kids[1], out);
      out << ")";
      return;
    case Expr::Kind::Fst:
      out << "fst(";
      print_expr(e->kids[0], out);
      out << ")";
      return;
    case Expr::Kind::Snd:
      out << "snd(";
      print_expr(e->kids[0], out);
      out << ")";
      return;
    case Expr::Kind::Inl:
      out << "inl(";
      print_expr(e->kids[0], out);
      out << ")";
      return;
    case Expr::Kind::Inr:
      out << "inr(";
      print_expr(e->kids[0], out);
      out << ")";
      return;
    case Expr::Kind::Just:
      out << "just(";
      print_expr(e->kids[0], out);
      out << ")";
      return;
    case Expr::Kind::Nothing:
      out << "nothing";
      return;
    case Expr::Kind::CaseSum:
      out << "case ";
      print_expr(e->kids[0], out);
      out << " { inl " << e->binder_a << " => ";
      print_expr(e->kids[1], out);
      out << "; inr " << e->binder_b << " => ";
      print_expr(e->kids[2], out);
      out << " }";
      return;
    case Expr::Kind::CaseOption:
      out << "case ";
      print_expr(e->kids[0], out);
      out << " { just " << e->binder_a << " => ";
      print_expr(e->kids[1], out);
      out << "; nothing => ";
      print_expr(e->kids[2], out);
      out << " }";
      return;
  }
}

void print_set(const SetExprPtr& s, std::ostream& out) {
  switch (s->kind) {
    case SetExpr::Kind::Nat:
      out << "nat";
      return;
    case SetExpr::Kind::Int:
      out << "int";
      return;
    case SetExpr::Kind::Unit:
      out << "unit";
      return;
    case SetExpr::Kind::Fin:
      out << "fin(";
      print_expr(s->exprs[0], out);
      out << ")";
      return;
    case SetExpr::Kind::IntRange:
      out << "int_range(";
      print_expr(s->exprs[0], out);
      out << ", ";
      print_expr(s->exprs[1], out);
      out << ")";
      return;
    case SetExpr::Kind::PairSet:
      out << "pair(";
      print_set(s->sets[0], out);
      out << ", ";
      print_set(s->sets[1], out);
      out << ")";
      return;
    case SetExpr::Kind::SumSet:
      out << "sum(";
      print_set(s->sets[0], out);
      out << ", ";
      print_set(s->sets[1], out);
      out << ")";
      return;
    case SetExpr::Kind::Sigma:
      out << "sigma(" << s->binder_a << " : ";
      print_set(s->sets[0], out);
      out << ", ";
      print_set(s->sets[1], out);
      out << ")";
      return;
    case SetExpr::Kind::CaseSum:
      out << "case ";
      print_expr(s->scrutinee, out);
      out << " { inl " << s->binder_a << " => ";
      print_set(s->sets[0], out);
      out << "; inr " << s->binder_b << " => ";
      print_set(s->sets[1], out);
      out << " }";
      return;
  }
}

struct DeclPrinter {
  std::ostream& out;

  void operator()(const ContainerDecl& d) {
    out << "container " << d.name << " {\n  shapes = ";
    print_set(d.shapes, out);
    out << ";\n  positions(" << d.pos_var << ") = ";
    print_set(d.positions, out);
    out << ";\n}\n";
  }
  void operator()(const DirectedDecl& d) {
    out << "directed " << d.name << " on " << d.container << " {\n  down(" << d.down_s << ", "
        << d.down_p << ") = ";
    print_expr(d.down, out);
    out << ";\n  root(" << d.root_s << ") = ";
    print_expr(d.root, out);
    out << ";\n  plus(" << d.plus_s << ", " << d.plus_p << ", " << d.plus_q << ") = ";
    print_expr(d.plus, out);
    out << ";\n}\n";
  }
  void operator()(const StrictDecl& d) {
    out << "strict " << d.name << " {\n  shapes = ";
    print_set(d.shapes, out);
    out << ";\n  positions(" << d.pos_var << ") = ";
    print_set(d.positions, out);
    out << ";\n  down(" << d.down_s << ", " << d.down_p << ") = ";
    print_expr(d.down, out);
    out << ";\n  plus(" << d.plus_s << ", " << d.plus_p << ", " << d.plus_q << ") = ";
    print_expr(d.plus, out);
    out << ";\n}\n";
  }
  void operator()(const MorphismDecl& d) {
    out << "morphism " << d.name << " : " << d.source << " -> " << d.target << " {\n  shape("
        << d.shape_var << ") = ";
    print_expr(d.shape, out);
    out << ";\n  pos(" << d.pos_s << ", " << d.pos_p << ") = ";
    print_expr(d.pos, out);
    out << ";\n}\n";
  }
  void operator()(const ConstructDecl& d) {
    out << "construct " << d.name << " = " << d.kind << "(";
    for (std::size_t i = 0; i < d.args.size(); ++i) {
      if (i) out << ", ";
      out << d.args[i];
    }
    if (!d.mode.empty()) out << ", " << d.mode;
    out << ");\n";
  }
};

}  // namespace

Spec parse_spec(const std::string& text) { return Parser(text).parse(); }

ExprPtr parse_expr_string(const std::string& text) { return Parser(text).parse_single_expr(); }

std::string print_spec(const Spec& spec) {
  std::ostringstream out;
  bool first = true;
  for (const auto& d : spec.decls) {
    if (!first) out << "\n";
    first = false;
    std::visit(DeclPrinter{out}, d);
  }
  return out.str();
}

Value eval_expr(const ExprPtr& e, const ValueEnv& env) {
  switch (e->kind) {
    case Expr::Kind::Int:
      return Value::integer(e->int_val);
    case Expr::Kind::Unit:
      return Value::unit();
    case Expr::Kind::Var: {
      auto it = env.find(e->name);
      if (it == env.end()) fail("unknown-identifier", "variable '" + e->name + "'");
      return it->second;
    }
    case Expr::Kind::Binop: {
      std::int64_t a = eval_expr(e->kids[0], env).whnf().as_int();
      std::int64_t b = eval_expr(e->kids[1], env).whnf().as_int();
      if (e->name == "+") return Value::integer(checked_add(a, b));
      if (e->name == "-") return Value::integer(checked_sub(a, b));
      if (e->name == "*") return Value::integer(checked_mul(a, b));
      if (e->name == "div") return Value::integer(checked_div(a, b));
      if (e->name == "mod") return Value::integer(checked_mod(a, b));
      fail("internal", "unknown operator " + e->name);
    }
    case Expr::Kind::Pair:
      return Value::pair(eval_expr(e->kids[0], env), eval_expr(e->kids[1], env));
    case Expr::Kind::Fst:
      return eval_expr(e->kids[0], env).whnf().first();
    case Expr::Kind::Snd:
      return eval_expr(e->kids[0], env).whnf().second();
    case Expr::Kind::Inl:
      return Value::inl(eval_expr(e->kids[0], env));
    case Expr::Kind::Inr:
      return Value::inr(eval_expr(e->kids[0], env));
    case Expr::Kind::Just:
      return Value::just(eval_expr(e->kids[0], env));
    case Expr::Kind::Nothing:
      return Value::nothing();
    case Expr::Kind::CaseSum: {
      const Value& v = eval_expr(e->kids[0], env).whnf();
      ValueEnv inner = env;
      if (v.is_inl()) {
        inner[e->binder_a] = v.sum_payload();
        return eval_expr(e->kids[1], inner);
      }
      inner[e->binder_b] = v.sum_payload();
      return eval_expr(e->kids[2], inner);
    }
    case Expr::Kind::CaseOption: {
      const Value& v = eval_expr(e->kids[0], env).whnf();
      if (v.is_just()) {
        ValueEnv inner = env;
        inner[e->binder_a] = v.option_payload();
        return eval_expr(e->kids[1], inner);
      }
      return eval_expr(e->kids[2], env);
    }
  }
  fail("internal", "unreachable expression kind");
}

Enumeration eval_set(const SetExprPtr& s, const ValueEnv& env) {
  switch (s->kind) {
    case SetExpr::Kind::Nat:
      return nat_enum();
    case SetExpr::Kind::Int:
      return int_enum();
    case SetExpr::Kind::Unit:
      return unit_enum();
    case SetExpr::Kind::Fin:
      return fin_enum(eval_expr(s->exprs[0], env).whnf().as_int());
    case SetExpr::Kind::IntRange:
      return int_range_enum(eval_expr(s->exprs[0], env).whnf().as_int(),
                            eval_expr(s->exprs[1], env).whnf().as_int());
    case SetExpr::Kind::PairSet:
      return pair_enum(eval_set(s->sets[0], env), eval_set(s->sets[1], env));
    case SetExpr::Kind::SumSet:
      return sum_enum(eval_set(s->sets[0], env), eval_set(s->sets[1], env));
    case SetExpr::Kind::Sigma: {
      SetExprPtr fibre = s->sets[1];
      std::string binder = s->binder_a;
      ValueEnv base_env = env;
      return sigma_enum(eval_set(s->sets[0], env), [fibre, binder, base_env](const Value& v) {
        ValueEnv inner = base_env;
        inner[binder] = v;
        return eval_set(fibre, inner);
      });
    }
    case SetExpr::Kind::CaseSum: {
      const Value& v = eval_expr(s->scrutinee, env).whnf();
      ValueEnv inner = env;
      if (v.is_inl()) {
        inner[s->binder_a] = v.sum_payload();
        return eval_set(s->sets[0], inner);
      }
      inner[s->binder_b] = v.sum_payload();
      return eval_set(s->sets[1], inner);
    }
  }
  fail("internal", "unreachable set kind");
}

namespace {

Container elaborate_container(const ContainerDecl& d) {
  SetExprPtr shapes = d.shapes;
  SetExprPtr positions = d.positions;
  std::string var = d.pos_var;
  return Container(d.name, eval_set(shapes, {}), [positions, var](const Value& s) {
    ValueEnv env;
    env[var] = s;
    return eval_set(positions, env);
  });
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name,
                const std::string& what) {
  auto it = m.find(name);
  if (it == m.end()) fail("unknown-identifier", what + " '" + name + "'");
  return it->second;
}

}  // namespace

Env elaborate(const Spec& spec) {
  Env env;
  std::map<std::string, std::string> first_directed_on;  // container name -> directed name

  auto fresh = [&env](const std::string& name) {
    if (env.containers.count(name) || env.directed.count(name) || env.stricts.count(name) ||
        env.morphisms.count(name))
      fail("duplicate-name", "'" + name + "' is declared twice");
  };

  for (const auto& decl : spec.decls) {
    if (const auto* c = std::get_if<ContainerDecl>(&decl)) {
      fresh(c->name);
      env.containers.emplace(c->name, elaborate_container(*c));
    } else if (const auto* d = std::get_if<DirectedDecl>(&decl)) {
      fresh(d->name);
      Container base = lookup(env.containers, d->container, "container");
      DirectedDecl dd = *d;
      DirectedContainer e{
          d->name, base,
          [dd](const Value& s, const Value& p) {
            return eval_expr(dd.down, {{dd.down_s, s}, {dd.down_p, p}});
          },
          [dd](const Value& s) { return eval_expr(dd.root, {{dd.root_s, s}}); },
          [dd](const Value& s, const Value& p, const Value& q) {
            return eval_expr(dd.plus, {{dd.plus_s, s}, {dd.plus_p, p}, {dd.plus_q, q}});
          }};
      env.directed.emplace(d->name, std::move(e));
      if (!first_directed_on.count(d->container)) first_directed_on[d->container] = d->name;
      env.order.push_back(d->name);
    } else if (const auto* k = std::get_if<StrictDecl>(&decl)) {
      fresh(k->name);
      StrictDecl kd = *k;
      StrictDirectedContainer sd{
          k->name, eval_set(k->shapes, {}),
          [kd](const Value& s) {
            ValueEnv e;
            e[kd.pos_var] = s;
            return eval_set(kd.positions, e);
          },
          [kd](const Value& s, const Value& p) {
            return eval_expr(kd.down, {{kd.down_s, s}, {kd.down_p, p}});
          },
          [kd](const Value& s, const Value& p, const Value& q) {
            return eval_expr(kd.plus, {{kd.plus_s, s}, {kd.plus_p, p}, {kd.plus_q, q}});
          }};
      env.stricts.emplace(k->name, std::move(sd));
      env.order.push_back(k->name);
    } else if (const auto* m = std::get_if<MorphismDecl>(&decl)) {
      fresh(m->name);
      Container src = lookup(env.containers, m->source, "container");
      Container dst = lookup(env.containers, m->target, "container");
      MorphismDecl md = *m;
      ContainerMorphism cm{
          src, dst,
          [md](const Value& s) { return eval_expr(md.shape, {{md.shape_var, s}}); },
          [md](const Value& s, const Value& p) {
            return eval_expr(md.pos, {{md.pos_s, s}, {md.pos_p, p}});
          }};
      CheckedMorphism checked{m->name, cm, std::nullopt};
      auto src_dc = first_directed_on.find(m->source);
      auto dst_dc = first_directed_on.find(m->target);
      if (src_dc != first_directed_on.end() && dst_dc != first_directed_on.end()) {
        checked.as_dc = DCMorphism{m->name, env.directed.at(src_dc->second),
                                   env.directed.at(dst_dc->second), cm};
      }
      env.morphisms.emplace(m->name, std::move(checked));
      env.order.push_back(m->name);
    } else if (const auto* cd = std::get_if<ConstructDecl>(&decl)) {
      fresh(cd->name);
      if (cd->kind == "coproduct") {
        if (cd->args.size() != 2) fail("arity-mismatch", "coproduct takes two directed objects");
        DirectedContainer obj =
            dc_coproduct(lookup(env.directed, cd->args[0], "directed container"),
                         lookup(env.directed, cd->args[1], "directed container"))
                .object;
        obj.name = cd->name;
        env.directed.emplace(cd->name, std::move(obj));
      } else if (cd->kind == "product") {
        if (cd->args.size() != 2)
          fail("arity-mismatch", "product takes two strict directed objects");
        StrictProductBundle bundle =
            strict_product(lookup(env.stricts, cd->args[0], "strict directed container"),
                           lookup(env.stricts, cd->args[1], "strict directed container"),
                           Fuel{2});
        StrictDirectedContainer obj = bundle.object_strict;
        obj.name = cd->name;
        env.stricts.emplace(cd->name, std::move(obj));
      } else if (cd->kind == "cofree") {
        if (cd->args.size() != 1) fail("arity-mismatch", "cofree takes one container");
        CofreeMode mode =
            cd->mode == "bounded" ? CofreeMode::DepthBounded : CofreeMode::Recursive;
        DirectedContainer obj =
            cofree(lookup(env.containers, cd->args[0], "container"), mode, Fuel{8}).object;
        obj.name = cd->name;
        env.directed.emplace(cd->name, std::move(obj));
      } else if (cd->kind == "focus") {
        if (cd->args.size() != 1) fail("arity-mismatch", "focus takes one container");
        DirectedContainer obj = focus_of(lookup(env.containers, cd->args[0], "container"));
        obj.name = cd->name;
        env.directed.emplace(cd->name, std::move(obj));
      }
      env.order.push_back(cd->name);
    }
  }
  return env;
}

namespace {

ExprPtr make_var(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->name = name;
  return e;
}

ExprPtr subst_expr(const ExprPtr& e, std::map<std::string, ExprPtr> sub) {
  switch (e->kind) {
    case Expr::Kind::Var: {
      auto it = sub.find(e->name);
      return it == sub.end() ? e : it->second;
    }
    case Expr::Kind::CaseSum:
    case Expr::Kind::CaseOption: {
      auto n = std::make_shared<Expr>(*e);
      n->kids[0] = subst_expr(e->kids[0], sub);
      auto sub_a = sub;
      sub_a.erase(e->binder_a);
      n->kids[1] = subst_expr(e->kids[1], sub_a);
      auto sub_b = sub;
      sub_b.erase(e->binder_b);
      n->kids[2] = subst_expr(e->kids[2], sub_b);
      return n;
    }
    default: {
      if (e->kids.empty()) return e;
      auto n = std::make_shared<Expr>(*e);
      for (auto& kid : n->kids) kid = subst_expr(kid, sub);
      return n;
    }
  }
}

SetExprPtr subst_set(const SetExprPtr& s, std::map<std::string, ExprPtr> sub) {
  auto n = std::make_shared<SetExpr>(*s);
  for (auto& e : n->exprs) e = subst_expr(e, sub);
  if (s->kind == SetExpr::Kind::Sigma) {
    n->sets[0] = subst_set(s->sets[0], sub);
    auto inner = sub;
    inner.erase(s->binder_a);
    n->sets[1] = subst_set(s->sets[1], inner);
  } else if (s->kind == SetExpr::Kind::CaseSum) {
    n->scrutinee = subst_expr(s->scrutinee, sub);
    auto sub_a = sub;
    sub_a.erase(s->binder_a);
    n->sets[0] = subst_set(s->sets[0], sub_a);
    auto sub_b = sub;
    sub_b.erase(s->binder_b);
    n->sets[1] = subst_set(s->sets[1], sub_b);
  } else {
    for (auto& inner : n->sets) inner = subst_set(inner, sub);
  }
  return n;
}

const ContainerDecl* find_container_decl(const Spec& spec, const std::string& name) {
  for (const auto& d : spec.decls)
    if (const auto* c = std::get_if<ContainerDecl>(&d))
      if (c->name == name) return c;
  return nullptr;
}

const DirectedDecl* find_directed_decl(const Spec& spec, const std::string& name) {
  for (const auto& d : spec.decls)
    if (const auto* c = std::get_if<DirectedDecl>(&d))
      if (c->name == name) return c;
  return nullptr;
}

}  // namespace

std::string emit_construct(const Spec& input, const ConstructDecl& directive) {
  std::ostringstream out;
  out << print_spec(input);
  if (!input.decls.empty()) out << "\n";

  if (directive.kind == "coproduct" && directive.args.size() == 2) {
    const DirectedDecl* a = find_directed_decl(input, directive.args[0]);
    const DirectedDecl* b = find_directed_decl(input, directive.args[1]);
    const ContainerDecl* ca = a ? find_container_decl(input, a->container) : nullptr;
    const ContainerDecl* cb = b ? find_container_decl(input, b->container) : nullptr;
    if (a && b && ca && cb) {
      Spec expansion;
      ContainerDecl cc;
      cc.name = directive.name + "_base";
      auto shapes = std::make_shared<SetExpr>();
      shapes->kind = SetExpr::Kind::SumSet;
      shapes->sets = {ca->shapes, cb->shapes};
      cc.shapes = shapes;
      cc.pos_var = "s";
      auto positions = std::make_shared<SetExpr>();
      positions->kind = SetExpr::Kind::CaseSum;
      positions->scrutinee = make_var("s");
      positions->binder_a = "sl";
      positions->binder_b = "sr";
      positions->sets = {subst_set(ca->positions, {{ca->pos_var, make_var("sl")}}),
                         subst_set(cb->positions, {{cb->pos_var, make_var("sr")}})};
      cc.positions = positions;
      expansion.decls.push_back(cc);

      DirectedDecl dd;
      dd.name = directive.name;
      dd.container = cc.name;
      dd.down_s = "s";
      dd.down_p = "p";
      {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::CaseSum;
        node->binder_a = "sl";
        node->binder_b = "sr";
        auto wrap = [](Expr::Kind k, ExprPtr inner) {
          auto w = std::make_shared<Expr>();
          w->kind = k;
          w->kids.push_back(std::move(inner));
          return w;
        };
        node->kids = {make_var("s"),
                      wrap(Expr::Kind::Inl,
                           subst_expr(a->down, {{a->down_s, make_var("sl")},
                                                {a->down_p, make_var("p")}})),
                      wrap(Expr::Kind::Inr,
                           subst_expr(b->down, {{b->down_s, make_var("sr")},
                                                {b->down_p, make_var("p")}}))};
        dd.down = node;
      }
      dd.root_s = "s";
      {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::CaseSum;
        node->binder_a = "sl";
        node->binder_b = "sr";
        node->kids = {make_var("s"),
                      subst_expr(a->root, {{a->root_s, make_var("sl")}}),
                      subst_expr(b->root, {{b->root_s, make_var("sr")}})};
        dd.root = node;
      }
      dd.plus_s = "s";
      dd.plus_p = "p";
      dd.plus_q = "q";
      {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::CaseSum;
        node->binder_a = "sl";
        node->binder_b = "sr";
        node->kids = {make_var("s"),
                      subst_expr(a->plus, {{a->plus_s, make_var("sl")},
                                           {a->plus_p, make_var("p")},
                                           {a->plus_q, make_var("q")}}),
                      subst_expr(b->plus, {{b->plus_s, make_var("sr")},
                                           {b->plus_p, make_var("p")},
                                           {b->plus_q, make_var("q")}})};
        dd.plus = node;
      }
      expansion.decls.push_back(dd);
      out << "\n" << print_spec(expansion);
      return out.str();
    }
  }

  if (directive.kind == "focus" && directive.args.size() == 1) {
    const ContainerDecl* c = find_container_decl(input, directive.args[0]);
    if (c) {
      Spec expansion;
      ContainerDecl cc;
      cc.name = directive.name + "_base";
      auto shapes = std::make_shared<SetExpr>();
      shapes->kind = SetExpr::Kind::Sigma;
      shapes->binder_a = c->pos_var;
      shapes->sets = {c->shapes, c->positions};
      cc.shapes = shapes;
      cc.pos_var = "sp";
      auto fst_sp = std::make_shared<Expr>();
      fst_sp->kind = Expr::Kind::Fst;
      fst_sp->kids.push_back(make_var("sp"));
      cc.positions = subst_set(c->positions, {{c->pos_var, fst_sp}});
      expansion.decls.push_back(cc);

      DirectedDecl dd;
      dd.name = directive.name;
      dd.container = cc.name;
      dd.down_s = "s";
      dd.down_p = "p";
      {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Pair;
        auto fst_s = std::make_shared<Expr>();
        fst_s->kind = Expr::Kind::Fst;
        fst_s->kids.push_back(make_var("s"));
        node->kids = {fst_s, make_var("p")};
        dd.down = node;
      }
      dd.root_s = "s";
      {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Snd;
        node->kids.push_back(make_var("s"));
        dd.root = node;
      }
      dd.plus_s = "s";
      dd.plus_p = "p";
      dd.plus_q = "q";
      dd.plus = make_var("q");
      expansion.decls.push_back(dd);
      out << "\n" << print_spec(expansion);
      return out.str();
    }
  }

  Spec directive_only;
  directive_only.decls.push_back(directive);
  out << "\n" << print_spec(directive_only);
  return out.str();
}

}  // namespace dcont::dsl
