#include "msym/dsl.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "msym/multiphase.hpp"

namespace msym {

namespace {

enum class Tok { ident, integer, lparen, rparen, plus, minus, star, caret,
                 slash, at, equals, newline, end };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      break;
    }
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::end, "", line, col};
    char c = src_[pos_];
    if (c == '\n') {
      advance();
      return {Tok::newline, "\n", line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        id += src_[pos_];
        advance();
      }
      return {Tok::ident, std::move(id), line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        num += src_[pos_];
        advance();
      }
      return {Tok::integer, std::move(num), line, col};
    }
    advance();
    switch (c) {
      case '(': return {Tok::lparen, "(", line, col};
      case ')': return {Tok::rparen, ")", line, col};
      case '+': return {Tok::plus, "+", line, col};
      case '-': return {Tok::minus, "-", line, col};
      case '*': return {Tok::star, "*", line, col};
      case '^': return {Tok::caret, "^", line, col};
      case '/': return {Tok::slash, "/", line, col};
      case '@': return {Tok::at, "@", line, col};
      case '=': return {Tok::equals, "=", line, col};
      default:
        throw parse_error(std::string("unexpected character '") + c + "'",
                          line, col);
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

struct Parser {
  explicit Parser(const std::string& src) : lexer_(src) { bump(); }

  Token cur_;
  Lexer lexer_;
  DslDocument doc_;
  bool have_chart_ = false;

  void bump() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, cur_.line, cur_.column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw parse_error(msg, t.line, t.column);
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    bump();
  }

  void skip_newlines() {
    while (cur_.kind == Tok::newline) bump();
  }

  int expect_int() {
    if (cur_.kind != Tok::integer) fail("expected an integer");
    int v = std::stoi(cur_.text);
    bump();
    return v;
  }

  // chart (extended|ordinary) n=<int> N=<int>
  void parse_chart_line() {
    if (cur_.kind != Tok::ident || cur_.text != "chart")
      fail("document must start with a chart declaration");
    bump();
    if (cur_.kind != Tok::ident ||
        (cur_.text != "extended" && cur_.text != "ordinary"))
      fail("expected 'extended' or 'ordinary'");
    bool extended = cur_.text == "extended";
    bump();
    int n = -1, N = -1;
    for (int k = 0; k < 2; ++k) {
      if (cur_.kind != Tok::ident || (cur_.text != "n" && cur_.text != "N"))
        fail("expected n=<int> and N=<int>");
      bool lower = cur_.text == "n";
      bump();
      expect(Tok::equals, "'='");
      (lower ? n : N) = expect_int();
    }
    if (n < 1 || N < 1) fail("chart dimensions must be positive");
    doc_.chart = extended ? Chart::extended(n, N) : Chart::ordinary(n, N);
    have_chart_ = true;
  }

  int coordinate_index(const Token& t) const {
    const Chart& chart = doc_.chart;
    std::string name = t.text;
    if (name == "q" && chart.N() == 1) name = "q1";  // alias on input
    int idx = chart.vars().index_of(name);
    if (idx < 0) fail_at(t, "unknown coordinate '" + t.text + "'");
    return idx;
  }

  const DslValue* lookup(const std::string& name) const {
    return doc_.find(name);
  }

  // --- expression grammar -------------------------------------------------
  // expr    := wedge (('+'|'-') wedge)*
  // wedge   := product ('^' product)*
  // product := unary ('*' unary)*
  // unary   := '-' unary | primary
  // primary := rational | '(' expr ')' | 'd' '(' coord ')' | '@' coord
  //          | theta | omega | sigma | coordinate | defined name

  DslValue parse_expr() {
    DslValue v = parse_wedge();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      Token op = cur_;
      bump();
      DslValue rhs = parse_wedge();
      v = combine_additive(std::move(v), std::move(rhs), op);
    }
    return v;
  }

  DslValue parse_wedge() {
    DslValue v = parse_product();
    while (cur_.kind == Tok::caret) {
      Token op = cur_;
      bump();
      DslValue rhs = parse_product();
      v = combine_wedge(std::move(v), std::move(rhs), op);
    }
    return v;
  }

  DslValue parse_product() {
    DslValue v = parse_unary();
    while (cur_.kind == Tok::star) {
      Token op = cur_;
      bump();
      DslValue rhs = parse_unary();
      v = combine_product(std::move(v), std::move(rhs), op);
    }
    return v;
  }

  DslValue parse_unary() {
    if (cur_.kind == Tok::minus) {
      bump();
      DslValue v = parse_unary();
      return std::visit([](auto& x) -> DslValue { return -x; }, v);
    }
    return parse_primary();
  }

  DslValue parse_primary() {
    const Chart& chart = doc_.chart;
    if (cur_.kind == Tok::integer) {
      long num = std::stol(cur_.text);
      bump();
      long den = 1;
      if (cur_.kind == Tok::slash) {
        bump();
        if (cur_.kind != Tok::integer) fail("expected a denominator");
        den = std::stol(cur_.text);
        if (den == 0) fail("zero denominator");
        bump();
      }
      return Scalar::constant(chart.vars(), rat(num, den));
    }
    if (cur_.kind == Tok::lparen) {
      bump();
      DslValue v = parse_expr();
      expect(Tok::rparen, "')'");
      return v;
    }
    if (cur_.kind == Tok::at) {
      bump();
      if (cur_.kind != Tok::ident) fail("expected a coordinate after '@'");
      Token t = cur_;
      bump();
      return Multivector::basis(chart, {coordinate_index(t)});
    }
    if (cur_.kind == Tok::ident) {
      Token t = cur_;
      if (t.text == "d") {
        bump();
        expect(Tok::lparen, "'(' after d");
        if (cur_.kind != Tok::ident) fail("expected a coordinate inside d()");
        Token coord = cur_;
        bump();
        expect(Tok::rparen, "')'");
        return Form::basis(chart, {coordinate_index(coord)});
      }
      if (t.text == "theta") { bump(); return theta(chart); }
      if (t.text == "omega") { bump(); return omega(chart); }
      if (t.text == "sigma") { bump(); return sigma(chart); }
      if ((t.text == "q" && chart.N() == 1) ||
          chart.vars().index_of(t.text) >= 0) {
        bump();
        return Scalar::variable(chart.vars(), coordinate_index(t));
      }
      if (const DslValue* def = lookup(t.text)) {
        bump();
        return *def;
      }
      fail_at(t, "unknown name '" + t.text + "'");
    }
    fail("expected an expression");
  }

  DslValue combine_additive(DslValue a, DslValue b, const Token& op) {
    auto mismatch = [&]() -> DslValue {
      fail_at(op, "grading error: '" + op.text +
                      "' needs operands of the same kind and degree");
    };
    bool minus = op.kind == Tok::minus;
    if (auto* sa = std::get_if<Scalar>(&a)) {
      if (auto* sb = std::get_if<Scalar>(&b))
        return minus ? *sa - *sb : *sa + *sb;
      return mismatch();
    }
    if (auto* fa = std::get_if<Form>(&a)) {
      auto* fb = std::get_if<Form>(&b);
      if (!fb || fa->degree() != fb->degree()) return mismatch();
      return minus ? *fa - *fb : *fa + *fb;
    }
    auto* ma = std::get_if<Multivector>(&a);
    auto* mb = std::get_if<Multivector>(&b);
    if (!mb || ma->degree() != mb->degree()) return mismatch();
    return minus ? *ma - *mb : *ma + *mb;
  }

  DslValue combine_product(DslValue a, DslValue b, const Token& op) {
    if (auto* sa = std::get_if<Scalar>(&a)) {
      if (auto* sb = std::get_if<Scalar>(&b)) return *sa * *sb;
      if (auto* fb = std::get_if<Form>(&b)) return *sa * *fb;
      return *sa * std::get<Multivector>(b);
    }
    if (auto* sb = std::get_if<Scalar>(&b)) {
      if (auto* fa = std::get_if<Form>(&a)) return *sb * *fa;
      return *sb * std::get<Multivector>(a);
    }
    fail_at(op, "grading error: '*' needs a scalar factor (use '^' to "
                "multiply graded objects)");
  }

  DslValue combine_wedge(DslValue a, DslValue b, const Token& op) {
    // A scalar factor in a wedge acts as a 0-degree coefficient.
    if (std::get_if<Scalar>(&a) || std::get_if<Scalar>(&b))
      return combine_product(std::move(a), std::move(b), op);
    if (auto* fa = std::get_if<Form>(&a)) {
      auto* fb = std::get_if<Form>(&b);
      if (!fb)
        fail_at(op, "grading error: cannot wedge a form with a multivector");
      return wedge(*fa, *fb);
    }
    auto* ma = std::get_if<Multivector>(&a);
    auto* mb = std::get_if<Multivector>(&b);
    if (!mb)
      fail_at(op, "grading error: cannot wedge a multivector with a form");
    return wedge(*ma, *mb);
  }

  DslDocument parse_document() {
    skip_newlines();
    parse_chart_line();
    if (cur_.kind != Tok::newline && cur_.kind != Tok::end)
      fail("unexpected input after the chart declaration");
    skip_newlines();
    while (cur_.kind != Tok::end) {
      if (cur_.kind != Tok::ident || cur_.text != "let")
        fail("expected 'let <name> = <expr>'");
      bump();
      if (cur_.kind != Tok::ident) fail("expected a definition name");
      Token name = cur_;
      if (doc_.find(name.text))
        fail_at(name, "duplicate definition of '" + name.text + "'");
      if (doc_.chart.vars().index_of(name.text) >= 0 ||
          (name.text == "q" && doc_.chart.N() == 1))
        fail_at(name, "'" + name.text + "' collides with a coordinate");
      bump();
      expect(Tok::equals, "'='");
      DslValue v = parse_expr();
      if (cur_.kind != Tok::newline && cur_.kind != Tok::end)
        fail("unexpected input after the expression");
      doc_.definitions.emplace_back(name.text, std::move(v));
      skip_newlines();
    }
    return std::move(doc_);
  }
};

}  // namespace

const DslValue* DslDocument::find(const std::string& name) const {
  for (const auto& [n, v] : definitions)
    if (n == name) return &v;
  return nullptr;
}

std::string render_value(const DslValue& v) {
  return std::visit([](const auto& x) { return x.render(); }, v);
}

std::string DslDocument::render() const {
  std::ostringstream os;
  os << "chart " << (chart.is_extended() ? "extended" : "ordinary")
     << " n=" << chart.n() << " N=" << chart.N() << "\n";
  for (const auto& [name, v] : definitions)
    os << "let " << name << " = " << render_value(v) << "\n";
  return os.str();
}

ConnectionData DslDocument::connection() const {
  int n = chart.n(), N = chart.N();
  Vars base = ConnectionData::base_vars(n, N);
  std::vector<std::vector<Scalar>> ge(N, std::vector<Scalar>(n, Scalar::zero(base)));
  std::vector<std::vector<std::vector<Scalar>>> gtm(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(base))));
  bool any = false;
  for (const auto& [name, v] : definitions) {
    int a = 0, b = 0, c = 0;
    const Scalar* s = std::get_if<Scalar>(&v);
    if (std::sscanf(name.c_str(), "GammaE_%d_%d", &a, &b) == 2) {
      if (!s) throw usage_error(name + " must be a scalar expression");
      if (a < 1 || a > N || b < 1 || b > n)
        throw usage_error("connection index out of range in " + name);
      ge[a - 1][b - 1] = rename_vars(*s, base);
      any = true;
    } else if (std::sscanf(name.c_str(), "GammaTM_%d_%d_%d", &a, &b, &c) == 3) {
      if (!s) throw usage_error(name + " must be a scalar expression");
      if (a < 1 || a > n || b < 1 || b > n || c < 1 || c > n)
        throw usage_error("connection index out of range in " + name);
      gtm[a - 1][b - 1][c - 1] = rename_vars(*s, base);
      gtm[a - 1][c - 1][b - 1] = gtm[a - 1][b - 1][c - 1];
      any = true;
    }
  }
  if (!any)
    throw usage_error(
        "no GammaE_<i>_<mu> or GammaTM_<kappa>_<mu>_<lambda> definitions found");
  return ConnectionData(n, N, std::move(ge), std::move(gtm));
}

DslDocument parse_document(const std::string& source) {
  return Parser(source).parse_document();
}

DslValue parse_expression(const std::string& source, const DslDocument& doc) {
  Parser p(source);
  p.doc_ = doc;
  p.have_chart_ = true;
  p.skip_newlines();
  DslValue v = p.parse_expr();
  p.skip_newlines();
  if (p.cur_.kind != Tok::end) p.fail("unexpected input after the expression");
  return v;
}

}  // namespace msym
