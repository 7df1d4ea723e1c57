#include "ascount/ingest.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ascount {

ParseError::ParseError(ParseDiagnostic diag)
    : std::runtime_error(std::to_string(diag.line) + ":" + std::to_string(diag.column) + ": " +
                         diag.message),
      diag_(std::move(diag)) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Literal {
  std::string atom;
  bool negated = false;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program run() {
    Program program;
    skip_ws();
    while (!eof()) {
      statement(program);
      skip_ws();
    }
    return program;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError({line_, col_, message});
  }
  [[noreturn]] void fail_at(int line, int col, const std::string& message) const {
    throw ParseError({line, col, message});
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_if() const { return peek() == ':' && peek(1) == '-'; }

  std::string ident() {
    if (eof()) fail("unexpected end of input, expected atom");
    if (!ident_start(peek())) fail(std::string("unexpected character '") + peek() + "'");
    std::string out;
    while (!eof() && ident_char(peek())) {
      out.push_back(peek());
      advance();
    }
    return out;
  }

  std::string atom() {
    int line = line_, col = col_;
    std::string name = ident();
    if (name == "not") fail_at(line, col, "'not' is a keyword and cannot name an atom");
    if (peek() != '(') return name;
    name.push_back('(');
    advance();
    int depth = 1;
    while (depth > 0) {
      if (eof()) fail_at(line, col, "unbalanced parentheses in atom");
      char c = peek();
      if (c == '\n' || c == '.' || c == '%' || c == ':')
        fail(std::string("unexpected '") + (c == '\n' ? std::string("newline") : std::string(1, c)) +
             "' inside argument list");
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (!std::isspace(static_cast<unsigned char>(c))) name.push_back(c);
      advance();
    }
    if (name.size() == name.find('(') + 2) fail_at(line, col, "empty argument list");
    return name;
  }

  Literal literal() {
    Literal lit;
    std::size_t save = pos_;
    int save_line = line_, save_col = col_;
    if (peek() == 'n' && peek(1) == 'o' && peek(2) == 't' && !ident_char(peek(3))) {
      advance();
      advance();
      advance();
      if (!std::isspace(static_cast<unsigned char>(peek())) && peek() != '%') {
        // `not` directly followed by punctuation: reject as keyword misuse
        pos_ = save;
        line_ = save_line;
        col_ = save_col;
        fail("'not' must be followed by whitespace and an atom");
      }
      skip_ws();
      if (peek() == 'n' && peek(1) == 'o' && peek(2) == 't' && !ident_char(peek(3)))
        fail("'not' may not be applied twice");
      lit.negated = true;
    }
    lit.atom = atom();
    return lit;
  }

  std::vector<Literal> body() {
    std::vector<Literal> lits;
    skip_ws();
    if (peek() == '.') fail("empty body");
    lits.push_back(literal());
    skip_ws();
    while (peek() == ',') {
      advance();
      skip_ws();
      lits.push_back(literal());
      skip_ws();
    }
    return lits;
  }

  void expect_dot() {
    skip_ws();
    if (eof()) fail("unterminated statement, expected '.'");
    if (peek() != '.') fail(std::string("expected '.' but found '") + peek() + "'");
    advance();
  }

  void statement(Program& program) {
    if (at_if()) {
      advance();
      advance();
      auto lits = body();
      expect_dot();
      Constraint c;
      for (const auto& l : lits) (l.negated ? c.neg : c.pos).push_back(program.intern(l.atom));
      program.add_constraint(std::move(c));
      return;
    }
    if (peek() == 'n' && peek(1) == 'o' && peek(2) == 't' && !ident_char(peek(3)))
      fail("rule head cannot be negated");
    std::string head = atom();
    Rule rule;
    rule.head = program.intern(head);
    skip_ws();
    if (at_if()) {
      advance();
      advance();
      for (const auto& l : body())
        (l.negated ? rule.neg_body : rule.pos_body).push_back(program.intern(l.atom));
    }
    expect_dot();
    program.add_rule(std::move(rule));
  }
};

void render_body(std::ostringstream& out, const SymbolTable& syms,
                 const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
  bool first = true;
  for (AtomId a : pos) {
    out << (first ? "" : ", ") << syms.symbol(a);
    first = false;
  }
  for (AtomId a : neg) {
    out << (first ? "" : ", ") << "not " << syms.symbol(a);
    first = false;
  }
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

std::string render_program(const Program& program) {
  std::ostringstream out;
  const auto& syms = program.atoms();
  for (const Rule& r : program.rules()) {
    out << syms.symbol(r.head);
    if (r.body_size() > 0) {
      out << " :- ";
      render_body(out, syms, r.pos_body, r.neg_body);
    }
    out << ".\n";
  }
  for (const Constraint& c : program.constraints()) {
    out << ":- ";
    render_body(out, syms, c.pos, c.neg);
    out << ".\n";
  }
  return out.str();
}

Program load_program_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

}  // namespace ascount
