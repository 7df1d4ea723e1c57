#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"

#include "ascount/ingest.hpp"
#include "support/random_programs.hpp"

using namespace ascount;

namespace {

// Program as sets of symbolic statements, independent of atom numbering.
using SymRule = std::tuple<std::string, std::set<std::string>, std::set<std::string>>;
using SymConstraint = std::pair<std::set<std::string>, std::set<std::string>>;

std::pair<std::set<SymRule>, std::set<SymConstraint>> symbolic(const Program& p) {
  auto names = [&](const std::vector<AtomId>& ids) {
    std::set<std::string> out;
    for (AtomId a : ids) out.insert(p.atoms().symbol(a));
    return out;
  };
  std::set<SymRule> rules;
  for (const Rule& r : p.rules()) rules.emplace(p.atoms().symbol(r.head), names(r.pos_body), names(r.neg_body));
  std::set<SymConstraint> cons;
  for (const Constraint& c : p.constraints()) cons.emplace(names(c.pos), names(c.neg));
  return {rules, cons};
}

ParseDiagnostic diag_of(std::string_view text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e.diagnostic();
  }
  FAIL("expected a parse error for: " << text);
  return {};
}

}  // namespace

TEST_CASE("parse the running example") {
  const Program p = parse_program(
      "a :- not b.\nb :- not a.\nc :- a, b.\nc :- d.\nd :- a.\nd :- b, c.\ne :- not a, not b.");
  CHECK(p.rules().size() == 7);
  CHECK(p.atom_count() == 5);
  CHECK(p.constraints().empty());
  const Rule& r6 = p.rules()[5];
  CHECK(p.atoms().symbol(r6.head) == "d");
  CHECK(r6.pos_body.size() == 2);
}

TEST_CASE("parse facts and constraints") {
  const Program fact = parse_program("a.");
  REQUIRE(fact.rules().size() == 1);
  CHECK(fact.rules()[0].body_size() == 0);

  const Program c = parse_program(":- a, not b.");
  CHECK(c.rules().empty());
  REQUIRE(c.constraints().size() == 1);
  CHECK(c.constraints()[0].pos == std::vector<AtomId>{c.atoms().find("a")});
  CHECK(c.constraints()[0].neg == std::vector<AtomId>{c.atoms().find("b")});
}

TEST_CASE("parse ground terms, comments and whitespace") {
  const Program p = parse_program(
      "% header\n"
      "in(1,2) :- not out(1, 2).   % trailing\n"
      "  out(1,2):-not in(1,2).\n"
      "r(f(x),y) :- in(1,2).\n");
  CHECK(p.rules().size() == 3);
  CHECK(p.atom_count() == 3);
  CHECK(p.atoms().find("out(1,2)") < p.atom_count());
  CHECK(p.atoms().find("r(f(x),y)") < p.atom_count());
}

TEST_CASE("parse deduplicates statements") {
  const Program p = parse_program("a :- b, c. a :- c, b. :- a. :- a. b. c.");
  CHECK(p.rules().size() == 3);
  CHECK(p.constraints().size() == 1);
}

TEST_CASE("parse errors carry positions") {
  auto d = diag_of("a :- b");
  CHECK(d.message.find("unterminated") != std::string::npos);

  d = diag_of("a.\nb :- not not c.");
  CHECK(d.line == 2);
  CHECK(d.message.find("twice") != std::string::npos);

  d = diag_of("a :- 3b.");
  CHECK(d.line == 1);
  CHECK(d.column == 6);

  CHECK(diag_of("a :- .").message.find("empty body") != std::string::npos);
  CHECK(diag_of("not a.").message.find("negated") != std::string::npos);
  CHECK(diag_of("a(1 :- b.").line == 1);
  CHECK(diag_of("a :- b c.").message.find("expected '.'") != std::string::npos);
  CHECK(diag_of("a() .").message.find("empty argument") != std::string::npos);
  CHECK(diag_of("a :- not.").message.find("not") != std::string::npos);
}

TEST_CASE("render") {
  CHECK(render_program(Program{}).empty());
  const std::string ex = render_program(testing::running_example());
  CHECK(std::count(ex.begin(), ex.end(), '\n') == 7);
  CHECK(ex.rfind(".\n") == ex.size() - 2);
  const std::string cons = render_program(parse_program(":- a. :- not b, c."));
  CHECK(cons == ":- a.\n:- c, not b.\n");
}

TEST_CASE("render then parse is an isomorphism") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Program p = testing::random_program(seed);
    const Program q = parse_program(render_program(p));
    // atoms that occur in no statement are not rendered
    CHECK(symbolic(p) == symbolic(q));
    CHECK(q.rules().size() == p.rules().size());
  }
}

TEST_CASE("fuzzed input never crashes the parser") {
  const std::string alphabet = "ab(),.:- not%\n\t_x1";
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const auto len = std::uniform_int_distribution<int>(0, 30)(rng);
    for (int k = 0; k < len; ++k)
      s.push_back(alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)]);
    try {
      const Program p = parse_program(s);
      // whatever parsed must survive a round trip
      CHECK(symbolic(parse_program(render_program(p))) == symbolic(p));
    } catch (const ParseError& e) {
      CHECK(e.diagnostic().line >= 1);
      CHECK(e.diagnostic().column >= 1);
    }
  }
}
