#include <sstream>

#include "doctest.h"
#include "octic/error.hpp"
#include "octic/heckedata.hpp"
#include "octic/pipeline.hpp"

using namespace octic;

namespace {

EigenvalueTable parse(const std::string& text, const std::string& form) {
  std::istringstream in(text);
  return parse_table(in, form_meta(form));
}

std::string file(const std::string& f) { return default_data_dir() + "/" + f; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

const QuadRing Z2(2);

}  // namespace

TEST_CASE("form metadata") {
  auto h1 = form_meta("h1");
  CHECK(h1.weight == std::vector<int>{4, 2});
  CHECK(h1.max_weight() == 4);
  CHECK(form_meta("h2").level == "16");
  CHECK(form_meta("f72").rational_base);
  CHECK(kind_of([] { form_meta("h3"); }) == ErrorKind::Usage);
}

TEST_CASE("parse a single h1 row") {
  auto t = parse("7 3 1 16 4\n", "h1");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].P.same_as(prime_from_generator(QuadInt(Z2, 3, 1))));
  CHECK(t.rows[0].value == QuadInt(Z2, 16, 4));
  CHECK(t.diagnostics.empty());
}

TEST_CASE("parse errors carry line numbers") {
  auto msg = [](const std::string& text, const std::string& form) {
    try {
      parse(text, form);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      return std::string(e.what());
    }
    FAIL("no error raised");
    return std::string();
  };
  CHECK(msg("7 3 1 16 4\n# c\n7 3 1 16 4\n", "h1").find("line 3") != std::string::npos);
  CHECK(msg("7 3 1 16 4\n7 3 1 16 4\n", "h1").find("first at line 1") != std::string::npos);
  CHECK(msg("7 3 1 16\n", "h1").find("line 1") != std::string::npos);
  CHECK(msg("7 3 x 16 4\n", "h1").find("not an integer") != std::string::npos);
  CHECK(msg("11 3 1 16 4\n", "h1").find("not 11") != std::string::npos);
  CHECK(msg("7 7 1 -12 0\n", "f72").find("p p 0") != std::string::npos);
  CHECK(msg("7 7 0 -12 1\n", "f72").find("rational") != std::string::npos);
  // conjugate keys must carry conjugate values
  CHECK(msg("7 3 1 16 4\n7 3 -1 16 4\n", "h1").find("conjugate") != std::string::npos);
  CHECK(msg("5 5 0 10 1\n", "h1").find("rational") != std::string::npos);
}

TEST_CASE("Hecke bound diagnostics") {
  auto t = parse("7 3 1 1000000000 0\n", "h1");
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.diagnostics.size() == 1);
  CHECK(t.diagnostics[0].find("line 1") != std::string::npos);
  CHECK(parse("7 7 0 -12 0\n", "f72").diagnostics.empty());
}

TEST_CASE("lookups in the shipped tables") {
  auto h1 = load_table(file("h1.tsv"), form_meta("h1"));
  auto h2 = load_table(file("h2.tsv"), form_meta("h2"));
  auto f = load_table(file("f72.tsv"), form_meta("f72"));
  CHECK(h1.rows.size() == 14);
  CHECK(h2.rows.size() == 10);
  CHECK(f.rows.size() == 12);
  for (const auto* t : {&h1, &h2, &f}) CHECK(t->diagnostics.empty());

  QuadRing R5(5);
  CHECK(lookup(h2, prime_from_generator(QuadInt::from_sqrt(R5, 4, 1))).a == 60);
  CHECK(lookup(h2, prime_from_generator(QuadInt::from_sqrt(R5, 4, -1))).a == 36);
  CHECK(lookup(h2, split_prime(R5, 13)[0]).a == -3942);
  CHECK(lookup_rational(f, 7) == -12);
  CHECK(lookup_rational(f, 11) == 64);
  CHECK(lookup(h1, prime_from_generator(QuadInt(Z2, 3, -1))) == QuadInt(Z2, 16, -4));
  CHECK(lookup(h1, split_prime(Z2, 5)[0]) == QuadInt(Z2, 10, 0));
  CHECK(kind_of([&] { lookup(h1, split_prime(Z2, 13)[0]); }) == ErrorKind::MissingEigenvalue);
  CHECK(kind_of([&] { lookup_rational(f, 5); }) == ErrorKind::MissingEigenvalue);

  // sigma of the conjugate key is used when one key of a pair is absent
  auto half = parse("7 3 1 16 4\n", "h1");
  CHECK(lookup(half, prime_from_generator(QuadInt(Z2, 3, -1))) == QuadInt(Z2, 16, -4));
}

TEST_CASE("serialization roundtrip") {
  for (const char* f : {"h1", "h2", "f72"}) {
    auto t = load_table(file(std::string(f) + ".tsv"), form_meta(f));
    std::istringstream in(serialize(t));
    auto u = parse_table(in, form_meta(f));
    REQUIRE(u.rows.size() == t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
      CHECK(u.rows[i].P.same_as(t.rows[i].P));
      CHECK(u.rows[i].value == t.rows[i].value);
    }
    CHECK(serialize(u) == serialize(t));
  }
}

TEST_CASE("h1 is sigma-invariant") {
  auto h1 = load_table(file("h1.tsv"), form_meta("h1"));
  auto c = conjugate_table(h1);
  for (const auto& r : h1.rows) CHECK(lookup(c, r.P) == lookup(h1, r.P));
}

TEST_CASE("reflexive comparison and twists") {
  auto h1 = load_table(file("h1.tsv"), form_meta("h1"));
  std::vector<TraceQuery> q;
  for (const auto& r : h1.rows) q.push_back({r.P, r.value, ""});
  auto rep = compare_traces(q, h1);
  CHECK(rep.pass());
  CHECK(rep.rows.size() == h1.rows.size());
  q.push_back({split_prime(Z2, 13)[0], QuadInt(Z2, 0, 0), ""});
  auto gap = compare_traces(q, h1);
  CHECK_FALSE(gap.pass());
  CHECK_FALSE(gap.rows.back().expected);
  CHECK(gap.str().find("gap") != std::string::npos);

  auto f = load_table(file("f72.tsv"), form_meta("f72"));
  QuadRing R3(-3);
  std::vector<TraceQuery> z;
  for (const auto& P : split_prime(R3, 19)) z.push_back({P, QuadInt::from_int(R3, 0), ""});
  z[0].value = QuadInt::from_int(R3, 136);
  z[1].value = QuadInt::from_int(R3, 136);
  TwistRule minus = [](const PrimeIdeal&) { return -1; };
  CHECK(compare_traces(z, f, minus).pass());
  CHECK_FALSE(compare_traces(z, f).pass());
  CHECK(compare_traces({}, f).pass() == false);
}

TEST_CASE("parity attestations") {
  auto p = load_parity(file("h1_parity.tsv"), Z2);
  REQUIRE(p.size() == 1);
  CHECK(p[0].P.p == 13);
  CHECK(p[0].even);
}
