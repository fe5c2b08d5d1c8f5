#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "octic/error.hpp"
#include "octic/pipeline.hpp"

using namespace octic;

namespace {

Counter quiet_counter() { return Counter(RunOptions{}); }

}  // namespace

TEST_CASE("prime tags") {
  QuadRing R2(2), R5(5), R3(-3);
  CHECK(prime_tag(prime_from_generator(QuadInt(R2, 3, 1))) == 4);
  CHECK(prime_tag(prime_from_generator(QuadInt::from_sqrt(R5, 4, 1))) == 3);
  std::set<i64> z;
  for (const auto& P : primes_over(R3, 7)) z.insert(prime_tag(P));
  CHECK(z == std::set<i64>{2, 4});
  CHECK(prime_by_tag(R5, 11, 3).same_as(prime_from_generator(QuadInt::from_sqrt(R5, 4, 1))));
  CHECK_THROWS_AS(prime_by_tag(R5, 11, 5), Error);
  CHECK(tag_str(split_prime(R2, 5)[0]) == "-");
  CHECK(primes_over(R2, 7).size() == 2);
  CHECK(primes_over(R2, 5).size() == 1);
}

TEST_CASE("anchor file") {
  auto a = load_anchors(data_path(RunOptions{}, "anchors.tsv"));
  CHECK(a.size() == 8);
  int x = 0;
  for (const auto& r : a) x += r.label == "X";
  CHECK(x == 4);
  CHECK(a[4].label == "Y");
  CHECK(a[4].tag == 3);
  CHECK(a[4].a == 60);
  CHECK_FALSE(a[0].tag);
}

TEST_CASE("data directory override") {
  auto tmp = std::filesystem::temp_directory_path() / "octic_data_override";
  std::filesystem::create_directories(tmp);
  setenv("OCTIC_DATA", tmp.c_str(), 1);
  CHECK(default_data_dir() == tmp.string());
  CHECK(data_path(RunOptions{}, "h1.tsv") == (tmp / "h1.tsv").string());
  RunOptions o;
  o.data_dir = "/elsewhere";
  CHECK(data_path(o, "h1.tsv") == "/elsewhere/h1.tsv");
  unsetenv("OCTIC_DATA");
  CHECK(default_data_dir() == std::string(OCTIC_DATA_DIR));
  std::filesystem::remove_all(tmp);
}

TEST_CASE("X calibration rejects the printed split formula") {
  Counter C = quiet_counter();
  Calibration cal = calibrate("X", C);
  auto printed = x_printed_models();
  REQUIRE(printed.size() == 2);
  int rejected = 0, accepted = 0;
  for (const auto& c : cal.candidates) {
    if (c.model.name == "census") accepted += c.accepted;
    else rejected += !c.accepted;
  }
  CHECK(rejected == 2);
  CHECK(accepted == 1);
  CHECK(cal.model.name == "census");
  REQUIRE(cal.fitted);
  for (i64 r : cal.fit_residuals) CHECK(r == 0);
  CHECK(cal.report().find("reject") != std::string::npos);
}

TEST_CASE("Y rows satisfy the trace relation and the Weil bound") {
  Counter C = quiet_counter();
  YReport y = run_y(C, {11, 29}, true);
  int split = 0;
  for (const auto& r : y.rows) {
    CAPTURE(r.P.label());
    REQUIRE(r.rec.a);
    CHECK(weil_ok(r.rec, 2));
    CHECK(*r.rec.a % 2 == 0);
    if (r.rec.a2) {
      const i64 q = r.P.norm;
      CHECK(*r.rec.a2 == *r.rec.a * *r.rec.a - 2 * q * q * q);
    }
    if (r.P.kind == PrimeKind::Split) {
      ++split;
      REQUIRE(r.solved);
      CHECK(r.solved->a == *r.rec.a);
    }
  }
  CHECK(split == 4);
  const VarietyRow* r3 = y.row(split_prime(QuadRing(5), 3)[0]);
  REQUIRE(r3);
  CHECK(r3->rec.a == 14);
  CHECK(r3->rec.a2 == -1262);
  const VarietyRow* r13 = y.row(split_prime(QuadRing(5), 13)[0]);
  REQUIRE(r13);
  CHECK(r13->rec.n1 == 4857961);
  CHECK(r13->rec.q1 == 169);
  CHECK(r13->rec.a == -3942);
}

TEST_CASE("Z traces follow the twist rule") {
  Counter C = quiet_counter();
  ZReport z = run_z(C, {7, 13, 19}, false);
  auto f = load_table(data_path(RunOptions{}, "f72.tsv"), form_meta("f72"));
  std::map<i64, i64> ap;
  for (const auto& r : f.rows) ap[r.P.p] = r.value.a;
  auto rep = twist_compare(twist_observations(z), ap);
  CHECK(rep.rows.size() == 6);
  CHECK(rep.pass());
  for (const auto& r : z.rows) {
    CHECK(weil_ok(r.rec, 2));
    CHECK(sqrt_minus3_twist(r.P) * ap[r.P.p] == *r.rec.a);
  }
}

TEST_CASE("labels and tables") {
  CHECK(canonical_label("X250") == "X");
  CHECK(canonical_label("Z262") == "Z");
  CHECK(canonical_label("my.tsv") == "my.tsv");
  CHECK(x_table_primes().size() == 10);
  CHECK(z_split_primes().size() == 11);
  Counter C = quiet_counter();
  XReport x = run_x(C, {7, 11}, false);
  std::string t = frobenius_table(x);
  CHECK(t.find("910") != std::string::npos);
  CHECK(trace_table(x.rows).find("-796") != std::string::npos);
}

TEST_CASE("counter ledger caching through the pipeline") {
  auto path = std::filesystem::temp_directory_path() / "octic_pipeline_ledger.tsv";
  std::filesystem::remove(path);
  RunOptions o;
  o.ledger = path.string();
  Arrangement y = builtin("Y");
  PrimeIdeal P = split_prime(y.ring, 11)[0];
  i64 first;
  {
    Counter C(o);
    first = C.count(y, P, 1).N;
  }
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row.find(std::to_string(first)) != std::string::npos);
  Counter D(o);
  CHECK(D.count(y, P, 1).N == first);
  std::filesystem::remove(path);
}
