#include <random>

#include "doctest.h"
#include "octic/error.hpp"
#include "octic/fsl.hpp"
#include "octic/heckedata.hpp"
#include "octic/pipeline.hpp"
#include "support/oracles.hpp"

using namespace octic;

namespace {

std::string data_file(const std::string& f) { return default_data_dir() + "/" + f; }

struct PrintedRow {
  QuadInt gen;
  const char* bits;
};

F2Vec bits_of(const char* s) {
  F2Vec v = 0;
  for (int i = 0; s[i]; ++i)
    if (s[i] == '1') v |= 1u << i;
  return v;
}

void check_table(const std::string& cfg_file, const std::vector<PrintedRow>& printed) {
  FieldConfig cfg = load_field_config(data_file(cfg_file));
  auto rows = build_char_table(cfg);
  REQUIRE(rows.size() == printed.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    PrimeIdeal P = prime_from_generator(printed[i].gen);
    CAPTURE(P.label());
    CHECK(rows[i].P.same_as(P));
    CHECK(rows[i].bits == bits_of(printed[i].bits));
  }
}

std::vector<F2Vec> frobenius_set(const std::string& cfg_file) {
  auto rows = build_char_table(load_field_config(data_file(cfg_file)));
  std::vector<F2Vec> v;
  for (const auto& r : rows) v.push_back(r.bits);
  return v;
}

std::vector<F2Vec> nonzero(int n) {
  std::vector<F2Vec> v;
  for (F2Vec x = 1; x < (1u << n); ++x) v.push_back(x);
  return v;
}

Poly poly(QuadRing R, std::vector<std::pair<i64, i64>> by_degree) {
  Poly p;
  p.ring = R;
  for (auto [a, b] : by_degree) p.c.push_back(QuadInt(R, a, b));
  return p;
}

std::vector<PrimeIdeal> union_of(const FieldConfig& cfg) {
  std::vector<PrimeIdeal> out;
  for (const auto* L : {&cfg.T, &cfg.U})
    for (const auto& P : *L) {
      bool seen = false;
      for (const auto& Q : out) seen = seen || Q.same_as(P);
      if (!seen) out.push_back(P);
    }
  return out;
}

Rep h1_rep() {
  FieldConfig cfg = load_field_config(data_file("fsl_q2.json"));
  EigenvalueTable h1 = load_table(data_file("h1.tsv"), form_meta("h1"));
  auto parity = load_parity(data_file("h1_parity.tsv"), cfg.ring);
  Rep r;
  r.name = "h1";
  for (const auto& P : union_of(cfg)) {
    RepEntry e;
    e.P = P;
    try {
      e.trace = lookup(h1, P);
      e.det = P.norm * P.norm * P.norm;
    } catch (const Error&) {
      for (const auto& f : parity)
        if (f.P.same_as(P)) e.even_attested = f.even;
    }
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace

TEST_CASE("character table over Q(sqrt2)") {
  QuadRing R(2);
  auto g = [&](i64 a, i64 b) { return QuadInt(R, a, b); };
  check_table("fsl_q2.json", {{g(5, 0), "1000"},  {g(11, 0), "0001"}, {g(3, 1), "0111"},  {g(-3, 1), "1110"},
                              {g(-1, 3), "1101"}, {g(5, 1), "0011"},  {g(-5, 1), "1010"}, {g(-1, 4), "0110"},
                              {g(1, 4), "1111"},  {g(-3, 5), "1100"}, {g(-7, 1), "0010"}, {g(7, 1), "1011"},
                              {g(-11, 4), "0101"}, {g(1, -7), "1001"}});
}

TEST_CASE("character table over Q(sqrt5)") {
  QuadRing R(5);
  auto g = [&](i64 a, i64 b) { return QuadInt::from_sqrt(R, a, b); };
  check_table("fsl_q5.json", {{g(3, 0), "110"}, {g(13, 0), "111"}, {g(4, 1), "001"}, {g(7, 2), "011"},
                              {g(6, 1), "100"}, {g(-6, 1), "101"}, {g(9, 2), "010"}});
}

TEST_CASE("character table over Q(sqrt-3)") {
  QuadRing R(-3);
  auto g = [&](i64 a, i64 b) { return QuadInt::from_sqrt(R, a, b); };
  check_table("fsl_qm3.json", {{g(-2, 1), "001"}, {g(2, 1), "101"}, {g(1, 2), "110"}, {g(-4, 1), "011"},
                               {g(4, 1), "111"}, {g(5, 2), "010"}, {g(5, 4), "100"}});
}

TEST_CASE("character table rejects a generator divisible by a T prime") {
  FieldConfig cfg = load_field_config(data_file("fsl_q2.json"));
  cfg.generators.push_back(QuadInt(cfg.ring, 7, 0));
  cfg.generator_labels.push_back("7");
  try {
    build_char_table(cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RamifiedEntry);
  }
}

TEST_CASE("non-cubic instances") {
  auto x = frobenius_set("fsl_q2.json");
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  CHECK(x.size() == 14);
  CHECK(std::count(x.begin(), x.end(), 0u) == 0);
  CHECK(is_noncubic(x, 4).noncubic);
  CHECK(oracle::brute_noncubic(x, 4));
  CHECK(is_noncubic(nonzero(3), 3).noncubic);
  CHECK(oracle::brute_noncubic(nonzero(3), 3));

  auto one = is_noncubic({1u}, 2);
  CHECK_FALSE(one.noncubic);
  CHECK_FALSE(oracle::brute_noncubic({1u}, 2));
  REQUIRE_FALSE(one.witness_terms.empty());
  CHECK(eval_terms(one.witness_terms, 1u) == 0);
  bool somewhere = false;
  for (F2Vec v = 0; v < 4; ++v) somewhere = somewhere || eval_terms(one.witness_terms, v);
  CHECK(somewhere);
  CHECK_FALSE(one.witness.empty());
}

TEST_CASE("non-cubic agrees with enumeration of all cubic forms") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 4; ++n) {
    const int N = 1 << n;
    for (int it = 0; it < (n < 4 ? 200 : 60); ++it) {
      std::vector<F2Vec> V;
      for (int v = 0; v < N; ++v)
        if (rng() % 3) V.push_back((F2Vec)v);
      auto r = is_noncubic(V, n);
      CHECK(r.noncubic == oracle::brute_noncubic(V, n));
      if (!r.noncubic) {
        for (F2Vec v : V) CHECK(eval_terms(r.witness_terms, v) == 0);
        int hits = 0;
        for (int v = 0; v < N; ++v) hits += eval_terms(r.witness_terms, (F2Vec)v);
        CHECK(hits > 0);
      }
    }
  }
}

TEST_CASE("non-cubic is GL-invariant and monotone") {
  std::mt19937_64 rng(32);
  std::vector<std::pair<std::vector<F2Vec>, int>> sets = {{frobenius_set("fsl_q2.json"), 4}, {nonzero(3), 3}};
  // a cubic set too: F_2^4 minus the zeros of x1 x2 x3 x4 style form
  std::vector<F2Vec> small = {1, 2, 4, 8, 3};
  sets.push_back({small, 4});
  for (auto& [V, n] : sets) {
    bool base = is_noncubic(V, n).noncubic;
    for (int it = 0; it < 20; ++it) {
      auto M = oracle::random_gl(n, rng);
      std::vector<F2Vec> W;
      for (F2Vec v : V) W.push_back(oracle::apply(M, v));
      CHECK(is_noncubic(W, n).noncubic == base);
    }
    if (base) {
      for (int it = 0; it < 20; ++it) {
        std::vector<F2Vec> W = V;
        for (int k = 0; k < 3; ++k) W.push_back((F2Vec)(rng() % (1u << n)));
        CHECK(is_noncubic(W, n).noncubic);
      }
    }
  }
}

TEST_CASE("sextic factorizations") {
  for (auto [file, count] : std::vector<std::pair<const char*, size_t>>{
           {"cubics_q2.json", 25}, {"cubics_q5.json", 1}, {"cubics_qm3.json", 16}}) {
    auto d = load_cubic_data(data_file(file));
    CHECK(d.size() == count);
    for (const auto& c : d) CHECK(verify_factorization(c));
  }
  auto d = load_cubic_data(data_file("cubics_q2.json"));
  CubicFieldDatum bad = d[0];
  bad.cubic1.c[0] = -bad.cubic1.c[0];
  CHECK_FALSE(verify_factorization(bad));
  CubicFieldDatum swapped = d[0];
  swapped.cubic2 = swapped.cubic1;
  CHECK_FALSE(verify_factorization(swapped));
}

TEST_CASE("irreducibility witnesses") {
  FieldConfig q2 = load_field_config(data_file("fsl_q2.json"));
  QuadRing R(2);
  CHECK(irreducibility_witness(poly(R, {{-1, 1}, {0, 0}, {0, 0}, {1, 0}}), q2.U).p == 5);
  CHECK(irreducibility_witness(poly(R, {{0, 2}, {3, 0}, {0, 0}, {1, 0}}), q2.U).p == 11);
  FieldConfig q5 = load_field_config(data_file("fsl_q5.json"));
  auto d5 = load_cubic_data(data_file("cubics_q5.json"));
  std::vector<PrimeIdeal> three = {split_prime(q5.ring, 3)[0]};
  CHECK(irreducibility_witness(d5[0].cubic1, three).p == 3);
  CHECK(irreducibility_witness(d5[0].cubic2, three).p == 3);
  // x^3 - 1 has the root 1 everywhere
  try {
    irreducibility_witness(poly(R, {{-1, 0}, {0, 0}, {0, 0}, {1, 0}}), q2.U);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoWitness);
  }
}

TEST_CASE("printed witnesses are reproduced") {
  for (const char* f : {"cubics_q2.json", "cubics_q5.json", "cubics_qm3.json"}) {
    std::string cfg_file = std::string("fsl_") + (f + 7);
    FieldConfig cfg = load_field_config(data_file(cfg_file));
    for (const auto& d : load_cubic_data(data_file(f))) {
      PrimeIdeal W = datum_witness(d, cfg.U);
      CHECK_FALSE(has_root_mod(d.cubic1, W));
      CHECK_FALSE(has_root_mod(d.cubic2, W));
      if (d.witness) CHECK(W.p == *d.witness);
    }
  }
}

TEST_CASE("certificate on synthetic data and the coverage check") {
  FieldConfig cfg = load_field_config(data_file("fsl_q2.json"));
  auto cubics = load_cubic_data(data_file("cubics_q2.json"));
  Rep a = h1_rep(), b = h1_rep();
  Certificate c = certify(a, b, cfg, cubics);
  CHECK(c.cond1);
  CHECK(c.cond2);
  CHECK(c.cond3);
  CHECK(c.noncubic);
  CHECK(c.verdict);

  // a different trace at a T prime fails condition 3
  Rep d = a;
  for (auto& e : d.entries)
    if (e.trace && e.P.same_as(prime_from_generator(QuadInt(cfg.ring, 3, 1)))) e.trace = *e.trace + QuadInt(cfg.ring, 2, 0);
  CHECK_FALSE(certify(d, b, cfg, cubics).verdict);

  Rep gap = a;
  PrimeIdeal last = prime_from_generator(QuadInt(cfg.ring, 1, -7));
  gap.entries.erase(std::remove_if(gap.entries.begin(), gap.entries.end(),
                                   [&](const RepEntry& e) { return e.P.same_as(last); }),
                    gap.entries.end());
  try {
    certify(gap, b, cfg, cubics);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Coverage);
    CHECK(std::string(e.what()).find("1-7√2") != std::string::npos);
  }
}

TEST_CASE("evenness in E") {
  QuadRing R(2);
  CHECK(even_in_E(QuadInt(R, 16, 4), true));
  CHECK(even_in_E(QuadInt(R, 16, 3), true));
  CHECK_FALSE(even_in_E(QuadInt(R, 15, 4), true));
  CHECK(even_in_E(QuadInt(R, 14, 0), false));
  CHECK_FALSE(even_in_E(QuadInt(R, 13, 0), false));
}

TEST_CASE("config loading checks T against S") {
  FieldConfig cfg = load_field_config(data_file("fsl_q2.json"));
  CHECK(cfg.T.size() == 14);
  CHECK(cfg.U.size() == 8);
  CHECK(cfg.generators.size() == 4);
  CHECK(cfg.sqrt2_evenness);
  CHECK_THROWS_AS(load_field_config(data_file("missing.json")), Error);
}
