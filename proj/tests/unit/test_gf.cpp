#include <random>
#include <set>

#include "doctest.h"
#include "octic/counter.hpp"
#include "octic/gf.hpp"

using namespace octic;

namespace {
void check_axioms(const GaloisField& F) {
  const i64 q = F.q();
  std::mt19937_64 rng(q);
  auto pick = [&] { return (GaloisField::elem)(rng() % q); };
  for (int i = 0; i < 400; ++i) {
    auto x = pick(), y = pick(), z = pick();
    REQUIRE(F.add(x, y) == F.add(y, x));
    REQUIRE(F.mul(x, y) == F.mul(y, x));
    REQUIRE(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)));
    REQUIRE(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
    REQUIRE(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
    REQUIRE(F.add(x, F.neg(x)) == 0);
    if (x) REQUIRE(F.mul(x, F.inv(x)) == 1);
  }
}
}  // namespace

TEST_CASE("field axioms in the tower") {
  for (auto [p, k] : std::vector<std::pair<i64, int>>{{3, 1}, {7, 1}, {3, 2}, {5, 2}, {11, 2}, {3, 4}, {5, 4}, {7, 4}})
    check_axioms(GaloisField(p, k));
}

TEST_CASE("generator has full order and chi is the quadratic character") {
  for (auto [p, k] : std::vector<std::pair<i64, int>>{{7, 1}, {5, 2}, {13, 2}, {3, 4}}) {
    GaloisField F(p, k);
    const i64 q = F.q();
    std::set<GaloisField::elem> powers;
    GaloisField::elem g = F.generator(), x = 1;
    for (i64 i = 0; i < q - 1; ++i) {
      powers.insert(x);
      x = F.mul(x, g);
    }
    CHECK((i64)powers.size() == q - 1);
    CHECK(x == 1);
    std::set<GaloisField::elem> squares;
    for (i64 y = 1; y < q; ++y) squares.insert(F.mul((GaloisField::elem)y, (GaloisField::elem)y));
    CHECK(F.chi(0) == 0);
    for (i64 y = 1; y < q; ++y) {
      CHECK(F.chi((GaloisField::elem)y) == (squares.count((GaloisField::elem)y) ? 1 : -1));
      if (squares.count((GaloisField::elem)y)) {
        auto r = F.sqrt((GaloisField::elem)y);
        CHECK(F.mul(r, r) == (GaloisField::elem)y);
      }
    }
  }
}

TEST_CASE("subfields sit at low indices") {
  GaloisField F(5, 4), E(5, 2), B(5, 1);
  for (GaloisField::elem x = 0; x < 25; ++x)
    for (GaloisField::elem y = 0; y < 25; ++y) {
      CHECK(F.add(x, y) == E.add(x, y));
      CHECK(F.mul(x, y) == E.mul(x, y));
    }
  for (GaloisField::elem x = 0; x < 5; ++x)
    for (GaloisField::elem y = 0; y < 5; ++y) CHECK(E.mul(x, y) == B.mul(x, y));
  // every F_{p^2} element is a square in F_{p^4}
  for (GaloisField::elem x = 1; x < 25; ++x) CHECK(F.chi(x) == 1);
}

TEST_CASE("from_coords matches QuadExtField") {
  GaloisField F(7, 2);
  QuadExtField Q(7);
  for (i64 a = 0; a < 7; ++a)
    for (i64 b = 0; b < 7; ++b)
      for (i64 c = 0; c < 7; ++c)
        for (i64 d = 0; d < 7; ++d) {
          Fp2Elem r = Q.mul(Q.make(a, b), Q.make(c, d));
          CHECK(F.mul(F.from_coords(a, b), F.from_coords(c, d)) == F.from_coords(r.a, r.b));
        }
}

TEST_CASE("CharTable agrees with the field and sums to zero") {
  for (auto [p, k] : std::vector<std::pair<i64, int>>{{3, 1}, {11, 1}, {3, 2}, {7, 2}, {3, 4}}) {
    GaloisField F(p, k);
    CharTable t(F);
    CHECK(t.q() == F.q());
    i64 s = 0, zeros = 0;
    for (i64 x = 0; x < F.q(); ++x) {
      CHECK(t[(Elem)x] == F.chi((Elem)x));
      s += t[(Elem)x];
      zeros += t[(Elem)x] == 0;
    }
    CHECK(s == 0);
    CHECK(zeros == 1);
    // multiplicativity
    std::mt19937_64 rng(p * 10 + k);
    for (int i = 0; i < 200; ++i) {
      Elem x = rng() % F.q(), y = rng() % F.q();
      CHECK(t[F.mul(x, y)] == t[x] * t[y]);
    }
  }
}
