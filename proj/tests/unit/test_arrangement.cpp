#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "octic/arrangement.hpp"
#include "octic/error.hpp"
#include "support/oracles.hpp"

using namespace octic;

namespace {

std::vector<SquareClass> alphas(const Arrangement& a) { return p40_alphas(a, census(a)); }

// multiset equality of square classes
bool same_classes(std::vector<SquareClass> a, std::vector<SquareClass> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

// forms composed with a unimodular integer change of coordinates
Arrangement transform(const Arrangement& a, const std::array<std::array<i64, 4>, 4>& M) {
  Arrangement b = a;
  for (auto& f : b.forms) {
    LinearForm g;
    for (int j = 0; j < 4; ++j) {
      QuadInt s = QuadInt::from_int(a.ring, 0);
      for (int i = 0; i < 4; ++i) s = s + f.c[i] * M[i][j];
      g.c[j] = s;
    }
    f = g;
  }
  return b;
}

std::array<std::array<i64, 4>, 4> random_sl4(std::mt19937_64& rng) {
  std::array<std::array<i64, 4>, 4> M{};
  for (int i = 0; i < 4; ++i) M[i][i] = 1;
  std::uniform_int_distribution<int> pick(0, 3), coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    int r = pick(rng), s = pick(rng);
    if (r == s) continue;
    i64 c = coef(rng);
    for (int j = 0; j < 4; ++j) M[r][j] += c * M[s][j];
  }
  return M;
}

Arrangement six_plane_point() {
  QuadRing R(2);
  auto n = [&](i64 k) { return QuadInt::from_int(R, k); };
  Arrangement a;
  a.label = "six";
  a.ring = R;
  auto f = [&](i64 x, i64 y, i64 z, i64 v) { return LinearForm{{n(x), n(y), n(z), n(v)}}; };
  a.forms = {f(1, 0, 0, 0), f(0, 1, 0, 0), f(0, 0, 1, 0), f(1, 1, 0, 0),
             f(1, 0, 1, 0), f(0, 1, 1, 0), f(0, 0, 0, 1), f(1, 1, 1, 1)};
  return a;
}

}  // namespace

TEST_CASE("census of the built-in arrangements") {
  Census x = census(builtin("X"));
  CHECK(x.double_lines() == 28);
  CHECK(x.triple_lines() == 0);
  CHECK(x.fourfold_points() == 8);
  CHECK(x.points_of(5) == 0);
  CHECK(x.coincident_pairs() == 28);

  Census y = census(builtin("Y"));
  CHECK(y.double_lines() == 28);
  CHECK(y.triple_lines() == 0);
  CHECK(y.fourfold_points() == 9);
  CHECK(y.coincident_pairs() == 28);

  // regression fixture
  Census z = census(builtin("Z"));
  CHECK(z.double_lines() == 25);
  CHECK(z.triple_lines() == 1);
  CHECK(z.points_of(3) == 13);
  CHECK(z.fourfold_points() == 9);
  CHECK(z.points_of(5) == 1);
  CHECK(z.coincident_pairs() == 28);

  for (const auto& l : builtin_labels()) CHECK(validate(builtin(l)).pass);
}

TEST_CASE("census agrees with a rank oracle modulo a large prime") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    Arrangement a = oracle::random_rational_arrangement(rng, it < 15 ? 1 : 3);
    Census ours = census(a);
    Census ref = census_from_rank(8, [&](const std::vector<int>& idx) { return oracle::rank_mod_p(a, idx, 1000003); });
    CHECK(oracle::same_shape(ours, ref));
    CHECK(ours.coincident_pairs() <= 28);
    CHECK(ours.double_lines() + 3 * ours.triple_lines() <= 28);
  }
}

TEST_CASE("six planes through a point are rejected") {
  auto rep = validate(six_plane_point());
  CHECK_FALSE(rep.pass);
  bool six = false;
  for (const auto& v : rep.violations) six = six || (v.kind == Violation::SixPlanePoint && v.planes.size() >= 6);
  CHECK(six);
}

TEST_CASE("alpha at (0:1:0:0) of X is -1") {
  Arrangement x = builtin("X");
  Census c = census(x);
  bool found = false;
  for (const PointRecord* P : c.fourfold()) {
    const auto& co = P->coords;
    if (co[0].is_zero() && !co[1].is_zero() && co[2].is_zero() && co[3].is_zero()) {
      found = true;
      CHECK(is_p40(x, *P));
      CHECK(fourfold_alpha(x, *P) == SquareClass(QuadInt::from_int(x.ring, -1)));
      std::vector<int> want = {0, 1, 2, 3};
      CHECK(P->planes == want);
    }
  }
  CHECK(found);
}

TEST_CASE("alpha classes are invariant under re-presentation") {
  std::mt19937_64 rng(12);
  for (const auto& l : builtin_labels()) {
    Arrangement a = builtin(l);
    auto base = alphas(a);
    for (int it = 0; it < 10; ++it) {
      auto M = random_sl4(rng);
      CHECK(same_classes(base, alphas(transform(a, M))));
    }
    Arrangement perm = a;
    std::shuffle(perm.forms.begin(), perm.forms.end(), rng);
    CHECK(same_classes(base, alphas(perm)));
    for (int i = 0; i < 8; ++i) {
      Arrangement sc = a;
      QuadInt c(a.ring, 1 + i, 1);
      for (auto& co : sc.forms[i].c) co = co * (c * c);
      CHECK(same_classes(base, alphas(sc)));
    }
  }
}

TEST_CASE("square class invariants are consistent with equality") {
  QuadRing R(5);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<i64> d(-20, 20);
  for (int i = 0; i < 100; ++i) {
    QuadInt x(R, d(rng), d(rng)), c(R, d(rng), d(rng));
    if (x.is_zero() || c.is_zero()) continue;
    SquareClass a(x), b(x * c * c);
    CHECK(a == b);
    CHECK(a.invariant_vector() == b.invariant_vector());
  }
  CHECK_FALSE(SquareClass(QuadInt::from_int(R, -1)) == SquareClass(QuadInt::from_int(R, 1)));
}

TEST_CASE("both Y alpha lists are squares in F_169") {
  QuadRing R(5);
  std::vector<QuadInt> printed = {
      QuadInt::from_sqrt(R, 6, -2),      QuadInt::from_sqrt(R, -3, 3, 2), QuadInt::from_sqrt(R, -3, 3, 2),
      QuadInt::from_sqrt(R, -8, 4),      QuadInt::from_sqrt(R, 14, -6),  QuadInt::from_sqrt(R, 3, -1, 2),
      QuadInt::from_sqrt(R, -14, 6),     QuadInt::from_sqrt(R, -3, 1),   QuadInt::from_sqrt(R, -1, 1)};
  PrimeIdeal P13 = split_prime(R, 13)[0];
  REQUIRE(P13.kind == PrimeKind::Inert);
  for (const auto& a : printed) CHECK(residue_chi(a, P13) == 1);
  auto ours = alphas(builtin("Y"));
  CHECK(ours.size() == 9);
  for (const auto& a : ours) CHECK(residue_chi(a.rep(), P13) == 1);
}

TEST_CASE("Psi maps the double octic to itself") {
  for (auto [p, k] : std::vector<std::pair<i64, int>>{{7, 2}, {113, 1}, {127, 1}}) {
    GaloisField F(p, k);
    auto s2 = F.sqrt(F.from_int(2));
    REQUIRE(F.mul(s2, s2) == F.from_int(2));
    std::mt19937_64 rng(p);
    int images = 0;
    for (int tries = 0; images < 500 && tries < 100000; ++tries) {
      Pt5 pt;
      for (int i = 0; i < 4; ++i) pt[i] = (Elem)(rng() % F.q());
      Elem f = x_octic(F, pt[0], pt[1], pt[2], pt[3]);
      if (!F.is_square(f)) continue;
      pt[4] = F.sqrt(f);
      if (rng() & 1) pt[4] = F.neg(pt[4]);
      REQUIRE(on_double_octic(F, pt));
      try {
        Pt5 im = psi_eval(F, s2, pt);
        CHECK(on_double_octic(F, im));
        if (pt[4] == 0) CHECK(im[4] == 0);
        ++images;
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Indeterminate);
      }
    }
    CHECK(images == 500);
  }
}

TEST_CASE("Psi preserves the fibers over (1 +- sqrt2 : 1)") {
  GaloisField F(7, 2);
  auto s2 = F.sqrt(F.from_int(2));
  for (auto r : {F.add(1, s2), F.sub(1, s2)}) {
    int seen = 0;
    for (Elem x = 0; x < F.q(); ++x)
      for (Elem y = 0; y < F.q(); ++y) {
        Pt5 pt = {x, y, r, 1, 0};
        Elem f = x_octic(F, x, y, r, 1);
        if (!F.is_square(f)) continue;
        pt[4] = F.sqrt(f);
        Pt5 im;
        try {
          im = psi_eval(F, s2, pt);
        } catch (const Error&) {
          continue;
        }
        if (im[2] == 0 && im[3] == 0) continue;
        CHECK(im[2] == F.mul(r, im[3]));
        ++seen;
      }
    CHECK(seen > 100);
  }
}

TEST_CASE("Psi rejects a wrong square root of 2") {
  GaloisField F(7, 2);
  CHECK_THROWS_AS(psi_eval(F, F.from_int(2), Pt5{1, 1, 1, 1, 0}), Error);
}

TEST_CASE("arrangement parsers") {
  std::istringstream ok(
      "# X\nd 2\nlabel t\nbad 2 3\n"
      "form 1,0 0,0 0,0 0,0\nform 1,0 0,0 -1,0 0,0\nform 1,0 0,0 0,0 -1,0\nform 1,0 0,0 -1,0 -1,0\n"
      "form 0,0 1,0 0,0 0,0\nform 0,0 1,0 -1,0 0,0\nform 0,0 1,0 0,0 -1,0\nform 0,0 1,0 2,0 1,0\n");
  Arrangement a = parse_arrangement_tsv(ok);
  Arrangement x = builtin("X");
  REQUIRE(a.forms.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(same_plane(a.forms[i], x.forms[i]));
  CHECK(a.bad_primes == std::vector<i64>{2, 3});

  std::istringstream half("d 5\nform 1,1/2 0,0 0,0 0,0\n");
  try {
    parse_arrangement_tsv(half);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedArrangement);
  }
  std::istringstream nod("form 1,0 0,0 0,0 0,0\n");
  CHECK_THROWS_AS(parse_arrangement_tsv(nod), Error);
  std::istringstream bad("d 2\nform 1,x 0,0 0,0 0,0\n");
  CHECK_THROWS_AS(parse_arrangement_tsv(bad), Error);

  std::string js = R"({"d":5,"label":"j","bad_primes":[2],"forms":[
    [[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]],
    [[1,0],[1,0],[1,0],[0,0]],[[0,0],[-1,1,2],[-1,0],[1,0]],[[1,0],[1,0],[0,0],[-1,1,2]],
    [[3,-1,2],[1,0],[1,-1,2],[-1,1,2]]]})";
  Arrangement j = parse_arrangement_json(js);
  Arrangement y = builtin("Y");
  for (int i = 0; i < 8; ++i) CHECK(same_plane(j.forms[i], y.forms[i]));
  CHECK_THROWS_AS(parse_arrangement_json("{\"d\":5"), Error);
  CHECK_THROWS_AS(builtin("W"), Error);
}
