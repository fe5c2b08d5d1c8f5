#include "octic/qarith.hpp"

#include <cmath>
#include <limits>

#include "octic/error.hpp"

namespace octic {

namespace {

i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    fail(ErrorKind::Unsupported, "integer overflow in O_K arithmetic");
  return static_cast<i64>(v);
}

std::string i128_str(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  return neg ? "-" + s : s;
}

}  // namespace

i64 floor_mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
  i128 r = (i128)floor_mod(a, m) * floor_mod(b, m) % m;
  return (i64)r;
}

i64 powmod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = floor_mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, r = floor_mod(a, m);
  while (r != 0) {
    i64 t = g / r;
    i64 tmp = g - t * r;
    g = r;
    r = tmp;
    tmp = x - t * x1;
    x = x1;
    x1 = tmp;
  }
  if (g != 1) fail(ErrorKind::NonIntegral, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return floor_mod(x, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

i128 isqrt(i128 n) {
  if (n <= 0) return 0;
  i128 r = (i128)std::sqrt((long double)n);
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool exact_sqrt(i128 n, i128& root) {
  if (n < 0) return false;
  root = isqrt(n);
  return root * root == n;
}

int legendre(i64 a, i64 p) {
  if (p < 3 || (p & 1) == 0 || !is_prime(p))
    fail(ErrorKind::InvalidModulus, "legendre needs an odd prime, got " + std::to_string(p));
  i64 r = powmod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

i64 sqrt_mod(i64 a, i64 p) {
  a = floor_mod(a, p);
  if (a == 0) return 0;
  if (legendre(a, p) != 1) fail(ErrorKind::InconsistentData, "no square root mod p");
  // Tonelli-Shanks
  i64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  i64 z = smallest_nonresidue(p);
  i64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

i64 smallest_nonresidue(i64 p) {
  for (i64 n = 2; n < p; ++n)
    if (legendre(n, p) == -1) return n;
  fail(ErrorKind::InvalidModulus, "no non-residue mod " + std::to_string(p));
}

PrimeField::PrimeField(i64 p) : p_(p) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::InvalidModulus, "F_p needs an odd prime, got " + std::to_string(p));
}

QuadExtField::QuadExtField(i64 p) : p_(p), n_(0) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::InvalidModulus, "F_{p^2} needs an odd prime, got " + std::to_string(p));
  n_ = smallest_nonresidue(p);
}

Fp2Elem QuadExtField::mul(Fp2Elem x, Fp2Elem y) const {
  i64 a = floor_mod(mulmod(x.a, y.a, p_) + mulmod(n_, mulmod(x.b, y.b, p_), p_), p_);
  i64 b = floor_mod(mulmod(x.a, y.b, p_) + mulmod(x.b, y.a, p_), p_);
  return {a, b};
}

i64 QuadExtField::norm(Fp2Elem x) const {
  return floor_mod(mulmod(x.a, x.a, p_) - mulmod(n_, mulmod(x.b, x.b, p_), p_), p_);
}

Fp2Elem QuadExtField::inv(Fp2Elem x) const {
  i64 N = norm(x);
  if (N == 0) fail(ErrorKind::NonIntegral, "inverse of zero in F_{p^2}");
  i64 ni = invmod(N, p_);
  return make(mulmod(x.a, ni, p_), -mulmod(x.b, ni, p_));
}

Fp2Elem QuadExtField::pow(Fp2Elem x, i64 e) const {
  Fp2Elem r{1, 0};
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

int fq_char(const PrimeField& F, i64 x) { return legendre(F.elem(x), F.p()); }

int fq_char(const QuadExtField& F, Fp2Elem x) {
  Fp2Elem r = F.pow(x, (F.q() - 1) / 2);
  if (x.a == 0 && x.b == 0) return 0;
  return (r == Fp2Elem{1, 0}) ? 1 : -1;
}

QuadRing::QuadRing(i64 d) : d_(d), half_(floor_mod(d, 4) == 1) {
  if (d == 0 || d == 1) fail(ErrorKind::InvalidModulus, "quadratic ring needs a squarefree d != 0,1");
  for (i64 k = 2; k * k <= std::llabs(d); ++k)
    if (d % (k * k) == 0) fail(ErrorKind::InvalidModulus, "d must be squarefree: " + std::to_string(d));
}

std::string QuadRing::name() const { return "O_Q(sqrt" + std::to_string(d_) + ")"; }

QuadInt QuadInt::from_sqrt(QuadRing r, i64 A, i64 B, i64 den) {
  if (den != 1 && den != 2) fail(ErrorKind::NonIntegral, "denominator must be 1 or 2");
  if (!r.half_basis()) {
    if (den == 2) {
      if (A % 2 != 0 || B % 2 != 0) fail(ErrorKind::NonIntegral, "element not integral over {1, sqrt d}");
      return QuadInt(r, A / 2, B / 2);
    }
    return QuadInt(r, A, B);
  }
  if (den == 1) return QuadInt(r, A - B, 2 * B);
  if (floor_mod(A - B, 2) != 0) fail(ErrorKind::NonIntegral, "half-integral element needs A = B mod 2");
  return QuadInt(r, (A - B) / 2, B);
}

std::pair<i64, i64> QuadInt::twice_sqrt_coords() const {
  if (!ring.half_basis()) return {narrow((i128)2 * a), narrow((i128)2 * b)};
  return {narrow((i128)2 * a + b), b};
}

QuadInt QuadInt::operator+(const QuadInt& o) const { return QuadInt(ring, narrow((i128)a + o.a), narrow((i128)b + o.b)); }
QuadInt QuadInt::operator-(const QuadInt& o) const { return QuadInt(ring, narrow((i128)a - o.a), narrow((i128)b - o.b)); }

QuadInt QuadInt::operator*(const QuadInt& o) const {
  i128 s = ring.omega_s(), t = ring.omega_t();
  i128 bb = (i128)b * o.b;
  i128 na = (i128)a * o.a + bb * s;
  i128 nb = (i128)a * o.b + (i128)b * o.a + bb * t;
  return QuadInt(ring, narrow(na), narrow(nb));
}

QuadInt QuadInt::operator*(i64 k) const { return QuadInt(ring, narrow((i128)a * k), narrow((i128)b * k)); }

QuadInt QuadInt::conj() const {
  if (!ring.half_basis()) return QuadInt(ring, a, -b);
  return QuadInt(ring, narrow((i128)a + b), -b);
}

i64 QuadInt::norm() const {
  i128 A = a, B = b;
  if (!ring.half_basis()) return narrow(A * A - (i128)ring.d() * B * B);
  return narrow(A * A + A * B + B * B * (i128)((1 - ring.d()) / 4));
}

i64 QuadInt::trace() const { return ring.half_basis() ? narrow((i128)2 * a + b) : narrow((i128)2 * a); }

std::optional<QuadInt> QuadInt::exact_div(const QuadInt& o) const {
  i64 N = o.norm();
  if (N == 0) return std::nullopt;
  QuadInt num = (*this) * o.conj();
  if (num.a % N != 0 || num.b % N != 0) return std::nullopt;
  return QuadInt(ring, num.a / N, num.b / N);
}

bool QuadInt::is_square() const {
  if (is_zero()) return true;
  auto [A, B] = twice_sqrt_coords();
  i128 d = ring.d();
  i128 m;
  if (!exact_sqrt((i128)A * A - d * B * B, m)) return false;
  for (int sgn : {1, -1}) {
    i128 u2 = (i128)A + sgn * m;
    i128 u;
    if (!exact_sqrt(u2, u)) continue;
    i128 rest = 2 * (i128)A - u2;
    if (rest % d != 0) continue;
    i128 v;
    if (!exact_sqrt(rest / d, v)) continue;
    for (int vs : {1, -1}) {
      i128 vv = vs * v;
      if (u * vv != B) continue;
      if (u * u + d * vv * vv != 2 * (i128)A) continue;
      return true;
    }
  }
  return false;
}

std::string QuadInt::str() const {
  auto [A, B] = twice_sqrt_coords();
  bool halves = (A % 2 != 0) || (B % 2 != 0);
  i64 ra = halves ? A : A / 2, rb = halves ? B : B / 2;
  std::string root = "√" + std::to_string(ring.d());
  std::string s;
  if (rb == 0) {
    s = i128_str(ra);
  } else {
    std::string coef = (rb == 1) ? "" : (rb == -1) ? "-" : i128_str(rb);
    if (ra == 0) {
      s = coef + root;
    } else {
      s = i128_str(ra) + (rb > 0 ? "+" : "") + coef + root;
    }
  }
  return halves ? "(" + s + ")/2" : s;
}

const char* kind_name(PrimeKind k) {
  switch (k) {
    case PrimeKind::Split: return "split";
    case PrimeKind::Inert: return "inert";
    case PrimeKind::Ramified: return "ramified";
  }
  return "?";
}

bool PrimeIdeal::same_as(const PrimeIdeal& o) const {
  if (!(ring == o.ring) || p != o.p || kind != o.kind) return false;
  if (kind == PrimeKind::Split) return sqrt_image == o.sqrt_image;
  return true;
}

namespace {

PrimeIdeal make_inert(QuadRing ring, i64 p) {
  PrimeIdeal P;
  P.ring = ring;
  P.p = p;
  P.kind = PrimeKind::Inert;
  P.generator = QuadInt::from_int(ring, p);
  P.norm = p * p;
  P.degree = 2;
  QuadExtField F(p);
  // d = n * k^2 with n the field's non-residue
  i64 k = sqrt_mod(mulmod(floor_mod(ring.d(), p), invmod(F.n(), p), p), p);
  P.sqrt_image2 = F.make(0, k);
  return P;
}

PrimeIdeal make_degree_one(const QuadInt& g, i64 p, PrimeKind kind) {
  PrimeIdeal P;
  P.ring = g.ring;
  P.p = p;
  P.kind = kind;
  P.generator = g;
  P.norm = p;
  P.degree = 1;
  auto [A, B] = g.twice_sqrt_coords();
  if (floor_mod(B, p) == 0) {
    P.sqrt_image = 0;
  } else {
    P.sqrt_image = floor_mod(-mulmod(A, invmod(B, p), p), p);
  }
  return P;
}

}  // namespace

std::vector<PrimeIdeal> split_prime(QuadRing ring, i64 p) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::InvalidModulus, "split_prime needs an odd prime, got " + std::to_string(p));
  i64 d = ring.d();
  if (floor_mod(d, p) == 0) return {make_degree_one(QuadInt::from_sqrt(ring, 0, 1), p, PrimeKind::Ramified)};
  if (legendre(d, p) == -1) return {make_inert(ring, p)};
  // search for a generator A + B sqrt d (then (A + B sqrt d)/2 for the half basis)
  for (int den : {1, 2}) {
    if (den == 2 && !ring.half_basis()) break;
    i64 target = (den == 1) ? p : 4 * p;
    for (i64 B = 1; B < 200000; ++B) {
      if (den == 2 && B % 2 == 0) continue;
      for (int sgn : {1, -1}) {
        i128 A2 = (i128)d * B * B + sgn * (i128)target;
        i128 A;
        if (!exact_sqrt(A2, A)) continue;
        if (den == 2 && A % 2 == 0) continue;
        QuadInt g = QuadInt::from_sqrt(ring, (i64)A, B, den);
        PrimeIdeal P1 = make_degree_one(g, p, PrimeKind::Split);
        PrimeIdeal P2 = make_degree_one(QuadInt::from_sqrt(ring, (i64)A, -B, den), p, PrimeKind::Split);
        return {P1, P2};
      }
      if (d < 0 && (i128)(-d) * B * B > target) break;
    }
  }
  fail(ErrorKind::InvalidModulus, "no generator found for a split prime over " + std::to_string(p));
}

PrimeIdeal prime_from_generator(const QuadInt& g) {
  i64 N = std::llabs(g.norm());
  QuadRing ring = g.ring;
  if (g.is_rational() && g.a > 2 && is_prime(g.a) && legendre(ring.d(), g.a) == -1) return make_inert(ring, g.a);
  if (!is_prime(N) || N == 2) fail(ErrorKind::InvalidModulus, "generator " + g.str() + " is not an odd prime element");
  PrimeKind kind = floor_mod(ring.d(), N) == 0 ? PrimeKind::Ramified : PrimeKind::Split;
  return make_degree_one(g, N, kind);
}

PrimeIdeal conjugate(const PrimeIdeal& P) {
  if (P.kind != PrimeKind::Split) return P;
  return make_degree_one(P.generator.conj(), P.p, PrimeKind::Split);
}

Residue reduce_mod(const QuadInt& x, const PrimeIdeal& P) {
  auto [A, B] = x.twice_sqrt_coords();
  return reduce_mod_sqrt(x.ring, A, B, 2, P);
}

Residue reduce_mod_sqrt(QuadRing ring, i64 A, i64 B, i64 den, const PrimeIdeal& P) {
  if (!(ring == P.ring)) fail(ErrorKind::InconsistentData, "element and prime live in different rings");
  i64 p = P.p;
  if (floor_mod(den, p) == 0) fail(ErrorKind::NonIntegral, "denominator not invertible mod " + std::to_string(p));
  i64 di = invmod(den, p);
  if (P.degree == 1) {
    i64 v = floor_mod(A + mulmod(B, P.sqrt_image, p), p);
    return {mulmod(v, di, p), 0};
  }
  i64 a = mulmod(floor_mod(A, p), di, p);
  i64 bc = mulmod(mulmod(floor_mod(B, p), di, p), P.sqrt_image2.b, p);
  return {a, bc};
}

bool divides(const PrimeIdeal& P, const QuadInt& x) {
  Residue r = reduce_mod(x, P);
  return r.a == 0 && r.b == 0;
}

bool residue_is_square(const Residue& r, const PrimeIdeal& P) {
  if (P.degree == 1) return legendre(r.a, P.p) >= 0;
  QuadExtField F(P.p);
  return fq_char(F, F.make(r.a, r.b)) >= 0;
}

int residue_chi(const QuadInt& x, const PrimeIdeal& P) {
  Residue r = reduce_mod(x, P);
  if (P.degree == 1) return legendre(r.a, P.p);
  QuadExtField F(P.p);
  return fq_char(F, F.make(r.a, r.b));
}

int residue_quad_char(const QuadInt& x, const PrimeIdeal& P) {
  int c = residue_chi(x, P);
  if (c == 0) fail(ErrorKind::RamifiedEntry, x.str() + " is divisible by " + P.label());
  return c == 1 ? 0 : 1;
}

}  // namespace octic
