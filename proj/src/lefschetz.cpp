#include <cstdlib>
#include <set>
#include <sstream>

#include "octic/error.hpp"
#include "octic/lefschetz.hpp"

namespace octic {

namespace {

const QuadRing kZ2(2);

std::string poly_str(const std::vector<i64>& c) {
  // c[i] is the coefficient of X^(deg - i)
  std::ostringstream os;
  const int deg = (int)c.size() - 1;
  bool first = true;
  for (int i = 0; i <= deg; ++i) {
    i64 v = c[i];
    if (v == 0) continue;
    int e = deg - i;
    if (first) {
      if (v < 0) os << '-';
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    i64 m = std::llabs(v);
    if (m != 1 || e == 0) os << m;
    if (e >= 1) os << 'X';
    if (e >= 2) os << '^' << e;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

bool weil_ok(const TraceRecord& r, int b3) {
  auto ok = [&](i64 t, i64 q) { return (i128)t * t <= (i128)b3 * b3 * q * q * q; };
  const i64 q1 = r.q1 ? r.q1 : r.P.norm, q2 = r.q2 ? r.q2 : q1 * q1;
  if (r.a && !ok(*r.a, q1)) return false;
  if (r.a2 && !ok(*r.a2, q2)) return false;
  return true;
}

SplitSolution solve_split_trace(i64 n, i64 a2, i64 q, i64 cmin, i64 cmax) {
  std::vector<SplitSolution> hits;
  for (i64 c = cmin; c <= cmax; ++c) {
    i64 t = -n + q * q * q + q * q + c * q + 1;
    if ((i128)t * t - 2 * (i128)q * q * q == a2) hits.push_back({t, c});
  }
  if (hits.empty())
    fail(ErrorKind::InconsistentData, "no c in [" + std::to_string(cmin) + "," + std::to_string(cmax) +
                                          "] gives a trace with t^2 - 2q^3 = " + std::to_string(a2));
  if (hits.size() > 1) {
    std::string list;
    for (const auto& h : hits) list += " " + std::to_string(h.a) + "(c=" + std::to_string(h.c) + ")";
    fail(ErrorKind::Ambiguity, "candidates:" + list);
  }
  return hits[0];
}

std::string FrobeniusQuartic::str() const { return poly_str({1, -e1, e2, -e3, e4}); }

i64 FrobeniusQuartic::power_sum(int k) const {
  if (k == 1) return e1;
  if (k == 2) return e1 * e1 - 2 * e2;
  fail(ErrorKind::Unsupported, "power sums above 2");
}

FrobeniusQuartic frobenius_quartic(i64 a, i64 a2, i64 p) {
  if ((a * a - a2) % 2 != 0)
    fail(ErrorKind::InvalidTracePair, "a^2 - a2 is odd for (" + std::to_string(a) + ", " + std::to_string(a2) + ")");
  FrobeniusQuartic F;
  F.p = p;
  const i64 p3 = p * p * p;
  F.e1 = a;
  F.e2 = (a * a - a2) / 2;
  F.e3 = p3 * a;
  F.e4 = p3 * p3;
  return F;
}

std::optional<QuarticFactorization> factor_quartic_quadratic(const FrobeniusQuartic& F) {
  const i64 p3 = F.p * F.p * F.p;
  const i128 m = (i128)F.e2 - 2 * p3;
  const i128 D = (i128)F.e1 * F.e1 - 4 * m;
  if (D < 0) return std::nullopt;
  i128 s;
  if (exact_sqrt(D, s)) {
    if ((F.e1 + s) % 2 != 0) return std::nullopt;
    return QuarticFactorization{QuadInt(kZ2, (i64)((F.e1 + s) / 2), 0), QuadInt(kZ2, (i64)((F.e1 - s) / 2), 0)};
  }
  if (D % 2 == 0 && exact_sqrt(D / 2, s)) {
    if (F.e1 % 2 != 0 || s % 2 != 0) return std::nullopt;
    return QuarticFactorization{QuadInt(kZ2, F.e1 / 2, (i64)(s / 2)), QuadInt(kZ2, F.e1 / 2, (i64)(-s / 2))};
  }
  return std::nullopt;
}

FrobeniusQuartic expand(const QuarticFactorization& f, i64 p) {
  QuadInt sum = f.beta + f.beta_conj, prod = f.beta * f.beta_conj;
  if (!sum.is_rational() || !prod.is_rational())
    fail(ErrorKind::InconsistentData, "factors are not conjugate over Z[sqrt2]");
  FrobeniusQuartic F;
  F.p = p;
  const i64 p3 = p * p * p;
  F.e1 = sum.a;
  F.e2 = prod.a + 2 * p3;
  F.e3 = p3 * sum.a;
  F.e4 = p3 * p3;
  return F;
}

std::string QuarticFactorization::str(i64 p) const {
  const i64 p3 = p * p * p;
  auto factor = [&](const QuadInt& b) {
    std::ostringstream os;
    os << "(X^2";
    if (b.is_rational()) {
      if (b.a != 0) os << (b.a > 0 ? " - " : " + ") << std::llabs(b.a) << "X";
    } else {
      os << " - (" << b.str() << ")X";
    }
    os << " + " << p3 << ")";
    return os.str();
  };
  return factor(beta) + factor(beta_conj);
}

PsiInvariants solve_psi_invariants(const std::vector<PsiObservation>& obs, i64 t_sum) {
  if (obs.empty()) fail(ErrorKind::Inconsistency, "no Lefschetz numbers given");
  std::optional<PsiInvariants> out;
  for (const auto& o : obs) {
    const i64 p = o.P.p, p3 = p * p * p;
    std::set<std::pair<i64, i64>> found;
    std::set<i64> bs = {o.beta.b, -o.beta.b};
    for (i64 b : bs) {
      i64 R = o.L - 1 - 2 * p3 + 4 * b;  // p t2 + p^2 t4
      if (R % p != 0) continue;
      i64 u = R / p - t_sum;  // (p - 1) t4
      if (u % (p - 1) != 0) continue;
      i64 t4 = u / (p - 1);
      found.insert({t_sum - t4, t4});
    }
    if (found.size() != 1)
      fail(ErrorKind::Inconsistency, "L = " + std::to_string(o.L) + " at " + o.P.label() + " admits " +
                                         std::to_string(found.size()) + " solutions");
    PsiInvariants t{found.begin()->first, found.begin()->second};
    if (out && (out->t2 != t.t2 || out->t4 != t.t4))
      fail(ErrorKind::Inconsistency, "Lefschetz numbers disagree on (t2, t4)");
    out = t;
  }
  return *out;
}

EigenSplit resolve_eigentrace(const PrimeIdeal& P, i64 L, const QuarticFactorization& f, const PsiInvariants& t) {
  const i64 p = P.p;
  i64 rhs = 1 + t.t2 * p + t.t4 * p * p + 2 * p * p * p - L;  // sqrt2 (tr+ - tr-) = 4b
  if (rhs % 4 != 0) fail(ErrorKind::Inconsistency, "L = " + std::to_string(L) + " at " + P.label() + " is inconsistent");
  i64 b = rhs / 4;
  bool m1 = f.beta.b == b, m2 = f.beta_conj.b == b;
  if (!m1 && !m2) fail(ErrorKind::Inconsistency, "L = " + std::to_string(L) + " matches neither factor at " + P.label());
  if (m1 && m2 && !(f.beta == f.beta_conj)) fail(ErrorKind::Ambiguity, "both factors match at " + P.label());
  EigenSplit e;
  e.P = P;
  e.tr_plus = m1 ? f.beta : f.beta_conj;
  e.tr_minus = e.tr_plus.conj();
  return e;
}

bool TwistReport::pass() const {
  for (const auto& r : rows)
    if (!r.match) return false;
  return !rows.empty();
}

TwistReport twist_compare(const std::vector<TwistObservation>& obs, const std::map<i64, i64>& a_p) {
  TwistReport rep;
  for (const auto& o : obs) {
    auto it = a_p.find(o.p);
    if (it == a_p.end()) fail(ErrorKind::Coverage, "no eigenvalue for p = " + std::to_string(o.p));
    TwistRow r;
    r.obs = o;
    r.a_p = it->second;
    r.square = legendre(2 * o.zeta + 1, o.p) == 1;
    r.predicted = r.square ? r.a_p : -r.a_p;
    r.match = r.predicted == o.trace;
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace octic
