#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>

#include "octic/error.hpp"
#include "octic/fsl.hpp"
#include "octic/gf.hpp"

namespace octic {

Poly Poly::operator*(const Poly& o) const {
  Poly r{ring, std::vector<QuadInt>(c.size() + o.c.size() - 1, QuadInt(ring, 0, 0))};
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
  return r;
}

bool Poly::operator==(const Poly& o) const {
  size_t n = std::max(c.size(), o.c.size());
  for (size_t i = 0; i < n; ++i) {
    QuadInt a = i < c.size() ? c[i] : QuadInt(ring, 0, 0);
    QuadInt b = i < o.c.size() ? o.c[i] : QuadInt(o.ring, 0, 0);
    if (!(a == b)) return false;
  }
  return true;
}

Poly Poly::conj() const {
  Poly r{ring, {}};
  for (const auto& x : c) r.c.push_back(x.conj());
  return r;
}

std::string Poly::str() const {
  std::ostringstream os;
  bool first = true;
  for (int e = degree(); e >= 0; --e) {
    const QuadInt& x = c[e];
    if (x.is_zero()) continue;
    std::string s = x.str();
    bool neg = s[0] == '-' && x.is_rational();
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << '-';
    std::string mag = neg ? s.substr(1) : s;
    bool unit = mag == "1";
    if (!x.is_rational() && e > 0) mag = "(" + mag + ")";
    if (!unit || e == 0) os << mag;
    if (e >= 1) os << 'x';
    if (e >= 2) os << '^' << e;
    first = false;
  }
  return first ? "0" : os.str();
}

Poly Poly::from_integers(QuadRing R, const std::vector<i64>& lead) {
  Poly p{R, {}};
  for (auto it = lead.rbegin(); it != lead.rend(); ++it) p.c.push_back(QuadInt::from_int(R, *it));
  return p;
}

bool has_root_mod(const Poly& f, const PrimeIdeal& P) {
  GaloisField F(P.p, P.degree);
  std::vector<GaloisField::elem> r;
  for (const auto& x : f.c) r.push_back(F.from_residue(reduce_mod(x, P)));
  for (i64 t = 0; t < F.q(); ++t) {
    GaloisField::elem acc = 0;
    for (int e = (int)r.size() - 1; e >= 0; --e) acc = F.add(F.mul(acc, (GaloisField::elem)t), r[e]);
    if (acc == 0) return true;
  }
  return false;
}

std::optional<std::pair<Poly, Poly>> conjugate_cubic_split(const Poly& sextic) {
  const QuadRing R = sextic.ring;
  if (sextic.degree() != 6 || R.d() >= 0) fail(ErrorKind::Unsupported, "root splitting needs a sextic over an imaginary field");
  for (const auto& x : sextic.c)
    if (!x.is_rational()) fail(ErrorKind::Unsupported, "sextic must have rational coefficients");
  const double lead = (double)sextic.c[6].a;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 1; i < 6; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < 6; ++i) C(i, 5) = -(double)sextic.c[i].a / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  auto roots = es.eigenvalues();
  const double sd = std::sqrt((double)-R.d());
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 3 || !(mask & 1)) continue;
    std::vector<std::complex<double>> g = {1.0};
    for (int i = 0; i < 6; ++i) {
      if (!(mask >> i & 1)) continue;
      std::vector<std::complex<double>> h(g.size() + 1, 0.0);
      for (size_t j = 0; j < g.size(); ++j) {
        h[j + 1] += g[j];
        h[j] -= roots[i] * g[j];
      }
      g = h;
    }
    // coefficient (A + B sqrt d)/2 with sqrt d = i sqrt|d|
    Poly cand{R, {}};
    bool ok = true;
    for (const auto& z : g) {
      double A = 2 * z.real(), B = 2 * z.imag() / sd;
      long long Ai = std::llround(A), Bi = std::llround(B);
      if (std::abs(A - Ai) > 1e-6 || std::abs(B - Bi) > 1e-6 || floor_mod(Ai - Bi, 2) != 0) {
        ok = false;
        break;
      }
      cand.c.push_back(QuadInt::from_sqrt(R, Ai, Bi, 2));
    }
    if (!ok) continue;
    Poly other = cand.conj();
    if (cand * other == sextic) return std::make_pair(cand, other);
  }
  return std::nullopt;
}

}  // namespace octic
