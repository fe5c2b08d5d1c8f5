#include <algorithm>
#include <sstream>

#include "octic/error.hpp"
#include "octic/lefschetz.hpp"

namespace octic {

namespace {

struct Frac {
  i128 n = 0, d = 1;
  Frac() = default;
  Frac(i128 n_, i128 d_ = 1) : n(n_), d(d_) { norm(); }
  void norm() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
  }
  Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
  Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
  Frac operator/(const Frac& o) const { return Frac(n * o.d, d * o.n); }
  bool zero() const { return n == 0; }
};

// rational arguments are compared over Q: at primes where the count is taken over F_p with p inert,
// classes that merge over K (such as -1 and -2 over Q(sqrt2)) give different characters
bool same_class(const QuadInt& a, const QuadInt& b) {
  if (a.is_rational() && b.is_rational()) {
    i128 r;
    return exact_sqrt((i128)a.a * b.a, r);
  }
  return SquareClass(a) == SquareClass(b);
}

bool trivial_class(const QuadInt& a) {
  if (a.is_rational()) {
    i128 r;
    return exact_sqrt(a.a, r);
  }
  return a.is_square();
}

}  // namespace

int CorrectionModel::char_value(const QuadInt& arg, const PrimeIdeal& P, int k) {
  const int e = arg.is_rational() ? 1 : P.degree;
  int v;
  if (k % (2 * e) == 0) {
    v = divides(P, arg) ? 0 : 1;
  } else if (k == e) {
    v = arg.is_rational() ? legendre(floor_mod(arg.a, P.p), P.p) : residue_chi(arg, P);
  } else {
    fail(ErrorKind::Unsupported, "character of " + arg.str() + " over F_" + std::to_string(P.p) + "^" +
                                     std::to_string(k));
  }
  if (v == 0) fail(ErrorKind::DegenerateSurface, arg.str() + " vanishes at " + P.label());
  return v;
}

i64 CorrectionModel::K1(const PrimeIdeal& P, int k) const {
  if (!split_valid) {
    for (const auto& t : chars) {
      const int e = t.arg.is_rational() ? 1 : P.degree;
      if (k % (2 * e) != 0) fail(ErrorKind::MissingModel, name + " has no split-prime instantiation");
    }
    if (k % 2 != 0) fail(ErrorKind::MissingModel, name + " has no odd-power instantiation");
  }
  i64 s = k1_const;
  for (const auto& t : chars) s += t.mult * char_value(t.arg, P, k);
  return s;
}

i64 CorrectionModel::even_K1() const {
  i64 s = k1_const;
  for (const auto& t : chars) s += t.mult;
  return s;
}

i64 CorrectionModel::trace(i64 N, i64 q, i64 k1) const {
  i128 t = -(i128)N + (i128)K3 * q * q * q + (i128)K2 * q * q + (i128)k1 * q + K0;
  return (i64)t;
}

std::string CorrectionModel::describe() const {
  std::ostringstream os;
  os << name << ": a = -N + " << K3 << "q^3 + " << K2 << "q^2 + (" << k1_const;
  for (const auto& t : chars) os << (t.mult < 0 ? " - " : " + ") << (t.mult < 0 ? -t.mult : t.mult) << "chi(" << t.arg.str() << ")";
  os << ")q + " << K0;
  return os.str();
}

CorrectionModel census_model(const Arrangement& arr, const Census& c) {
  CorrectionModel m;
  m.label = arr.label;
  m.name = "census";
  std::vector<QuadInt> classes;
  for (const auto& a : p40_alphas(arr, c)) {
    QuadInt neg = -a.rep();
    if (trivial_class(neg)) {
      m.k1_const -= 1;
      continue;
    }
    size_t i = 0;
    while (i < classes.size() && !same_class(classes[i], neg)) ++i;
    if (i == classes.size()) {
      classes.push_back(neg);
      m.chars.push_back({0, neg});
    }
    m.chars[i].mult -= 1;
  }
  return m;
}

std::vector<i64> residuals(const CorrectionModel& m, const std::vector<Anchor>& anchors) {
  std::vector<i64> r;
  for (const auto& A : anchors) r.push_back(corrected_trace(m, A.P, A.N) - A.a);
  return r;
}

std::optional<CorrectionModel> fit_model(const CorrectionModel& base, const FitSpec& spec,
                                         const std::vector<Anchor>& anchors) {
  // unknowns: [K2], [k1_const], multiplicities of spec.chars
  const int nu = (int)spec.K2 + (int)spec.k1_const + (int)spec.chars.size();
  const int ne = (int)anchors.size();
  if (nu == 0 || ne < nu) return std::nullopt;
  CorrectionModel fixed = base;
  if (spec.K2) fixed.K2 = 0;
  if (spec.k1_const) fixed.k1_const = 0;
  std::vector<CharTerm> kept;
  for (const auto& t : base.chars) {
    bool is_free = false;
    for (const auto& g : spec.chars) is_free = is_free || same_class(g, t.arg);
    if (!is_free) kept.push_back(t);
  }
  fixed.chars = kept;

  std::vector<std::vector<Frac>> M(ne, std::vector<Frac>(nu + 1));
  for (int i = 0; i < ne; ++i) {
    const auto& A = anchors[i];
    const i64 q = A.N.q;
    const int k = (int)exponent_of(q, A.P.p);
    int col = 0;
    if (spec.K2) M[i][col++] = Frac(q * q);
    if (spec.k1_const) M[i][col++] = Frac(q);
    for (const auto& g : spec.chars) M[i][col++] = Frac(q * CorrectionModel::char_value(g, A.P, k));
    // a + N - (fixed part) = sum unknown * column
    i64 rest = fixed.trace(A.N.N, q, fixed.K1(A.P, k));
    M[i][nu] = Frac((i128)A.a - rest);
  }
  std::vector<int> pivcol;
  int row = 0;
  for (int col = 0; col < nu && row < ne; ++col) {
    int sel = -1;
    for (int i = row; i < ne; ++i)
      if (!M[i][col].zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(M[row], M[sel]);
    for (int i = 0; i < ne; ++i) {
      if (i == row || M[i][col].zero()) continue;
      Frac f = M[i][col] / M[row][col];
      for (int j = col; j <= nu; ++j) M[i][j] = M[i][j] - f * M[row][j];
    }
    pivcol.push_back(col);
    ++row;
  }
  if ((int)pivcol.size() < nu) return std::nullopt;
  for (int i = row; i < ne; ++i)
    if (!M[i][nu].zero()) return std::nullopt;
  std::vector<i64> x(nu);
  for (int r = 0; r < nu; ++r) {
    Frac v = M[r][nu] / M[r][pivcol[r]];
    if (v.d != 1) return std::nullopt;
    x[pivcol[r]] = (i64)v.n;
  }
  CorrectionModel out = fixed;
  out.name = base.name + "+fit";
  int col = 0;
  if (spec.K2) out.K2 = x[col++];
  if (spec.k1_const) out.k1_const = x[col++];
  for (const auto& g : spec.chars) {
    i64 mult = x[col++];
    if (mult != 0) out.chars.push_back({mult, g});
  }
  return out;
}

Calibration calibrate_split_model(const std::vector<Anchor>& anchors, const std::vector<CorrectionModel>& candidates,
                                  const CorrectionModel& fit_base, const FitSpec& spec) {
  if (anchors.empty()) fail(ErrorKind::NoModel, "no anchor primes");
  Calibration cal;
  for (const auto& m : candidates) {
    CandidateFit c;
    c.model = m;
    c.residuals = residuals(m, anchors);
    c.accepted = std::all_of(c.residuals.begin(), c.residuals.end(), [](i64 r) { return r == 0; });
    cal.candidates.push_back(c);
  }
  cal.fitted = fit_model(fit_base, spec, anchors);
  if (cal.fitted) cal.fit_residuals = residuals(*cal.fitted, anchors);
  for (const auto& c : cal.candidates) {
    if (c.accepted) {
      cal.model = c.model;
      return cal;
    }
  }
  if (cal.fitted) {
    cal.model = *cal.fitted;
    return cal;
  }
  fail(ErrorKind::NoModel, "no candidate fits the anchors\n" + cal.report());
}

std::string Calibration::report() const {
  std::ostringstream os;
  for (const auto& c : candidates) {
    os << (c.accepted ? "accept " : "reject ") << c.model.describe() << "  residuals";
    for (i64 r : c.residuals) os << ' ' << r;
    os << '\n';
  }
  if (fitted) {
    os << "fit    " << fitted->describe() << "  residuals";
    for (i64 r : fit_residuals) os << ' ' << r;
    os << '\n';
  } else {
    os << "fit    none (anchors do not determine integral parameters)\n";
  }
  return os.str();
}

i64 exponent_of(i64 q, i64 p) {
  int k = 0;
  i64 v = 1;
  while (v < q) {
    v *= p;
    ++k;
  }
  if (v != q) fail(ErrorKind::InconsistentData, std::to_string(q) + " is not a power of " + std::to_string(p));
  return k;
}

i64 corrected_trace(const CorrectionModel& m, const PrimeIdeal& P, const CountResult& N) {
  const int k = (int)exponent_of(N.q, P.p);
  return m.trace(N.N, N.q, m.K1(P, k));
}

TraceRecord assemble_trace(const CorrectionModel& m, const PrimeIdeal& P, const std::optional<CountResult>& base,
                           const std::optional<CountResult>& ext) {
  TraceRecord r;
  r.P = P;
  r.provenance = "counted";
  if (base) {
    r.n1 = base->N;
    r.q1 = base->q;
    r.a = corrected_trace(m, P, *base);
  }
  if (ext) {
    r.n2 = ext->N;
    r.q2 = ext->q;
    r.a2 = corrected_trace(m, P, *ext);
  }
  return r;
}

}  // namespace octic
