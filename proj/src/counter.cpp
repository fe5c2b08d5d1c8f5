#include "octic/counter.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "octic/error.hpp"

namespace octic {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// run body(i) for i in [0, n) on up to `threads` workers, summing the results
template <class Body>
i64 parallel_sum(i64 n, int threads, Body body) {
  if (threads <= 1 || n < 2) {
    i64 s = 0;
    for (i64 i = 0; i < n; ++i) s += body(i);
    return s;
  }
  std::atomic<i64> next{0};
  std::atomic<i64> total{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      i64 s = 0;
      for (i64 i; (i = next.fetch_add(1)) < n;) s += body(i);
      total += s;
    });
  }
  for (auto& th : pool) th.join();
  return total.load();
}

// walking t through indices 0, 1, ..., q-1: going from i to i+1 adds sum_{l<=j} p^l (as field
// elements), j being the number of trailing digits p-1 in i
struct IndexWalk {
  const GaloisField& F;
  std::array<Elem, 4> delta{};
  explicit IndexWalk(const GaloisField& f) : F(f) {
    Elem acc = 0, pw = 1;
    for (int j = 0; j < F.k(); ++j) {
      acc = F.add(acc, pw);
      delta[j] = acc;
      pw *= (Elem)F.p();
    }
  }
  int level(i64 i) const {
    int j = 0;
    i64 p = F.p();
    while (j + 1 < F.k() && (i + 1) % p == 0) {
      i /= p;
      ++j;
    }
    return j;
  }
  // steps[f][j] = c_f * delta_j
  std::vector<std::array<Elem, 4>> steps(const std::vector<Elem>& c) const {
    std::vector<std::array<Elem, 4>> out(c.size());
    for (size_t f = 0; f < c.size(); ++f)
      for (int j = 0; j < F.k(); ++j) out[f][j] = F.mul(c[f], delta[j]);
    return out;
  }
};

}  // namespace

CharTable::CharTable(const GaloisField& F) : table_(F.chi_table(), F.chi_table() + F.q()) {}

ReducedArrangement reduce(const Arrangement& arr, const PrimeIdeal& P, const GaloisField& F, bool force) {
  if (!(P.ring == arr.ring)) fail(ErrorKind::InconsistentData, "prime and arrangement live over different rings");
  if (F.p() != P.p) fail(ErrorKind::InconsistentData, "field characteristic differs from " + P.label());
  bool rational = true;
  for (const auto& l : arr.forms)
    for (const auto& c : l.c) rational = rational && c.is_rational();
  if (F.k() % P.degree != 0 && !rational)
    fail(ErrorKind::InconsistentData, "field does not contain the residue field of " + P.label());
  if (arr.is_bad(P.p) && !force) fail(ErrorKind::BadPrime, std::to_string(P.p) + " is a bad prime for " + arr.label);
  ReducedArrangement R;
  R.F = &F;
  R.label = arr.label;
  for (const auto& l : arr.forms) {
    std::array<Elem, 4> c{};
    for (int j = 0; j < 4; ++j) c[j] = F.from_residue(reduce_mod(l.c[j], P));
    R.forms.push_back(c);
  }
  return R;
}

int find_pivot(const ReducedArrangement& A) {
  for (int v = 0; v < 4; ++v) {
    int n = 0;
    for (const auto& f : A.forms) n += f[v] != 0;
    if (n == 4) return v;
  }
  return -1;
}

CountResult generic_count(const ReducedArrangement& A, int threads) {
  auto t0 = Clock::now();
  const GaloisField& F = *A.F;
  const i64 q = F.q();
  const int n = (int)A.forms.size();
  const std::int8_t* chi = F.chi_table();
  IndexWalk walk(F);
  std::vector<Elem> c2(n), c3(n);
  for (int i = 0; i < n; ++i) {
    c2[i] = A.forms[i][2];
    c3[i] = A.forms[i][3];
  }
  const auto step2 = walk.steps(c2), step3 = walk.steps(c3);

  // points e_s + sum_{j>s} t_j e_j; this sums chi(f) over the stratum with the first free
  // coordinate fixed to t_first
  auto stratum = [&](int s, Elem t_first) -> i64 {
    std::vector<Elem> base(n);
    for (int i = 0; i < n; ++i) base[i] = A.forms[i][s];
    if (s == 3) {
      int c = 1;
      for (int i = 0; i < n; ++i) c *= chi[base[i]];
      return c;
    }
    for (int i = 0; i < n; ++i) base[i] = F.add(base[i], F.mul(t_first, A.forms[i][s + 1]));
    if (s == 2) {
      int c = 1;
      for (int i = 0; i < n; ++i) c *= chi[base[i]];
      return c;
    }
    // remaining free coordinates are s+2 (outer) and, for s == 0, 3 (inner)
    i64 sum = 0;
    std::vector<Elem> mid(base), cur(n);
    const auto& so = s == 1 ? step3 : step2;
    for (i64 u = 0; u < q; ++u) {
      if (s == 1) {
        int c = 1;
        for (int i = 0; i < n && c; ++i) c *= chi[mid[i]];
        sum += c;
      } else {
        cur = mid;
        for (i64 v = 0; v < q; ++v) {
          int c = 1;
          for (int i = 0; i < n && c; ++i) c *= chi[cur[i]];
          sum += c;
          int j = walk.level(v);
          for (int i = 0; i < n; ++i) cur[i] = F.add(cur[i], step3[i][j]);
        }
      }
      int j = walk.level(u);
      for (int i = 0; i < n; ++i) mid[i] = F.add(mid[i], so[i][j]);
    }
    return sum;
  };

  std::vector<Elem> elems(q);
  for (i64 i = 0; i < q; ++i) elems[i] = (Elem)i;

  i64 s0 = parallel_sum(q, threads, [&](i64 i) { return stratum(0, elems[i]); });
  i64 s1 = 0;
  for (i64 i = 0; i < q; ++i) s1 += stratum(1, elems[i]);
  i64 s2 = 0;
  for (i64 i = 0; i < q; ++i) s2 += stratum(2, elems[i]);
  i64 s3 = stratum(3, 0);
  i64 chisum = s0 + s1 + s2 + s3;

  CountResult r;
  r.label = A.label;
  r.q = q;
  r.char_sum = chisum;
  r.N = q * q * q + q * q + q + 1 + chisum;
  r.engine = "generic";
  r.seconds = since(t0);
  return r;
}

CountResult semiseparated_count(const ReducedArrangement& A, int pivot, int threads, const LegendreTraceTable* T) {
  auto t0 = Clock::now();
  const GaloisField& F = *A.F;
  const i64 q = F.q();
  const int n = (int)A.forms.size();
  if (pivot < 0 || pivot > 3) fail(ErrorKind::NotSemiseparable, "no pivot variable");
  std::vector<int> pf, nf;
  for (int i = 0; i < n; ++i) (A.forms[i][pivot] != 0 ? pf : nf).push_back(i);
  if (pf.size() != 4)
    fail(ErrorKind::NotSemiseparable, "pivot variable occurs in " + std::to_string(pf.size()) + " forms");

  std::optional<LegendreTraceTable> own;
  if (!T || T->q() != q) {
    own.emplace(F, threads);
    T = &*own;
  }
  const std::int8_t* chi = F.chi_table();

  int others[3], k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != pivot) others[k++] = v;

  // forms reordered: four pivot forms first, then the rest, with coefficients on the other variables
  const int m = (int)nf.size();
  std::vector<std::array<Elem, 3>> coef(n);
  std::array<Elem, 4> ninv{};
  Elem lead = 1;
  for (int i = 0; i < 4; ++i) {
    const auto& f = A.forms[pf[i]];
    for (int j = 0; j < 3; ++j) coef[i][j] = f[others[j]];
    ninv[i] = F.neg(F.inv(f[pivot]));
    lead = F.mul(lead, f[pivot]);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 3; ++j) coef[4 + i][j] = A.forms[nf[i]][others[j]];
  const int chi_lead = F.chi(lead);
  IndexWalk walk(F);
  std::vector<Elem> cb(n);
  for (int i = 0; i < n; ++i) cb[i] = coef[i][2];
  const auto stepb = walk.steps(cb);

  auto contribution = [&](const Elem* val) -> i64 {
    int g = 1;
    for (int i = 4; i < n; ++i) {
      g *= chi[val[i]];
      if (!g) return 0;
    }
    std::array<Elem, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = F.mul(val[i], ninv[i]);
    return g * quartic_char_sum(F, *T, 1, r);
  };

  // w = (1, a, b) for a fixed a
  auto row = [&](i64 a) -> i64 {
    std::vector<Elem> val(n);
    for (int i = 0; i < n; ++i) val[i] = F.add(coef[i][0], F.mul((Elem)a, coef[i][1]));
    i64 s = 0;
    for (i64 b = 0; b < q; ++b) {
      s += contribution(val.data());
      int j = walk.level(b);
      for (int i = 0; i < n; ++i) val[i] = F.add(val[i], stepb[i][j]);
    }
    return s;
  };

  i64 sum = parallel_sum(q, threads, row);
  {
    std::vector<Elem> val(n);
    for (int i = 0; i < n; ++i) val[i] = coef[i][1];
    for (i64 b = 0; b < q; ++b) {
      sum += contribution(val.data());
      int j = walk.level(b);
      for (int i = 0; i < n; ++i) val[i] = F.add(val[i], stepb[i][j]);
    }
    for (int i = 0; i < n; ++i) val[i] = coef[i][2];
    sum += contribution(val.data());
  }
  // the pivot point itself lies on the non-pivot planes and contributes chi(0) = 0
  i64 chisum = chi_lead * sum;

  CountResult r;
  r.label = A.label;
  r.q = q;
  r.char_sum = chisum;
  r.N = q * q * q + q * q + q + 1 + chisum;
  r.engine = "semisep";
  r.seconds = since(t0);
  return r;
}

Engine parse_engine(const std::string& s) {
  if (s == "generic") return Engine::Generic;
  if (s == "semisep" || s == "semiseparated") return Engine::Semisep;
  fail(ErrorKind::Usage, "unknown engine '" + s + "'");
}

const char* engine_name(Engine e) { return e == Engine::Generic ? "generic" : "semisep"; }

CountResult count_at(const Arrangement& arr, const PrimeIdeal& P, int k, Engine engine, int threads, bool force) {
  if (k != 1 && k != 2 && k != 4) fail(ErrorKind::Unsupported, "field exponent must be 1, 2 or 4");
  GaloisField F(P.p, k);
  auto R = reduce(arr, P, F, force);
  CountResult r;
  if (engine == Engine::Semisep) {
    int piv = find_pivot(R);
    if (piv >= 0) {
      r = semiseparated_count(R, piv, threads);
    } else {
      r = generic_count(R, threads);
      r.engine = "generic(fallback)";
    }
  } else {
    r = generic_count(R, threads);
  }
  r.ideal = P.label();
  return r;
}

i64 surface_e_enumerate(const GaloisField& F, Elem alpha) {
  const i64 q = F.q();
  // (0:0:0:1) is not on E: u = 1 there while the right side vanishes
  i64 n = 0;
  auto add_point = [&](Elem x, Elem y, Elem z) {
    Elem g = F.mul(alpha, F.mul(F.mul(x, y), F.mul(z, F.add(F.add(x, y), z))));
    n += 1 + F.chi(g);
  };
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 0; b < q; ++b) add_point(1, (Elem)a, (Elem)b);
  for (i64 b = 0; b < q; ++b) add_point(0, 1, (Elem)b);
  add_point(0, 0, 1);
  return n;
}

i64 surface_e_count(const GaloisField& F, Elem alpha) {
  if (alpha == 0) fail(ErrorKind::DegenerateSurface, "alpha vanishes in the residue field");
  const i64 q = F.q();
  i64 n = q * q + q + 1 + F.chi(F.neg(alpha)) * q;
  if (q <= 13 && n != surface_e_enumerate(F, alpha))
    fail(ErrorKind::Inconsistency, "closed form for #E disagrees with enumeration");
  return n;
}

}  // namespace octic
