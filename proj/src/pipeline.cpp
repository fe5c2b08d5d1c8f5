#include "octic/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "octic/error.hpp"

namespace octic {

namespace {

std::vector<std::vector<std::string>> read_rows(const std::string& path, size_t width) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::vector<std::vector<std::string>> rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto h = raw.find('#');
    if (h != std::string::npos) raw = raw.substr(0, h);
    std::istringstream is(raw);
    std::vector<std::string> f;
    std::string w;
    while (is >> w) f.push_back(w);
    if (f.empty()) continue;
    if (f.size() != width)
      fail(ErrorKind::Parse, path + ": line " + std::to_string(line) + ": expected " + std::to_string(width) + " fields");
    rows.push_back(f);
  }
  return rows;
}

i64 to_int(const std::string& s) {
  size_t pos = 0;
  i64 v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) fail(ErrorKind::Parse, "'" + s + "' is not an integer");
  return v;
}

i64 cube(i64 n) { return n * n * n; }

void note(const RunOptions& o, const std::string& s) {
  if (o.progress) *o.progress << s << std::endl;
}

std::vector<i64> rational_primes(const std::vector<PrimeIdeal>& a, const std::vector<PrimeIdeal>& b) {
  std::vector<i64> ps;
  for (const auto* v : {&a, &b})
    for (const auto& P : *v)
      if (std::find(ps.begin(), ps.end(), P.p) == ps.end()) ps.push_back(P.p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

std::vector<PrimeIdeal> union_primes(const FieldConfig& cfg) {
  std::vector<PrimeIdeal> out;
  for (const auto* v : {&cfg.T, &cfg.U})
    for (const auto& P : *v) {
      bool seen = false;
      for (const auto& Q : out) seen = seen || Q.same_as(P);
      if (!seen) out.push_back(P);
    }
  return out;
}

}  // namespace

std::string default_data_dir() {
  if (const char* env = std::getenv("OCTIC_DATA"); env && *env) return env;
  return OCTIC_DATA_DIR;
}

std::string data_path(const RunOptions& o, const std::string& file) {
  std::string dir = o.data_dir.empty() ? default_data_dir() : o.data_dir;
  return (std::filesystem::path(dir) / file).string();
}

i64 prime_tag(const PrimeIdeal& P) {
  if (P.degree != 1) fail(ErrorKind::Unsupported, P.label() + " has no tag in F_p");
  if (!P.ring.half_basis()) return P.sqrt_image;
  return floor_mod((P.sqrt_image - 1) * invmod(2, P.p), P.p);
}

std::string tag_str(const PrimeIdeal& P) { return P.degree == 1 ? std::to_string(prime_tag(P)) : "-"; }

std::vector<PrimeIdeal> primes_over(QuadRing R, i64 p) { return split_prime(R, p); }

PrimeIdeal prime_by_tag(QuadRing R, i64 p, i64 tag) {
  for (const auto& P : primes_over(R, p))
    if (P.degree == 1 && prime_tag(P) == floor_mod(tag, p)) return P;
  fail(ErrorKind::Usage, "no prime of " + R.name() + " over " + std::to_string(p) + " has tag " + std::to_string(tag));
}

std::vector<AnchorRow> load_anchors(const std::string& path) {
  std::vector<AnchorRow> out;
  for (const auto& f : read_rows(path, 4)) {
    AnchorRow a;
    a.label = canonical_label(f[0]);
    a.p = to_int(f[1]);
    if (f[2] != "-") a.tag = to_int(f[2]);
    a.a = to_int(f[3]);
    out.push_back(a);
  }
  return out;
}

Counter::Counter(RunOptions o) : opts_(std::move(o)) {
  if (!opts_.ledger.empty()) ledger_.emplace(opts_.ledger);
}

CountResult Counter::count(const Arrangement& arr, const PrimeIdeal& P, int k) {
  i64 q = 1;
  for (int i = 0; i < k; ++i) q *= P.p;
  if (ledger_)
    if (auto hit = ledger_->lookup(arr.label, P.label(), q)) return *hit;
  note(opts_, "count " + arr.label + " at " + P.label() + " over F_" + std::to_string(q) + " ...");
  CountResult r = count_at(arr, P, k, opts_.engine, opts_.threads, opts_.force);
  note(opts_, "  N = " + std::to_string(r.N) + " (" + r.engine + ", " + std::to_string(r.seconds) + " s)");
  if (ledger_) ledger_->record(r);
  return r;
}

const VarietyRow* XReport::row(i64 p) const {
  for (const auto& r : rows)
    if (r.P.p == p) return &r;
  return nullptr;
}

const VarietyRow* YReport::row(const PrimeIdeal& P) const {
  for (const auto& r : rows)
    if (r.P.same_as(P)) return &r;
  return nullptr;
}

const VarietyRow* ZReport::row(const PrimeIdeal& P) const {
  for (const auto& r : rows)
    if (r.P.same_as(P)) return &r;
  return nullptr;
}

const std::vector<i64>& x_table_primes() {
  static const std::vector<i64> v = {5, 7, 11, 17, 23, 31, 41, 47, 89, 97};
  return v;
}
const std::vector<i64>& y_split_primes() {
  static const std::vector<i64> v = {11, 29, 31, 61};
  return v;
}
const std::vector<i64>& z_split_primes() {
  static const std::vector<i64> v = {7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97};
  return v;
}

std::string canonical_label(const std::string& label) {
  if (label == "X" || label == "X250") return "X";
  if (label == "Y") return "Y";
  if (label == "Z" || label == "Z262") return "Z";
  return label;
}

Arrangement arrangement_for(const std::string& label) {
  if (std::filesystem::exists(label)) return read_arrangement(label);
  return builtin(label);
}

std::vector<CorrectionModel> x_printed_models() {
  const QuadRing R(2);
  std::vector<CharTerm> k1 = {{3, QuadInt::from_int(R, -1)}, {4, QuadInt::from_int(R, -2)}};
  CorrectionModel a;
  a.label = "X250";
  a.name = "printed p^3+p^3";
  a.K3 = 2;
  a.K2 = 0;
  a.k1_const = 2;
  a.chars = k1;
  CorrectionModel b = a;
  b.name = "printed p^3+p^2";
  b.K3 = 1;
  b.K2 = 1;
  return {a, b};
}

Calibration calibrate(const std::string& label, Counter& C) {
  const std::string L = canonical_label(label);
  Arrangement arr = arrangement_for(L);
  CorrectionModel m = census_model(arr, census(arr));
  std::vector<Anchor> anchors;
  for (const auto& a : load_anchors(data_path(C.options(), "anchors.tsv"))) {
    if (a.label != L) continue;
    PrimeIdeal P = a.tag ? prime_by_tag(arr.ring, a.p, *a.tag) : primes_over(arr.ring, a.p)[0];
    anchors.push_back({P, C.count(arr, P, 1), a.a});
  }
  std::vector<CorrectionModel> candidates;
  FitSpec spec;
  if (L == "X") {
    candidates = x_printed_models();
    spec.K2 = true;
    spec.k1_const = true;
    spec.chars = {QuadInt::from_int(arr.ring, -1), QuadInt::from_int(arr.ring, -2)};
  } else {
    spec.k1_const = true;
  }
  candidates.push_back(m);
  return calibrate_split_model(anchors, candidates, m, spec);
}

XReport run_x(Counter& C, const std::vector<i64>& primes, bool psi) {
  XReport X;
  Arrangement arr = builtin("X");
  X.cal = calibrate("X", C);
  const auto& model = X.cal.model;
  for (i64 p : primes) {
    VarietyRow row;
    row.P = primes_over(arr.ring, p)[0];
    auto n1 = C.count(arr, row.P, 1);
    auto n2 = C.count(arr, row.P, 2);
    row.rec = assemble_trace(model, row.P, n1, n2);
    row.rec.tag = "-";
    row.quartic = frobenius_quartic(*row.rec.a, *row.rec.a2, p);
    row.factors = factor_quartic_quadratic(*row.quartic);
    X.rows.push_back(row);
  }
  if (!psi) return X;

  for (const auto& f : read_rows(data_path(C.options(), "psi_lefschetz.tsv"), 4)) {
    PsiObservation o;
    o.P = prime_from_generator(QuadInt(arr.ring, to_int(f[1]), to_int(f[2])));
    if (o.P.p != to_int(f[0])) fail(ErrorKind::Parse, "psi_lefschetz.tsv: generator " + o.P.label() + " is not over " + f[0]);
    o.L = to_int(f[3]);
    const VarietyRow* r = X.row(o.P.p);
    if (!r) continue;
    if (!r->factors) fail(ErrorKind::Inconsistency, "quartic at " + std::to_string(o.P.p) + " does not split over Z[√2]");
    o.beta = r->factors->beta;
    X.lefschetz.push_back(o);
  }
  std::vector<PsiObservation> at7;
  for (const auto& o : X.lefschetz)
    if (o.P.p == 7) at7.push_back(o);
  if (at7.empty()) return X;
  X.psi = solve_psi_invariants(at7);
  for (const auto& o : X.lefschetz) X.eigen.push_back(resolve_eigentrace(o.P, o.L, *X.row(o.P.p)->factors, *X.psi));
  return X;
}

YReport run_y(Counter& C, const std::vector<i64>& split, bool inert) {
  YReport Y;
  Arrangement arr = builtin("Y");
  Y.cal = calibrate("Y", C);
  const auto& model = Y.cal.model;
  for (i64 p : split) {
    for (const auto& P : primes_over(arr.ring, p)) {
      if (P.kind != PrimeKind::Split) fail(ErrorKind::Usage, std::to_string(p) + " does not split in " + arr.ring.name());
      VarietyRow row;
      row.P = P;
      row.rec = assemble_trace(model, P, C.count(arr, P, 1), C.count(arr, P, 2));
      row.rec.tag = tag_str(P);
      row.solved = solve_split_trace(*row.rec.n1, *row.rec.a2, p, -8, 10);
      Y.rows.push_back(row);
    }
  }
  if (!inert) return Y;
  PrimeIdeal P3 = primes_over(arr.ring, 3)[0];
  VarietyRow r3;
  r3.P = P3;
  r3.rec = assemble_trace(model, P3, C.count(arr, P3, 2), C.count(arr, P3, 4));
  r3.rec.tag = "-";
  r3.solved = solve_split_trace(*r3.rec.n1, *r3.rec.a2, P3.norm, -8, 10);
  Y.rows.push_back(r3);
  PrimeIdeal P13 = primes_over(arr.ring, 13)[0];
  VarietyRow r13;
  r13.P = P13;
  r13.rec = assemble_trace(model, P13, C.count(arr, P13, 2), std::nullopt);
  r13.rec.tag = "-";
  Y.rows.push_back(r13);
  return Y;
}

ZReport run_z(Counter& C, const std::vector<i64>& split, bool inert) {
  ZReport Z;
  Arrangement arr = builtin("Z");
  Z.cal = calibrate("Z", C);
  const auto& model = Z.cal.model;
  for (i64 p : split) {
    for (const auto& P : primes_over(arr.ring, p)) {
      if (P.kind != PrimeKind::Split) fail(ErrorKind::Usage, std::to_string(p) + " does not split in " + arr.ring.name());
      VarietyRow row;
      row.P = P;
      row.rec = assemble_trace(model, P, C.count(arr, P, 1), std::nullopt);
      row.rec.tag = tag_str(P);
      Z.rows.push_back(row);
    }
  }
  if (inert) {
    PrimeIdeal P = primes_over(arr.ring, 11)[0];
    VarietyRow row;
    row.P = P;
    row.rec = assemble_trace(model, P, C.count(arr, P, 2), std::nullopt);
    row.rec.tag = "-";
    Z.rows.push_back(row);
  }
  return Z;
}

std::vector<TwistObservation> twist_observations(const ZReport& z) {
  std::vector<TwistObservation> obs;
  for (const auto& r : z.rows)
    if (r.P.kind == PrimeKind::Split) obs.push_back({r.P.p, prime_tag(r.P), *r.rec.a});
  return obs;
}

int sqrt_minus3_twist(const PrimeIdeal& P) {
  // 2 zeta + 1 = sqrt(-3); the twist is its quadratic character in O_K / P
  return residue_chi(QuadInt::from_sqrt(P.ring, 0, 1), P);
}

CertificateInputs certificate_inputs(const std::string& label, Counter& C) {
  const std::string L = canonical_label(label);
  const RunOptions& o = C.options();
  CertificateInputs in;
  in.rho1.name = "rho1";
  std::vector<PrimeIdeal> primes;
  if (L == "X") {
    in.cfg = load_field_config(data_path(o, "fsl_q2.json"));
    in.cubics = load_cubic_data(data_path(o, "cubics_q2.json"));
    primes = union_primes(in.cfg);
    XReport x = run_x(C, rational_primes(in.cfg.T, in.cfg.U), true);
    for (const auto& P : primes) {
      RepEntry e;
      e.P = P;
      if (P.kind == PrimeKind::Split) {
        for (const auto& s : x.eigen)
          if (s.P.same_as(P)) {
            e.trace = s.tr_plus;
            e.det = cube(P.p);  // constant term of X^2 - tr X + p^3
            e.source = "eigentrace";
          }
      } else if (const VarietyRow* r = x.row(P.p)) {
        i64 a2 = *r->rec.a2;
        if (a2 % 2 != 0) fail(ErrorKind::Inconsistency, "a_{p^2} is odd at " + P.label());
        e.trace = QuadInt::from_int(P.ring, a2 / 2);
        e.det = cube(P.norm);
        e.source = "a_{p^2}/2";
      }
      in.rho1.entries.push_back(e);
    }
    EigenvalueTable h1 = load_table(data_path(o, "h1.tsv"), form_meta("h1"));
    auto parity = load_parity(data_path(o, "h1_parity.tsv"), in.cfg.ring);
    in.rho2.name = "h1";
    for (const auto& P : primes) {
      RepEntry e;
      e.P = P;
      try {
        e.trace = lookup(h1, P);
        e.det = cube(P.norm);
        e.source = "h1.tsv";
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::MissingEigenvalue) throw;
        for (const auto& f : parity)
          if (f.P.same_as(P)) {
            e.even_attested = f.even;
            e.source = "h1_parity.tsv";
          }
      }
      in.rho2.entries.push_back(e);
    }
    return in;
  }

  if (L == "Y") {
    in.cfg = load_field_config(data_path(o, "fsl_q5.json"));
    in.cubics = load_cubic_data(data_path(o, "cubics_q5.json"));
    primes = union_primes(in.cfg);
    std::vector<i64> split;
    bool inert = false;
    for (const auto& P : primes) {
      if (P.kind == PrimeKind::Split && std::find(split.begin(), split.end(), P.p) == split.end()) split.push_back(P.p);
      if (P.kind == PrimeKind::Inert) inert = true;
    }
    std::sort(split.begin(), split.end());
    YReport y = run_y(C, split, inert);
    for (const auto& P : primes) {
      RepEntry e;
      e.P = P;
      if (const VarietyRow* r = y.row(P)) {
        e.trace = QuadInt::from_int(P.ring, *r->rec.a);
        e.det = r->rec.a2 ? (*r->rec.a * *r->rec.a - *r->rec.a2) / 2 : cube(P.norm);
        e.source = r->rec.a2 ? "counted, det from a and a2" : "counted";
      }
      in.rho1.entries.push_back(e);
    }
    EigenvalueTable h2 = load_table(data_path(o, "h2.tsv"), form_meta("h2"));
    in.rho2.name = "h2";
    for (const auto& P : primes) {
      RepEntry e;
      e.P = P;
      try {
        e.trace = QuadInt::from_int(P.ring, lookup(h2, P).a);
        e.det = cube(P.norm);
        e.source = "h2.tsv";
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::MissingEigenvalue) throw;
      }
      in.rho2.entries.push_back(e);
    }
    return in;
  }

  if (L == "Z") {
    in.cfg = load_field_config(data_path(o, "fsl_qm3.json"));
    in.cubics = load_cubic_data(data_path(o, "cubics_qm3.json"));
    primes = union_primes(in.cfg);
    std::vector<i64> split;
    bool inert = false;
    for (const auto& P : primes) {
      if (P.kind == PrimeKind::Split && std::find(split.begin(), split.end(), P.p) == split.end()) split.push_back(P.p);
      if (P.kind == PrimeKind::Inert) {
        if (P.p != 11) fail(ErrorKind::Unsupported, "inert primes other than 11 are not wired for Z");
        inert = true;
      }
    }
    std::sort(split.begin(), split.end());
    ZReport z = run_z(C, split, inert);
    for (const auto& P : primes) {
      RepEntry e;
      e.P = P;
      if (const VarietyRow* r = z.row(P)) {
        e.trace = QuadInt::from_int(P.ring, *r->rec.a);
        e.det = cube(P.norm);
        e.source = "counted";
      }
      in.rho1.entries.push_back(e);
    }
    EigenvalueTable f = load_table(data_path(o, "f72.tsv"), form_meta("f72"));
    in.rho2.name = "f72 twisted";
    for (const auto& P : primes) {
      RepEntry e;
      e.P = P;
      try {
        i64 ap = lookup_rational(f, P.p);
        // Frob at an inert prime is Frob_p^2: trace a_p^2 - 2p^3
        i64 t = P.kind == PrimeKind::Split ? ap : ap * ap - 2 * cube(P.p);
        e.trace = QuadInt::from_int(P.ring, sqrt_minus3_twist(P) * t);
        e.det = cube(P.norm);
        e.source = "f72.tsv";
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::MissingEigenvalue) throw;
      }
      in.rho2.entries.push_back(e);
    }
    return in;
  }
  fail(ErrorKind::Usage, "certificates exist for X, Y and Z, not " + label);
}

CompareReport compare_variety(const std::string& label, Counter& C) {
  const std::string L = canonical_label(label);
  const RunOptions& o = C.options();
  std::vector<TraceQuery> q;
  if (L == "X") {
    XReport x = run_x(C, x_table_primes(), true);
    for (const auto& r : x.rows)
      if (r.P.kind == PrimeKind::Inert) q.push_back({r.P, QuadInt::from_int(QuadRing(2), *r.rec.a2 / 2), "-"});
    for (const auto& e : x.eigen) q.push_back({e.P, e.tr_plus, std::to_string(prime_tag(e.P))});
    return compare_traces(q, load_table(data_path(o, "h1.tsv"), form_meta("h1")));
  }
  if (L == "Y") {
    YReport y = run_y(C, y_split_primes(), true);
    for (const auto& r : y.rows) q.push_back({r.P, QuadInt::from_int(QuadRing(2), *r.rec.a), r.rec.tag});
    return compare_traces(q, load_table(data_path(o, "h2.tsv"), form_meta("h2")));
  }
  if (L == "Z") {
    ZReport z = run_z(C, z_split_primes(), false);
    for (const auto& r : z.rows) q.push_back({r.P, QuadInt::from_int(QuadRing(2), *r.rec.a), r.rec.tag});
    return compare_traces(q, load_table(data_path(o, "f72.tsv"), form_meta("f72")), TwistRule(sqrt_minus3_twist));
  }
  fail(ErrorKind::Usage, "no form is attached to " + label);
}

std::string trace_table(const std::vector<VarietyRow>& rows) {
  std::ostringstream os;
  os << "prime\tp\tN(p)\ttag\tn1\tn2\ta\ta2\tsolved\tprovenance\n";
  auto opt = [](const std::optional<i64>& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (const auto& r : rows) {
    os << r.P.label() << '\t' << r.P.p << '\t' << r.P.norm << '\t' << r.rec.tag << '\t' << opt(r.rec.n1) << '\t'
       << opt(r.rec.n2) << '\t' << opt(r.rec.a) << '\t' << opt(r.rec.a2) << '\t'
       << (r.solved ? std::to_string(r.solved->a) + "(c=" + std::to_string(r.solved->c) + ")" : "-") << '\t'
       << r.rec.provenance << '\n';
  }
  return os.str();
}

std::string frobenius_table(const XReport& x) {
  std::ostringstream os;
  os << "p\ta_p\ta_p2\tfrobenius polynomial\tfactorization over Z[√2]\n";
  for (const auto& r : x.rows) {
    os << r.P.p << '\t' << *r.rec.a << '\t' << *r.rec.a2 << '\t' << r.quartic->str() << '\t'
       << (r.factors ? r.factors->str(r.P.p) : "irreducible") << '\n';
  }
  return os.str();
}

std::string eigentrace_table(const XReport& x) {
  std::ostringstream os;
  if (x.psi) os << "# tr(Psi*|H^2) = " << x.psi->t2 << ", tr(Psi*|H^4) = " << x.psi->t4 << '\n';
  os << "prime\tp\tL\ttr+\ttr-\n";
  for (size_t i = 0; i < x.eigen.size(); ++i) {
    const auto& e = x.eigen[i];
    os << e.P.label() << '\t' << e.P.p << '\t' << x.lefschetz[i].L << '\t' << e.tr_plus.str() << '\t'
       << e.tr_minus.str() << '\n';
  }
  return os.str();
}

}  // namespace octic
