#include "octic/heckedata.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "octic/error.hpp"

namespace octic {

namespace {

const QuadRing kZ2(2);

bool parse_int(const std::string& s, i64& out) {
  if (s.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> f;
  std::istringstream is(line);
  std::string w;
  while (is >> w) f.push_back(w);
  return f;
}

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

[[noreturn]] void parse_error(int line, const std::string& msg) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

PrimeIdeal rational_key(i64 p) {
  PrimeIdeal P;
  P.p = p;
  P.norm = p;
  P.degree = 1;
  P.generator = QuadInt::from_int(kZ2, p);
  return P;
}

bool same_key(const FormMeta& m, const PrimeIdeal& a, const PrimeIdeal& b) {
  return m.rational_base ? a.p == b.p : a.same_as(b);
}

PrimeIdeal key_from(const FormMeta& m, i64 p, i64 ga, i64 gb, int line) {
  if (m.rational_base) {
    if (gb != 0 || ga != p || !is_prime(p)) parse_error(line, "rational table keys are p p 0");
    return rational_key(p);
  }
  PrimeIdeal P;
  try {
    P = prime_from_generator(QuadInt(m.base, ga, gb));
  } catch (const Error& e) {
    parse_error(line, e.what());
  }
  if (P.p != p) parse_error(line, "generator lies over " + std::to_string(P.p) + ", not " + std::to_string(p));
  return P;
}

}  // namespace

int FormMeta::max_weight() const {
  int k = 0;
  for (int w : weight) k = std::max(k, w);
  return k;
}

FormMeta form_meta(const std::string& name) {
  FormMeta m;
  m.name = name;
  if (name == "h1") {
    m.base = QuadRing(2);
    m.weight = {4, 2};
    m.level = "6√2";
  } else if (name == "h2") {
    m.base = QuadRing(5);
    m.weight = {4, 4};
    m.level = "16";
  } else if (name == "f72") {
    m.rational_base = true;
    m.weight = {4};
    m.level = "72";
  } else {
    fail(ErrorKind::Usage, "unknown form " + name + " (h1, h2, f72)");
  }
  return m;
}

EigenvalueTable parse_table(std::istream& in, const FormMeta& meta) {
  EigenvalueTable t;
  t.meta = meta;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto f = fields_of(strip_comment(raw));
    if (f.empty()) continue;
    if (f.size() != 5) parse_error(line, "expected 5 fields, got " + std::to_string(f.size()));
    i64 v[5];
    for (int i = 0; i < 5; ++i)
      if (!parse_int(f[i], v[i])) parse_error(line, "'" + f[i] + "' is not an integer");
    Eigenvalue e;
    e.P = key_from(meta, v[0], v[1], v[2], line);
    e.value = QuadInt(kZ2, v[3], v[4]);
    e.line = line;
    if (meta.rational_base || meta.name == "h2") {
      if (v[4] != 0) parse_error(line, meta.name + " eigenvalues are rational");
    }
    for (const auto& o : t.rows) {
      if (same_key(meta, o.P, e.P)) parse_error(line, "duplicate prime " + e.P.label() + " (first at line " + std::to_string(o.line) + ")");
      if (meta.name == "h1" && o.P.same_as(conjugate(e.P)) && !(o.value.conj() == e.value))
        parse_error(line, "a at " + e.P.label() + " is not the conjugate of a at " + o.P.label());
    }
    if (meta.name == "h1" && e.P.kind != PrimeKind::Split && !e.value.is_rational())
      parse_error(line, "a at the sigma-stable prime " + e.P.label() + " must be rational");

    // |a| <= 2 N^((k-1)/2), both embeddings
    const double bound = 2.0 * std::pow((double)e.P.norm, (meta.max_weight() - 1) / 2.0) * 1.001;
    const double s2 = std::sqrt(2.0);
    for (double emb : {v[3] + v[4] * s2, v[3] - v[4] * s2})
      if (std::fabs(emb) > bound) {
        t.diagnostics.push_back("line " + std::to_string(line) + ": |" + e.value.str() + "| exceeds the Hecke bound " +
                                std::to_string(bound) + " at " + e.P.label());
        break;
      }
    t.rows.push_back(e);
  }
  return t;
}

EigenvalueTable load_table(const std::string& path, const FormMeta& meta) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  try {
    return parse_table(in, meta);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

std::string serialize(const EigenvalueTable& t) {
  std::ostringstream os;
  os << "# " << t.meta.name << " p gen_a gen_b ev_a ev_b\n";
  for (const auto& e : t.rows) {
    os << e.P.p << '\t';
    if (t.meta.rational_base)
      os << e.P.p << '\t' << 0;
    else
      os << e.P.generator.a << '\t' << e.P.generator.b;
    os << '\t' << e.value.a << '\t' << e.value.b << '\n';
  }
  return os.str();
}

QuadInt lookup(const EigenvalueTable& t, const PrimeIdeal& P) {
  for (const auto& e : t.rows)
    if (same_key(t.meta, e.P, P)) return e.value;
  if (t.meta.name == "h1" && P.kind == PrimeKind::Split) {
    PrimeIdeal Q = conjugate(P);
    for (const auto& e : t.rows)
      if (e.P.same_as(Q)) return e.value.conj();
  }
  fail(ErrorKind::MissingEigenvalue, t.meta.name + " has no eigenvalue at " + P.label());
}

i64 lookup_rational(const EigenvalueTable& t, i64 p) {
  QuadInt v = lookup(t, rational_key(p));
  return v.a;
}

EigenvalueTable conjugate_table(const EigenvalueTable& t) {
  EigenvalueTable c = t;
  for (auto& e : c.rows) {
    e.P = conjugate(e.P);
    e.value = e.value.conj();
  }
  return c;
}

std::vector<ParityFact> load_parity(const std::string& path, QuadRing R) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::vector<ParityFact> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto f = fields_of(strip_comment(raw));
    if (f.empty()) continue;
    i64 v[4];
    if (f.size() != 4) parse_error(line, "expected p gen_a gen_b even");
    for (int i = 0; i < 4; ++i)
      if (!parse_int(f[i], v[i])) parse_error(line, "'" + f[i] + "' is not an integer");
    ParityFact pf;
    pf.P = prime_from_generator(QuadInt(R, v[1], v[2]));
    if (pf.P.p != v[0]) parse_error(line, "generator does not lie over " + f[0]);
    pf.even = v[3] != 0;
    out.push_back(pf);
  }
  return out;
}

bool CompareReport::pass() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.match) return false;
  return true;
}

std::string CompareReport::str() const {
  std::ostringstream os;
  os << "prime\ttag\ttrace\t" << form << "\tsign\tmatch\n";
  for (const auto& r : rows) {
    os << r.query.P.label() << '\t' << (r.query.tag.empty() ? "-" : r.query.tag) << '\t' << r.query.value.str() << '\t'
       << (r.expected ? r.expected->str() : "gap") << '\t' << (r.sign > 0 ? "+" : "-") << '\t'
       << (r.match ? "yes" : "no") << '\n';
  }
  return os.str();
}

CompareReport compare_traces(const std::vector<TraceQuery>& traces, const EigenvalueTable& table,
                             const std::optional<TwistRule>& twist) {
  CompareReport rep;
  rep.form = table.meta.name;
  for (const auto& q : traces) {
    CompareRow r;
    r.query = q;
    r.sign = twist ? (*twist)(q.P) : 1;
    try {
      QuadInt v = lookup(table, q.P);
      QuadInt e = v * (i64)r.sign;
      // traces of the rational forms are stored over Z; compare by value
      r.expected = QuadInt(q.value.ring, e.a, e.b);
      r.match = e.a == q.value.a && e.b == q.value.b;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MissingEigenvalue) throw;
    }
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace octic
