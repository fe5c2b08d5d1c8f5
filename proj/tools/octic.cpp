#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "octic/error.hpp"
#include "octic/pipeline.hpp"

using namespace octic;
using nlohmann::json;

namespace {

struct Common {
  std::string engine = "semisep";
  int threads = 1;
  std::string data;
  std::string format = "tsv";
  std::string ledger;
  bool force = false;
  bool quiet = false;
};

RunOptions options(const Common& c) {
  RunOptions o;
  o.engine = parse_engine(c.engine);
  o.threads = c.threads;
  o.data_dir = c.data;
  o.ledger = c.ledger;
  o.force = c.force;
  o.progress = c.quiet ? nullptr : &std::cerr;
  return o;
}

void add_common(CLI::App* a, Common& c) {
  a->add_option("--engine", c.engine, "generic | semisep")->check(CLI::IsMember({"generic", "semisep"}));
  a->add_option("--threads", c.threads, "counting threads")->check(CLI::PositiveNumber);
  a->add_option("--data", c.data, "data directory (default $OCTIC_DATA or the built-in one)");
  a->add_option("--format", c.format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
  a->add_option("--ledger", c.ledger, "count cache TSV");
  a->add_flag("--force", c.force, "allow bad primes");
  a->add_flag("--quiet", c.quiet, "no progress on stderr");
}

json element_json(const QuadInt& x) { return json::array({x.a, x.b}); }

json record_json(const VarietyRow& r) {
  json j = {{"prime", r.P.label()}, {"p", r.P.p}, {"norm", r.P.norm}, {"tag", r.rec.tag},
            {"provenance", r.rec.provenance}};
  if (r.rec.n1) j["n1"] = *r.rec.n1, j["q1"] = r.rec.q1;
  if (r.rec.n2) j["n2"] = *r.rec.n2, j["q2"] = r.rec.q2;
  if (r.rec.a) j["a"] = *r.rec.a;
  if (r.rec.a2) j["a2"] = *r.rec.a2;
  if (r.solved) j["solved"] = {{"a", r.solved->a}, {"c", r.solved->c}};
  if (r.quartic) j["quartic"] = {r.quartic->e1, r.quartic->e2, r.quartic->e3, r.quartic->e4};
  if (r.factors) j["factors"] = {element_json(r.factors->beta), element_json(r.factors->beta_conj)};
  return j;
}

json count_json(const CountResult& r) {
  return {{"label", r.label}, {"ideal", r.ideal}, {"q", r.q}, {"N", r.N}, {"char_sum", r.char_sum},
          {"engine", r.engine}, {"seconds", r.seconds}};
}

std::vector<i64> primes_or(const std::vector<i64>& given, const std::vector<i64>& dflt) {
  return given.empty() ? dflt : given;
}

int cmd_census(const std::string& label, const Common& c) {
  Arrangement arr = arrangement_for(label);
  Census cs = census(arr);
  AdmissibilityReport adm = validate_from_census(cs);
  auto alphas = p40_alphas(arr, cs);
  if (c.format == "json") {
    json a = json::array();
    for (const auto& s : alphas) a.push_back(s.str());
    json j = {{"label", arr.label},
              {"ring", arr.ring.name()},
              {"admissible", adm.pass},
              {"double_lines", cs.double_lines()},
              {"triple_lines", cs.triple_lines()},
              {"triple_points", cs.points_of(3)},
              {"fourfold_points", cs.fourfold_points()},
              {"fivefold_points", cs.points_of(5)},
              {"p40_points", alphas.size()},
              {"p40_alpha", a}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "label\t" << arr.label << "\nring\t" << arr.ring.name() << "\nadmissible\t" << (adm.pass ? "yes" : "no")
              << "\ndouble_lines\t" << cs.double_lines() << "\ntriple_lines\t" << cs.triple_lines()
              << "\ntriple_points\t" << cs.points_of(3) << "\nfourfold_points\t" << cs.fourfold_points()
              << "\nfivefold_points\t" << cs.points_of(5) << "\np40_points\t" << alphas.size() << '\n';
    for (const auto& s : alphas) std::cout << "alpha\t" << s.str() << '\n';
  }
  return adm.pass ? 0 : 2;
}

int cmd_count(const std::string& label, i64 p, std::optional<i64> tag, int ext, const Common& c) {
  Arrangement arr = arrangement_for(label);
  Counter C(options(c));
  std::vector<PrimeIdeal> Ps;
  if (tag)
    Ps = {prime_by_tag(arr.ring, p, *tag)};
  else {
    Ps = primes_over(arr.ring, p);
    bool rational = true;
    for (const auto& f : arr.forms)
      for (const auto& x : f.c) rational = rational && x.is_rational();
    if (rational) Ps.resize(1);
  }
  json rows = json::array();
  if (c.format == "tsv") std::cout << CountLedger::header() << '\n';
  for (const auto& P : Ps) {
    CountResult r = C.count(arr, P, ext);
    if (c.format == "tsv")
      std::cout << CountLedger::row(r) << '\n';
    else
      rows.push_back(count_json(r));
  }
  if (c.format == "json") std::cout << rows.dump(2) << '\n';
  return 0;
}

int cmd_traces(const std::string& label, const std::vector<i64>& primes, const Common& c) {
  Counter C(options(c));
  const std::string L = canonical_label(label);
  std::vector<VarietyRow> rows;
  Calibration cal;
  int b3 = 2;
  if (L == "X") {
    auto x = run_x(C, primes_or(primes, x_table_primes()), false);
    rows = x.rows, cal = x.cal, b3 = 4;
  } else if (L == "Y") {
    auto y = run_y(C, primes_or(primes, y_split_primes()), primes.empty());
    rows = y.rows, cal = y.cal;
  } else if (L == "Z") {
    auto z = run_z(C, primes_or(primes, z_split_primes()), primes.empty());
    rows = z.rows, cal = z.cal;
  } else {
    fail(ErrorKind::Usage, "traces needs X, Y or Z");
  }
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && weil_ok(r.rec, b3);
    if (r.solved && r.rec.a) ok = ok && r.solved->a == *r.rec.a;
  }
  std::cerr << cal.report();
  if (c.format == "json") {
    json j = {{"label", L}, {"model", cal.model.describe()}, {"rows", json::array()}};
    for (const auto& r : rows) j["rows"].push_back(record_json(r));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "# " << cal.model.describe() << '\n' << trace_table(rows);
  }
  return ok ? 0 : 2;
}

int cmd_frobpoly(const std::string& label, const std::vector<i64>& primes, const Common& c) {
  if (canonical_label(label) != "X") fail(ErrorKind::Usage, "frobpoly is defined for X (b3 = 4)");
  Counter C(options(c));
  auto x = run_x(C, primes_or(primes, x_table_primes()), false);
  bool ok = true;
  for (const auto& r : x.rows) {
    ok = ok && r.quartic->power_sum(1) == *r.rec.a && r.quartic->power_sum(2) == *r.rec.a2;
    if (r.factors) {
      auto e = expand(*r.factors, r.P.p);
      ok = ok && e.e1 == r.quartic->e1 && e.e2 == r.quartic->e2 && e.e3 == r.quartic->e3 && e.e4 == r.quartic->e4;
    }
  }
  if (c.format == "json") {
    json j = json::array();
    for (const auto& r : x.rows) j.push_back(record_json(r));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << frobenius_table(x);
  }
  return ok ? 0 : 2;
}

// random F_p-points of the double octic pushed through Psi
int psi_samples(i64 p, int n, std::ostream& os) {
  GaloisField F(p, 1);
  Elem two = F.from_int(2);
  if (!F.is_square(two)) fail(ErrorKind::Usage, "Psi sampling needs sqrt 2 in F_" + std::to_string(p));
  Elem s2 = F.sqrt(two);
  std::mt19937_64 rng(0x5eed + p);
  std::uniform_int_distribution<i64> d(0, p - 1);
  int tried = 0, mapped = 0, bad = 0;
  while (tried < n) {
    Pt5 pt;
    for (int i = 0; i < 4; ++i) pt[i] = F.from_int(d(rng));
    Elem f = x_octic(F, pt[0], pt[1], pt[2], pt[3]);
    if (!F.is_square(f)) continue;
    pt[4] = F.sqrt(f);
    ++tried;
    try {
      if (on_double_octic(F, psi_eval(F, s2, pt)))
        ++mapped;
      else
        ++bad;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Indeterminate) throw;
    }
  }
  os << "# Psi over F_" << p << ": " << tried << " points, " << mapped << " mapped onto X, " << bad << " off X\n";
  return bad;
}

int cmd_psi(int samples, const Common& c) {
  Counter C(options(c));
  int bad = 0;
  for (i64 p : {7, 17, 23, 31}) bad += psi_samples(p, samples, std::cout);
  auto x = run_x(C, x_table_primes(), true);
  bool ok = bad == 0 && x.psi && x.psi->t2 == 4 && x.psi->t4 == 5;
  for (const auto& e : x.eigen) {
    const auto* r = x.row(e.P.p);
    QuadInt s = e.tr_plus + e.tr_minus, pr = e.tr_plus * e.tr_minus;
    ok = ok && s.is_rational() && s.a == *r->rec.a && pr.is_rational() && pr.a == r->quartic->e2 - 2 * e.P.p * e.P.p * e.P.p;
  }
  if (c.format == "json") {
    json j = {{"t2", x.psi ? x.psi->t2 : 0}, {"t4", x.psi ? x.psi->t4 : 0}, {"eigentraces", json::array()}};
    for (size_t i = 0; i < x.eigen.size(); ++i)
      j["eigentraces"].push_back({{"prime", x.eigen[i].P.label()},
                                  {"L", x.lefschetz[i].L},
                                  {"tr_plus", element_json(x.eigen[i].tr_plus)}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << eigentrace_table(x);
  }
  return ok ? 0 : 2;
}

std::string config_file(const std::string& which) {
  const std::string L = canonical_label(which);
  if (L == "X" || which == "q2") return "fsl_q2.json";
  if (L == "Y" || which == "q5") return "fsl_q5.json";
  if (L == "Z" || which == "qm3") return "fsl_qm3.json";
  return which;
}

FieldConfig load_config(const std::string& which, const Common& c) {
  std::string f = config_file(which);
  if (f.find('/') != std::string::npos || f.size() < 5 || f.rfind("fsl_", 0) != 0) return load_field_config(f);
  RunOptions o = options(c);
  return load_field_config(data_path(o, f));
}

int cmd_fsl_table(const std::string& which, const Common& c) {
  FieldConfig cfg = load_config(which, c);
  auto rows = build_char_table(cfg);
  if (c.format == "json") {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"prime", r.P.label()}, {"norm", r.P.norm}, {"bits", vec_str(r.bits, (int)cfg.generators.size())}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << char_table_str(cfg, rows);
  }
  return 0;
}

int cmd_fsl_noncubic(const std::string& which, const Common& c) {
  FieldConfig cfg = load_config(which, c);
  auto rows = build_char_table(cfg);
  const int n = (int)cfg.generators.size();
  std::vector<F2Vec> v, vz, fr;
  for (const auto& r : rows) {
    if (r.bits && std::find(v.begin(), v.end(), r.bits) == v.end()) v.push_back(r.bits);
    if (std::find(fr.begin(), fr.end(), r.frobenius) == fr.end()) fr.push_back(r.frobenius);
  }
  vz = v;
  vz.push_back(0);
  auto a = is_noncubic(v, n), b = is_noncubic(vz, n), f = is_noncubic(fr, n);
  auto line = [&](const std::string& name, size_t size, const NonCubicResult& r) {
    std::cout << name << '\t' << size << '\t' << (r.noncubic ? "non-cubic" : "cubic") << '\t'
              << (r.noncubic ? "-" : r.witness) << '\n';
  };
  std::cout << "set\tsize\tverdict\twitness\n";
  line("table image", v.size(), a);
  line("table image + 0", vz.size(), b);
  line("frobenius image", fr.size(), f);
  if (a.noncubic != b.noncubic) std::cerr << "table image verdict changes when 0 is adjoined\n";
  return a.noncubic && b.noncubic ? 0 : 2;
}

int cmd_certify(const std::string& label, const Common& c) {
  Counter C(options(c));
  auto in = certificate_inputs(label, C);
  Certificate cert = certify(in.rho1, in.rho2, in.cfg, in.cubics);
  if (c.format == "json") {
    std::cout << cert.json() << '\n';
  } else {
    auto section = [](const std::string& name, const std::vector<CheckLine>& v) {
      for (const auto& l : v) std::cout << name << '\t' << l.prime << '\t' << (l.pass ? "pass" : "FAIL") << '\t' << l.detail << '\n';
    };
    section("evenness", cert.evenness);
    section("witness", cert.cubic_witnesses);
    section("det", cert.determinants);
    section("equality", cert.equality);
    std::cout << "noncubic\ttable\t" << (cert.noncubic ? "pass" : "FAIL") << '\n';
    std::cout << "noncubic\tfrobenius image\t" << (cert.noncubic_frobenius.noncubic ? "non-cubic" : "cubic: " + cert.noncubic_frobenius.witness)
              << '\n';
    std::cout << "verdict\t" << in.cfg.name << '\t' << (cert.verdict ? "pass" : "FAIL") << '\n';
  }
  return cert.verdict ? 0 : 2;
}

int cmd_compare(const std::string& label, const std::string& form, const Common& c) {
  Counter C(options(c));
  const std::string L = canonical_label(label);
  const std::string expect = L == "X" ? "h1" : L == "Y" ? "h2" : "f72";
  if (!form.empty() && form != expect) fail(ErrorKind::Usage, "the form attached to " + L + " is " + expect);
  CompareReport rep = compare_variety(L, C);
  bool ok = rep.pass();
  std::string twist;
  if (L == "Z") {
    auto z = run_z(C, z_split_primes(), false);
    EigenvalueTable f = load_table(data_path(C.options(), "f72.tsv"), form_meta("f72"));
    std::map<i64, i64> ap;
    for (const auto& r : f.rows) ap[r.P.p] = r.value.a;
    TwistReport t = twist_compare(twist_observations(z), ap);
    ok = ok && t.pass();
    std::ostringstream os;
    os << "# twist rule: trace = a_p if 2 zeta + 1 is a square mod p, else -a_p\np\tzeta\ttrace\ta_p\tsquare\tmatch\n";
    for (const auto& r : t.rows)
      os << r.obs.p << '\t' << r.obs.zeta << '\t' << r.obs.trace << '\t' << r.a_p << '\t' << (r.square ? "yes" : "no")
         << '\t' << (r.match ? "yes" : "no") << '\n';
    twist = os.str();
  }
  if (c.format == "json") {
    json j = {{"form", rep.form}, {"pass", ok}, {"rows", json::array()}};
    for (const auto& r : rep.rows)
      j["rows"].push_back({{"prime", r.query.P.label()},
                           {"trace", element_json(r.query.value)},
                           {"expected", r.expected ? element_json(*r.expected) : json(nullptr)},
                           {"sign", r.sign},
                           {"match", r.match}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << rep.str() << twist;
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double octic point counts, traces and modularity certificates"};
  app.require_subcommand(1);
  Common c;
  std::string label, form;
  i64 p = 0;
  std::optional<i64> tag;
  int ext = 1, samples = 200;
  std::vector<i64> primes;

  auto* census_cmd = app.add_subcommand("census", "incidence census of an arrangement");
  census_cmd->add_option("arrangement", label, "X | Y | Z or a TSV/JSON file")->required();

  auto* count = app.add_subcommand("count", "points of the singular double cover over F_q");
  count->add_option("arrangement", label)->required();
  count->add_option("--p", p, "odd prime")->required();
  count->add_option("--tag", tag, "image of the ring generator, selects one prime over p");
  count->add_option("--ext", ext, "q = p^ext")->check(CLI::IsMember({1, 2, 4}));

  auto* traces = app.add_subcommand("traces", "trace records from counts and the calibrated model");
  traces->add_option("variety", label)->required();
  traces->add_option("--p", primes, "rational primes (default: the printed table)");

  auto* frob = app.add_subcommand("frobpoly", "Frobenius quartics of X and their factorizations");
  frob->add_option("variety", label)->required();
  frob->add_option("--p", primes, "rational primes (default: the printed table)");

  auto* psi = app.add_subcommand("psi", "Psi sampling, (t2, t4) and eigentraces");
  psi->add_option("--samples", samples, "points per prime")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("fsl-table", "quadratic character table");
  table->add_option("config", label, "X | Y | Z or a config file")->required();

  auto* nc = app.add_subcommand("fsl-noncubic", "non-cubic verdict for the table image");
  nc->add_option("config", label)->required();

  auto* cert = app.add_subcommand("certify", "full certificate");
  cert->add_option("variety", label)->required();

  auto* cmp = app.add_subcommand("compare", "traces against eigenvalue tables");
  cmp->add_option("variety", label)->required();
  cmp->add_option("--form", form, "h1 | h2 | f72")->check(CLI::IsMember({"h1", "h2", "f72"}));

  for (auto* s : {census_cmd, count, traces, frob, psi, table, nc, cert, cmp}) add_common(s, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (census_cmd->parsed()) return cmd_census(label, c);
    if (count->parsed()) {
      if (p < 3 || !is_prime(p)) fail(ErrorKind::Usage, "--p must be an odd prime");
      return cmd_count(label, p, tag, ext, c);
    }
    for (i64 q : primes)
      if (q < 3 || !is_prime(q)) fail(ErrorKind::Usage, std::to_string(q) + " is not an odd prime");
    if (traces->parsed()) return cmd_traces(label, primes, c);
    if (frob->parsed()) return cmd_frobpoly(label, primes, c);
    if (psi->parsed()) return cmd_psi(samples, c);
    if (table->parsed()) return cmd_fsl_table(label, c);
    if (nc->parsed()) return cmd_fsl_noncubic(label, c);
    if (cert->parsed()) return cmd_certify(label, c);
    if (cmp->parsed()) return cmd_compare(label, form, c);
  } catch (const Error& e) {
    std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
