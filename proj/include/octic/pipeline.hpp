#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "octic/counter.hpp"
#include "octic/fsl.hpp"
#include "octic/heckedata.hpp"
#include "octic/lefschetz.hpp"

namespace octic {

struct RunOptions {
  Engine engine = Engine::Semisep;
  int threads = 1;
  std::string data_dir;  // empty: $OCTIC_DATA, then the built-in data directory
  std::string ledger;    // optional count cache
  std::ostream* progress = nullptr;
  bool force = false;
};

std::string default_data_dir();
std::string data_path(const RunOptions& o, const std::string& file);

// reduction of the ring generator: sqrt d for Z[sqrt d], (-1 + sqrt d)/2 for the half basis
i64 prime_tag(const PrimeIdeal& P);
std::string tag_str(const PrimeIdeal& P);
PrimeIdeal prime_by_tag(QuadRing R, i64 p, i64 tag);
// all primes of R over p (one or two)
std::vector<PrimeIdeal> primes_over(QuadRing R, i64 p);

struct AnchorRow {
  std::string label;
  i64 p = 0;
  std::optional<i64> tag;
  i64 a = 0;
};
std::vector<AnchorRow> load_anchors(const std::string& path);

class Counter {
 public:
  explicit Counter(RunOptions o);
  CountResult count(const Arrangement& arr, const PrimeIdeal& P, int k);
  const RunOptions& options() const { return opts_; }

 private:
  RunOptions opts_;
  std::optional<CountLedger> ledger_;
};

struct VarietyRow {
  PrimeIdeal P;
  TraceRecord rec;
  std::optional<FrobeniusQuartic> quartic;
  std::optional<QuarticFactorization> factors;
  std::optional<SplitSolution> solved;  // trace recovered from (n, a2) by scanning c
};

struct XReport {
  Calibration cal;
  std::vector<VarietyRow> rows;
  std::vector<PsiObservation> lefschetz;
  std::optional<PsiInvariants> psi;
  std::vector<EigenSplit> eigen;
  const VarietyRow* row(i64 p) const;
};

struct YReport {
  Calibration cal;
  std::vector<VarietyRow> rows;
  const VarietyRow* row(const PrimeIdeal& P) const;
};

struct ZReport {
  Calibration cal;
  std::vector<VarietyRow> rows;
  std::optional<TwistReport> twist;
  const VarietyRow* row(const PrimeIdeal& P) const;
};

// rational primes of the printed tables
const std::vector<i64>& x_table_primes();
const std::vector<i64>& y_split_primes();
const std::vector<i64>& z_split_primes();

std::vector<CorrectionModel> x_printed_models();
Calibration calibrate(const std::string& label, Counter& C);

// counts at p over F_p and F_{p^2}, traces, quartics and factorizations; Psi data when psi is set
XReport run_x(Counter& C, const std::vector<i64>& primes, bool psi);
// split primes over F_p and F_{p^2}; inert 3 over F_9 and F_81, inert 13 over F_169
YReport run_y(Counter& C, const std::vector<i64>& split, bool inert);
// split primes over F_p, inert 11 over F_121 when inert is set
ZReport run_z(Counter& C, const std::vector<i64>& split, bool inert);

std::vector<TwistObservation> twist_observations(const ZReport& z);
int sqrt_minus3_twist(const PrimeIdeal& P);

struct CertificateInputs {
  FieldConfig cfg;
  std::vector<CubicFieldDatum> cubics;
  Rep rho1, rho2;
};

CertificateInputs certificate_inputs(const std::string& label, Counter& C);

// trace tables of each variety against its form
CompareReport compare_variety(const std::string& label, Counter& C);

std::string trace_table(const std::vector<VarietyRow>& rows);
std::string frobenius_table(const XReport& x);
std::string eigentrace_table(const XReport& x);

Arrangement arrangement_for(const std::string& label);
std::string canonical_label(const std::string& label);  // X | Y | Z

}  // namespace octic
