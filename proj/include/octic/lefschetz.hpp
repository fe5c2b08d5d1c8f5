#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "octic/arrangement.hpp"
#include "octic/counter.hpp"

namespace octic {

// mult * chi(arg), chi taken in the counting field
struct CharTerm {
  i64 mult = 0;
  QuadInt arg;
};

// a = -N + K3 q^3 + K2 q^2 + K1 q + K0 with K1 = k1_const + sum mult * chi(arg)
struct CorrectionModel {
  std::string label;
  std::string name;
  i64 K3 = 1, K2 = 1, k1_const = 1, K0 = 1;
  std::vector<CharTerm> chars;
  bool split_valid = true;  // false for models printed only for even powers

  // chi of arg in F_{p^k}; every F_p- (or residue-field-) element is a square once k is twice its degree
  static int char_value(const QuadInt& arg, const PrimeIdeal& P, int k);
  i64 K1(const PrimeIdeal& P, int k) const;
  i64 even_K1() const;
  i64 trace(i64 N, i64 q, i64 K1) const;
  std::string describe() const;
};

// structural model from the census: K1 = 1 - sum over p4^0 points of chi(-alpha)
CorrectionModel census_model(const Arrangement& arr, const Census& c);

struct TraceRecord {
  PrimeIdeal P;
  std::string tag;  // image of the ring generator, telling conjugates apart
  std::optional<i64> a;
  std::optional<i64> a2;
  std::optional<i64> n1, n2;
  i64 q1 = 0, q2 = 0;  // fields the two counts were taken over
  std::string provenance;  // counted | solved | ingested
};

i64 exponent_of(i64 q, i64 p);
i64 corrected_trace(const CorrectionModel& m, const PrimeIdeal& P, const CountResult& N);
TraceRecord assemble_trace(const CorrectionModel& m, const PrimeIdeal& P, const std::optional<CountResult>& base,
                           const std::optional<CountResult>& ext);
// b3 = 4 for X, 2 for Y and Z
bool weil_ok(const TraceRecord& r, int b3);

struct Anchor {
  PrimeIdeal P;
  CountResult N;
  i64 a = 0;
};

struct CandidateFit {
  CorrectionModel model;
  std::vector<i64> residuals;
  bool accepted = false;
};

struct FitSpec {
  bool K2 = false;
  bool k1_const = false;
  std::vector<QuadInt> chars;  // character arguments whose multiplicities are free
};

struct Calibration {
  CorrectionModel model;
  std::vector<CandidateFit> candidates;
  std::optional<CorrectionModel> fitted;
  std::vector<i64> fit_residuals;
  std::string report() const;
};

std::vector<i64> residuals(const CorrectionModel& m, const std::vector<Anchor>& anchors);
// exact fit of the free parameters of base; nullopt when the anchors leave them non-integral or inconsistent
std::optional<CorrectionModel> fit_model(const CorrectionModel& base, const FitSpec& spec,
                                         const std::vector<Anchor>& anchors);
Calibration calibrate_split_model(const std::vector<Anchor>& anchors, const std::vector<CorrectionModel>& candidates,
                                  const CorrectionModel& fit_base, const FitSpec& spec);

struct SplitSolution {
  i64 a = 0;
  i64 c = 0;
};
SplitSolution solve_split_trace(i64 n, i64 a2, i64 q, i64 cmin, i64 cmax);

struct FrobeniusQuartic {
  i64 p = 0;
  i64 e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  std::string str() const;
  i64 power_sum(int k) const;  // k in {1, 2}
};

FrobeniusQuartic frobenius_quartic(i64 a, i64 a2, i64 p);

struct QuarticFactorization {
  QuadInt beta, beta_conj;  // factors X^2 - beta X + p^3
  std::string str(i64 p) const;
};

// nullopt: irreducible over Z[sqrt 2]
std::optional<QuarticFactorization> factor_quartic_quadratic(const FrobeniusQuartic& F);
FrobeniusQuartic expand(const QuarticFactorization& f, i64 p);

struct PsiObservation {
  PrimeIdeal P;
  i64 L = 0;
  QuadInt beta;  // either root of the p-factorization
};

struct PsiInvariants {
  i64 t2 = 0, t4 = 0;
};

// L = 1 + p t2 - sqrt2 (tr+ - tr-) + p^2 t4 + 2 p^3, t2 + t4 = 9
PsiInvariants solve_psi_invariants(const std::vector<PsiObservation>& obs, i64 t_sum = 9);

struct EigenSplit {
  PrimeIdeal P;
  QuadInt tr_plus, tr_minus;
};

EigenSplit resolve_eigentrace(const PrimeIdeal& P, i64 L, const QuarticFactorization& f, const PsiInvariants& t);

struct TwistObservation {
  i64 p = 0;
  i64 zeta = 0;  // image of zeta in F_p
  i64 trace = 0;
};

struct TwistRow {
  TwistObservation obs;
  i64 a_p = 0;
  bool square = false;  // 2 zeta + 1 is a square in F_p
  i64 predicted = 0;
  bool match = false;
};

struct TwistReport {
  std::vector<TwistRow> rows;
  bool pass() const;
};

TwistReport twist_compare(const std::vector<TwistObservation>& obs, const std::map<i64, i64>& a_p);

}  // namespace octic
