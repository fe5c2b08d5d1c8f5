#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "octic/gf.hpp"
#include "octic/qarith.hpp"

namespace octic {

struct LinearForm {
  std::array<QuadInt, 4> c;  // coefficients of x, y, z, v

  bool involves(int var) const { return !c[var].is_zero(); }
  bool is_zero() const;
  QuadInt eval(const std::array<QuadInt, 4>& P) const;
  std::string str() const;
};

bool same_plane(const LinearForm& a, const LinearForm& b);

struct Arrangement {
  std::string label;
  QuadRing ring;
  std::vector<LinearForm> forms;
  std::vector<i64> bad_primes;

  bool is_bad(i64 p) const;
};

struct Violation {
  enum Kind { SixPlanePoint, FourPlaneLine, RepeatedPlane } kind;
  std::vector<int> planes;
};

struct AdmissibilityReport {
  bool pass = true;
  std::vector<Violation> violations;
};

struct LineRecord {
  std::vector<int> planes;
};

struct PointRecord {
  std::vector<int> planes;
  std::array<QuadInt, 4> coords;  // empty coordinates for arrangements over F_q
  bool on_triple_line = false;
};

struct Census {
  std::vector<LineRecord> lines;    // lines on at least two planes
  std::vector<PointRecord> points;  // points on at least three planes

  int lines_of(int m) const;
  int points_of(int m) const;
  int points_at_least(int m) const;
  int double_lines() const { return lines_of(2); }
  int triple_lines() const { return lines_of(3); }
  int fourfold_points() const { return points_of(4); }
  int coincident_pairs() const;
  std::vector<const PointRecord*> fourfold() const;
};

// incidence combinatorics from a rank oracle on subsets of the eight forms
Census census_from_rank(int nforms, const std::function<int(const std::vector<int>&)>& rank);
int rank_of(const Arrangement& arr, const std::vector<int>& idx);
AdmissibilityReport validate_from_census(const Census& c);
AdmissibilityReport validate(const Arrangement& arr);
Census census(const Arrangement& arr);

class SquareClass {
 public:
  SquareClass() = default;
  explicit SquareClass(QuadInt rep);
  const QuadInt& rep() const { return rep_; }
  bool operator==(const SquareClass& o) const;
  // real-embedding signs, then valuation parities at odd primes up to 97
  std::vector<int> invariant_vector() const;
  std::string str() const { return rep_.str(); }

 private:
  QuadInt rep_;
};

bool is_p40(const Arrangement& arr, const PointRecord& P);
SquareClass fourfold_alpha(const Arrangement& arr, const PointRecord& P);
std::vector<SquareClass> p40_alphas(const Arrangement& arr, const Census& c);

// built-ins: "X250" (alias "X"), "Y", "Z262" (alias "Z")
Arrangement builtin(const std::string& label);
std::vector<std::string> builtin_labels();
Arrangement read_arrangement(const std::string& path);
Arrangement parse_arrangement_tsv(std::istream& in);
Arrangement parse_arrangement_json(const std::string& text);

// X's two-to-one self-map; coordinates (x, y, z, v, u) in a field holding sqrt 2
using Pt5 = std::array<GaloisField::elem, 5>;
Pt5 psi_eval(const GaloisField& F, GaloisField::elem sqrt2, const Pt5& pt);
GaloisField::elem x_octic(const GaloisField& F, GaloisField::elem x, GaloisField::elem y, GaloisField::elem z,
                          GaloisField::elem v);
bool on_double_octic(const GaloisField& F, const Pt5& pt);

}  // namespace octic
