#include <algorithm>
#include <set>

#include "octic/arrangement.hpp"

namespace octic {

int Census::lines_of(int m) const {
  int n = 0;
  for (const auto& l : lines) n += (int)l.planes.size() == m;
  return n;
}

int Census::points_of(int m) const {
  int n = 0;
  for (const auto& p : points) n += (int)p.planes.size() == m;
  return n;
}

int Census::points_at_least(int m) const {
  int n = 0;
  for (const auto& p : points) n += (int)p.planes.size() >= m;
  return n;
}

int Census::coincident_pairs() const {
  int n = 0;
  for (const auto& l : lines) {
    int m = (int)l.planes.size();
    n += m * (m - 1) / 2;
  }
  return n;
}

std::vector<const PointRecord*> Census::fourfold() const {
  std::vector<const PointRecord*> out;
  for (const auto& p : points)
    if (p.planes.size() == 4) out.push_back(&p);
  return out;
}

Census census_from_rank(int n, const std::function<int(const std::vector<int>&)>& rank) {
  Census c;
  std::set<std::vector<int>> seen_lines, seen_points;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> inc = {i, j};
      for (int k = 0; k < n; ++k)
        if (k != i && k != j && rank({i, j, k}) == 2) inc.push_back(k);
      std::sort(inc.begin(), inc.end());
      if (seen_lines.insert(inc).second) c.lines.push_back({inc});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (rank({i, j, k}) != 3) continue;
        std::vector<int> inc = {i, j, k};
        for (int m = 0; m < n; ++m)
          if (m != i && m != j && m != k && rank({i, j, k, m}) == 3) inc.push_back(m);
        std::sort(inc.begin(), inc.end());
        if (!seen_points.insert(inc).second) continue;
        PointRecord P;
        P.planes = inc;
        for (const auto& L : c.lines) {
          if (L.planes.size() < 3) continue;
          if (std::includes(inc.begin(), inc.end(), L.planes.begin(), L.planes.end())) P.on_triple_line = true;
        }
        c.points.push_back(P);
      }
    }
  }
  return c;
}

}  // namespace octic
