#include <fstream>
#include <sstream>

#include "octic/counter.hpp"
#include "octic/error.hpp"

namespace octic {

std::string CountLedger::header() { return "label\tideal\tq\tN\tengine\tseconds"; }

std::string CountLedger::row(const CountResult& r) {
  std::ostringstream os;
  os << r.label << '\t' << r.ideal << '\t' << r.q << '\t' << r.N << '\t' << r.engine << '\t' << r.seconds;
  return os.str();
}

CountLedger::CountLedger(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("label\t", 0) == 0) continue;
    std::istringstream is(line);
    CountResult r;
    std::string q, N, secs;
    if (!std::getline(is, r.label, '\t') || !std::getline(is, r.ideal, '\t') || !std::getline(is, q, '\t') ||
        !std::getline(is, N, '\t') || !std::getline(is, r.engine, '\t'))
      fail(ErrorKind::Parse, "bad ledger row: " + line);
    std::getline(is, secs);
    r.q = std::stoll(q);
    r.N = std::stoll(N);
    r.seconds = secs.empty() ? 0 : std::stod(secs);
    r.char_sum = r.N - (r.q * r.q * r.q + r.q * r.q + r.q + 1);
    rows_.push_back(r);
  }
}

std::optional<CountResult> CountLedger::lookup(const std::string& label, const std::string& ideal, i64 q) const {
  for (const auto& r : rows_)
    if (r.label == label && r.ideal == ideal && r.q == q) return r;
  return std::nullopt;
}

void CountLedger::record(const CountResult& r) {
  if (lookup(r.label, r.ideal, r.q)) return;
  rows_.push_back(r);
  if (path_.empty()) return;
  bool fresh = !std::ifstream(path_).good();
  std::ofstream out(path_, std::ios::app);
  if (!out) fail(ErrorKind::Parse, "cannot write ledger " + path_);
  if (fresh) out << header() << '\n';
  out << row(r) << '\n';
}

}  // namespace octic
