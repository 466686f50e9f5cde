// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "acceptance.hpp"

namespace acc {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(FIXTURE_DIR) / name; }
std::filesystem::path golden(const std::string& name) { return std::filesystem::path(GOLDEN_DIR) / name; }

}  // namespace acc

int main() {
  using namespace acc;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion_distance_predicates},  {2, criterion_projection},       {3, criterion_metric_repair},
      {4, criterion_repair_sup},           {5, criterion_stabilization},    {6, criterion_invariant_metric},
      {7, criterion_rank_engine},          {8, criterion_degree_additivity}, {9, criterion_transfer},
      {10, criterion_rank_grid},           {11, criterion_translate_copy},  {12, criterion_chains},
      {13, criterion_demo},                {14, criterion_golden_cli},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), 0};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.limit_seconds > 0 && secs > o.limit_seconds) {
      o.pass = false;
      o.detail += "; runtime limit exceeded";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << " (" << secs << " s)";
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
