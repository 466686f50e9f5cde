#pragma once

#include <filesystem>
#include <string>

namespace acc {

struct Outcome {
  bool pass = false;
  std::string detail;
  double limit_seconds = 0;  // 0: no limit
};

std::filesystem::path fixture(const std::string& name);
std::filesystem::path golden(const std::string& name);

Outcome criterion_distance_predicates();
Outcome criterion_projection();
Outcome criterion_metric_repair();
Outcome criterion_repair_sup();
Outcome criterion_stabilization();
Outcome criterion_invariant_metric();
Outcome criterion_rank_engine();
Outcome criterion_degree_additivity();
Outcome criterion_transfer();
Outcome criterion_rank_grid();
Outcome criterion_translate_copy();
Outcome criterion_chains();
Outcome criterion_demo();
Outcome criterion_golden_cli();

}  // namespace acc
