#pragma once

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contologic/definable_sets.hpp"
#include "contologic/structure_io.hpp"

namespace contologic::cli {

struct Report {
  Json body = Json::object();
  bool pass = true;
};

using Handler = std::function<Report()>;

struct Verb {
  CLI::App* app;
  Handler handler;
};

/// Registers every verb on `app`; handlers read the bound option storage.
std::vector<Verb> register_verbs(CLI::App& app);

// helpers shared by the verb groups
std::vector<std::string> split_list(const std::string& s);
PointSet set_arg(const FiniteStructure& m, const std::string& list);
Element element_arg(const FiniteStructure& m, const std::string& name);
/// Predicate by name; "d" is the metric.
const Table& table_arg(const FiniteStructure& m, const std::string& name);
Json set_json(const FiniteStructure& m, const PointSet& s);
Json unary_json(const FiniteStructure& m, const Table& t);
Json matrix_json(const FiniteStructure& m, const Table& t);
Json report_json(const StructureReport& r);

void register_structure_verbs(CLI::App& app, std::vector<Verb>& verbs);
void register_metric_verbs(CLI::App& app, std::vector<Verb>& verbs);
void register_rank_verbs(CLI::App& app, std::vector<Verb>& verbs);
void register_group_verbs(CLI::App& app, std::vector<Verb>& verbs);
void register_chain_verbs(CLI::App& app, std::vector<Verb>& verbs);

}  // namespace contologic::cli
