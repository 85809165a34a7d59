#include "cad/report.hpp"

#include <sstream>

namespace cad {

std::string truth_key(const std::vector<bool>& tv) {
  std::string s;
  for (bool b : tv) s += b ? 'T' : 'F';
  return s;
}

RunReport make_report(const std::string& scheme, const CadOutcome& outcome, const VarOrderPtr& order) {
  RunReport r;
  r.scheme = scheme;
  r.order = order->names();
  if (!outcome.ok()) {
    const FailWitness& w = *outcome.fail;
    r.fail = FailInfo{w.level, w.cell_index, w.poly.str()};
    return r;
  }
  const Cad& cad = *outcome.cad;
  r.levels = cad.level_counts;
  r.leaves = cad.leaf_count();
  r.excl_cells = cad.excl_pathway_cells.size();
  for (const Cell* c : cad.leaves())
    if (c->truth) r.truth_buckets[truth_key(*c->truth)] += 1;
  return r;
}

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["scheme"] = r.scheme;
  j["order"] = r.order;
  j["levels"] = r.levels;
  j["leaves"] = r.leaves;
  j["truth_buckets"] = nlohmann::json::object();
  for (const auto& [k, v] : r.truth_buckets) j["truth_buckets"][k] = v;
  if (r.fail) {
    j["fail"] = {{"level", r.fail->level}, {"cell", r.fail->cell}, {"poly", r.fail->poly}};
  } else {
    j["fail"] = nullptr;
  }
  if (r.timing) j["timing"] = *r.timing;
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.scheme = j.at("scheme").get<std::string>();
  r.order = j.at("order").get<std::vector<std::string>>();
  r.levels = j.at("levels").get<std::vector<size_t>>();
  r.leaves = j.at("leaves").get<size_t>();
  for (auto it = j.at("truth_buckets").begin(); it != j.at("truth_buckets").end(); ++it)
    r.truth_buckets[it.key()] = it.value().get<size_t>();
  if (!j.at("fail").is_null()) {
    FailInfo f;
    f.level = j["fail"].at("level").get<size_t>();
    f.cell = j["fail"].at("cell").get<std::vector<int>>();
    f.poly = j["fail"].at("poly").get<std::string>();
    r.fail = std::move(f);
  }
  if (j.contains("timing")) r.timing = j["timing"].get<double>();
  return r;
}

std::string report_to_text(const RunReport& r) {
  std::ostringstream os;
  os << "scheme: " << r.scheme << "\n";
  os << "order:";
  for (const auto& v : r.order) os << " " << v;
  os << "  (ascending)\n";
  if (r.fail) {
    os << "FAIL: not well-oriented\n";
    os << "  level: " << r.fail->level << "\n  cell: (";
    for (size_t i = 0; i < r.fail->cell.size(); ++i) os << (i ? "," : "") << r.fail->cell[i];
    os << ")\n  polynomial: " << r.fail->poly << "\n";
    return os.str();
  }
  os << "cells per level:";
  for (size_t c : r.levels) os << " " << c;
  os << "\n";
  os << "leaf cells: " << r.leaves << "\n";
  if (!r.truth_buckets.empty()) {
    os << "truth buckets:\n";
    for (const auto& [k, v] : r.truth_buckets) os << "  " << k << ": " << v << "\n";
  }
  if (r.excl_cells > 0)
    os << "cells handled by the constant-excluded-polynomials relaxation: " << r.excl_cells << "\n";
  if (r.timing) os << "time: " << *r.timing << " s\n";
  return os.str();
}

nlohmann::json cells_to_json(const Cad& cad) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Cell* c : cad.leaves()) {
    nlohmann::json jc;
    jc["index"] = c->index;
    jc["dim"] = c->dim;
    nlohmann::json sample = nlohmann::json::array();
    for (size_t i = 0; i < c->sample.size(); ++i) {
      nlohmann::json coord;
      coord["repr"] = c->sample.coord_str(i);
      coord["approx"] = c->sample.coord_double(i);
      sample.push_back(coord);
    }
    jc["sample"] = sample;
    if (c->truth) jc["truth"] = truth_key(*c->truth);
    arr.push_back(jc);
  }
  return arr;
}

}  // namespace cad
