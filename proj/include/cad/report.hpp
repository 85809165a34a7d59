#ifndef CAD_REPORT_HPP
#define CAD_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cad/lifting.hpp"

namespace cad {

struct FailInfo {
  size_t level = 0;
  std::vector<int> cell;
  std::string poly;
  bool operator==(const FailInfo&) const = default;
};

struct RunReport {
  std::string scheme;
  std::vector<std::string> order;
  std::vector<size_t> levels;
  size_t leaves = 0;
  std::map<std::string, size_t> truth_buckets;
  std::optional<FailInfo> fail;
  std::optional<double> timing;  // seconds; only serialized when present
  size_t excl_cells = 0;         // informational, text output only

  bool operator==(const RunReport& o) const {
    return scheme == o.scheme && order == o.order && levels == o.levels && leaves == o.leaves &&
           truth_buckets == o.truth_buckets && fail == o.fail;
  }
};

RunReport make_report(const std::string& scheme, const CadOutcome& outcome, const VarOrderPtr& order);

nlohmann::json report_to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);
std::string report_to_text(const RunReport& r);

std::string truth_key(const std::vector<bool>& tv);

// Full cell listing for --cells.
nlohmann::json cells_to_json(const Cad& cad);

}  // namespace cad

#endif
