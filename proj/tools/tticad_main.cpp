#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cad/complexity.hpp"
#include "cad/lifting.hpp"
#include "cad/report.hpp"

using namespace cad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotWellOriented = 2;

Scheme scheme_from(const std::string& s) {
  if (s == "sign") return Scheme::Sign;
  if (s == "ec") return Scheme::Ec;
  if (s == "tti") return Scheme::Tti;
  if (s == "rescad") return Scheme::Rescad;
  throw CLI::ValidationError("--scheme", "unknown scheme '" + s + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QffList apply_order(const QffList& q, const std::vector<std::string>& names) {
  auto target = std::make_shared<VarOrder>(names);
  if (target->size() != q.order->size())
    throw std::runtime_error("order override must list all declared variables");
  return reorder_qffs(q, target);
}

struct CommonFlags {
  std::string scheme = "";
  std::vector<std::string> order;
  bool json = false;
  bool cells = false;
  bool timing = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scheme", f.scheme, "sign, ec, tti or rescad");
  cmd->add_option("--order", f.order, "variable order override, ascending")->delimiter(',');
  cmd->add_flag("--json", f.json, "emit the report as JSON");
  cmd->add_flag("--cells", f.cells, "include the full cell listing");
  cmd->add_flag("--timing", f.timing, "include wall-clock time in the report");
  cmd->add_option("--threads", f.threads, "lifting threads (default: all cores)");
}

int run_problem(QffList q, const std::string& scheme_name_str, const CommonFlags& flags) {
  Scheme scheme = scheme_from(scheme_name_str);
  LiftOptions opts{flags.threads};
  auto t0 = std::chrono::steady_clock::now();
  CadOutcome outcome = build_cad(q, scheme, opts);
  QffList effective = scheme == Scheme::Ec ? merged_product_ec(q) : q;
  if (outcome.ok()) fill_truth(*outcome.cad, effective, opts);
  auto t1 = std::chrono::steady_clock::now();
  RunReport report = make_report(scheme_name_str, outcome, q.order);
  if (flags.timing) report.timing = std::chrono::duration<double>(t1 - t0).count();
  if (flags.json) {
    nlohmann::json j = report_to_json(report);
    if (flags.cells && outcome.ok()) j["cells"] = cells_to_json(*outcome.cad);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_to_text(report);
    if (flags.cells && outcome.ok()) {
      std::cout << "cells:\n";
      for (const Cell* c : outcome.cad->leaves()) {
        std::cout << "  (";
        for (size_t i = 0; i < c->index.size(); ++i) std::cout << (i ? "," : "") << c->index[i];
        std::cout << ") dim=" << c->dim;
        if (c->truth) std::cout << " truth=" << truth_key(*c->truth);
        std::cout << " sample=[";
        for (size_t i = 0; i < c->sample.size(); ++i)
          std::cout << (i ? ", " : "") << c->sample.coord_str(i);
        std::cout << "]\n";
      }
    }
  }
  return outcome.ok() ? kExitOk : kExitNotWellOriented;
}

int cmd_build(const std::string& path, CommonFlags flags) {
  ProblemFile pf = parse_problem(read_file(path));
  QffList q = pf.qffs;
  std::vector<std::string> order = flags.order;
  if (order.empty() && pf.options.count("order")) order = pf.options.at("order");
  if (!order.empty()) q = apply_order(q, order);
  std::string scheme = flags.scheme;
  if (scheme.empty() && pf.options.count("scheme") && !pf.options.at("scheme").empty())
    scheme = pf.options.at("scheme")[0];
  if (scheme.empty()) scheme = "tti";
  return run_problem(std::move(q), scheme, flags);
}

int cmd_family(unsigned j, const std::string& formula, CommonFlags flags) {
  if (j < 1) throw std::runtime_error("--j must be at least 1");
  QffList q = formula == "psi" ? family_psi(j) : family_phi(j);
  if (!flags.order.empty()) q = apply_order(q, flags.order);
  if (flags.scheme.empty()) flags.scheme = "tti";
  return run_problem(std::move(q), flags.scheme, flags);
}

struct HeuristicRow {
  std::string order;
  std::string designation;
  long sotd_value = 0;
  int ndrr_value = 0;
  size_t brown_rank = 0;
  std::optional<size_t> cells;
};

int cmd_heuristics(const std::string& path, const std::string& scheme_str,
                   const std::string& orders, bool designations, const std::string& rank_by,
                   bool do_build, size_t cap, bool json, int threads) {
  ProblemFile pf = parse_problem(read_file(path));
  QffList base = pf.qffs;
  Scheme scheme = scheme_from(scheme_str.empty() ? "tti" : scheme_str);

  std::vector<VarOrderPtr> order_cands;
  if (orders == "all") {
    for (auto& o : brown_order(base)) order_cands.push_back(o);  // brown-ranked permutations
  } else if (orders.empty()) {
    order_cands.push_back(base.order);
  } else {
    std::stringstream ss(orders);
    std::string group;
    while (std::getline(ss, group, ';')) {
      std::vector<std::string> names;
      std::stringstream gs(group);
      std::string n;
      while (std::getline(gs, n, ',')) names.push_back(n);
      order_cands.push_back(std::make_shared<VarOrder>(names));
    }
  }

  std::vector<HeuristicRow> rows;
  auto ranked = brown_order(base);
  for (const auto& ord : order_cands) {
    QffList reordered = reorder_qffs(base, ord);
    std::vector<QffList> cands =
        designations ? ec_designation_candidates(reordered, cap) : std::vector<QffList>{reordered};
    for (size_t ci = 0; ci < cands.size(); ++ci) {
      if (rows.size() >= cap) throw std::runtime_error("candidate cap exceeded; raise --cap");
      HeuristicRow row;
      std::string oname;
      for (const auto& v : ord->names()) oname += (oname.empty() ? "" : ",") + v;
      row.order = oname;
      row.designation = designations ? "#" + std::to_string(ci + 1) : "-";
      auto levels = projection_levels(cands[ci], scheme);
      row.sotd_value = sotd(levels);
      row.ndrr_value = ndrr(levels[0]);
      for (size_t r = 0; r < ranked.size(); ++r)
        if (ranked[r]->names() == ord->names()) {
          row.brown_rank = r + 1;
          break;
        }
      if (do_build) {
        auto out = build_cad(cands[ci], scheme, LiftOptions{threads});
        if (out.ok()) row.cells = out.cad->leaf_count();
      }
      rows.push_back(std::move(row));
    }
  }
  auto key = [&](const HeuristicRow& r) -> long {
    if (rank_by == "brown") return static_cast<long>(r.brown_rank);
    if (rank_by == "sotd") return r.sotd_value;
    return r.ndrr_value;
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const HeuristicRow& a, const HeuristicRow& b) { return key(a) < key(b); });
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json jr{{"order", r.order},
                        {"designation", r.designation},
                        {"sotd", r.sotd_value},
                        {"ndrr", r.ndrr_value},
                        {"brown_rank", r.brown_rank}};
      if (r.cells) jr["cells"] = *r.cells;
      arr.push_back(jr);
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "rank by " << (rank_by.empty() ? "ndrr" : rank_by) << ", scheme "
              << scheme_name(scheme) << "\n";
    std::cout << "order | designation | brown | sotd | ndrr | cells\n";
    for (const auto& r : rows) {
      std::cout << r.order << " | " << r.designation << " | " << r.brown_rank << " | "
                << r.sotd_value << " | " << r.ndrr_value << " | ";
      if (r.cells)
        std::cout << *r.cells;
      else
        std::cout << "-";
      std::cout << "\n";
    }
  }
  return kExitOk;
}

BoundScheme bound_scheme_from(const std::string& s) {
  if (s == "sign") return BoundScheme::SignInv;
  if (s == "ec") return BoundScheme::Ec;
  if (s == "tti") return BoundScheme::TtiAllEc;
  if (s == "ec-implicit") return BoundScheme::EcImplicit;
  if (s == "tti-general") return BoundScheme::TtiGeneral;
  throw CLI::ValidationError("--scheme", "unknown bound scheme '" + s + "'");
}

nlohmann::json bounds_payload(const BoundScenario& sc, const std::string& name) {
  Int M = m_after_projection(sc);
  nlohmann::json j;
  j["scheme"] = name;
  j["M"] = M.get_str();
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : growth_table(M, sc.m, sc.d, sc.n)) {
    table.push_back({{"level", row.level},
                     {"number", row.number.get_str()},
                     {"degree", row.degree.get_str()},
                     {"product", row.product.get_str()}});
  }
  j["table"] = table;
  j["dominant"] = dominant_cell_bound(sc).get_str();
  return j;
}

void bounds_text(const BoundScenario& sc, const std::string& name) {
  Int M = m_after_projection(sc);
  std::cout << "scheme " << name << ": M = " << M.get_str() << "\n";
  std::cout << "level | number | degree | product\n";
  for (const auto& row : growth_table(M, sc.m, sc.d, sc.n)) {
    if (row.level == 0)
      std::cout << "prod";
    else
      std::cout << row.level;
    std::cout << " | " << row.number.get_str() << " | " << row.degree.get_str() << " | "
              << row.product.get_str() << "\n";
  }
  std::cout << "dominant cell bound: " << dominant_cell_bound(sc).get_str() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truth-table invariant cylindrical algebraic decomposition"};
  app.require_subcommand(1);

  std::string build_file;
  CommonFlags build_flags;
  CLI::App* build = app.add_subcommand("build", "decompose the problem in a file");
  build->add_option("file", build_file, "problem file")->required();
  add_common(build, build_flags);

  unsigned fam_j = 2;
  std::string fam_formula = "phi";
  CommonFlags fam_flags;
  CLI::App* family = app.add_subcommand("family", "run the shifted circle/hyperbola family");
  family->add_option("--j", fam_j, "number of clauses")->required();
  family->add_option("--formula", fam_formula, "phi or psi");
  add_common(family, fam_flags);

  std::string heur_file, heur_orders, heur_rank = "ndrr", heur_scheme;
  bool heur_desig = false, heur_build = false, heur_json = false;
  size_t heur_cap = 64;
  int heur_threads = 0;
  CLI::App* heur = app.add_subcommand("heuristics", "rank orderings and designations");
  heur->add_option("file", heur_file, "problem file")->required();
  heur->add_option("--orders", heur_orders, "'all' or semicolon-separated orders like x,y;y,x");
  heur->add_flag("--designations", heur_desig, "enumerate constraint designations");
  heur->add_option("--rank", heur_rank, "brown, sotd or ndrr");
  heur->add_flag("--build", heur_build, "also build each candidate and report cells");
  heur->add_option("--cap", heur_cap, "candidate cap");
  heur->add_option("--scheme", heur_scheme, "scheme for the measures (default tti)");
  heur->add_flag("--json", heur_json, "emit JSON");
  heur->add_option("--threads", heur_threads, "lifting threads");

  std::string bounds_scheme = "sign", bounds_compare;
  BoundScenario sc;
  bool no_final_lift = false, bounds_json = false;
  CLI::App* bounds = app.add_subcommand("bounds", "projection growth and cell-count bounds");
  bounds->add_option("--scheme", bounds_scheme, "sign, ec, tti, ec-implicit or tti-general");
  bounds->add_option("-n", sc.n, "variables")->required();
  bounds->add_option("-m", sc.m, "polynomials")->required();
  bounds->add_option("-d", sc.d, "max degree")->required();
  bounds->add_option("-t", sc.t, "formula count");
  bounds->add_option("-e", sc.e, "formulas with a constraint");
  bounds->add_option("--me", sc.m_e, "polynomials of constrained formulas");
  bounds->add_option("--mn", sc.m_n, "remaining polynomials");
  bounds->add_flag("--no-final-lift", no_final_lift, "skip the final-lift reduction");
  bounds->add_option("--compare", bounds_compare, "comma-separated pair of schemes");
  bounds->add_flag("--json", bounds_json, "emit JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(build_file, build_flags);
    if (family->parsed()) return cmd_family(fam_j, fam_formula, fam_flags);
    if (heur->parsed())
      return cmd_heuristics(heur_file, heur_scheme, heur_orders, heur_desig, heur_rank, heur_build,
                            heur_cap, heur_json, heur_threads);
    if (bounds->parsed()) {
      sc.final_lift_reduction = !no_final_lift;
      if (!bounds_compare.empty()) {
        auto comma = bounds_compare.find(',');
        if (comma == std::string::npos) throw std::runtime_error("--compare needs two schemes");
        std::string a = bounds_compare.substr(0, comma), b = bounds_compare.substr(comma + 1);
        BoundScenario sa = sc, sb = sc;
        sa.scheme = bound_scheme_from(a);
        sb.scheme = bound_scheme_from(b);
        Int Ma = m_after_projection(sa), Mb = m_after_projection(sb);
        if (bounds_json) {
          nlohmann::json j{{"first", bounds_payload(sa, a)},
                           {"second", bounds_payload(sb, b)},
                           {"M_difference", Int(Ma - Mb).get_str()}};
          std::cout << j.dump(2) << "\n";
        } else {
          bounds_text(sa, a);
          bounds_text(sb, b);
          std::cout << "M difference (" << a << " - " << b << "): " << Int(Ma - Mb).get_str()
                    << "\n";
        }
        return kExitOk;
      }
      sc.scheme = bound_scheme_from(bounds_scheme);
      if (bounds_json)
        std::cout << bounds_payload(sc, bounds_scheme).dump(2) << "\n";
      else
        bounds_text(sc, bounds_scheme);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
