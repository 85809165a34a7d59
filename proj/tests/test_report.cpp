#include "doctest.h"
#include "cad/report.hpp"

using namespace cad;

TEST_CASE("report JSON round-trips") {
  RunReport r;
  r.scheme = "tti";
  r.order = {"x", "y"};
  r.levels = {25, 105};
  r.leaves = 105;
  r.truth_buckets = {{"FF", 77}, {"FT", 14}, {"TF", 14}};
  nlohmann::json j = report_to_json(r);
  CHECK(j.at("fail").is_null());
  RunReport back = report_from_json(j);
  CHECK(back == r);

  RunReport f;
  f.scheme = "sign";
  f.order = {"x", "y", "z"};
  f.fail = FailInfo{3, {1, 4}, "y*z-1"};
  RunReport fback = report_from_json(report_to_json(f));
  CHECK(fback == f);
}

TEST_CASE("timing only appears when requested") {
  RunReport r;
  r.scheme = "tti";
  r.order = {"x"};
  r.leaves = 3;
  r.levels = {3};
  nlohmann::json j = report_to_json(r);
  CHECK(!j.contains("timing"));
  r.timing = 0.25;
  nlohmann::json j2 = report_to_json(r);
  CHECK(j2.contains("timing"));
}

TEST_CASE("report text includes fail payloads") {
  RunReport f;
  f.scheme = "tti";
  f.order = {"x", "y"};
  f.fail = FailInfo{2, {3}, "x*y-1"};
  std::string text = report_to_text(f);
  CHECK(text.find("FAIL") != std::string::npos);
  CHECK(text.find("x*y-1") != std::string::npos);
}

TEST_CASE("reports built from a cad count buckets") {
  QffList q = parse("vars x;\n x = 0;\n x > 1 /\\ x < 2;\n");
  auto out = build_cad(q, Scheme::Tti);
  REQUIRE(out.ok());
  fill_truth(*out.cad, q);
  RunReport r = make_report("tti", out, q.order);
  size_t total = 0;
  for (auto& [k, v] : r.truth_buckets) total += v;
  CHECK(total == r.leaves);
}
