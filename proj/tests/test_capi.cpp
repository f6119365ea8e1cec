// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "shf/shf.h"

namespace {

shf_config* parse_or_fail(const char* text) {
  shf_config* cfg = nullptr;
  EXPECT_EQ(shf_config_parse(text, &cfg), SHF_OK) << shf_last_error();
  return cfg;
}

}  // namespace

TEST(CApi, VersionAndDefaults) {
  EXPECT_STRNE(shf_version(), "");
  shf_params p;
  shf_params_default(&p);
  EXPECT_NEAR(p.beta0, 1e-3, 1e-15);
  EXPECT_NEAR(p.power, 10.0, 1e-12);
  EXPECT_EQ(p.altitude, 5.0);
  EXPECT_EQ(p.max_speed, 1.0);
  EXPECT_EQ(p.duration, 20.0);
}

TEST(CApi, SolvePositions) {
  shf_params p;
  shf_params_default(&p);
  const double pos[] = {4.0};
  double e = 0.0;
  ASSERT_EQ(shf_solve_positions(&p, pos, 1, 0.25, &e), SHF_OK) << shf_last_error();
  EXPECT_NEAR(e, 8.0e-3, 1e-11);

  EXPECT_EQ(shf_solve_positions(&p, pos, 0, 0.25, &e), SHF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(shf_solve_positions(nullptr, pos, 1, 0.25, &e), SHF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(shf_solve_positions(&p, pos, 1, 0.25, nullptr), SHF_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(shf_last_error(), "");
  p.max_speed = -1.0;
  EXPECT_NE(shf_solve_positions(&p, pos, 1, 0.25, &e), SHF_OK);
}

TEST(CApi, ConfigErrors) {
  shf_config* cfg = nullptr;
  EXPECT_EQ(shf_config_parse("bogus = 3\n", &cfg), SHF_ERR_CONFIG);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_NE(std::string(shf_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(shf_config_load("/nonexistent/shf.conf", &cfg), SHF_ERR_IO);
  EXPECT_EQ(shf_config_parse(nullptr, &cfg), SHF_ERR_INVALID_ARGUMENT);

  cfg = parse_or_fail("topology.k = 2\n");
  ASSERT_NE(cfg, nullptr);
  EXPECT_EQ(shf_config_set(cfg, "trials", "many"), SHF_ERR_CONFIG);
  EXPECT_NE(std::string(shf_last_error()).find("trials"), std::string::npos);
  EXPECT_EQ(shf_config_set(cfg, "trials", "2"), SHF_OK);
  shf_config_free(cfg);
  shf_config_free(nullptr);
}

TEST(CApi, SolveReportRows) {
  shf_config* cfg = parse_or_fail("topology.positions = 4\nalgorithms = optimal, upper_bound\n");
  ASSERT_NE(cfg, nullptr);
  shf_report* rep = nullptr;
  ASSERT_EQ(shf_run_solve(cfg, &rep), SHF_OK) << shf_last_error();
  EXPECT_EQ(shf_report_passed(rep), 1);
  ASSERT_EQ(shf_report_row_count(rep), 2u);
  shf_row row;
  ASSERT_EQ(shf_report_row(rep, 0, &row), SHF_OK);
  EXPECT_STREQ(row.algorithm, "optimal");
  EXPECT_NEAR(row.min_energy_j, 8.0e-3, 1e-11);
  EXPECT_TRUE(std::isnan(row.sweep_value));
  EXPECT_EQ(shf_report_row(rep, 2, &row), SHF_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(shf_report_text(rep)), 0u);
  shf_report_free(rep);
  shf_config_free(cfg);
}

TEST(CApi, SweepWithoutValuesIsConfigError) {
  shf_config* cfg = parse_or_fail("topology.k = 2\n");
  shf_report* rep = nullptr;
  EXPECT_EQ(shf_run_sweep(cfg, &rep), SHF_ERR_CONFIG);
  EXPECT_EQ(rep, nullptr);
  EXPECT_EQ(shf_run_solve(nullptr, &rep), SHF_ERR_INVALID_ARGUMENT);
  shf_config_free(cfg);
}

TEST(CApi, Selftest) {
  shf_report* rep = nullptr;
  ASSERT_EQ(shf_run_selftest(&rep), SHF_OK) << shf_last_error();
  EXPECT_EQ(shf_report_passed(rep), 1);
  EXPECT_NE(std::string(shf_report_text(rep)).find("PASS"), std::string::npos);
  shf_report_free(rep);
}
