#include "shf/shf.h"

#include <cmath>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "shf/experiment.hpp"
#include "shf/selftest.hpp"

struct shf_config {
  shf::ExperimentConfig cfg;
};

struct shf_report {
  shf::RunReport report;
};

namespace {

thread_local std::string g_last_error;

shf_status to_status(shf::ErrorCode c) {
  switch (c) {
    case shf::ErrorCode::kInvalidArgument: return SHF_ERR_INVALID_ARGUMENT;
    case shf::ErrorCode::kInfeasible: return SHF_ERR_INFEASIBLE;
    case shf::ErrorCode::kSolverFailure: return SHF_ERR_SOLVER;
    case shf::ErrorCode::kIo: return SHF_ERR_IO;
    case shf::ErrorCode::kConfig: return SHF_ERR_CONFIG;
  }
  return SHF_ERR_INTERNAL;
}

template <class Fn>
shf_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return SHF_OK;
  } catch (const shf::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return SHF_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) shf::throw_invalid(what);
}

double or_nan(const std::optional<double>& v) { return v ? *v : NAN; }

}  // namespace

extern "C" {

const char* shf_version(void) { return "0.1.0"; }

const char* shf_last_error(void) { return g_last_error.c_str(); }

void shf_params_default(shf_params* out) {
  if (!out) return;
  out->beta0 = shf::db_to_linear(-30.0);
  out->power = shf::dbm_to_watts(40.0);
  out->altitude = 5.0;
  out->max_speed = 1.0;
  out->duration = 20.0;
}

shf_status shf_config_load(const char* path, shf_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    auto* c = new shf_config{shf::load_config(path)};
    *out = c;
  });
}

shf_status shf_config_parse(const char* text, shf_config** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = nullptr;
    std::istringstream in(text);
    *out = new shf_config{shf::parse_config(in, "<string>")};
  });
}

shf_status shf_config_set(shf_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    shf::ExperimentConfig next = cfg->cfg;
    shf::apply_setting(next, key, value);
    next.validate();
    cfg->cfg = std::move(next);
  });
}

void shf_config_free(shf_config* cfg) { delete cfg; }

shf_status shf_run_solve(const shf_config* cfg, shf_report** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = nullptr;
    *out = new shf_report{shf::run_solve(cfg->cfg)};
  });
}

shf_status shf_run_sweep(const shf_config* cfg, shf_report** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = nullptr;
    *out = new shf_report{shf::run_sweep(cfg->cfg)};
  });
}

shf_status shf_run_verify(const shf_config* cfg, shf_report** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = nullptr;
    *out = new shf_report{shf::run_verify(cfg->cfg)};
  });
}

shf_status shf_run_selftest(shf_report** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    shf::RunReport rep;
    std::ostringstream text;
    for (const auto& c : shf::run_selftest()) {
      text << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
      rep.passed = rep.passed && c.passed;
    }
    rep.text = text.str();
    *out = new shf_report{std::move(rep)};
  });
}

size_t shf_report_row_count(const shf_report* rep) {
  return rep ? rep->report.rows.size() : 0;
}

shf_status shf_report_row(const shf_report* rep, size_t index, shf_row* out) {
  return guarded([&] {
    require(rep && out, "null argument");
    require(index < rep->report.rows.size(), "row index out of range");
    const shf::ResultRow& r = rep->report.rows[index];
    out->sweep_value = or_nan(r.sweep_value);
    out->trial = r.trial;
    out->seed = r.seed;
    out->algorithm = r.algorithm.c_str();
    out->min_energy_j = or_nan(r.min_energy);
    out->runtime_s = r.runtime_s;
    out->gap = or_nan(r.gap);
    out->hover_count = r.hover_count;
    out->x_i = r.x_i;
    out->x_f = r.x_f;
  });
}

const char* shf_report_text(const shf_report* rep) {
  return rep ? rep->report.text.c_str() : "";
}

int shf_report_passed(const shf_report* rep) {
  return rep && rep->report.passed ? 1 : 0;
}

void shf_report_free(shf_report* rep) { delete rep; }

shf_status shf_solve_positions(const shf_params* params, const double* positions,
                               size_t count, double d_min, double* min_energy_j) {
  return guarded([&] {
    require(params && positions && min_energy_j, "null argument");
    require(count > 0, "need at least one node");
    shf::SystemParams p;
    p.beta0 = params->beta0;
    p.power = params->power;
    p.altitude = params->altitude;
    p.max_speed = params->max_speed;
    p.duration = params->duration;
    shf::PlannerConfig cfg;
    cfg.d_min = d_min;
    const auto topo = shf::Topology::from_unsorted(
        std::vector<double>(positions, positions + count));
    *min_energy_j = shf::solve_p1(p, topo, cfg).min_energy;
  });
}

}  // extern "C"
