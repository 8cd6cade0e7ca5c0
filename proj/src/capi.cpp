#include "gaudin/gaudin.h"

#include <functional>
#include <map>
#include <new>
#include <string>

#include "gaudin/checks.hpp"
#include "gaudin/error.hpp"
#include "gaudin/report.hpp"

struct gaudin_params {
  gaudin::ModelParams model;
};

struct gaudin_report {
  std::string command;
  gaudin::ModelParams model;
  gaudin::ReportList reports;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

gaudin_status fail(gaudin_status status, const std::string& message) {
  last_error = message;
  return status;
}

gaudin_status status_of(gaudin::ErrorCode code) {
  switch (code) {
    case gaudin::ErrorCode::InvalidSizes: return GAUDIN_ERR_INVALID_SIZES;
    case gaudin::ErrorCode::NonDistinctZ: return GAUDIN_ERR_NON_DISTINCT_Z;
    case gaudin::ErrorCode::WindowTooShallow: return GAUDIN_ERR_WINDOW_TOO_SHALLOW;
    case gaudin::ErrorCode::Parse: return GAUDIN_ERR_PARSE;
    default: return GAUDIN_ERR_INTERNAL;
  }
}

// Runs body, translating exceptions into status codes.
gaudin_status guarded(const std::function<void()>& body) {
  try {
    body();
    last_error.clear();
    return GAUDIN_OK;
  } catch (const gaudin::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GAUDIN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GAUDIN_ERR_INTERNAL, e.what());
  }
}

std::vector<gaudin::Rational> parse_list(const char* csv) {
  std::vector<gaudin::Rational> out;
  std::string text(csv);
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto first = item.find_first_not_of(" \t"), last = item.find_last_not_of(" \t");
    item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
    out.push_back(gaudin::Rational::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

using Runner = std::function<gaudin::ReportList(const gaudin::ModelParams&, unsigned)>;

const std::map<std::string, Runner>& runners() {
  using namespace gaudin;
  static const std::map<std::string, Runner> table = {
      {"duality", [](const ModelParams& p, unsigned) { return verify_duality(p); }},
      {"capelli-g", [](const ModelParams& p, unsigned) { return verify_capelli_g(p); }},
      {"capelli-bhat", [](const ModelParams& p, unsigned) { return verify_capelli_bhat(p); }},
      {"ber-invariance", [](const ModelParams& p, unsigned) { return verify_ber_invariance(p); }},
      {"commutativity", [](const ModelParams& p, unsigned) { return verify_commutativity(p); }},
      {"classical-duality",
       [](const ModelParams& p, unsigned) {
         p.validate();
         return verify_classical_duality(p.m, p.n, p.k);
       }},
      {"phi", [](const ModelParams& p, unsigned seed) { return verify_phi(p, seed); }},
      {"manin", [](const ModelParams& p, unsigned) { return verify_manin(p); }},
      {"coeffs", [](const ModelParams& p, unsigned) { return dump_coeffs(p); }},
  };
  return table;
}

}  // namespace

extern "C" {

gaudin_status gaudin_params_create(int m, int n, int k, gaudin_params** out) {
  if (!out) return fail(GAUDIN_ERR_USAGE, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    auto* p = new gaudin_params;
    p->model.m = m;
    p->model.n = n;
    p->model.k = k;
    p->model.trunc = gaudin::default_truncation(m, n, k);
    *out = p;
  });
}

gaudin_status gaudin_params_set_z(gaudin_params* params, const char* csv) {
  if (!params || !csv) return fail(GAUDIN_ERR_USAGE, "null argument");
  return guarded([&] { params->model.z = parse_list(csv); });
}

gaudin_status gaudin_params_set_lambda(gaudin_params* params, const char* csv) {
  if (!params || !csv) return fail(GAUDIN_ERR_USAGE, "null argument");
  return guarded([&] { params->model.lambda = parse_list(csv); });
}

void gaudin_default_truncation(int m, int n, int k, int* v_floor, int* d_floor, int* w_top) {
  const gaudin::Truncation t = gaudin::default_truncation(m, n, k);
  if (v_floor) *v_floor = t.v_floor;
  if (d_floor) *d_floor = t.d_floor;
  if (w_top) *w_top = t.w_top;
}

gaudin_status gaudin_params_set_truncation(gaudin_params* params, int v_floor, int d_floor, int w_top) {
  if (!params) return fail(GAUDIN_ERR_USAGE, "null argument");
  params->model.trunc = gaudin::Truncation{v_floor, d_floor, w_top};
  last_error.clear();
  return GAUDIN_OK;
}

void gaudin_params_destroy(gaudin_params* params) { delete params; }

gaudin_status gaudin_run(const gaudin_params* params, const char* command, unsigned seed, gaudin_report** out) {
  if (!params || !command || !out) return fail(GAUDIN_ERR_USAGE, "null argument");
  *out = nullptr;
  auto it = runners().find(command);
  if (it == runners().end()) return fail(GAUDIN_ERR_UNKNOWN_COMMAND, std::string("unknown command '") + command + "'");
  return guarded([&] {
    params->model.validate();
    auto* r = new gaudin_report;
    r->command = std::string(command == std::string("coeffs") ? "dump " : "verify ") + command;
    r->model = params->model;
    try {
      r->reports = it->second(params->model, seed);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

int gaudin_report_passed(const gaudin_report* report) { return report && gaudin::all_passed(report->reports) ? 1 : 0; }

const char* gaudin_report_json(gaudin_report* report, int with_timing) {
  if (!report) return "";
  report->rendered = gaudin::render_json(report->command, report->model, report->reports, {with_timing != 0, true});
  return report->rendered.c_str();
}

const char* gaudin_report_text(gaudin_report* report, int with_timing) {
  if (!report) return "";
  report->rendered = gaudin::render_text(report->command, report->model, report->reports, {with_timing != 0, true});
  return report->rendered.c_str();
}

void gaudin_report_destroy(gaudin_report* report) { delete report; }

const char* gaudin_last_error(void) { return last_error.c_str(); }

const char* gaudin_status_name(gaudin_status status) {
  switch (status) {
    case GAUDIN_OK: return "ok";
    case GAUDIN_IDENTITY_FAILED: return "identity failed";
    case GAUDIN_ERR_USAGE: return "usage error";
    case GAUDIN_ERR_INVALID_SIZES: return "invalid sizes";
    case GAUDIN_ERR_NON_DISTINCT_Z: return "non-distinct z";
    case GAUDIN_ERR_WINDOW_TOO_SHALLOW: return "window too shallow";
    case GAUDIN_ERR_PARSE: return "parse error";
    case GAUDIN_ERR_UNKNOWN_COMMAND: return "unknown command";
    case GAUDIN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

}  // extern "C"
