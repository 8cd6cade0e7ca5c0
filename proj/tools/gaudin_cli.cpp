#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaudin/gaudin.h"

namespace {

struct Config {
  int m = 1, n = 0, k = 1;
  std::string z, lambda;
  std::optional<int> v_floor, d_floor, w_top;
  std::string format = "human";
  unsigned seed = 1;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, Config& c) {
  cmd->add_option("--m", c.m, "even rows of the superalgebra side")->capture_default_str();
  cmd->add_option("--n", c.n, "odd rows of the superalgebra side")->capture_default_str();
  cmd->add_option("--k", c.k, "size of the even side")->capture_default_str();
  cmd->add_option("--z", c.z, "k pairwise distinct rationals, comma separated (p/q or integers)");
  cmd->add_option("--lambda", c.lambda, "m+n rationals, comma separated");
  cmd->add_option("--v-floor", c.v_floor, "lowest certified power of the spectral variable");
  cmd->add_option("--d-floor", c.d_floor, "lowest certified power of the derivation");
  cmd->add_option("--w-top", c.w_top, "highest certified power of w");
  cmd->add_option("--format", c.format, "human or json")->check(CLI::IsMember({"human", "json"}))->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed of the random property checks")->capture_default_str();
  cmd->add_flag("--no-timing", c.no_timing, "report elapsed_ms as 0 so output is byte-stable");
}

// Worker count cap; every computation runs on one thread, so this only
// validates the setting.
void check_thread_cap() {
  const char* cap = std::getenv("GAUDIN_THREADS");
  if (!cap) return;
  char* end = nullptr;
  long v = std::strtol(cap, &end, 10);
  if (*cap == '\0' || *end != '\0' || v < 1) std::cerr << "warning: ignoring GAUDIN_THREADS='" << cap << "'\n";
}

int report_error(gaudin_status status) {
  std::cerr << "error (" << gaudin_status_name(status) << "): " << gaudin_last_error() << "\n";
  return static_cast<int>(status);
}

int run(const std::string& command, const Config& c) {
  gaudin_params* raw = nullptr;
  gaudin_status st = gaudin_params_create(c.m, c.n, c.k, &raw);
  if (st != GAUDIN_OK) return report_error(st);
  std::unique_ptr<gaudin_params, decltype(&gaudin_params_destroy)> params(raw, gaudin_params_destroy);
  if (!c.z.empty() && (st = gaudin_params_set_z(params.get(), c.z.c_str())) != GAUDIN_OK) return report_error(st);
  if (!c.lambda.empty() && (st = gaudin_params_set_lambda(params.get(), c.lambda.c_str())) != GAUDIN_OK)
    return report_error(st);
  if (c.v_floor || c.d_floor || c.w_top) {
    // Orders left unset keep their defaults.
    int v = 0, d = 0, w = 0;
    gaudin_default_truncation(c.m, c.n, c.k, &v, &d, &w);
    st = gaudin_params_set_truncation(params.get(), c.v_floor.value_or(v), c.d_floor.value_or(d), c.w_top.value_or(w));
    if (st != GAUDIN_OK) return report_error(st);
  }
  gaudin_report* rep = nullptr;
  st = gaudin_run(params.get(), command.c_str(), c.seed, &rep);
  if (st != GAUDIN_OK) return report_error(st);
  std::unique_ptr<gaudin_report, decltype(&gaudin_report_destroy)> report(rep, gaudin_report_destroy);
  const int timing = c.no_timing ? 0 : 1;
  std::fputs(c.format == "json" ? gaudin_report_json(report.get(), timing) : gaudin_report_text(report.get(), timing),
             stdout);
  if (command == "coeffs") return 0;
  return gaudin_report_passed(report.get()) ? 0 : GAUDIN_IDENTITY_FAILED;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Gaudin duality identities"};
  app.require_subcommand(1);
  Config config;
  std::string chosen;

  CLI::App* verify = app.add_subcommand("verify", "check an identity and report every compared coefficient");
  verify->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> checks = {
      {"duality", "b[r,s] = g[s,r] on the certified window"},
      {"capelli-g", "column determinant of G against its normal-ordered expansion"},
      {"capelli-bhat", "Berezinian of B-hat against its normal-ordered expansion"},
      {"ber-invariance", "permutation invariance and block factorization of the Berezinian"},
      {"commutativity", "Bethe coefficients commute on low-degree weight spaces"},
      {"classical-duality", "the two Lie superalgebra actions commute"},
      {"phi", "shift map consistency and multiplicativity"},
      {"manin", "Manin relations of the model matrices"},
  };
  for (const auto& [name, help] : checks) {
    CLI::App* sub = verify->add_subcommand(name, help);
    add_common(sub, config);
    sub->callback([&chosen, name = name] { chosen = name; });
  }
  CLI::App* dump = app.add_subcommand("dump", "print coefficient tables");
  dump->require_subcommand(1);
  CLI::App* coeffs = dump->add_subcommand("coeffs", "both coefficient tables of the duality");
  add_common(coeffs, config);
  coeffs->callback([&chosen] { chosen = "coeffs"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : GAUDIN_ERR_USAGE;
  }
  check_thread_cap();
  return run(chosen, config);
}
