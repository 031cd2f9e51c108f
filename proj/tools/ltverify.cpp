#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "lt/error.hpp"
#include "lt/suites.hpp"

namespace {

struct Common {
  int p = 3, d = 1, N = 12, D = 256;
  int guard = -1;  // -1: minimal guard for D
  unsigned seed = 1;
  int threads = 0;
};

void add_common(CLI::App& app, Common& c) {
  app.add_option("-p,--prime", c.p, "odd prime p")->capture_default_str();
  app.add_option("-d,--degree", c.d, "degree of the unramified base")->capture_default_str();
  app.add_option("-N,--digits", c.N, "target precision in p-adic digits")->capture_default_str();
  app.add_option("-D,--series-degree", c.D, "series truncation degree")->capture_default_str();
  app.add_option("--guard", c.guard, "guard digits (default ceil(D/(p-1))+2)");
  app.add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads (default: hardware)");
}

lt::PrecisionContext context(const Common& c) {
  lt::PrecisionContext ctx{c.p, c.d, c.N, c.D, 0};
  if (c.p < 3 || c.D < 1) ctx.validate();  // reports the bad value
  ctx.guard = c.guard < 0 ? lt::PrecisionContext::min_guard(c.p, c.D) : c.guard;
  ctx.validate();
  return ctx;
}

int threads_of(const Common& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<lt::Case>& cases, const Common& c, const std::string& json_path) {
  std::ofstream file;
  if (!json_path.empty() && json_path != "-") {
    file.open(json_path);
    if (!file) throw lt::Error(lt::Errc::ConfigError, "cannot open " + json_path);
  }
  std::map<std::string, int> counts;
  bool ok = true;
  lt::run_cases(cases, threads_of(c), [&](const lt::Record& r) {
    ++counts[r.status];
    if (!r.informational && (r.status == "fail" || r.status == "error")) ok = false;
    if (file.is_open()) {
      file << lt::to_json(r).dump() << '\n';
      std::cout << r.status << ' ' << r.suite << ' ' << r.case_id;
      if (r.residual) std::cout << " residual=" << *r.residual;
      std::cout << '\n';
    } else {
      std::cout << lt::to_json(r).dump() << std::endl;
    }
  });
  std::cerr << cases.size() << " checks:";
  for (const auto& [k, v] : counts) std::cerr << ' ' << k << '=' << v;
  std::cerr << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification driver for the truncated p-adic library"};
  app.set_config("--config", "", "key = value file; flags override it");
  app.require_subcommand(1);
  Common c;
  add_common(app, c);
  app.fallthrough();

  std::string suite = "all", csv_dir, json_path;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string names = "all";
  for (const auto& n : lt::suite_names()) names += ", " + n;
  verify->add_option("--suite", suite, "one of: " + names)->capture_default_str();
  verify->add_option("--csv", csv_dir, "directory for valuation profiles");
  verify->add_option("--json-lines", json_path, "write records to this file ('-' for stdout)");

  std::string which = "e-u2", csv_path = "-";
  int u_index = 0;
  auto* series = app.add_subcommand("series", "valuation profile of one series as CSV");
  series->add_option("--which", which, "dwork, e-u2 or e-un")->capture_default_str();
  series->add_option("--u-index", u_index, "index of v in P(k) (e-u2) or of u in mu_{p-1} (e-un)")
      ->capture_default_str();
  series->add_option("--csv", csv_path, "output file ('-' for stdout)")->capture_default_str();

  std::string explore_json;
  auto* explore = app.add_subcommand("explore-sigma-alpha", "compare sigma~(alpha_u) with alpha_{sigma(u)}");
  explore->add_option("--json-lines", explore_json, "write records to this file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const lt::PrecisionContext ctx = context(c);
    lt::RunOptions opt{ctx, c.seed, csv_dir};
    if (*verify) return run(lt::build_suite(suite, opt), c, json_path);
    if (*series) {
      lt::write_series_csv(ctx, which, u_index, csv_path);
      return 0;
    }
    if (*explore) {
      run(lt::explore_sigma_alpha_cases(opt), c, explore_json);
      return 0;
    }
  } catch (const lt::Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == lt::Errc::ConfigError ? 2 : 1;
  }
  return 0;
}
