#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lt/context.hpp"

namespace lt {

/// One check of a verification suite.
struct Record {
  std::string suite;
  std::string case_id;
  std::string status;  // pass, fail, error, skip, info
  std::optional<double> residual;  // p-adic digits of the checked residual
  double seconds = 0;
  nlohmann::json details = nlohmann::json::object();
  bool informational = false;
};

nlohmann::json to_json(const Record& r, bool with_timing = true);

struct RunOptions {
  PrecisionContext ctx;
  unsigned seed = 1;
  std::string csv_dir;  // valuation profiles written here when nonempty
};

struct Case {
  std::string suite, id;
  std::function<Record()> run;
};

const std::vector<std::string>& suite_names();

/// Cases of a named suite ("all" concatenates every suite). Throws
/// Error(ConfigError) for an unknown name.
std::vector<Case> build_suite(const std::string& name, const RunOptions& opt);

/// Informational comparison of sigma~(alpha_u) with alpha_{sigma(u)}.
std::vector<Case> explore_sigma_alpha_cases(const RunOptions& opt);

/// Runs the cases on `threads` workers; `sink` sees the records in case order.
/// Library errors inside a case become status "error".
std::vector<Record> run_cases(const std::vector<Case>& cases, int threads,
                              const std::function<void(const Record&)>& sink);

/// Valuation profile of a named series for `series --which`: "dwork",
/// "e-u2" (u = v^{1-p}, v the u_index-th point of P(k)) or "e-un" (n = 2,
/// u the u_index-th element of mu_{p-1}).
void write_series_csv(const PrecisionContext& ctx, const std::string& which, int u_index, const std::string& path);

}  // namespace lt
