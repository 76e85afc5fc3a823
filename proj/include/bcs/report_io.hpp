#pragma once

#include <string>

#include "bcs/experiments.hpp"

namespace bcs {

// Numbers as written to every report: 6 significant digits ("%.6g"),
// "nan" / "inf" for non-finite values.
std::string format_number(double value);

// Header `p,solver,mean_fpr,mean_nsr,mean_runtime_ms,trials`, one row per
// summary in report order (p ascending, solver name ascending).
std::string format_csv(const ExperimentReport& report);
void write_csv(const ExperimentReport& report, const std::string& path);

// Per-trial rows: `p,solver,trial,seed,fpr,nsr,runtime_ms,failed`.
std::string format_raw_csv(const ExperimentReport& report);
void write_raw_csv(const ExperimentReport& report, const std::string& path);

// Whitespace-separated series for `metric` ("fpr", "nsr" or "runtime_ms"):
// a '#' header naming the columns, then one line per p with one column per
// solver (name order). Throws InvalidParameter for an empty solver set.
std::string format_series(const ExperimentReport& report, const std::string& metric);

// Minimal SVG line chart of one metric against p.
std::string format_svg(const ExperimentReport& report, const std::string& metric);

// Writes fpr.dat, nsr.dat, runtime_ms.dat and, if `svg`, fpr.svg into
// `directory` (created when missing).
void write_plotdata(const ExperimentReport& report, const std::string& directory, bool svg = true);

// `solver,status,pixel_errors,runtime_ms` rows for experiment 2.
std::string format_exp2_csv(const Exp2Report& report);

}  // namespace bcs
