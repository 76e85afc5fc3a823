#include "bcs/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "bcs/errors.hpp"
#include "bcs/image_io.hpp"

namespace bcs {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "p,solver,mean_fpr,mean_nsr,mean_runtime_ms,trials\n";
  for (const auto& s : report.summaries) {
    out << format_number(s.p) << ',' << solver_name(s.solver) << ',' << format_number(s.mean_fpr)
        << ',' << format_number(s.mean_nsr) << ',' << format_number(s.mean_runtime_ms) << ','
        << s.trials << '\n';
  }
  return out.str();
}

void write_csv(const ExperimentReport& report, const std::string& path) {
  write_text_file(path, format_csv(report));
}

std::string format_raw_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "p,solver,trial,seed,fpr,nsr,runtime_ms,failed\n";
  for (const auto& r : report.records) {
    out << format_number(r.p) << ',' << solver_name(r.solver) << ',' << r.trial << ',' << r.seed
        << ',' << r.fpr << ',' << format_number(r.nsr) << ',' << format_number(r.runtime_ms) << ','
        << (r.failed ? 1 : 0) << '\n';
  }
  return out.str();
}

void write_raw_csv(const ExperimentReport& report, const std::string& path) {
  write_text_file(path, format_raw_csv(report));
}

namespace {

double metric_of(const SolverSummary& s, const std::string& metric) {
  if (metric == "fpr") return s.mean_fpr;
  if (metric == "nsr") return s.mean_nsr;
  if (metric == "runtime_ms") return s.mean_runtime_ms;
  throw InvalidParameter("unknown metric '" + metric + "'");
}

// p -> (solver name -> value), both in ascending order.
std::map<double, std::map<std::string_view, double>> table(const ExperimentReport& report,
                                                           const std::string& metric) {
  if (report.config.solvers.empty() || report.summaries.empty())
    throw InvalidParameter("plot data needs at least one solver");
  std::map<double, std::map<std::string_view, double>> rows;
  for (const auto& s : report.summaries) rows[s.p][solver_name(s.solver)] = metric_of(s, metric);
  return rows;
}

}  // namespace

std::string format_series(const ExperimentReport& report, const std::string& metric) {
  const auto rows = table(report, metric);
  std::ostringstream out;
  out << "# p";
  for (const auto& [name, value] : rows.begin()->second) out << ' ' << name;
  out << '\n';
  for (const auto& [p, cols] : rows) {
    out << format_number(p);
    for (const auto& [name, value] : cols) out << ' ' << format_number(value);
    out << '\n';
  }
  return out.str();
}

std::string format_svg(const ExperimentReport& report, const std::string& metric) {
  const auto rows = table(report, metric);
  double y_max = 0.0;
  for (const auto& [p, cols] : rows)
    for (const auto& [name, v] : cols)
      if (std::isfinite(v)) y_max = std::max(y_max, v);
  if (y_max <= 0.0) y_max = 1.0;

  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 150, kTop = 20, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double p) { return kLeft + p * plot_w; };
  auto py = [&](double v) { return kTop + plot_h * (1.0 - v / y_max); };
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">p</text>\n"
      << "<text x=\"15\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\">" << metric
      << "</text>\n"
      << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 5 << "\" text-anchor=\"end\">"
      << format_number(y_max) << "</text>\n";

  std::size_t series = 0;
  for (const auto& [name, unused] : rows.begin()->second) {
    const char* color = kColors[series % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& [p, cols] : rows) {
      const double v = cols.at(name);
      if (!std::isfinite(v)) continue;
      out << (first ? "" : " ") << format_number(px(p)) << ',' << format_number(py(v));
      first = false;
    }
    out << "\"/>\n";
    const double ly = kTop + 15.0 + 18.0 * static_cast<double>(series);
    out << "<text x=\"" << kLeft + plot_w + 10 << "\" y=\"" << ly << "\" fill=\"" << color
        << "\">" << name << "</text>\n";
    ++series;
  }
  out << "</svg>\n";
  return out.str();
}

void write_plotdata(const ExperimentReport& report, const std::string& directory, bool svg) {
  const std::filesystem::path dir(directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + directory + "': " + ec.message());
  for (const std::string metric : {"fpr", "nsr", "runtime_ms"})
    write_text_file((dir / (metric + ".dat")).string(), format_series(report, metric));
  if (svg) write_text_file((dir / "fpr.svg").string(), format_svg(report, "fpr"));
}

std::string format_exp2_csv(const Exp2Report& report) {
  std::ostringstream out;
  out << "solver,status,pixel_errors,runtime_ms\n";
  for (const auto& r : report.results) {
    out << solver_name(r.solver) << ',' << (r.error.empty() ? to_string(r.status) : "error")
        << ',' << r.pixel_errors << ',' << format_number(r.runtime_ms) << '\n';
  }
  return out.str();
}

}  // namespace bcs
