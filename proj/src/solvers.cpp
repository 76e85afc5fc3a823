#include "bcs/solvers.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "bcs/errors.hpp"

namespace bcs {
namespace {

constexpr std::array<SolverId, 8> kAll = {SolverId::kBp,  SolverId::kBoxedBp,  SolverId::kSn,
                                          SolverId::kSav, SolverId::kSl0,      SolverId::kBoxedSl0,
                                          SolverId::kOmp, SolverId::kBssl0};

}  // namespace

std::string_view solver_name(SolverId id) {
  switch (id) {
    case SolverId::kBp: return "bp";
    case SolverId::kBoxedBp: return "boxed-bp";
    case SolverId::kSn: return "sn";
    case SolverId::kSav: return "sav";
    case SolverId::kSl0: return "sl0";
    case SolverId::kBoxedSl0: return "boxed-sl0";
    case SolverId::kOmp: return "omp";
    case SolverId::kBssl0: return "bssl0";
  }
  return "unknown";
}

SolverId parse_solver(std::string_view name) {
  for (SolverId id : kAll)
    if (solver_name(id) == name) return id;
  throw InvalidParameter("unknown solver '" + std::string(name) + "'");
}

std::vector<SolverId> parse_solver_list(std::string_view list) {
  std::vector<SolverId> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view item = list.substr(pos, comma - pos);
    if (item.empty()) throw InvalidParameter("empty entry in solver list");
    const SolverId id = parse_solver(item);
    if (std::find(out.begin(), out.end(), id) != out.end())
      throw InvalidParameter("solver '" + std::string(item) + "' listed twice");
    out.push_back(id);
    pos = comma + 1;
  }
  return out;
}

std::vector<SolverId> all_solvers() { return {kAll.begin(), kAll.end()}; }

std::vector<SolverId> sorted_by_name(std::vector<SolverId> ids) {
  std::sort(ids.begin(), ids.end(),
            [](SolverId a, SolverId b) { return solver_name(a) < solver_name(b); });
  return ids;
}

SolveResult run_solver(SolverId id, const DenseMatrix& phi, const DenseVector& y,
                       const BinaryPrior& prior, const SolverSettings& settings) {
  switch (id) {
    case SolverId::kBp: return solve_bp(phi, y, settings.simplex);
    case SolverId::kBoxedBp: return solve_boxed_bp(phi, y, settings.simplex);
    case SolverId::kSn: return solve_sn(phi, y, settings.sn_lambda, settings.simplex);
    case SolverId::kSav: return solve_sav(phi, y, prior, settings.simplex);
    case SolverId::kSl0: return solve_sl0(phi, y, settings.sl0);
    case SolverId::kBoxedSl0: return solve_boxed_sl0(phi, y, settings.sl0);
    case SolverId::kOmp: {
      const Index budget = settings.omp_max_sparsity > 0 ? settings.omp_max_sparsity : phi.rows();
      return solve_omp(phi, y, budget, settings.omp_resid_tol);
    }
    case SolverId::kBssl0: return solve_bssl0(phi, y, prior, settings.bssl0);
  }
  throw InvalidParameter("unknown solver id");
}

}  // namespace bcs
