#ifndef VALENCE_VERIFY_HPP
#define VALENCE_VERIFY_HPP

#include <string>
#include <vector>

#include "valence/construction.hpp"

namespace valence {

enum class CheckStatus { Pass, Fail, Informational };

struct CheckReport {
  std::string id;
  std::string anchor;  // short slug naming the inequality checked
  CheckStatus status = CheckStatus::Pass;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - measured (sign fixed so pass => margin >= 0)
  std::string note;
};

std::vector<CheckReport> check_constants();
std::vector<CheckReport> check_geometry(const Params& p);
std::vector<CheckReport> check_function_tracking(const ToppilaFunction& fun);
std::vector<CheckReport> check_counting(const ToppilaFunction& fun);
std::vector<CheckReport> check_arclength(const ToppilaFunction& fun, int k,
                                         double beta);
std::vector<CheckReport> check_halfplane_fractions(const ToppilaFunction& fun);

// Full suite in fixed order.
std::vector<CheckReport> run_all_checks(const ToppilaFunction& fun);

const char* status_name(CheckStatus s);

}  // namespace valence

#endif
