#pragma once

#include <ostream>
#include <string>

#include "optconv/harness.hpp"

namespace optconv {

/// Every floating value leaves the library rounded to this many significant digits.
inline constexpr int kReportDigits = 12;

double round_significant(double v, int digits = kReportDigits);
std::string format_number(double v);

/**
 * {"kernels":[...],"n":int,"s":int,"grid":int,"sigma":float,"bound":float,
 *  "alpha":[{"j":int,"re":float,"im":float}],
 *  "trials":[{"seed":int,"residual":float,"ratio":float}],"max_ratio":float,"violations":int}
 */
std::string report_to_json(const RecoveryReport& report);
RecoveryReport report_from_json(const std::string& text);

void write_report_text(std::ostream& os, const RecoveryReport& report);
/// Header seed,residual,bound,ratio and one row per trial.
void write_report_csv(std::ostream& os, const RecoveryReport& report);

}  // namespace optconv
