#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "phasefold/experiments.hpp"
#include "phasefold/grid.hpp"

namespace phasefold {

// Writes to path + ".tmp" and renames over path, so readers never see a partial file.
void write_file_atomic(const std::string& path, std::string_view content);

// Columns: test,k,h,eps,value_re,value_im,predicted,abs_err[,naive,naive_err]; %.17g.
std::string report_csv(const ConvergenceReport& report);
std::string report_summary_json(const ConvergenceReport& report, const ExperimentSpec* spec = nullptr);

// Field CSV: header "coord,re,im" (1-D) or "coord,coord2,re,im" (2-D), one node per row, row-major.
std::string field_csv(const ContinuousField& f);
std::string field_csv(const DiscreteField& u);
// Infers the window (or h and the first index) from equally spaced coordinates.
ContinuousField parse_continuous_field(std::string_view csv);
DiscreteField parse_discrete_field(std::string_view csv);
std::string read_text(const std::string& path);

}  // namespace phasefold
