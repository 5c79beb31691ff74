#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wavecascade/harness/config.hpp"
#include "wavecascade/harness/experiment.hpp"

namespace wavecascade {

/// "%.10g", with "nan" for non-finite values.
std::string format_number(double v);

/// Running slope after each point: fit over the successful points so far,
/// nan before three of them.
std::vector<double> running_slopes(const ConvergenceReport& rep, bool fit_on_hs);

/// `#` metadata lines, then `param,err_linf_zeta,err_linf_v,err_hs,slope`.
void write_compare_csv(std::ostream& out, const ConvergenceReport& rep, const std::string& model);
/// `param,error_hs,slope_running`
void write_dn_study_csv(std::ostream& out, const ConvergenceReport& rep, const std::string& backend);
/// `param,mass_drift,hamiltonian_drift,linf_zeta,min_depth`
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& parameter_name);

/// key=value lines: every setting in effect plus `extra`.
void write_meta(std::ostream& out, const ExperimentConfig& cfg,
                const std::vector<std::pair<std::string, std::string>>& extra);

/// Build identifier baked in at configure time.
const char* build_id();

}  // namespace wavecascade
