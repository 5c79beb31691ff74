#include "wavecascade/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "wavecascade/errors.hpp"
#include "wavecascade/harness/rate.hpp"

#ifndef WAVECASCADE_BUILD_ID
#define WAVECASCADE_BUILD_ID "unknown"
#endif

namespace wavecascade {

const char* build_id() { return WAVECASCADE_BUILD_ID; }

std::string format_number(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<double> running_slopes(const ConvergenceReport& rep, bool fit_on_hs) {
    std::vector<double> out;
    std::vector<double> xs, ys;
    for (const auto& p : rep.points) {
        if (p.ok) {
            xs.push_back(p.param);
            ys.push_back(fit_on_hs ? p.err_hs : p.err_linf());
        }
        double s = std::numeric_limits<double>::quiet_NaN();
        try {
            if (xs.size() >= 3) s = fit_rate(xs, ys).slope;
        } catch (const NoFit&) {
        }
        out.push_back(s);
    }
    return out;
}

namespace {

void write_header(std::ostream& out, const char* kind, const ConvergenceReport& rep, const std::string& tag_key,
                  const std::string& tag) {
    out << "# wavecascade " << kind << '\n';
    out << "# " << tag_key << '=' << tag << '\n';
    out << "# parameter=" << rep.parameter_name << '\n';
    if (rep.fit) {
        out << "# slope=" << format_number(rep.fit->slope) << '\n';
        out << "# residual=" << format_number(rep.fit->residual) << '\n';
    } else {
        out << "# slope=nan\n# fit_failure=" << rep.fit_failure << '\n';
    }
    if (rep.reference_check) {
        const auto& c = *rep.reference_check;
        out << "# reference_check param=" << format_number(c.param) << " drift=" << format_number(c.drift)
            << " model_error=" << format_number(c.model_error) << '\n';
    } else if (!rep.reference_check_failure.empty()) {
        out << "# reference_check failed: " << rep.reference_check_failure << '\n';
    }
    for (const auto& p : rep.points) {
        if (!p.ok) out << "# failed " << format_number(p.param) << ": " << p.failure << '\n';
    }
}

double value_or_nan(const PointResult& p, double v) {
    return p.ok ? v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void write_compare_csv(std::ostream& out, const ConvergenceReport& rep, const std::string& model) {
    write_header(out, "compare", rep, "model", model);
    out << "param,err_linf_zeta,err_linf_v,err_hs,slope\n";
    const auto slopes = running_slopes(rep, false);
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
        const auto& p = rep.points[k];
        out << format_number(p.param) << ',' << format_number(value_or_nan(p, p.err_linf_zeta)) << ','
            << format_number(value_or_nan(p, p.err_linf_v)) << ',' << format_number(value_or_nan(p, p.err_hs)) << ','
            << format_number(slopes[k]) << '\n';
    }
}

void write_dn_study_csv(std::ostream& out, const ConvergenceReport& rep, const std::string& backend) {
    write_header(out, "dn-study", rep, "backend", backend);
    out << "param,error_hs,slope_running\n";
    const auto slopes = running_slopes(rep, true);
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
        const auto& p = rep.points[k];
        out << format_number(p.param) << ',' << format_number(value_or_nan(p, p.err_hs)) << ','
            << format_number(slopes[k]) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& parameter_name) {
    out << "# wavecascade sweep\n# parameter=" << parameter_name << '\n';
    for (const auto& r : rows) {
        if (!r.ok) out << "# failed " << format_number(r.param) << ": " << r.failure << '\n';
    }
    out << "param,mass_drift,hamiltonian_drift,linf_zeta,min_depth\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows) {
        out << format_number(r.param) << ',' << format_number(r.ok ? r.mass_drift : nan) << ','
            << format_number(r.ok ? r.hamiltonian_drift : nan) << ',' << format_number(r.ok ? r.linf_zeta : nan)
            << ',' << format_number(r.ok ? r.min_depth : nan) << '\n';
    }
}

void write_meta(std::ostream& out, const ExperimentConfig& cfg,
                const std::vector<std::pair<std::string, std::string>>& extra) {
    out << "build_id=" << build_id() << '\n';
    for (const auto& [k, v] : cfg.effective) out << k << '=' << v << '\n';
    for (const auto& [k, v] : extra) out << k << '=' << v << '\n';
}

}  // namespace wavecascade
