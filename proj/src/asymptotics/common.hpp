#pragma once

#include "wavecascade/asymptotics.hpp"
#include "wavecascade/errors.hpp"

namespace wavecascade::detail {

inline void check_bounded(const HyperbolicState& s, double last_time, const char* model) {
    const bool ok = s.zeta.all_finite() && s.v.all_finite() && s.zeta.max_abs() <= 1e6 && s.v.x.max_abs() <= 1e6 &&
                    s.v.y.max_abs() <= 1e6;
    if (!ok) throw BlowUp(std::string(model) + " solution left the bounded regime", last_time);
}

inline void check_depth(const ScalarField& h, double last_time, const char* model) {
    if (!(h.min() > 0.0)) throw DegenerateGeometry(std::string(model) + ": water depth vanished", last_time);
}

}  // namespace wavecascade::detail
