#pragma once

#include "msgate/config.hpp"

namespace msgate::test {

/// Three ions 4.5 um apart, outer pair, 200 us pulse with z = 25 us.
inline SystemConfig three_ion_config(PulseKind kind = PulseKind::TruncGaussian) {
    SystemConfig cfg;
    cfg.n_ions = 3;
    cfg.center_spacing_m = 4.5e-6;
    cfg.target_pair = std::pair{0, 2};
    cfg.pulse.kind = kind;
    return cfg;
}

}  // namespace msgate::test
