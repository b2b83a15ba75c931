#pragma once

#include <optional>
#include <string>

#include "xgev/grid.hpp"
#include "xgev/operators.hpp"

namespace xgev {

// Synthetic inputs realizing the decay-condition ladder: spectra prescribed in
// the frequency domain, plus space-domain jump and bump profiles.
struct SignalProfile {
    enum class Kind {
        ExpLinear,    // |uhat| = exp(-c |xi|)          (analytic-type)
        ExpRoot,      // |uhat| = exp(-c |xi|^(1/t))    (Gevrey-type)
        ExpLogPower,  // |uhat| = exp(-kappa ln(1+|xi|)^q)  (extended-type)
        PolyDecay,    // |uhat| = <xi>^(-s)
        Step,         // jump in the first axis at `position`
        Kink,         // |x - position| profile
        Gaussian,     // exp(-|x - position|^2 / width^2)
    };
    Kind kind = Kind::Gaussian;
    double c = 1.0;
    double t = 2.0;
    double kappa = 0.25;
    double q = 2.0;
    double s = 3.0;
    double position = 0.0;
    double width = 1.0;
    std::optional<ConeSpec> mask;  // decay profile inside; fast decay outside
    bool hermitian = true;         // symmetric spectrum -> real output

    void validate() const;
    // ln |uhat| of the prescribed spectrum (frequency kinds only).
    double target_log_mag(double xi_norm) const;
};

struct SynthesisResult {
    SampledField field;
    bool underflow_warning = false;  // decay saturates float range over most of the band
};

SynthesisResult synthesize(const SignalProfile& profile, const GridSpec& grid);

}  // namespace xgev
