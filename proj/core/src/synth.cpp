#include "xgev/synth.hpp"

#include <cmath>

#include "xgev/fft.hpp"

namespace xgev {

void SignalProfile::validate() const {
    if (!(c > 0.0 && kappa > 0.0 && s > 0.0 && width > 0.0))
        throw std::invalid_argument("profile scales must be positive");
    if (!(t >= 1.0)) throw std::invalid_argument("t must be >= 1");
    if (!(q > 1.0)) throw std::invalid_argument("q must be > 1");
}

double SignalProfile::target_log_mag(double xi_norm) const {
    switch (kind) {
        case Kind::ExpLinear: return -c * xi_norm;
        case Kind::ExpRoot: return -c * std::pow(xi_norm, 1.0 / t);
        case Kind::ExpLogPower: return -kappa * std::pow(std::log1p(xi_norm), q);
        case Kind::PolyDecay: return -s * 0.5 * std::log1p(xi_norm * xi_norm);
        default:
            throw std::invalid_argument("profile has no prescribed spectrum");
    }
}

SynthesisResult synthesize(const SignalProfile& profile, const GridSpec& grid) {
    profile.validate();
    grid.validate();
    SynthesisResult res;

    if (profile.kind == SignalProfile::Kind::Step ||
        profile.kind == SignalProfile::Kind::Kink ||
        profile.kind == SignalProfile::Kind::Gaussian) {
        SampledField f(grid);
        for (int i = 0; i < grid.n[0]; ++i) {
            double x0 = grid.coord(0, i) - profile.position;
            int n1 = grid.dim == 2 ? grid.n[1] : 1;
            for (int j = 0; j < n1; ++j) {
                double v = 0.0;
                switch (profile.kind) {
                    case SignalProfile::Kind::Step: v = x0 >= 0.0 ? 1.0 : 0.0; break;
                    case SignalProfile::Kind::Kink: v = std::abs(x0); break;
                    default: {
                        double r2 = x0 * x0;
                        if (grid.dim == 2) {
                            double x1 = grid.coord(1, j) - profile.position;
                            r2 += x1 * x1;
                        }
                        v = std::exp(-r2 / (profile.width * profile.width));
                    }
                }
                f.at(i, j) = v;
            }
        }
        res.field = std::move(f);
        return res;
    }

    SampledField hat(grid);
    std::size_t deep = 0;
    for (int i = 0; i < grid.n[0]; ++i) {
        double x0f = grid.freq(0, i);
        int n1 = grid.dim == 2 ? grid.n[1] : 1;
        for (int j = 0; j < n1; ++j) {
            double x1f = grid.dim == 2 ? grid.freq(1, j) : 0.0;
            double norm = std::hypot(x0f, x1f);
            double lm = profile.target_log_mag(norm);
            // Mask applied symmetrically so the spectrum stays Hermitian.
            if (profile.mask && norm > 0.0 && !profile.mask->contains({x0f, x1f}) &&
                !profile.mask->contains({-x0f, -x1f}))
                lm = -norm;  // fast decay off the cone
            if (lm < -700.0) ++deep;
            hat.values[static_cast<std::size_t>(i) * n1 + j] = std::exp(lm);
        }
    }
    // The spectrum above is already Hermitian (real, even in xi); a complex
    // variant would randomize phases, which nothing downstream needs yet.
    if (!profile.hermitian)
        throw std::invalid_argument("only hermitian synthesis is implemented");
    res.underflow_warning = deep * 10 > grid.total() * 9;
    res.field = inverse_fourier_transform(hat);
    return res;
}

}  // namespace xgev
