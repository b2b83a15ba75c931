#include "xgev/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace xgev {

namespace {
// FFTW plan creation is not thread safe; execution of distinct plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

SampledField dft(const SampledField& u, bool inverse) {
    u.grid.validate();
    SampledField out(u.grid);
    auto* in_ptr = reinterpret_cast<fftw_complex*>(
        const_cast<cplx*>(u.values.data()));
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.values.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        int sign = inverse ? FFTW_BACKWARD : FFTW_FORWARD;
        if (u.grid.dim == 1)
            plan = fftw_plan_dft_1d(u.grid.n[0], in_ptr, out_ptr, sign,
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        else
            plan = fftw_plan_dft_2d(u.grid.n[0], u.grid.n[1], in_ptr, out_ptr, sign,
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    if (inverse) {
        double scale = 1.0 / static_cast<double>(u.grid.total());
        for (auto& v : out.values) v *= scale;
    }
    return out;
}

SampledField fourier_transform(const SampledField& u) {
    SampledField out = dft(u, false);
    const GridSpec& g = u.grid;
    double cell = g.spacing(0) * (g.dim == 2 ? g.spacing(1) : 1.0);
    for (int i = 0; i < g.n[0]; ++i) {
        double ph0 = g.lo[0] * g.freq(0, i);
        if (g.dim == 1) {
            out.at(i) *= cell * std::exp(cplx(0.0, -ph0));
        } else {
            for (int j = 0; j < g.n[1]; ++j) {
                double ph = ph0 + g.lo[1] * g.freq(1, j);
                out.at(i, j) *= cell * std::exp(cplx(0.0, -ph));
            }
        }
    }
    return out;
}

SampledField inverse_fourier_transform(const SampledField& uhat) {
    const GridSpec& g = uhat.grid;
    SampledField tmp = uhat;
    double cell = g.spacing(0) * (g.dim == 2 ? g.spacing(1) : 1.0);
    for (int i = 0; i < g.n[0]; ++i) {
        double ph0 = g.lo[0] * g.freq(0, i);
        if (g.dim == 1) {
            tmp.at(i) *= std::exp(cplx(0.0, ph0)) / cell;
        } else {
            for (int j = 0; j < g.n[1]; ++j) {
                double ph = ph0 + g.lo[1] * g.freq(1, j);
                tmp.at(i, j) *= std::exp(cplx(0.0, ph)) / cell;
            }
        }
    }
    return dft(tmp, true);
}

SampledField apply_multiplier(const SampledField& u,
                              const std::function<cplx(double, double)>& m) {
    SampledField spec = dft(u, false);
    const GridSpec& g = u.grid;
    for (int i = 0; i < g.n[0]; ++i) {
        double xi0 = g.freq(0, i);
        if (g.dim == 1) {
            spec.at(i) *= m(xi0, 0.0);
        } else {
            for (int j = 0; j < g.n[1]; ++j) spec.at(i, j) *= m(xi0, g.freq(1, j));
        }
    }
    return dft(spec, true);
}

namespace {
double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}
}  // namespace

SampledField spectral_derivative(const SampledField& u, const MultiIndex& alpha) {
    if (mi_order(alpha) > kSpectralDerivativeCap)
        throw std::invalid_argument("derivative order beyond spectral cap");
    return apply_multiplier(u, [alpha](double x0, double x1) {
        return cplx(ipow(x0, alpha[0]) * ipow(x1, alpha[1]), 0.0);
    });
}

SampledField spectral_shifted_derivative(const SampledField& u, const MultiIndex& alpha,
                                         const std::array<double, 2>& xi0) {
    if (mi_order(alpha) > kSpectralDerivativeCap)
        throw std::invalid_argument("derivative order beyond spectral cap");
    return apply_multiplier(u, [alpha, xi0](double x0, double x1) {
        return cplx(ipow(x0 - xi0[0], alpha[0]) * ipow(x1 - xi0[1], alpha[1]), 0.0);
    });
}

}  // namespace xgev
