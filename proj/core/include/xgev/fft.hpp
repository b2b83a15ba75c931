#pragma once

#include <functional>

#include "xgev/grid.hpp"

namespace xgev {

// All transforms use the angular convention
//   uhat(xi) = integral u(x) exp(-i x.xi) dx,
// discretized as uhat(xi_k) = cellvol * exp(-i lo.xi_k) * DFT_k(u)
// with xi_k = 2*pi*k / boxlength per axis.

// Raw periodic DFT/IDFT (no scaling; IDFT includes the 1/n factor).
SampledField dft(const SampledField& u, bool inverse);

// Physical-convention transform and its inverse (round trip is identity up to
// rounding).
SampledField fourier_transform(const SampledField& u);
SampledField inverse_fourier_transform(const SampledField& uhat);

// Apply a multiplier m(xi) on the dual grid: u -> IDFT(m .* DFT(u)).
// The phase factors of the physical convention cancel, so this works on raw
// DFT coefficients.
SampledField apply_multiplier(const SampledField& u,
                              const std::function<cplx(double, double)>& m);

// D^alpha with D = -i*d/dx, i.e. multiplier xi^alpha. Spectral accuracy;
// orders above ~16 exceed float64 dynamic range on realistic grids.
inline constexpr int kSpectralDerivativeCap = 16;
SampledField spectral_derivative(const SampledField& u, const MultiIndex& alpha);

// (D - xi0)^alpha for a fixed shift xi0; multiplier (xi - xi0)^alpha.
SampledField spectral_shifted_derivative(const SampledField& u, const MultiIndex& alpha,
                                         const std::array<double, 2>& xi0);

}  // namespace xgev
