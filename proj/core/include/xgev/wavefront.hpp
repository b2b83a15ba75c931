#pragma once

#include <map>
#include <vector>

#include "xgev/cutoffs.hpp"
#include "xgev/decay.hpp"
#include "xgev/grid.hpp"
#include "xgev/operators.hpp"

namespace xgev {

// Localization family cache: chi_N built once per N at a reference grid point
// and shifted periodically to each query point (the construction is
// translation covariant).
class CutoffCache {
  public:
    CutoffCache(const GridSpec& grid, double r, const SequenceParams& admissible_params);

    const SampledField& centered(int N);
    SampledField at(int N, const std::array<double, 2>& x0);
    const SequenceParams& params() const { return params_; }
    double radius() const { return r_; }

  private:
    GridSpec grid_;
    double r_;
    SequenceParams params_;          // already the admissibility parameters
    std::array<double, 2> center_;   // snapped reference point
    std::map<int, SampledField> cache_;
};

// chi_N * u with the admissibility rescaling tilde_tau = tau^(sigma/(sigma-1))
// applied to the cut-off parameters.
SampledField localize(const SampledField& u, const std::array<double, 2>& x0,
                      double r, int N, const SequenceParams& params);

SequenceParams admissible_rescale(const SequenceParams& params);

struct WavefrontQuery {
    std::vector<std::array<double, 2>> points;
    std::vector<std::array<double, 2>> directions;  // unit vectors
    SequenceParams params{1.0, 2.0};
    double cone_half_angle = 0.39269908169872414;  // pi/8
    double r = 0.25;
    int N_max = 40;
    double xi_min = 2.0;
    double tol = kDefaultFitTol;
    // Fraction of the Nyquist frequency used as the fit band ceiling. Coarse
    // grids need a wider guard gap below Nyquist: spectral differentiation of
    // a jump rings at the Nyquist rate, and that peak leaks into the top of
    // the band through the cutoff's own spectral tails.
    double band_fraction = 0.8;
    // Spectral magnitudes below noise_floor_rel * sup|u| are treated as exact
    // zeros. The default covers transform round-off; fields produced by
    // spectral operator application carry a larger discretization residual
    // and need a higher floor.
    double noise_floor_rel = 1e-11;
};

struct WavefrontEstimate {
    WavefrontQuery query;
    double band = 0.0;  // usable |xi| ceiling
    // in_wf[p][d] for point p, direction d; fits parallel to it.
    std::vector<std::vector<bool>> in_wf;
    std::vector<std::vector<DecayFit>> fits;

    bool empty() const;
};

// Directional samples of one localization family over a cone shell band.
// Spectral magnitudes below noise_floor (an absolute transform-domain level,
// typically tied to the scale of the field before localization) are treated
// as exact zeros: round-off from the transforms is not decay data.
DecaySamples directional_decay_samples(const std::vector<SampledField>& uN_family,
                                       const std::vector<int>& Ns,
                                       const ConeSpec& cone, double band,
                                       double noise_floor = 0.0);

// (x0, xi0) is OUT of the estimated wave-front set iff the banded fit of the
// prime-form (tau, sigma) condition passes on the cone samples.
WavefrontEstimate estimate_wavefront(const SampledField& u,
                                     const WavefrontQuery& query);

// Same, for a Gevrey-order condition (used for the lattice endcap).
WavefrontEstimate estimate_wavefront_gevrey(const SampledField& u,
                                            const WavefrontQuery& query, double t);

std::vector<std::array<double, 2>> singular_support(const WavefrontEstimate& est);

struct InclusionReport {
    bool chain_ok = false;       // WF_rt(Pu) <= WF_rt(u) <= WF_t(Pu) + Char
    bool first_ok = false;
    bool second_ok = false;
    bool derivative_ok = false;  // WF(d_j u) <= WF(u) for each axis
    std::vector<std::string> violations;
    WavefrontEstimate wf_rescaled_Pu, wf_rescaled_u, wf_Pu;
};

InclusionReport check_inclusion_theorem(const SampledField& u,
                                        const ConstCoeffOperator& P,
                                        const WavefrontQuery& query,
                                        int sphere_resolution = 256,
                                        double char_tol = 1e-9);

struct WFLattice {
    std::vector<double> tau_grid, sigma_grid;
    // mask[(tau index, sigma index)][point][dir]
    std::vector<std::vector<std::vector<bool>>> per_param;
    std::vector<std::vector<bool>> wf_01, wf_inf1, wf_0inf, wf_infinf;
    std::vector<std::vector<bool>> gevrey_cap;  // intersection over the t grid
    bool chain_ok = false;
    bool lemma_sigma_ok = false;  // union over tau at sigma2 inside intersection at sigma1
};

WFLattice lattice_wavefronts(const SampledField& u, const std::vector<double>& tau_grid,
                             const std::vector<double>& sigma_grid,
                             const WavefrontQuery& query,
                             const std::vector<double>& gevrey_t_grid = {1.5, 2.0, 3.0});

}  // namespace xgev
