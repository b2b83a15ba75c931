#include "xgev/cutoffs.hpp"

#include <algorithm>
#include <cmath>

#include "xgev/fft.hpp"

namespace xgev {

int CutoffSpec::factor_count() const {
    auto k = guarded_floor(std::pow(static_cast<double>(N) / params.tau,
                                    1.0 / params.sigma));
    return static_cast<int>(std::max<std::int64_t>(k, 1));
}

double CutoffSpec::width() const { return r / (4.0 * factor_count()); }

void CutoffSpec::validate() const {
    params.validate();
    grid.validate();
    if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    for (int a = 0; a < grid.dim; ++a) {
        if (x0[a] - 2.0 * r - r / 4.0 < grid.lo[a] ||
            x0[a] + 2.0 * r + r / 4.0 > grid.hi[a])
            throw std::domain_error("box must contain B_2r(x0) with r/4 margin");
        if (grid.spacing(a) > width() / 2.0)
            throw std::domain_error("grid too coarse for convolution width");
    }
}

namespace {

double bump_profile(double t) {  // support |t| < 1, smooth
    double s = 1.0 - t * t;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

// Samples of a radial bump of support radius d, placed at the periodic
// origin (nearest-image displacement), for use as a discrete convolution
// kernel.
SampledField kernel_field(const GridSpec& g, double d) {
    SampledField f(g);
    for (int i = 0; i < g.n[0]; ++i) {
        double z0 = g.spacing(0) * (i <= g.n[0] / 2 ? i : i - g.n[0]);
        if (g.dim == 1) {
            f.at(i) = bump_profile(z0 / d);
        } else {
            for (int j = 0; j < g.n[1]; ++j) {
                double z1 = g.spacing(1) * (j <= g.n[1] / 2 ? j : j - g.n[1]);
                f.at(i, j) = bump_profile(std::hypot(z0, z1) / d);
            }
        }
    }
    return f;
}

}  // namespace

SampledField build_cutoff(const CutoffSpec& spec) {
    spec.validate();
    const GridSpec& g = spec.grid;
    int k = spec.factor_count();
    double d = spec.width();

    SampledField ind(g);
    for (int i = 0; i < g.n[0]; ++i) {
        double z0 = g.coord(0, i) - spec.x0[0];
        if (g.dim == 1) {
            ind.at(i) = std::abs(z0) <= 1.5 * spec.r ? 1.0 : 0.0;
        } else {
            for (int j = 0; j < g.n[1]; ++j) {
                double z1 = g.coord(1, j) - spec.x0[1];
                ind.at(i, j) = std::hypot(z0, z1) <= 1.5 * spec.r ? 1.0 : 0.0;
            }
        }
    }

    SampledField spec_ind = dft(ind, false);
    // Each smoothing factor's DFT is normalized to 1 at frequency zero, which
    // makes it an exact discrete averaging kernel: positivity and the plateau
    // value 1 are preserved without quadrature error.
    for (double width : {d, spec.r / 4.0}) {
        SampledField ker = dft(kernel_field(g, width), false);
        cplx dc = ker.values[0];
        int reps = (width == d) ? k : 1;
        for (int rep = 0; rep < reps; ++rep)
            for (std::size_t idx = 0; idx < spec_ind.values.size(); ++idx)
                spec_ind.values[idx] *= ker.values[idx] / dc;
    }
    SampledField out = dft(spec_ind, true);
    // Keep raw real parts: rounding them into [0,1] would plant kinks that
    // explode under high-order spectral differentiation.
    for (auto& v : out.values) v = cplx(v.real(), 0.0);
    // The exact support is B_2r(x0) (indicator radius 1.5r plus total
    // smoothing width r/2); outside it the values are pure transform
    // round-off, and leaving that dust in place leaks far-away features into
    // every localized spectrum.
    for (int i = 0; i < g.n[0]; ++i) {
        double z0 = g.coord(0, i) - spec.x0[0];
        if (g.dim == 1) {
            if (std::abs(z0) > 2.0 * spec.r) out.at(i) = 0.0;
        } else {
            for (int j = 0; j < g.n[1]; ++j) {
                double z1 = g.coord(1, j) - spec.x0[1];
                if (std::hypot(z0, z1) > 2.0 * spec.r) out.at(i, j) = 0.0;
            }
        }
    }
    return out;
}

CutoffSequence build_cutoff_sequence(const std::array<double, 2>& x0, double r,
                                     const SequenceParams& params,
                                     const std::vector<int>& Ns, const GridSpec& grid) {
    CutoffSequence seq;
    for (int N : Ns) {
        CutoffSpec s;
        s.x0 = x0;
        s.r = r;
        s.params = params;
        s.N = N;
        s.grid = grid;
        seq.specs.push_back(s);
        seq.fields.push_back(build_cutoff(s));
    }
    return seq;
}

namespace {

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order) {
    std::vector<MultiIndex> out;
    for (int a0 = 0; a0 <= max_order; ++a0) {
        if (dim == 1) {
            out.push_back({a0, 0});
        } else {
            for (int a1 = 0; a0 + a1 <= max_order; ++a1) out.push_back({a0, a1});
        }
    }
    return out;
}

// High-order spectral derivatives amplify the transform's round-off floor by
// Nyquist^order, which swamps the true sup once the genuine spectral tail
// drops below machine precision. Bins under the floor carry no signal, so
// they are zeroed, and the derivative is taken directly from the clamped
// spectrum (a space-domain round trip would regenerate the floor).
SampledField clamped_spectrum(const SampledField& u) {
    SampledField hat = dft(u, false);
    double peak = 0.0;
    for (const auto& v : hat.values) peak = std::max(peak, std::abs(v));
    double floor_mag = 1e-14 * peak;
    for (auto& v : hat.values)
        if (std::abs(v) < floor_mag) v = 0.0;
    return hat;
}

double derivative_sup_from_spectrum(const SampledField& hat, const GridSpec& g,
                                    const MultiIndex& ab) {
    SampledField m = hat;
    for (int i = 0; i < g.n[0]; ++i) {
        double f0 = std::pow(g.freq(0, i), ab[0]);
        if (g.dim == 1) {
            m.at(i) *= f0;
        } else {
            for (int j = 0; j < g.n[1]; ++j)
                m.at(i, j) *= f0 * std::pow(g.freq(1, j), ab[1]);
        }
    }
    return dft(m, true).sup_abs();
}

}  // namespace

AdmissibilityReport verify_admissibility(const CutoffSequence& seq, int alpha_cap,
                                         int beta_max) {
    if (seq.specs.empty()) throw std::invalid_argument("empty cutoff sequence");
    AdmissibilityReport rep;
    int dim = seq.specs.front().grid.dim;
    auto betas = multi_indices_up_to(dim, beta_max);

    double worst_margin = -1.0;
    for (std::size_t idx = 0; idx < seq.specs.size(); ++idx) {
        const CutoffSpec& spec = seq.specs[idx];
        int k = spec.factor_count();
        int cap = alpha_cap > 0 ? std::min(k, alpha_cap) : std::min(k, 12);
        cap = std::min(cap, kSpectralDerivativeCap - beta_max);
        rep.alpha_cap = std::max(rep.alpha_cap, cap);
        double base = static_cast<double>(guarded_floor(
            std::pow(static_cast<double>(spec.N), 1.0 / spec.params.sigma)));
        auto alphas = multi_indices_up_to(dim, cap);
        SampledField hat = clamped_spectrum(seq.fields[idx]);
        for (const auto& beta : betas) {
            double& cb = rep.c_beta_per_N[spec.N][beta_key(beta)];
            for (const auto& alpha : alphas) {
                MultiIndex ab = {alpha[0] + beta[0], alpha[1] + beta[1]};
                double sup = derivative_sup_from_spectrum(hat, spec.grid, ab);
                int ao = mi_order(alpha);
                double c = std::pow(sup / std::pow(base, ao), 1.0 / (ao + 1));
                if (c > cb) cb = c;
                if (c > worst_margin) {
                    worst_margin = c;
                    rep.worst = {spec.N, alpha, beta};
                }
            }
            double& g = rep.c_beta[beta_key(beta)];
            g = std::max(g, cb);
        }
    }

    // Stability: for every beta the per-N witness constants over the upper
    // half of the N range must be finite and agree within a factor of 2.
    rep.pass = true;
    std::vector<int> Ns;
    for (const auto& s : seq.specs) Ns.push_back(s.N);
    std::sort(Ns.begin(), Ns.end());
    std::vector<int> upper(Ns.begin() + Ns.size() / 2, Ns.end());
    for (const auto& beta : betas) {
        double lo = 1e300, hi = 0.0;
        for (int N : upper) {
            double c = rep.c_beta_per_N[N][beta_key(beta)];
            if (!std::isfinite(c)) rep.pass = false;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (!(hi <= 2.0 * lo)) rep.pass = false;
    }
    return rep;
}

CutoffFourierReport cutoff_fourier_decay(const CutoffSequence& seq, int alpha,
                                         int beta) {
    if (seq.specs.empty()) throw std::invalid_argument("empty cutoff sequence");
    CutoffFourierReport rep;
    const GridSpec& g = seq.specs.front().grid;
    rep.band_max = 0.8 * g.nyquist(0);
    std::map<int, double> per_N;
    for (std::size_t idx = 0; idx < seq.specs.size(); ++idx) {
        const CutoffSpec& spec = seq.specs[idx];
        if (alpha > spec.factor_count()) continue;  // bound only claimed there
        double base = static_cast<double>(guarded_floor(
            std::pow(static_cast<double>(spec.N), 1.0 / spec.params.sigma)));
        SampledField hat = fourier_transform(seq.fields[idx]);
        double worst = 0.0;
        for (int i = 0; i < g.n[0]; ++i) {
            double x0f = g.freq(0, i);
            for (int j = 0; j < (g.dim == 2 ? g.n[1] : 1); ++j) {
                double x1f = g.dim == 2 ? g.freq(1, j) : 0.0;
                double norm = std::hypot(x0f, x1f);
                if (norm > rep.band_max) continue;
                double bracket = std::sqrt(1.0 + norm * norm);
                double mag = std::abs(g.dim == 2 ? hat.at(i, j) : hat.at(i));
                double c = std::pow(
                    mag * std::pow(bracket, alpha + beta) / std::pow(base, alpha),
                    1.0 / (alpha + 1));
                worst = std::max(worst, c);
            }
        }
        per_N[spec.N] = worst;
        rep.A_beta = std::max(rep.A_beta, worst);
    }
    if (per_N.empty()) throw std::invalid_argument("alpha exceeds every factor count");
    // Stable across the upper half of tested N, mirroring the space-side check.
    std::vector<double> cs;
    for (const auto& [N, c] : per_N) cs.push_back(c);
    std::vector<double> upper(cs.begin() + cs.size() / 2, cs.end());
    double lo = *std::min_element(upper.begin(), upper.end());
    double hi = *std::max_element(upper.begin(), upper.end());
    rep.pass = std::isfinite(rep.A_beta) && hi <= 2.0 * lo;
    return rep;
}

}  // namespace xgev
