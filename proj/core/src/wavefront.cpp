#include "xgev/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xgev/fft.hpp"

namespace xgev {

SequenceParams admissible_rescale(const SequenceParams& params) {
    params.validate();
    if (!(params.sigma > 1.0))
        throw std::invalid_argument("admissible rescale needs sigma > 1");
    return {std::pow(params.tau, params.sigma / (params.sigma - 1.0)), params.sigma};
}

CutoffCache::CutoffCache(const GridSpec& grid, double r,
                         const SequenceParams& admissible_params)
    : grid_(grid), r_(r), params_(admissible_params) {
    grid_.validate();
    // Snap the reference center to a grid point near the box middle.
    for (int a = 0; a < grid_.dim; ++a) {
        int i = grid_.n[a] / 2;
        center_[a] = grid_.coord(a, i);
    }
}

const SampledField& CutoffCache::centered(int N) {
    auto it = cache_.find(N);
    if (it != cache_.end()) return it->second;
    CutoffSpec spec;
    spec.x0 = center_;
    spec.r = r_;
    spec.params = params_;
    spec.N = N;
    spec.grid = grid_;
    return cache_.emplace(N, build_cutoff(spec)).first->second;
}

SampledField CutoffCache::at(int N, const std::array<double, 2>& x0) {
    const SampledField& base = centered(N);
    std::array<int, 2> shift = {0, 0};
    for (int a = 0; a < grid_.dim; ++a) {
        double cells = (x0[a] - center_[a]) / grid_.spacing(a);
        shift[a] = static_cast<int>(std::lround(cells));
        if (std::abs(cells - shift[a]) > 1e-6)
            throw std::domain_error("query point must sit on the grid");
    }
    SampledField out(grid_);
    int n0 = grid_.n[0], n1 = grid_.dim == 2 ? grid_.n[1] : 1;
    for (int i = 0; i < n0; ++i) {
        int si = ((i - shift[0]) % n0 + n0) % n0;
        for (int j = 0; j < n1; ++j) {
            int sj = ((j - shift[1]) % n1 + n1) % n1;
            out.at(i, j) = base.at(si, sj);
        }
    }
    return out;
}

SampledField localize(const SampledField& u, const std::array<double, 2>& x0,
                      double r, int N, const SequenceParams& params) {
    CutoffCache cache(u.grid, r, admissible_rescale(params));
    return cache.at(N, x0) * u;
}

bool WavefrontEstimate::empty() const {
    for (const auto& row : in_wf)
        for (bool b : row)
            if (b) return false;
    return true;
}

DecaySamples directional_decay_samples(const std::vector<SampledField>& uN_family,
                                       const std::vector<int>& Ns,
                                       const ConeSpec& cone, double band,
                                       double noise_floor) {
    if (uN_family.empty() || uN_family.size() != Ns.size())
        throw std::invalid_argument("family/N list mismatch");
    DecaySamples out;
    out.xi_min = cone.xi_min;
    out.xi_max = band;
    const GridSpec& g = uN_family.front().grid;
    // Precompute the cone-shell index set once.
    std::vector<std::pair<std::size_t, double>> sel;
    for (int i = 0; i < g.n[0]; ++i) {
        double x0f = g.freq(0, i);
        int n1 = g.dim == 2 ? g.n[1] : 1;
        for (int j = 0; j < n1; ++j) {
            double x1f = g.dim == 2 ? g.freq(1, j) : 0.0;
            double norm = std::hypot(x0f, x1f);
            if (norm < cone.xi_min || norm > band) continue;
            if (!cone.contains({x0f, x1f})) continue;
            sel.emplace_back(static_cast<std::size_t>(i) * n1 + j, norm);
        }
    }
    if (sel.empty()) throw std::invalid_argument("cone meets no dual grid points");
    for (std::size_t k = 0; k < uN_family.size(); ++k) {
        SampledField hat = fourier_transform(uN_family[k]);
        // Magnitudes within a fixed factor of machine epsilon times the
        // spectral peak are transform round-off, not decay data; clamp them
        // to -inf so a numerically flat noise plateau cannot masquerade as
        // slow decay at the top of the band.
        double peak = 0.0;
        for (const auto& v : hat.values) peak = std::max(peak, std::abs(v));
        double floor_mag = std::max(peak * 1e-13, noise_floor);
        DecaySamples::Group gr;
        gr.N = Ns[k];
        gr.xi_norm.reserve(sel.size());
        gr.log_mag.reserve(sel.size());
        for (const auto& [idx, norm] : sel) {
            gr.xi_norm.push_back(norm);
            double mag = std::abs(hat.values[idx]);
            gr.log_mag.push_back(mag > floor_mag
                                     ? std::log(mag)
                                     : -std::numeric_limits<double>::infinity());
        }
        out.groups.push_back(std::move(gr));
    }
    return out;
}

namespace {

WavefrontEstimate estimate_impl(const SampledField& u, const WavefrontQuery& query,
                                const DecayCondition& cond) {
    query.params.validate();
    const GridSpec& g = u.grid;
    for (const auto& p : query.points)
        for (int a = 0; a < g.dim; ++a)
            if (p[a] - 2.0 * query.r < g.lo[a] || p[a] + 2.0 * query.r > g.hi[a])
                throw std::domain_error("query point too close to the box edge");

    WavefrontEstimate est;
    est.query = query;
    if (!(query.band_fraction > 0.0 && query.band_fraction <= 0.9))
        throw std::invalid_argument("band_fraction must lie in (0, 0.9]");
    double band = query.band_fraction * g.nyquist(0);
    for (int a = 1; a < g.dim; ++a)
        band = std::min(band, query.band_fraction * g.nyquist(a));
    est.band = band;

    CutoffCache cache(g, query.r, admissible_rescale(query.params));
    std::vector<int> Ns;
    for (int N = 1; N <= query.N_max; ++N) Ns.push_back(N);

    // A verdict needs a genuinely varying localization family. The fit only
    // weighs N whose |xi|-power can offset the factorial budget on this band;
    // if all of those share one cutoff factor count, every weighed sample
    // comes from the same witness shape and no verdict is honest.
    std::set<int> factor_kinds;
    for (int N : Ns) {
        if (static_cast<double>(cond.power(N)) * std::log(band) <
            2.0 * cond.fact_log(N))
            continue;
        CutoffSpec cs;
        cs.params = admissible_rescale(query.params);
        cs.N = N;
        factor_kinds.insert(cs.factor_count());
    }
    bool degenerate_family = factor_kinds.size() < 2;

    // Round-off in the localized spectra scales with the sup of the whole
    // field (a strong feature anywhere pollutes every localization at the
    // 1e-12 level), not with the possibly tiny localized piece.
    double sup_u = 0.0;
    for (const auto& v : u.values) sup_u = std::max(sup_u, std::abs(v));
    double noise_floor = query.noise_floor_rel * sup_u;

    est.in_wf.resize(query.points.size());
    est.fits.resize(query.points.size());
    for (std::size_t pi = 0; pi < query.points.size(); ++pi) {
        std::vector<SampledField> family;
        family.reserve(Ns.size());
        for (int N : Ns) family.push_back(cache.at(N, query.points[pi]) * u);
        for (const auto& dir : query.directions) {
            ConeSpec cone;
            cone.direction = dir;
            cone.half_angle = query.cone_half_angle;
            cone.xi_min = query.xi_min;
            DecaySamples samples =
                directional_decay_samples(family, Ns, cone, band, noise_floor);
            DecayFit fit = fit_condition(samples, cond, query.tol);
            if (degenerate_family) {
                fit.undecided = true;
                fit.pass = false;
            }
            est.fits[pi].push_back(fit);
            est.in_wf[pi].push_back(!fit.pass);
        }
    }
    return est;
}

}  // namespace

WavefrontEstimate estimate_wavefront(const SampledField& u,
                                     const WavefrontQuery& query) {
    return estimate_impl(
        u, query,
        DecayCondition::tau_sigma_prime(query.params.tau, query.params.sigma));
}

WavefrontEstimate estimate_wavefront_gevrey(const SampledField& u,
                                            const WavefrontQuery& query, double t) {
    return estimate_impl(u, query, DecayCondition::gevrey(t));
}

std::vector<std::array<double, 2>> singular_support(const WavefrontEstimate& est) {
    std::vector<std::array<double, 2>> out;
    for (std::size_t pi = 0; pi < est.query.points.size(); ++pi) {
        bool any = false;
        for (bool b : est.in_wf[pi]) any = any || b;
        if (any) out.push_back(est.query.points[pi]);
    }
    return out;
}

namespace {

// Applying an operator spectrally to a non-band-limited sampled field (a
// jump, say) leaves a sharply truncated tail at the Nyquist edge. Its spatial
// ringing spreads over the whole grid and, after localization, reads as
// spurious in-band content at points far from any singularity. Rolling the
// spectrum off smoothly above the analysis band removes that artifact while
// leaving every analyzed frequency untouched.
SampledField taper_above_band(const SampledField& f, double band_fraction) {
    const GridSpec& g = f.grid;
    double ny0 = g.nyquist(0);
    double ny1 = g.dim == 2 ? g.nyquist(1) : ny0;
    double lo = band_fraction + 0.05, hi = 0.95;
    // C-infinity transition: all derivatives vanish at both ends, so the
    // taper kernel's spatial tail decays faster than any power and does not
    // itself ring at the taper-start frequency.
    auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    return apply_multiplier(f, [=](double x0, double x1) -> cplx {
        double rho = std::max(std::abs(x0) / ny0, std::abs(x1) / ny1);
        if (rho <= lo) return 1.0;
        if (rho >= hi) return 0.0;
        double s = (rho - lo) / (hi - lo);
        return bump(1.0 - s) / (bump(s) + bump(1.0 - s));
    });
}

std::string point_dir_label(const WavefrontQuery& q, std::size_t pi, std::size_t di) {
    return "point (" + std::to_string(q.points[pi][0]) + "," +
           std::to_string(q.points[pi][1]) + ") dir (" +
           std::to_string(q.directions[di][0]) + "," +
           std::to_string(q.directions[di][1]) + ")";
}

}  // namespace

InclusionReport check_inclusion_theorem(const SampledField& u,
                                        const ConstCoeffOperator& P,
                                        const WavefrontQuery& query,
                                        int sphere_resolution, double char_tol) {
    P.validate();
    InclusionReport rep;

    SampledField Pu = taper_above_band(
        apply_multiplier(u,
                         [&P](double x0, double x1) { return P.symbol({x0, x1}); }),
        query.band_fraction);

    WavefrontQuery rescaled = query;
    rescaled.params.tau =
        std::pow(2.0, query.params.sigma - 1.0) * query.params.tau;
    // The tapered spectral application leaves a residual bounded by the taper
    // kernel's spatial tail (~1e-9 of the field sup), well above transform
    // round-off; estimates of derived fields use that as their floor.
    constexpr double kDerivedFloorRel = 1e-9;
    WavefrontQuery q_Pu = query;
    q_Pu.noise_floor_rel = std::max(q_Pu.noise_floor_rel, kDerivedFloorRel);
    WavefrontQuery rescaled_Pu = rescaled;
    rescaled_Pu.noise_floor_rel =
        std::max(rescaled_Pu.noise_floor_rel, kDerivedFloorRel);
    rep.wf_rescaled_Pu = estimate_wavefront(Pu, rescaled_Pu);
    rep.wf_rescaled_u = estimate_wavefront(u, rescaled);
    rep.wf_Pu = estimate_wavefront(Pu, q_Pu);

    auto char_dirs = characteristic_set(
        P, u.grid.dim == 1 ? 64 : sphere_resolution, char_tol);
    // One sphere-grid cell of slack: the discrete cone cannot resolve an
    // exact characteristic ray.
    double cell = u.grid.dim == 1 ? 0.0 : 2.0 * M_PI / sphere_resolution;
    auto in_char = [&](const std::array<double, 2>& dir) {
        for (const auto& cd : char_dirs) {
            double dot = std::clamp(dir[0] * cd[0] + dir[1] * cd[1], -1.0, 1.0);
            if (std::acos(dot) <= cell + 1e-12) return true;
        }
        return false;
    };

    rep.first_ok = true;
    rep.second_ok = true;
    // An undecided fit (too few informative N on this band, a property of the
    // condition/band alone) carries no membership verdict, so pairs involving
    // one cannot witness a violation.
    auto und = [](const WavefrontEstimate& e, std::size_t pi, std::size_t di) {
        return e.fits[pi][di].undecided;
    };
    for (std::size_t pi = 0; pi < query.points.size(); ++pi) {
        for (std::size_t di = 0; di < query.directions.size(); ++di) {
            if (und(rep.wf_rescaled_Pu, pi, di) ||
                und(rep.wf_rescaled_u, pi, di) || und(rep.wf_Pu, pi, di))
                continue;
            bool a = rep.wf_rescaled_Pu.in_wf[pi][di];
            bool b = rep.wf_rescaled_u.in_wf[pi][di];
            bool c = rep.wf_Pu.in_wf[pi][di];
            if (a && !b) {
                rep.first_ok = false;
                rep.violations.push_back("first inclusion fails at " +
                                         point_dir_label(query, pi, di));
            }
            if (b && !(c || in_char(query.directions[di]))) {
                rep.second_ok = false;
                rep.violations.push_back("second inclusion fails at " +
                                         point_dir_label(query, pi, di));
            }
        }
    }

    rep.derivative_ok = true;
    WavefrontEstimate wf_u = estimate_wavefront(u, query);
    for (int axis = 0; axis < u.grid.dim; ++axis) {
        MultiIndex ej{axis == 0 ? 1 : 0, axis == 1 ? 1 : 0};
        SampledField du = taper_above_band(spectral_derivative(u, ej),
                                           query.band_fraction);  // D_j
        WavefrontEstimate wf_du = estimate_wavefront(du, q_Pu);
        for (std::size_t pi = 0; pi < query.points.size(); ++pi)
            for (std::size_t di = 0; di < query.directions.size(); ++di)
                if (wf_du.fits[pi][di].undecided || wf_u.fits[pi][di].undecided)
                    continue;
                else if (wf_du.in_wf[pi][di] && !wf_u.in_wf[pi][di]) {
                    rep.derivative_ok = false;
                    rep.violations.push_back("derivative inclusion fails at " +
                                             point_dir_label(query, pi, di) +
                                             " axis " + std::to_string(axis));
                }
    }

    rep.chain_ok = rep.first_ok && rep.second_ok;
    return rep;
}

namespace {

using Mask = std::vector<std::vector<bool>>;

Mask mask_and(const Mask& a, const Mask& b) {
    Mask out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            out[i][j] = a[i][j] && b[i][j];
    return out;
}

Mask mask_or(const Mask& a, const Mask& b) {
    Mask out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            out[i][j] = a[i][j] || b[i][j];
    return out;
}

bool mask_subset(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] && !b[i][j]) return false;
    return true;
}

}  // namespace

WFLattice lattice_wavefronts(const SampledField& u, const std::vector<double>& tau_grid,
                             const std::vector<double>& sigma_grid,
                             const WavefrontQuery& query,
                             const std::vector<double>& gevrey_t_grid) {
    if (tau_grid.empty() || sigma_grid.empty())
        throw std::invalid_argument("grids must be nonempty");
    for (double s : sigma_grid)
        if (!(s > 1.0)) throw std::invalid_argument("lattice sigma values must be > 1");

    WFLattice lat;
    lat.tau_grid = tau_grid;
    std::sort(lat.tau_grid.begin(), lat.tau_grid.end());
    lat.sigma_grid = sigma_grid;
    std::sort(lat.sigma_grid.begin(), lat.sigma_grid.end());

    std::size_t np = query.points.size(), nd = query.directions.size();
    Mask full(np, std::vector<bool>(nd, true));
    Mask empty(np, std::vector<bool>(nd, false));

    // per sigma, masks indexed by tau (ascending); estimated WF shrinks as tau
    // grows, enforced by intersecting along the sorted tau axis.  An undecided
    // fit (too few independent localization scales on the band) asserts
    // nothing about membership, so it leaves the cumulative mask unchanged
    // instead of being read as OUT — reading it as OUT would break the
    // monotone nesting the intersection encodes.
    std::vector<std::vector<Mask>> by_sigma;
    for (double sigma : lat.sigma_grid) {
        std::vector<Mask> row;
        Mask cum = full;
        for (double tau : lat.tau_grid) {
            WavefrontQuery q = query;
            q.params = {tau, sigma};
            WavefrontEstimate e = estimate_wavefront(u, q);
            for (std::size_t i = 0; i < cum.size(); ++i)
                for (std::size_t j = 0; j < cum[i].size(); ++j)
                    if (!e.fits[i][j].undecided)
                        cum[i][j] = cum[i][j] && e.in_wf[i][j];
            row.push_back(cum);
            lat.per_param.push_back(cum);
        }
        by_sigma.push_back(std::move(row));
    }

    Mask i_i = full, i_u = full, u_i = empty, u_u = empty;
    for (const auto& row : by_sigma) {
        Mask cap = full, cup = empty;
        for (const auto& m : row) {
            cap = mask_and(cap, m);
            cup = mask_or(cup, m);
        }
        i_i = mask_and(i_i, cap);
        i_u = mask_and(i_u, cup);
        u_i = mask_or(u_i, cap);
        u_u = mask_or(u_u, cup);
    }
    lat.wf_01 = i_i;
    lat.wf_inf1 = i_u;
    lat.wf_0inf = u_i;
    lat.wf_infinf = u_u;

    Mask gcap = full;
    for (double t : gevrey_t_grid) {
        if (!(t > 1.0)) continue;
        // For the cap (an upper bound) an undecided rung imposes no
        // constraint, and in_wf already reads undecided as IN.
        gcap = mask_and(gcap, estimate_wavefront_gevrey(u, query, t).in_wf);
    }
    lat.gevrey_cap = gcap;

    lat.chain_ok = mask_subset(lat.wf_01, lat.wf_inf1) &&
                   mask_subset(lat.wf_inf1, lat.wf_0inf) &&
                   mask_subset(lat.wf_0inf, lat.wf_infinf) &&
                   mask_subset(lat.wf_infinf, lat.gevrey_cap);

    lat.lemma_sigma_ok = true;
    for (std::size_t s2 = 0; s2 < by_sigma.size(); ++s2) {
        for (std::size_t s1 = 0; s1 < s2; ++s1) {
            Mask cup = empty, cap = full;
            for (const auto& m : by_sigma[s2]) cup = mask_or(cup, m);
            for (const auto& m : by_sigma[s1]) cap = mask_and(cap, m);
            if (!mask_subset(cup, cap)) lat.lemma_sigma_ok = false;
        }
    }
    return lat;
}

}  // namespace xgev
