#include "xgev/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xgev/fft.hpp"

namespace xgev {

void DecayCondition::validate() const {
    switch (family) {
        case Family::FloorPower:
        case Family::GevreyFactorial:
        case Family::RootFactorial:
            if (!(t >= 1.0)) throw std::invalid_argument("t must be >= 1");
            break;
        case Family::TauSigma:
        case Family::TauSigmaPrime:
            if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
            if (!(sigma > 1.0)) throw std::invalid_argument("sigma must be > 1");
            break;
    }
}

double DecayCondition::coeff(std::int64_t N) const {
    double Nd = static_cast<double>(N);
    return family == Family::FloorPower ? std::pow(Nd, t) : Nd;
}

std::int64_t DecayCondition::power(std::int64_t N) const {
    double Nd = static_cast<double>(N);
    switch (family) {
        case Family::FloorPower: return guarded_floor(std::pow(Nd, t));
        case Family::GevreyFactorial: return N;
        case Family::RootFactorial: return guarded_floor(std::pow(Nd, 1.0 / t));
        case Family::TauSigma:
            return guarded_floor(std::pow(Nd / tau, 1.0 / sigma));
        case Family::TauSigmaPrime:
            return guarded_floor(std::pow(Nd, 1.0 / sigma));
    }
    return 0;
}

double DecayCondition::fact_log(std::int64_t N) const {
    double Nd = static_cast<double>(N);
    switch (family) {
        case Family::FloorPower:
            return std::lgamma(static_cast<double>(guarded_floor(std::pow(Nd, t))) + 1.0);
        case Family::GevreyFactorial: return t * std::lgamma(Nd + 1.0);
        case Family::RootFactorial: return std::lgamma(Nd + 1.0) / t;
        case Family::TauSigma: return std::lgamma(Nd + 1.0) / sigma;
        case Family::TauSigmaPrime: return tau / sigma * std::lgamma(Nd + 1.0);
    }
    return 0.0;
}

DecayCondition DecayCondition::floor_power(double t) {
    DecayCondition c{Family::FloorPower, t};
    c.validate();
    return c;
}
DecayCondition DecayCondition::gevrey(double t) {
    DecayCondition c{Family::GevreyFactorial, t};
    c.validate();
    return c;
}
DecayCondition DecayCondition::root_factorial(double t) {
    DecayCondition c{Family::RootFactorial, t};
    c.validate();
    return c;
}
DecayCondition DecayCondition::tau_sigma(double tau, double sigma) {
    DecayCondition c{Family::TauSigma, 1.0, tau, sigma};
    c.validate();
    return c;
}
DecayCondition DecayCondition::tau_sigma_prime(double tau, double sigma) {
    DecayCondition c{Family::TauSigmaPrime, 1.0, tau, sigma};
    c.validate();
    return c;
}

std::string DecayCondition::name() const {
    auto num = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (family) {
        case Family::FloorPower: return "floor_power(" + num(t) + ")";
        case Family::GevreyFactorial: return "gevrey(" + num(t) + ")";
        case Family::RootFactorial: return "root_factorial(" + num(t) + ")";
        case Family::TauSigma: return "tau_sigma(" + num(tau) + "," + num(sigma) + ")";
        case Family::TauSigmaPrime:
            return "tau_sigma_prime(" + num(tau) + "," + num(sigma) + ")";
    }
    return "?";
}

double rhs_log_bound(const DecayCondition& cond, std::int64_t N, double xi_norm,
                     double log_A, double log_h) {
    if (!(xi_norm > 0.0) || N < 1) throw std::invalid_argument("need xi_norm > 0, N >= 1");
    return log_A + cond.coeff(N) * log_h + cond.fact_log(N) -
           static_cast<double>(cond.power(N)) * std::log(xi_norm);
}

Enumeration Enumeration::identity() {
    return {[](std::int64_t N) { return static_cast<double>(N); }};
}
Enumeration Enumeration::power(double t) {
    return {[t](std::int64_t N) { return std::pow(static_cast<double>(N), t); }};
}
Enumeration Enumeration::root(double t) {
    return {[t](std::int64_t N) { return std::pow(static_cast<double>(N), 1.0 / t); }};
}
Enumeration Enumeration::scale(double tau) {
    return {[tau](std::int64_t N) { return tau * static_cast<double>(N); }};
}
Enumeration Enumeration::shift(std::int64_t c) {
    return {[c](std::int64_t N) { return static_cast<double>(N + c); }};
}

DecaySamples apply_enumeration(const DecaySamples& samples, const Enumeration& e) {
    DecaySamples out = samples;
    out.groups.clear();
    std::map<std::int64_t, std::pair<int, const DecaySamples::Group*>> chosen;
    for (const auto& gr : samples.groups) {
        // round half up
        double mapped = e.map(gr.N);
        auto label = static_cast<std::int64_t>(std::floor(mapped + 0.5));
        auto it = chosen.find(label);
        if (it != chosen.end()) {
            out.enumeration_collision = true;
            if (gr.N > it->second.first) it->second = {gr.N, &gr};
        } else {
            chosen[label] = {gr.N, &gr};
        }
    }
    for (const auto& [label, pick] : chosen) {
        DecaySamples::Group g = *pick.second;
        g.N = static_cast<int>(label);
        out.groups.push_back(std::move(g));
    }
    return out;
}

namespace {

// Ridge-regularized least squares on column-normalized basis; basis sizes are
// tiny (<= 6) so Gaussian elimination is plenty.
std::vector<double> solve_ls(const std::vector<std::vector<double>>& cols,
                             const std::vector<double>& rhs) {
    std::size_t k = cols.size(), n = rhs.size();
    std::vector<double> scale(k, 1.0);
    std::vector<std::vector<double>> A(k, std::vector<double>(n));
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (double v : cols[j]) s = std::max(s, std::abs(v));
        scale[j] = s > 0.0 ? s : 1.0;
        for (std::size_t i = 0; i < n; ++i) A[j][i] = cols[j][i] / scale[j];
    }
    std::vector<std::vector<double>> M(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < n; ++i) M[a][b] += A[a][i] * A[b][i];
        M[a][a] += 1e-9 * n;
        for (std::size_t i = 0; i < n; ++i) M[a][k] += A[a][i] * rhs[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t r2 = c + 1; r2 < k; ++r2)
            if (std::abs(M[r2][c]) > std::abs(M[piv][c])) piv = r2;
        std::swap(M[c], M[piv]);
        for (std::size_t r2 = 0; r2 < k; ++r2) {
            if (r2 == c || M[c][c] == 0.0) continue;
            double f = M[r2][c] / M[c][c];
            for (std::size_t cc = c; cc <= k; ++cc) M[r2][cc] -= f * M[c][cc];
        }
    }
    std::vector<double> x(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        if (M[c][c] != 0.0) x[c] = M[c][k] / M[c][c] / scale[c];
    return x;
}

}  // namespace

DecayFit fit_condition(const DecaySamples& samples, const DecayCondition& cond,
                       double tol) {
    cond.validate();
    DecayFit fit;
    fit.condition = cond;

    std::size_t distinct = samples.groups.size();
    if (distinct < 4) throw std::invalid_argument("need samples at >= 4 distinct N");
    for (const auto& gr : samples.groups)
        if (gr.xi_norm.size() < 8)
            throw std::invalid_argument("need >= 8 frequencies per N");

    double xi_max = samples.xi_max;
    if (xi_max <= 0.0)
        for (const auto& gr : samples.groups)
            for (double x : gr.xi_norm) xi_max = std::max(xi_max, x);
    double log_band = std::log(xi_max);

    bool any_finite = false;
    for (const auto& gr : samples.groups)
        for (double lm : gr.log_mag)
            if (std::isfinite(lm)) any_finite = true;
    if (!any_finite) {  // identically zero data satisfies everything
        fit.pass = true;
        fit.log_A = -std::numeric_limits<double>::infinity();
        return fit;
    }

    // Informative N: the |xi| power must be able to beat the factorial factor
    // on this band, otherwise the condition is vacuously satisfiable.
    std::vector<double> gvals, cN, pN, lnN, lgN;
    int boundary = 0;
    std::int64_t coverage = 0;
    for (const auto& gr : samples.groups) {
        auto pw = cond.power(gr.N);
        if (static_cast<double>(pw) * log_band < 2.0 * cond.fact_log(gr.N)) continue;
        double best = -std::numeric_limits<double>::infinity();
        double best_xi = 0.0;
        for (std::size_t i = 0; i < gr.xi_norm.size(); ++i) {
            if (!std::isfinite(gr.log_mag[i])) continue;
            double v = gr.log_mag[i] +
                       static_cast<double>(pw) * std::log(gr.xi_norm[i]);
            if (v > best) {
                best = v;
                best_xi = gr.xi_norm[i];
            }
        }
        if (!std::isfinite(best)) continue;
        if (best_xi >= 0.9 * xi_max) ++boundary;
        gvals.push_back(best - cond.fact_log(gr.N));
        cN.push_back(cond.coeff(gr.N));
        double pd = static_cast<double>(pw);
        pN.push_back(pd);
        lnN.push_back(std::log(static_cast<double>(gr.N) + 1.0));
        lgN.push_back(std::lgamma(static_cast<double>(gr.N) + 1.0));
        coverage = std::max(coverage, pw);
    }
    fit.informative_count = static_cast<int>(gvals.size());
    fit.boundary_hits = boundary;
    fit.coverage = coverage;
    if (gvals.size() < 5) {
        fit.undecided = true;
        return fit;
    }

    std::vector<std::vector<double>> cols{std::vector<double>(gvals.size(), 1.0), cN};
    std::vector<std::vector<double>> extra;
    {
        std::vector<double> plnp(pN.size());
        for (std::size_t i = 0; i < pN.size(); ++i)
            plnp[i] = pN[i] * std::log(pN[i] + 1.0);
        extra = {pN, plnp, lnN};
    }
    while (!extra.empty() &&
           gvals.size() < cols.size() + extra.size() + 1 + 2)
        extra.pop_back();
    for (auto& e : extra) cols.push_back(std::move(e));

    // ln(N!) column absorbs "more regular than required" curvature; a positive
    // weight would manufacture extra growth allowance, so it is clamped out.
    auto with_gamma = cols;
    with_gamma.push_back(lgN);
    std::vector<double> coef = solve_ls(with_gamma, gvals);
    const std::vector<std::vector<double>>* used = &with_gamma;
    if (coef.back() > 0.0) {
        coef = solve_ls(cols, gvals);
        used = &cols;
    }

    double maxres = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gvals.size(); ++i) {
        double pred = 0.0;
        for (std::size_t j = 0; j < used->size(); ++j)
            pred += coef[j] * (*used)[j][i];
        maxres = std::max(maxres, gvals[i] - pred);
    }
    fit.log_A = coef[0];
    fit.log_h = coef[1];
    fit.max_residual = maxres;
    bool boundary_fail =
        boundary >= std::max<int>(1, fit.informative_count / 4);
    fit.pass = !boundary_fail && maxres <= tol && std::isfinite(fit.log_h);
    return fit;
}

ChainReport check_implication_chain(const std::vector<DecayFit>& fits) {
    ChainReport rep;
    rep.consistent = true;
    using F = DecayCondition::Family;
    auto decided = [](const DecayFit& f) { return !f.undecided; };
    for (const auto& a : fits) {
        if (!decided(a) || !a.pass) continue;
        for (const auto& b : fits) {
            if (!decided(b) || &a == &b) continue;
            bool implies = false;
            if (a.condition.family == F::FloorPower &&
                b.condition.family == F::GevreyFactorial &&
                a.condition.t == b.condition.t)
                implies = true;
            if (a.condition.family == F::GevreyFactorial &&
                b.condition.family == F::RootFactorial &&
                a.condition.t == b.condition.t)
                implies = true;
            if (a.condition.family == F::GevreyFactorial &&
                b.condition.family == F::TauSigma)
                implies = true;  // every Gevrey class sits inside the extended ones
            if (implies && !b.pass) {
                rep.consistent = false;
                rep.violations.push_back(a.condition.name() + " passes but " +
                                         b.condition.name() + " fails");
            }
        }
    }
    return rep;
}

std::optional<double> detect_polynomial_decay(const DecaySamples& samples,
                                              double tol) {
    double xi_max = samples.xi_max;
    if (xi_max <= 0.0)
        for (const auto& gr : samples.groups)
            for (double x : gr.xi_norm) xi_max = std::max(xi_max, x);
    std::vector<double> lx, lm;
    for (const auto& gr : samples.groups)
        for (std::size_t i = 0; i < gr.xi_norm.size(); ++i) {
            if (gr.xi_norm[i] < xi_max / 100.0) continue;
            if (!std::isfinite(gr.log_mag[i])) continue;
            lx.push_back(std::log(gr.xi_norm[i]));
            lm.push_back(gr.log_mag[i]);
        }
    if (lx.size() < 8) return std::nullopt;
    std::vector<std::vector<double>> cols{std::vector<double>(lx.size(), 1.0), lx};
    std::vector<double> coef = solve_ls(cols, lm);
    double dev = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
        dev = std::max(dev, std::abs(lm[i] - coef[0] - coef[1] * lx[i]));
    if (dev <= tol) return -coef[1];
    return std::nullopt;
}

Ladder Ladder::standard() {
    Ladder l;
    l.t_grid = {1.0, 1.5, 2.0, 3.0};
    l.tau_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
    l.sigma_grid = {1.5, 2.0, 3.0};
    return l;
}

ClassVerdict classify_regularity(const DecaySamples& samples, const Ladder& ladder,
                                 double tol) {
    ClassVerdict v;
    if (auto s = detect_polynomial_decay(samples, tol)) {
        v.kind = ClassVerdict::Kind::Unclassified;
        v.detail = "polynomial decay of order " + std::to_string(*s) +
                   "; fails the smoothness ladder";
        return v;
    }
    auto record = [&](const DecayCondition& c) {
        DecayFit f = fit_condition(samples, c, tol);
        v.fits[c.name()] = f.pass;
        return f.pass && !f.undecided;
    };
    if (record(DecayCondition::gevrey(1.0))) {
        v.kind = ClassVerdict::Kind::Analytic;
        v.t = 1.0;
        return v;
    }
    for (double t : ladder.t_grid) {
        if (t <= 1.0) continue;
        if (record(DecayCondition::gevrey(t))) {
            v.kind = ClassVerdict::Kind::Gevrey;
            v.t = t;
            return v;
        }
    }
    for (double sigma : ladder.sigma_grid) {
        if (!(sigma > 1.0)) continue;
        for (double tau : ladder.tau_grid) {
            if (record(DecayCondition::tau_sigma_prime(tau, sigma))) {
                v.kind = ClassVerdict::Kind::Extended;
                v.tau = tau;
                v.sigma = sigma;
                return v;
            }
        }
    }
    v.kind = ClassVerdict::Kind::Smooth;
    v.detail = "decays faster than every polynomial order on the band";
    return v;
}

MembershipNorm membership_norm(const SampledField& phi,
                               const std::array<double, 2>& K_lo,
                               const std::array<double, 2>& K_hi,
                               const SequenceParams& params, double h, int alpha_max) {
    params.validate();
    if (!(h > 0.0)) throw std::invalid_argument("h must be > 0");
    MembershipNorm out;
    const GridSpec& g = phi.grid;
    int cap = std::min(alpha_max, kSpectralDerivativeCap);
    out.capped = cap < alpha_max;
    out.alpha_used = cap;

    auto sup_K = [&](const SampledField& f) {
        double m = 0.0;
        for (int i = 0; i < g.n[0]; ++i) {
            double x0 = g.coord(0, i);
            if (x0 < K_lo[0] || x0 > K_hi[0]) continue;
            if (g.dim == 1) {
                m = std::max(m, std::abs(f.at(i)));
            } else {
                for (int j = 0; j < g.n[1]; ++j) {
                    double x1 = g.coord(1, j);
                    if (x1 < K_lo[1] || x1 > K_hi[1]) continue;
                    m = std::max(m, std::abs(f.at(i, j)));
                }
            }
        }
        return m;
    };

    double best = -std::numeric_limits<double>::infinity();
    double best_fact = best;
    for (int a0 = 0; a0 <= cap; ++a0) {
        for (int a1 = 0; a1 <= (g.dim == 2 ? cap - a0 : 0); ++a1) {
            MultiIndex al{a0, a1};
            int order = mi_order(al);
            double sup = sup_K(spectral_derivative(phi, al));
            double lsup = sup > 0.0 ? std::log(sup)
                                    : -std::numeric_limits<double>::infinity();
            double os = std::pow(static_cast<double>(order), params.sigma);
            double lw = order > 0 ? os * std::log(h) + params.tau * os *
                                        std::log(static_cast<double>(order))
                                  : 0.0;
            double lwf = order > 0
                             ? os * std::log(h) +
                                   params.tau / params.sigma *
                                       std::lgamma(static_cast<double>(
                                                       guarded_floor(os)) +
                                                   1.0)
                             : 0.0;
            best = std::max(best, lsup - lw);
            best_fact = std::max(best_fact, lsup - lwf);
        }
    }
    out.norm = std::exp(best);
    out.norm_factorial = std::exp(best_fact);
    return out;
}

}  // namespace xgev
