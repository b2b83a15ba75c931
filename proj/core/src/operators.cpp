#include "xgev/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "xgev/fft.hpp"

namespace xgev {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

unsigned long long binom_ull(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

unsigned long long multinomial_ull(const std::vector<int>& a) {
    int total = 0;
    unsigned long long r = 1;
    for (int ak : a) {
        total += ak;
        r *= binom_ull(total, ak);
    }
    return r;
}

int S_of(const std::vector<int>& a) {
    int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<int>(k + 1) * a[k];
    return s;
}

}  // namespace

int ConstCoeffOperator::order() const {
    int m = 0;
    for (const auto& [al, c] : coeffs)
        if (std::abs(c) > 0.0) m = std::max(m, mi_order(al));
    return m;
}

cplx ConstCoeffOperator::symbol(const std::array<double, 2>& xi,
                                bool principal_only) const {
    int m = order();
    cplx s = 0.0;
    for (const auto& [al, c] : coeffs) {
        if (principal_only && mi_order(al) != m) continue;
        s += c * ipow(xi[0], al[0]) * ipow(xi[1], al[1]);
    }
    return s;
}

void ConstCoeffOperator::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
    int m = order();
    if (m < 1) throw std::invalid_argument("operator order must be >= 1");
    for (const auto& [al, c] : coeffs)
        if (dim == 1 && al[1] != 0)
            throw std::invalid_argument("1-D operator with second-axis index");
}

ConstCoeffOperator ConstCoeffOperator::from_terms(
    int dim, const std::vector<std::pair<MultiIndex, cplx>>& terms) {
    ConstCoeffOperator P;
    P.dim = dim;
    for (const auto& [al, c] : terms) P.coeffs[al] += c;
    P.validate();
    return P;
}

bool ConeSpec::contains(const std::array<double, 2>& xi) const {
    double norm = std::hypot(xi[0], xi[1]);
    if (norm < xi_min) return false;
    double dot = (xi[0] * direction[0] + xi[1] * direction[1]) / norm;
    return dot >= std::cos(half_angle);
}

void ConeSpec::validate(int dim) const {
    double n = std::hypot(direction[0], direction[1]);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("cone direction must be unit");
    if (!(half_angle > 0.0 && half_angle < M_PI / 2.0))
        throw std::invalid_argument("half_angle must be in (0, pi/2)");
    if (dim == 1 && direction[1] != 0.0)
        throw std::invalid_argument("1-D cone must point along the axis");
}

std::vector<std::array<double, 2>> characteristic_set(const ConstCoeffOperator& P,
                                                      int sphere_resolution,
                                                      double tol) {
    P.validate();
    std::vector<std::array<double, 2>> out;
    if (P.dim == 1) {
        for (double s : {-1.0, 1.0})
            if (std::abs(P.symbol({s, 0.0}, true)) <= tol) out.push_back({s, 0.0});
        return out;
    }
    if (sphere_resolution < 64) throw std::invalid_argument("resolution >= 64");
    for (int i = 0; i < sphere_resolution; ++i) {
        double th = 2.0 * M_PI * i / sphere_resolution;
        std::array<double, 2> dir{std::cos(th), std::sin(th)};
        if (std::abs(P.symbol(dir, true)) <= tol) out.push_back(dir);
    }
    return out;
}

std::pair<double, double> cone_ellipticity_constants(const ConstCoeffOperator& P,
                                                     const ConeSpec& cone,
                                                     int resolution) {
    P.validate();
    cone.validate(P.dim);
    double c1 = 1e300, c2 = 0.0;
    auto visit = [&](const std::array<double, 2>& dir) {
        double v = std::abs(P.symbol(dir, true));
        c1 = std::min(c1, v);
        c2 = std::max(c2, v);
    };
    if (P.dim == 1) {
        visit(cone.direction);
    } else {
        double base = std::atan2(cone.direction[1], cone.direction[0]);
        for (int i = 0; i <= resolution; ++i) {
            double th = base - cone.half_angle +
                        2.0 * cone.half_angle * i / resolution;
            visit({std::cos(th), std::sin(th)});
        }
    }
    if (!(c1 > 1e-12 * std::max(c2, 1.0)))
        throw std::domain_error("cone meets the characteristic set");
    return {c1, c2};
}

RFamily build_R_operators(const ConstCoeffOperator& P) {
    P.validate();
    int m = P.order();
    RFamily R;
    R.m = m;
    R.dim = P.dim;
    R.terms.resize(static_cast<std::size_t>(m));
    for (const auto& [al, c] : P.coeffs) {
        if (std::abs(c) == 0.0) continue;
        double sign_a = (mi_order(al) % 2 == 0) ? 1.0 : -1.0;  // (-1)^|alpha|
        for (int b0 = 0; b0 <= al[0]; ++b0) {
            for (int b1 = 0; b1 <= al[1]; ++b1) {
                MultiIndex beta{b0, b1};
                if (mi_order(al) == m && mi_order(beta) == 0) continue;  // principal
                int j = m - mi_order(al) + mi_order(beta);
                cplx coef = -c * sign_a *
                            static_cast<double>(binom_ull(al[0], b0) *
                                                binom_ull(al[1], b1));
                R.terms[static_cast<std::size_t>(j - 1)].push_back(
                    {coef, {al[0] - b0, al[1] - b1}, beta});
            }
        }
    }
    return R;
}

cplx RFamily::term_scalar(const Term& t, const std::array<double, 2>& xi,
                          const ConstCoeffOperator& P) const {
    cplx pm = P.symbol(xi, true);
    if (std::abs(pm) == 0.0) throw std::domain_error("xi on the characteristic set");
    return t.c * ipow(-xi[0], t.gamma[0]) * ipow(-xi[1], t.gamma[1]) / pm;
}

SampledField apply_R(const RFamily& R, int j, const ConstCoeffOperator& P,
                     const std::array<double, 2>& xi, const SampledField& w) {
    SampledField out(w.grid);
    for (const auto& t : R.terms[static_cast<std::size_t>(j - 1)]) {
        SampledField d = spectral_derivative(w, t.beta);
        axpy(out, R.term_scalar(t, xi, P), d);
    }
    return out;
}

double ParametrixConfig::tilde_tau() const {
    if (!(params.sigma > 1.0))
        throw std::invalid_argument("parametrix needs sigma > 1");
    return std::pow(params.tau, params.sigma / (params.sigma - 1.0));
}

int ParametrixConfig::S_max(int m) const {
    auto k = guarded_floor(
        std::pow(static_cast<double>(N) / tilde_tau(), 1.0 / params.sigma));
    return static_cast<int>(k) - m;
}

namespace {

// Homogeneity-resolved Neumann recurrence: h_0 = chi,
// h_s = sum_{j=1..min(m,s)} R_j h_{s-j}. The ordered expansions regroup into
// the multinomial sum, which is what makes the dual-path check meaningful.
std::vector<SampledField> homogeneity_layers(const ConstCoeffOperator& P,
                                             const RFamily& R,
                                             const SampledField& chi,
                                             const std::array<double, 2>& xi,
                                             int S_max) {
    std::vector<SampledField> h;
    h.push_back(chi);
    for (int s = 1; s <= S_max; ++s) {
        SampledField acc(chi.grid);
        for (int j = 1; j <= std::min(R.m, s); ++j) {
            SampledField rj = apply_R(R, j, P, xi,
                                      h[static_cast<std::size_t>(s - j)]);
            axpy(acc, 1.0, rj);
        }
        h.push_back(std::move(acc));
    }
    return h;
}

void check_parametrix_pre(const ConstCoeffOperator& P, const SampledField& chi,
                          const std::array<double, 2>& xi,
                          const ParametrixConfig& cfg) {
    P.validate();
    if (cfg.S_max(P.order()) < 0)
        throw std::invalid_argument("truncation S_max is negative for this N");
    double norm = std::hypot(xi[0], xi[1]);
    double band = static_cast<double>(guarded_floor(
        std::pow(static_cast<double>(cfg.N), 1.0 / cfg.params.sigma)));
    if (!(norm > band)) throw std::domain_error("|xi| must exceed floor(N^(1/sigma))");
    if (std::abs(P.symbol(xi, true)) == 0.0)
        throw std::domain_error("xi on the characteristic set");
    (void)chi;
}

}  // namespace

SampledField parametrix_partial_sum(const ConstCoeffOperator& P,
                                    const SampledField& chi,
                                    const std::array<double, 2>& xi,
                                    const ParametrixConfig& cfg) {
    check_parametrix_pre(P, chi, xi, cfg);
    RFamily R = build_R_operators(P);
    int m = P.order();
    int Smax = cfg.S_max(m);
    SampledField out(chi.grid);

    // DFS over a = (a_1..a_m), reusing the partially applied field.
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    std::function<void(int, int, const SampledField&)> rec =
        [&](int k, int S, const SampledField& field) {
            if (k > m) {
                axpy(out, static_cast<double>(multinomial_ull(a)), field);
                return;
            }
            rec(k + 1, S, field);
            SampledField cur = field;
            int ak = 0;
            while (S + (ak + 1) * k <= Smax) {
                cur = apply_R(R, k, P, xi, cur);
                ++ak;
                a[static_cast<std::size_t>(k - 1)] = ak;
                rec(k + 1, S + ak * k, cur);
            }
            a[static_cast<std::size_t>(k - 1)] = 0;
        };
    rec(1, 0, chi);
    return out;
}

SampledField parametrix_neumann(const ConstCoeffOperator& P, const SampledField& chi,
                                const std::array<double, 2>& xi,
                                const ParametrixConfig& cfg) {
    check_parametrix_pre(P, chi, xi, cfg);
    RFamily R = build_R_operators(P);
    auto h = homogeneity_layers(P, R, chi, xi, cfg.S_max(P.order()));
    SampledField out(chi.grid);
    for (const auto& layer : h) axpy(out, 1.0, layer);
    return out;
}

namespace {

// Enumerate the overshoot window S_max < S(a) <= S_max + m with the exact
// coefficients c(a) = sum over k of multinomial(a - e_k), restricted to
// predecessors inside the truncation.
void enumerate_error_window(
    int m, int S_max,
    const std::function<void(const std::vector<int>&, unsigned long long)>& emit) {
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int k, int S) {
        if (k > m) {
            if (S <= S_max) return;
            unsigned long long c = 0;
            for (int kk = 1; kk <= m; ++kk) {
                auto& ak = a[static_cast<std::size_t>(kk - 1)];
                if (ak == 0 || S - kk > S_max) continue;
                --ak;
                c += multinomial_ull(a);
                ++ak;
            }
            if (c > 0) emit(a, c);
            return;
        }
        for (int ak = 0; S + ak * k <= S_max + m; ++ak) {
            a[static_cast<std::size_t>(k - 1)] = ak;
            rec(k + 1, S + ak * k);
        }
        a[static_cast<std::size_t>(k - 1)] = 0;
    };
    rec(1, 0);
}

}  // namespace

SampledField error_term(const ConstCoeffOperator& P, const SampledField& chi,
                        const std::array<double, 2>& xi, const ParametrixConfig& cfg) {
    check_parametrix_pre(P, chi, xi, cfg);
    RFamily R = build_R_operators(P);
    int m = P.order();
    SampledField out(chi.grid);
    enumerate_error_window(
        m, cfg.S_max(m), [&](const std::vector<int>& a, unsigned long long c) {
            SampledField f = chi;
            for (int k = 1; k <= m; ++k)
                for (int rep = 0; rep < a[static_cast<std::size_t>(k - 1)]; ++rep)
                    f = apply_R(R, k, P, xi, f);
            axpy(out, static_cast<double>(c), f);
        });
    return out;
}

std::size_t error_term_count(const ConstCoeffOperator& P,
                             const ParametrixConfig& cfg) {
    P.validate();
    std::size_t n = 0;
    enumerate_error_window(P.order(), cfg.S_max(P.order()),
                           [&](const std::vector<int>&, unsigned long long) { ++n; });
    return n;
}

double verify_fundamental_identity(const ConstCoeffOperator& P,
                                   const SampledField& chi,
                                   const std::array<double, 2>& xi,
                                   const ParametrixConfig& cfg) {
    check_parametrix_pre(P, chi, xi, cfg);
    SampledField wN = parametrix_partial_sum(P, chi, xi, cfg);
    SampledField eN = error_term(P, chi, xi, cfg);

    cplx pm = P.symbol(xi, true);
    SampledField v = wN;
    for (auto& val : v.values) val /= pm;

    // P^T(D)(e^{-ix.xi} v) = e^{-ix.xi} sum_alpha a_alpha (-1)^|alpha|
    // (D - xi)^alpha v; the conjugated form keeps xi off the dual lattice.
    SampledField acc(chi.grid);
    for (const auto& [al, c] : P.coeffs) {
        if (std::abs(c) == 0.0) continue;
        double sign = (mi_order(al) % 2 == 0) ? 1.0 : -1.0;
        SampledField d = spectral_shifted_derivative(v, al, xi);
        axpy(acc, c * sign, d);
    }
    axpy(acc, 1.0, eN);
    axpy(acc, -1.0, chi);
    double denom = chi.sup_abs();
    if (denom == 0.0) return 0.0;
    return acc.sup_abs() / denom;
}

MultinomialReport multinomial_count(int m, int S_max) {
    if (m < 1 || S_max < 0) throw std::invalid_argument("need m >= 1, S_max >= 0");
    MultinomialReport rep;
    rep.counts_per_S.assign(static_cast<std::size_t>(S_max) + 1, 0);
    rep.pascal_ok = true;
    rep.bound_ok = true;
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int k, int S) {
        if (k > m) {
            ++rep.counts_per_S[static_cast<std::size_t>(S)];
            unsigned long long mn = multinomial_ull(a);
            int na = 0;
            for (int ak : a) na += ak;
            if (na >= 1) {
                unsigned long long sum = 0;
                for (auto& ak : a) {
                    if (ak == 0) continue;
                    --ak;
                    sum += multinomial_ull(a);
                    ++ak;
                }
                if (sum != mn) rep.pascal_ok = false;
            }
            if (S < 64 && mn > (1ULL << S)) rep.bound_ok = false;
            return;
        }
        for (int ak = 0; S + ak * k <= S_max; ++ak) {
            a[static_cast<std::size_t>(k - 1)] = ak;
            rec(k + 1, S + ak * k);
        }
        a[static_cast<std::size_t>(k - 1)] = 0;
    };
    rec(1, 0);
    return rep;
}

SampledField apply_ultradiff_operator(
    const std::map<MultiIndex, cplx>& coeff_family, const SampledField& phi,
    int trunc, const SequenceParams& params, double A, double L) {
    params.validate();
    if (!(params.sigma > 1.0))
        throw std::invalid_argument("ultradifferentiable class needs sigma > 1");
    int cap = std::min(trunc, kSpectralDerivativeCap);
    double resc = params.tau * std::pow(2.0, params.sigma - 1.0);
    for (const auto& [al, c] : coeff_family) {
        int o = mi_order(al);
        if (o > cap || std::abs(c) == 0.0) continue;
        if (o == 0) continue;  // the bound is vacuous at alpha = 0
        double os = std::pow(static_cast<double>(o), params.sigma);
        double bound = std::log(A) + os * std::log(L) -
                       resc * os * std::log(static_cast<double>(o));
        if (std::log(std::abs(c)) > bound + 1e-9)
            throw std::invalid_argument("coefficient family violates class decay");
    }
    return apply_multiplier(phi, [&](double x0, double x1) {
        cplx s = 0.0;
        for (const auto& [al, c] : coeff_family) {
            if (mi_order(al) > cap) continue;
            // partial derivatives: d^alpha <-> (i xi)^alpha
            cplx f = c;
            for (int i = 0; i < al[0]; ++i) f *= cplx(0.0, x0);
            for (int i = 0; i < al[1]; ++i) f *= cplx(0.0, x1);
            s += f;
        }
        return s;
    });
}

}  // namespace xgev
