#include <doctest.h>

#include <cmath>

#include "xgev/cutoffs.hpp"

using namespace xgev;

namespace {

CutoffSpec spec_1d(int N, double tau = 1.0, double sigma = 2.0, double r = 1.0,
                   int n = 4096) {
    CutoffSpec s;
    s.params = {tau, sigma};
    s.N = N;
    s.r = r;
    s.grid = GridSpec::line(n, -4.5, 4.5);
    return s;
}

}  // namespace

TEST_CASE("factor count and width schedule") {
    CutoffSpec s = spec_1d(16);
    CHECK(s.factor_count() == 4);  // floor((16/1)^(1/2))
    CHECK(s.width() == doctest::Approx(1.0 / 16.0));
    CutoffSpec s2 = spec_1d(1);
    CHECK(s2.factor_count() == 1);
    CutoffSpec s3 = spec_1d(60, 2.0, 3.0);
    CHECK(s3.factor_count() == 3);  // floor(30^(1/3))
}

TEST_CASE("spec validation enforces margins and resolution") {
    CutoffSpec s = spec_1d(64);
    CHECK_NOTHROW(s.validate());
    s.grid = GridSpec::line(4096, -2.0, 2.0);  // box too small for B_{2r + r/4}
    CHECK_THROWS_AS(s.validate(), std::domain_error);
    s = spec_1d(64, 1.0, 2.0, 1.0, 64);  // spacing > width/2
    CHECK_THROWS_AS(s.validate(), std::domain_error);
}

TEST_CASE("cut-off is a plateau function with the right support") {
    SampledField chi = build_cutoff(spec_1d(16));
    const GridSpec& g = chi.grid;
    double max_im = 0.0, lo_tail = 0.0, plateau_err = 0.0;
    for (int i = 0; i < g.n[0]; ++i) {
        double x = g.coord(0, i);
        max_im = std::max(max_im, std::abs(chi.values[i].imag()));
        if (std::abs(x) <= 1.0)
            plateau_err = std::max(plateau_err,
                                   std::abs(chi.values[i].real() - 1.0));
        if (std::abs(x) >= 2.0 + 0.05)
            lo_tail = std::max(lo_tail, std::abs(chi.values[i]));
        CHECK(chi.values[i].real() > -1e-10);
        CHECK(chi.values[i].real() < 1.0 + 1e-10);
    }
    CHECK(max_im < 1e-12);
    CHECK(plateau_err < 1e-10);   // identically 1 on B_r
    CHECK(lo_tail < 1e-10);       // supported in B_{2r}
}

TEST_CASE("derivative growth follows the admissibility pattern") {
    std::vector<int> Ns{4, 9, 16, 25, 36};
    CutoffSequence seq = build_cutoff_sequence({0.0, 0.0}, 1.0, {1.0, 2.0}, Ns,
                                               GridSpec::line(8192, -4.5, 4.5));
    AdmissibilityReport rep = verify_admissibility(seq, 6, 1);
    CHECK(rep.pass);
    CHECK(rep.c_beta.at(beta_key({0, 0})) > 0.0);
    // The per-N witnesses of the top half agree within the factor-2 policy.
    double lo = 1e300, hi = 0.0;
    int i = 0;
    for (const auto& [N, per_beta] : rep.c_beta_per_N) {
        if (i++ < (int)rep.c_beta_per_N.size() / 2) continue;
        double c = per_beta.at(beta_key({0, 0}));
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CHECK(hi <= 2.0 * lo);
}

TEST_CASE("fourier decay of the family is certified") {
    std::vector<int> Ns{4, 9, 16, 25};
    CutoffSequence seq = build_cutoff_sequence({0.0, 0.0}, 1.0, {1.0, 2.0}, Ns,
                                               GridSpec::line(8192, -4.5, 4.5));
    CutoffFourierReport rep = cutoff_fourier_decay(seq, 2, 1);
    CHECK(rep.pass);
    CHECK(rep.A_beta > 0.0);
}

TEST_CASE("2-D cut-off plateau") {
    CutoffSpec s;
    s.params = {1.0, 2.0};
    s.N = 4;
    s.r = 1.0;
    s.grid = GridSpec::square(256, -4.5, 4.5);
    SampledField chi = build_cutoff(s);
    int mid = 0;
    // locate grid point nearest the origin
    double best = 1e300;
    for (int i = 0; i < s.grid.n[0]; ++i) {
        double d = std::abs(s.grid.coord(0, i));
        if (d < best) { best = d; mid = i; }
    }
    CHECK(std::abs(chi.at(mid, mid).real() - 1.0) < 1e-8);
    CHECK(std::abs(chi.at(0, 0)) < 1e-8);  // far corner
}
