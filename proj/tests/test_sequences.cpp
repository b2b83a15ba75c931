#include <doctest.h>

#include <cmath>

#include "xgev/sequences.hpp"

using namespace xgev;

TEST_CASE("defining sequence values and normalization") {
    // M_p = p^(tau p^sigma) in the log domain; M_0 = M_1 = 1.
    CHECK(log_defining_sequence({1.0, 2.0}, 0) == 0.0);
    CHECK(log_defining_sequence({1.0, 2.0}, 1) == 0.0);
    CHECK(log_defining_sequence({1.0, 2.0}, 2) ==
          doctest::Approx(4.0 * std::log(2.0)));
    CHECK(log_defining_sequence({0.5, 3.0}, 3) ==
          doctest::Approx(0.5 * 27.0 * std::log(3.0)));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SequenceParams({0.0, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(SequenceParams({1.0, 0.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(SequenceParams({-1.0, 2.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(SequenceParams({1.0, 1.0}).validate());  // Gevrey endpoint
    CHECK_NOTHROW(SequenceParams({0.25, 1.5}).validate());
}

TEST_CASE("log-convexity and growth constants") {
    for (double tau : {0.5, 1.0, 2.0}) {
        for (double sigma : {1.5, 2.0, 3.0}) {
            PropertyReport rep = verify_sequence_properties({tau, sigma}, 200);
            CAPTURE(tau);
            CAPTURE(sigma);
            CHECK(rep.m1_ok);
            CHECK(rep.m2prime_constant > 0.0);
            CHECK(std::isfinite(rep.m2_constant));
            // Partial sums of M_{p-1}/M_p converge fast past p = 150.
            const auto& s = rep.m3prime_partial_sums;
            CHECK(s.back() - s[149] < 1e-12);
            CHECK(rep.simple_inequality_ok);
        }
    }
}

TEST_CASE("floor-power inequality directly") {
    // log LHS = floor((N/tau)^(1/sigma)) * ln floor(N^(1/sigma)),
    // log RHS = (N / (sigma tau^(1/sigma))) * ln N. Brute-checked here.
    for (double tau : {0.5, 1.0, 2.0}) {
        for (double sigma : {1.5, 2.0, 3.0}) {
            for (std::int64_t N = 1; N <= 5000; N += 7) {
                auto lhs = std::floor(std::pow((double)N / tau, 1.0 / sigma)) *
                           std::log(std::max(1.0, std::floor(std::pow((double)N, 1.0 / sigma))));
                auto rhs = (double)N / (sigma * std::pow(tau, 1.0 / sigma)) *
                           std::log((double)N);
                CHECK(simple_floor_inequality({tau, sigma}, N));
                CHECK(lhs <= rhs + 1e-9);
            }
        }
    }
}

TEST_CASE("Stirling comparison converges along integer powers") {
    // For sigma = 2, p^sigma is an integer at every p: the ratio tends to 1.
    double r_small = stirling_compare({1.0, 2.0}, 10);
    double r_big = stirling_compare({1.0, 2.0}, 60);
    CHECK(std::abs(r_big - 1.0) < std::abs(r_small - 1.0) + 1e-12);
    CHECK(r_big == doctest::Approx(1.0).epsilon(1e-3));
    // Also at tau = 2.
    CHECK(stirling_compare({2.0, 2.0}, 60) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("embedding constant dominates the brute-force supremum") {
    for (double h : {0.5, 1.0}) {
        for (double k : {1.0, 2.0, 4.0}) {
            if (k <= h) continue;
            for (auto [t1, t2] : {std::pair{0.5, 1.0}, {1.0, 2.0}, {0.25, 4.0}}) {
                for (double sigma : {1.5, 2.0}) {
                    double bound = embedding_constant(t1, t2, sigma, h, k);
                    double sup = embedding_sup(t1, t2, sigma, h, k, 200);
                    CAPTURE(h);
                    CAPTURE(k);
                    CAPTURE(t1);
                    CAPTURE(t2);
                    CHECK(sup <= bound * (1.0 + 1e-9));
                    CHECK(sup >= 1.0);
                }
            }
        }
    }
    CHECK_THROWS_AS(embedding_constant(1.0, 0.5, 2.0, 1.0, 2.0),
                    std::invalid_argument);
}
