#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qcp/errors.hpp"
#include "qcp/special_functions.hpp"
#include "support/oracles.hpp"

using namespace qcp;
using qcp::oracle::pi;

TEST(ChebyshevU, SmallDegrees) {
    EXPECT_DOUBLE_EQ(special::chebyshev_u(-1, 0.3), 0.0);
    EXPECT_DOUBLE_EQ(special::chebyshev_u(0, 0.3), 1.0);
    EXPECT_DOUBLE_EQ(special::chebyshev_u(1, 0.3), 0.6);
    EXPECT_NEAR(special::chebyshev_u(3, 0.5), -1.0, 1e-15);
    EXPECT_THROW(special::chebyshev_u(-2, 0.1), InvalidArgument);
}

TEST(ChebyshevU, MatchesTrigonometricForm) {
    double worst = 0.0;
    for (int n = 0; n <= 500; n += 7) {
        for (double t = 0.01; t < pi - 0.01; t += 0.0371) {
            double ref = std::sin((n + 1) * t) / std::sin(t);
            worst = std::max(worst, std::abs(special::chebyshev_u(n, std::cos(t)) - ref));
        }
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(BoundaryPolynomial, MatchesChebyshevCombination) {
    Overlap c(0.4);
    for (int n = 2; n < 40; ++n) {
        for (double x = -0.99; x < 1.0; x += 0.11) {
            double ref = special::chebyshev_u(n, x) - 2 * c.c() * special::chebyshev_u(n - 1, x) +
                         c.c2() * special::chebyshev_u(n - 2, x);
            EXPECT_NEAR(special::boundary_polynomial(n, c, x), ref, 1e-11 * (1 + std::abs(ref)));
        }
    }
}

TEST(BoundaryPolynomial, ReducesToChebyshevAtZeroOverlap) {
    for (double x : {-0.7, 0.1, 0.9}) EXPECT_DOUBLE_EQ(special::boundary_polynomial(6, Overlap(0.0), x), special::chebyshev_u(6, x));
}

TEST(BoundaryPolynomial, ExactlyNSignChanges) {
    for (int n : {1, 2, 3, 10, 57, 150, 300}) {
        for (double cv = 0.1; cv < 0.95; cv += 0.1) {
            Overlap c(cv);
            const int cells = 40 * n;
            int changes = 0;
            double prev = special::boundary_polynomial(n, c, std::cos(1e-9));
            for (int i = 1; i <= cells; ++i) {
                double t = pi * i / cells;
                if (i == cells) t = pi - 1e-9;
                double v = special::boundary_polynomial(n, c, std::cos(t));
                if ((v > 0) != (prev > 0)) ++changes;
                prev = v;
            }
            EXPECT_EQ(changes, n) << "n=" << n << " c=" << cv;
        }
    }
}

TEST(PhaseAmplitude, RightAngleExample) {
    auto pa = special::phase_amplitude(pi / 2, Overlap(0.5));
    EXPECT_NEAR(pa.phase, std::atan2(0.75, -1.0), 1e-14);
    EXPECT_NEAR(pa.phase, 2.498, 5e-4);
}

TEST(PhaseAmplitude, ReproducesPolynomial) {
    for (double cv : {0.0, 0.2, 0.5, 0.8, 0.95}) {
        Overlap c(cv);
        for (int n : {1, 4, 25, 120}) {
            for (double t = 0.005; t < pi; t += 0.0173) {
                auto pa = special::phase_amplitude(t, c);
                double ref = special::boundary_polynomial(n, c, std::cos(t));
                EXPECT_NEAR(pa.amplitude * std::sin(n * t + pa.phase), ref, 1e-9 * (1 + std::abs(ref)))
                    << "n=" << n << " c=" << cv << " t=" << t;
            }
        }
    }
}

TEST(PhaseAmplitude, PhaseInOpenInterval) {
    for (double cv = 0.0; cv < 0.999; cv += 0.037) {
        for (double t = 1e-6; t < pi; t += 0.011) {
            double d = special::phase_amplitude(t, Overlap(cv)).phase;
            EXPECT_GT(d, 0.0);
            EXPECT_LT(d, pi);
        }
    }
}

TEST(PhaseAmplitude, RejectsEndpoints) {
    EXPECT_THROW(special::phase_amplitude(0.0, Overlap(0.3)), SingularArgument);
    EXPECT_THROW(special::phase_amplitude(pi, Overlap(0.3)), SingularArgument);
}

TEST(EllipticK, Values) {
    EXPECT_DOUBLE_EQ(special::elliptic_k(0.0), pi / 2);
    EXPECT_NEAR(special::elliptic_k(0.5), 1.8540746773014, 1e-12);
    EXPECT_NEAR(special::elliptic_k(0.5), oracle::elliptic_k(0.5), 1e-14);
    for (double m : {0.01, 0.3, 0.7, 0.9, 0.99}) {
        EXPECT_NEAR(special::elliptic_k(m), oracle::elliptic_k(m), 1e-13 * oracle::elliptic_k(m)) << m;
    }
}

TEST(EllipticK, StrictlyIncreasing) {
    double prev = special::elliptic_k(0.0);
    for (int i = 1; i < 1000; ++i) {
        double k = special::elliptic_k(i / 1000.0);
        EXPECT_GT(k, prev);
        prev = k;
    }
}

TEST(EllipticK, Errors) {
    EXPECT_THROW(special::elliptic_k(1.0), DivergentArgument);
    EXPECT_THROW(special::elliptic_k(1.5), DivergentArgument);
    EXPECT_THROW(special::elliptic_k(-0.1), InvalidArgument);
}

TEST(EllipticK, TraceLimitIdentity) {
    for (double c : {0.3, 0.6, 0.9}) {
        double lhs = 2 * std::sqrt(1 - c * c) / pi * special::elliptic_k(c * c);
        EXPECT_NEAR(lhs, oracle::trace_limit_integral(c), 1e-12) << c;
    }
}

TEST(OverlapParam, Validation) {
    EXPECT_THROW(Overlap(-0.1), InvalidArgument);
    EXPECT_THROW(Overlap(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
    EXPECT_THROW(Overlap(1.0), DegenerateEnsemble);
    EXPECT_DOUBLE_EQ(Overlap::from_c2(0.36).c(), 0.6);
    EXPECT_DOUBLE_EQ(Overlap(0.6).s(), 0.8);
}
