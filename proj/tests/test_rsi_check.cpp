#include <gtest/gtest.h>

#include "hardyz/rsi_check.hpp"

using namespace hardyz;

namespace {

struct CiiRow {
    double t;
    std::complex<double> numeric, asymptotic;
    double rel_err;
    int num_sig;  // significant figures printed for the numerical column
};

// Printed comparison table of the integral against its asymptotic form.
const CiiRow kRows[] = {
    {10, {-6.138923e3, -8.223933e4}, {-6.058749e3, -8.115024e4}, 1.32e-2, 7},
    {20, {8.148139e10, 3.291390e10}, {8.098092e10, 3.271175e10}, 6.14e-3, 7},
    {30, {1.456097e17, -3.009586e16}, {1.450347e17, -2.997701e16}, 3.95e-3, 7},
    {40, {-2.518034e23, -1.917761e23}, {-2.510735e23, -1.912200e23}, 2.90e-3, 7},
    {50, {7.552e29, 1.865e29}, {7.533717e29, 1.860975e29}, 2.41e-3, 4},
};

// within one unit of the last printed digit
bool sig_match(double got, double printed, int sig) {
    double ulp = std::pow(10.0, std::floor(std::log10(std::fabs(printed))) - (sig - 1));
    return std::fabs(got - printed) <= ulp * (1 + 1e-9);
}

}  // namespace

// Independent 50-digit evaluations (mpmath quad along the same line; the asymptotic
// formula with hyperbolic argument sqrt(pi t/2) and siegeltheta).
struct OracleRow {
    double t;
    std::complex<double> numeric, asymptotic;
};

const OracleRow kOracle[] = {
    {10, {-6138.92334481, -82239.3274558}, {-6058.74978167, -81155.023753}},
    {20, {81481391652.5, 32913897660.5}, {80980919126.0, 32711734919.6}},
    {30, {1.45609712065e+17, -3.0095859445e+16}, {1.45034688945e+17, -2.99770087533e+16}},
    {40, {-2.51803486435e+23, -1.91776003319e+23}, {-2.51073480387e+23, -1.91220023557e+23}},
    {50, {7.55097827395e+29, 1.86523855692e+29}, {7.53371663995e+29, 1.86097459746e+29}},
};

TEST(RsiAsymptotic, MatchesOracle) {
    for (const auto& r : kOracle) {
        RsiValue v = rsi_asymptotic(r.t);
        EXPECT_EQ(v.log_scale, 0.0);
        EXPECT_LT(std::abs(v.value - r.asymptotic) / std::abs(r.asymptotic), 1e-10) << r.t;
    }
}

TEST(RsiNumeric, MatchesOracle) {
    for (const auto& r : kOracle) {
        RsiValue v = rsi_numeric(r.t);
        EXPECT_LT(v.est_err, 1e-6);
        EXPECT_LT(std::abs(v.value - r.numeric) / std::abs(r.numeric), 1e-10) << r.t;
    }
}

// Printed cells that agree with the oracle to one unit in the last figure.
TEST(Rsi, PrintedCellsThatAgree) {
    for (const auto& r : kRows) {
        RsiValue n = rsi_numeric(r.t), a = rsi_asymptotic(r.t);
        EXPECT_TRUE(sig_match(a.value.real(), r.asymptotic.real(), 7)) << r.t;
        if (r.t >= 30) EXPECT_TRUE(sig_match(a.value.imag(), r.asymptotic.imag(), 7)) << r.t;
        if (r.t <= 40) EXPECT_TRUE(sig_match(n.value.real(), r.numeric.real(), r.num_sig)) << r.t;
        EXPECT_TRUE(sig_match(n.value.imag(), r.numeric.imag(), r.num_sig)) << r.t;
    }
}

TEST(RsiNumeric, RelativeErrorsMatchColumn) {
    double first = 0, last = 0;
    for (const auto& r : kRows) {
        std::complex<double> n = rsi_numeric(r.t).value, a = rsi_asymptotic(r.t).value;
        double rel = std::abs(a - n) / std::abs(n);
        EXPECT_NEAR(rel, r.rel_err, 0.1 * r.rel_err) << r.t;
        if (r.t == 10) first = rel;
        if (r.t == 50) last = rel;
    }
    double ratio = last / first;
    EXPECT_GT(ratio, 0.2 / 1.5);
    EXPECT_LT(ratio, 0.2 * 1.5);
}

TEST(RsiNumeric, ProjectsToHardyZ) {
    // Euler-Maclaurin zeta(1/2 + 30i) rotated by theta, 30 digits
    const double z30 = 0.596028519239884955318514309521;
    double z = rsi_hardy_z(30.0);
    EXPECT_LT(std::fabs(z - z30), 1e-3 * std::fabs(z30));
    EXPECT_LT(std::fabs(z - z30), 1e-8);
}

TEST(RsiAsymptotic, Imaginarity) {
    for (double t : {6.0, 10.0, 25.0, 50.0, 300.0}) {
        RsiValue v = rsi_asymptotic(t);
        double th = double(theta_quad(t));
        std::complex<double> rot = std::polar(1.0, th) * v.value;
        EXPECT_LE(std::fabs(rot.real()), 1e-10 * std::fabs(rot.imag())) << t;
    }
}

TEST(RsiAsymptotic, LargeTUsesLogScale) {
    RsiValue v = rsi_asymptotic(1e4);
    EXPECT_GT(v.log_scale, 700.0);
    EXPECT_TRUE(std::isfinite(v.value.real()));
    EXPECT_DOUBLE_EQ(v.est_err, 1e-4);
}

TEST(Rsi, RangeErrors) {
    EXPECT_THROW(rsi_numeric(4.0), std::out_of_range);
    EXPECT_THROW(rsi_numeric(61.0), std::out_of_range);
    EXPECT_THROW(rsi_asymptotic(5.0), std::out_of_range);
}

// mpmath siegeltheta at 34 digits.
TEST(ThetaQuad, Oracle) {
    struct {
        double t;
        const char* v;
    } rows[] = {
        {5, "-3.459620375363462533185467085276682"},
        {10, "-3.067074396289895291702013534809486"},
        {30, "8.057800136563990199417473957290504"},
        {1e6, "5488816.353078403444882823154365663"},
    };
    for (const auto& r : rows) {
        __float128 expect = strtoflt128(r.v, nullptr);
        __float128 got = theta_quad(r.t);
        __float128 d = fabsq(got - expect) / fmaxq(1, fabsq(expect));
        EXPECT_LT(double(d), 1e-31) << r.t;
    }
}
