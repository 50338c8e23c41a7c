#include <gtest/gtest.h>

#include "hardyz/bench.hpp"
#include "hardyz/hybrid.hpp"

using namespace hardyz;

TEST(XOfOmega, Values) {
    EXPECT_NEAR(x_of_omega(1.0), 2 * std::sqrt(2.0) - 2, 1e-12);
    EXPECT_NEAR(100 * (1 - x_of_omega(1.30)), 14.2, 0.05);
    EXPECT_NEAR(100 * (1 - x_of_omega(1.17)), 15.3, 0.05);
    EXPECT_NEAR(x_of_omega(1e6), 1.0, 1e-5);
    EXPECT_THROW(x_of_omega(0.9), std::domain_error);
}

TEST(XOfOmega, SavingPositiveAndDecreasing) {
    double prev = 1e9;
    for (double w = 1.0; w <= 3.0; w += 0.01) {
        double s = predicted_saving_pct(w);
        EXPECT_GT(s, 0.0) << w;
        EXPECT_LT(s, prev) << w;
        prev = s;
    }
}

TEST(Cutoffs, MillionFloor) {
    HybridConfig c = cutoffs(1e6, 1.0);
    EXPECT_EQ(c.n_co, 282);
    EXPECT_EQ(c.l_co, 1691);
    EXPECT_DOUBLE_EQ(c.pc_co, 2.0);
    EXPECT_THROW(cutoffs(150.0, 1.0), std::out_of_range);
    EXPECT_THROW(cutoffs(1e6, 0.5), std::domain_error);
}

TEST(Cutoffs, Consistency) {
    for (double t : {1e4, 1e6, 1e8}) {
        for (double w : {1.0, 1.3, 2.0}) {
            HybridConfig c = cutoffs(t, w, Rounding::nearest);
            double pc = 1 + 1 / w;
            double x = std::sqrt(t / (2 * M_PI * pc));
            double a = std::sqrt(8 * t / M_PI);
            EXPECT_NEAR(a / (4 * std::sqrt(pc)), x, 1e-9 * x);
            // nearest mode keeps N < x, so the RS tail starts at round(x)
            EXPECT_EQ(c.n_co + 1, std::llround(x));
            double big_x = std::sqrt(2 * t / M_PI) * (pc + 1) / std::sqrt(pc);
            EXPECT_NEAR(pc_of_alpha(big_x, t).pc, pc, 1e-9);
            EXPECT_LE(std::fabs(double(c.l_co) - big_x), 1.0);
        }
    }
}

TEST(SaddleMap, Examples) {
    double t = 1e6;
    EXPECT_NEAR(saddle_map(1, t), t / M_PI + 2, 1e-15 * t);
    // N = sqrt(t/2pi) needs t = 2pi N^2
    double t2 = 2 * M_PI * 400.0 * 400.0;
    EXPECT_NEAR(saddle_map(400, t2), std::sqrt(8 * t2 / M_PI), 1e-9);
    double prev = 1e300;
    for (std::int64_t k = 1; k <= n_t_of(t); ++k) {
        double v = saddle_map(k, t);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(PracticalBound, Values) {
    EXPECT_NEAR(practical_bound(1e6, 1.0), 1.191e-1, 5e-5);
    EXPECT_NEAR(practical_bound(1e12, 1.0), 3.766e-3, 5e-7);
    EXPECT_DOUBLE_EQ(practical_bound(1e6, 1.0), std::pow(64 * M_PI / 1e6, 0.25));
    EXPECT_LT(practical_bound(2e6, 1.0), practical_bound(1e6, 1.0));
    EXPECT_GT(practical_bound(1e6, 1.3), practical_bound(1e6, 1.0));
}

TEST(CostCurve, GridMinimumAtOptimalCutoff) {
    double t = 1e8;
    for (double w : {1.0, 1.17, 1.3, 2.0}) {
        double best = 0, best_cost = 1e300, step = 0.01;
        for (double pc = 1.05; pc <= 4.0 + 1e-9; pc += step) {
            double c = hybrid_cost(t, pc, w);
            if (c < best_cost) {
                best_cost = c;
                best = pc;
            }
        }
        EXPECT_NEAR(best, 1 + 1 / w, step) << w;
    }
}

TEST(HybridZ, TermCountAtMillion) {
    double t = 1e6;
    EvalResult r = hybrid_z(t, cutoffs(t, 1.0));
    EXPECT_FALSE(r.transition_used);
    std::int64_t s = r.rs_terms + r.new_terms;
    EXPECT_NEAR(double(s), (2 * std::sqrt(2.0) - 2) * std::sqrt(t / (2 * M_PI)), 2.0);
    EXPECT_NEAR(double(s), 330.0, 2.0);
    HybridConfig c = cutoffs(t, 1.0);
    EXPECT_EQ(r.new_terms, (c.l_co - odd_floor(std::sqrt(8 * t / M_PI)) - 2) / 2 + 1);
}

TEST(HybridZ, TermCountSaving) {
    for (double t : {1e6, 1e8, 1e10}) {
        EvalResult r = hybrid_z(t, cutoffs(t, 1.0));
        double saving = 100.0 * (1.0 - double(r.rs_terms + r.new_terms) / double(n_t_of(t)));
        EXPECT_NEAR(saving, 17.16, 0.1) << t;
    }
}

TEST(HybridZ, CloseToRsOnGramPoints) {
    int within = 0, n = 300;
    for (int i = 0; i < n; ++i) {
        double t = gram_point(1747145 + i);
        HybridConfig c = cutoffs(t, 1.0, Rounding::nearest);
        if (std::fabs(hybrid_z(t, c).z - rs_z(t).z) <= practical_bound(t, 1.0)) ++within;
    }
    EXPECT_GE(within, n * 99 / 100);
}

TEST(HybridZ, DegenerateRange) {
    HybridConfig c = cutoffs(1e6, 1.0);
    c.l_co = 1501;
    EXPECT_THROW(hybrid_z(1e6, c), std::domain_error);
    c = cutoffs(1e6, 1.0);
    c.n_co = 0;
    EXPECT_THROW(hybrid_z(1e6, c), std::domain_error);
}

TEST(ErrorSweep, SinglePoint) {
    HybridConfig tmpl;
    std::vector<SweepRecord> recs;
    ErrorStats st = error_sweep(1747145, 1, tmpl, {}, &recs);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(st.count, 1);
    EXPECT_DOUBLE_EQ(st.mean_abs_error, std::fabs(recs[0].error));
    EXPECT_DOUBLE_EQ(st.max_abs_error, std::fabs(recs[0].error));
    EXPECT_EQ(st.max_at_gram, 1747145);
    EXPECT_DOUBLE_EQ(st.mean_exponent_s, std::log(std::fabs(recs[0].error)) / std::log(recs[0].t));
    EXPECT_THROW(error_sweep(1747145, 0, tmpl), std::invalid_argument);
}

TEST(ErrorSweep, BoundConstantPerRun) {
    HybridConfig tmpl;
    std::vector<SweepRecord> recs;
    ErrorStats st = error_sweep(1747145, 30, tmpl, {}, &recs);
    std::int64_t over = 0;
    for (const auto& r : recs) {
        EXPECT_EQ(r.bound, practical_bound(gram_point(1747145), 1.0));
        if (std::fabs(r.error) > r.bound) ++over;
    }
    EXPECT_EQ(st.violations, over);
}

TEST(ErrorSweep, WorkerIndependent) {
    HybridConfig tmpl;
    ErrorStats a = error_sweep(1747145, 40, tmpl, Exec{1});
    ErrorStats b = error_sweep(1747145, 40, tmpl, Exec{4});
    EXPECT_EQ(a.mean_abs_error, b.mean_abs_error);
    EXPECT_EQ(a.max_abs_error, b.max_abs_error);
}

TEST(TransitionHelpers, OffsetSolve) {
    double t = t_for_offset(1597, 0.93);
    double a = std::sqrt(8 * t / M_PI);
    EXPECT_NEAR(a + 0.93 * std::pow(t, -1.0 / 6.0), 1597.0, 1e-9);
    EXPECT_THROW(t_for_offset(1596, 0.0), std::domain_error);
    EXPECT_LT(n_t_minus(t), n_t_of(t));
}
