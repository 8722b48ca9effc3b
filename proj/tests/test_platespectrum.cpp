#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "orthodeck/beamrod.hpp"
#include "orthodeck/deck.hpp"
#include "orthodeck/errors.hpp"
#include "orthodeck/oracle.hpp"
#include "orthodeck/platespectrum.hpp"

using namespace orthodeck;
using namespace orthodeck::spectrum;

namespace {

const DeckModel& model() {
    static const DeckModel m = tacoma_model();
    return m;
}

SpectrumProblem paper() { return SpectrumProblem::from(model()); }

double m4(int m) { return std::pow(double(m), 4); }

// Edge operators applied to a two-function basis at y = l~; returns |det| / (|a d| + |b c|).
template <class F0, class F1>
long double generic_det(F0 f0, F1 f1, double m, double nu) {
    const long double m2 = (long double)m * m;
    auto B1 = [&](auto f) { return f(2) - nu * m2 * f(0); };
    auto B2 = [&](auto f) { return f(3) + (nu - 2.0L) * m2 * f(1); };
    const long double a = B1(f0), b = B1(f1), c = B2(f0), d = B2(f1);
    return std::abs(a * d - b * c) / (std::abs(a * d) + std::abs(b * c));
}

// k-th derivative at y of cosh, sinh, cos, sin(r y)
long double dcosh(int k, long double r, long double y) {
    return std::pow(r, k) * (k % 2 == 0 ? std::cosh(r * y) : std::sinh(r * y));
}
long double dsinh(int k, long double r, long double y) {
    return std::pow(r, k) * (k % 2 == 0 ? std::sinh(r * y) : std::cosh(r * y));
}
long double dcos(int k, long double r, long double y) {
    const long double s[4] = {std::cos(r * y), -std::sin(r * y), -std::cos(r * y), std::sin(r * y)};
    return std::pow(r, k) * s[k % 4];
}
long double dsin(int k, long double r, long double y) {
    const long double s[4] = {std::sin(r * y), std::cos(r * y), -std::sin(r * y), -std::cos(r * y)};
    return std::pow(r, k) * s[k % 4];
}

}  // namespace

TEST(Problem, PaperNumbers) {
    const auto p = paper();
    EXPECT_NEAR(p.kappa, 123.4813278, 1e-6);
    EXPECT_NEAR(p.l_tilde, 0.0220865625, 1e-10);
    EXPECT_EQ(p.nu, 0.2);
}

TEST(Regime, Classification) {
    const double k = 5.0;
    const int m = 2;
    const auto low = regime_roots((k + 0.5) * m4(m), m, k);
    EXPECT_EQ(low.regime, Regime::Low);
    EXPECT_LT(low.gamma, m);
    EXPECT_GT(low.gamma, 0.0);
    EXPECT_NEAR(low.beta * low.beta, m * m + std::sqrt(0.5 * m4(m)), 1e-12);
    EXPECT_EQ(regime_roots((k + 1.0) * m4(m), m, k).regime, Regime::Boundary);
    EXPECT_EQ(regime_roots((k + 1.0) * m4(m), m, k).gamma, 0.0);
    const auto high = regime_roots(2.0 * (k + 1.0) * m4(m), m, k);
    EXPECT_EQ(high.regime, Regime::High);
    EXPECT_GT(high.gamma, 0.0);
    EXPECT_EQ(regime_roots(k * m4(m), m, k).regime, Regime::AtKappa);
    EXPECT_EQ(regime_roots(0.5 * k * m4(m), m, k).regime, Regime::BelowKappa);
}

TEST(LambdaMinus, BracketsAndMonotone) {
    const auto p = paper();
    double prev = 0.0;
    for (int m = 1; m <= 10; ++m) {
        const auto r = lambda_minus(p, m);
        EXPECT_GT(r.lambda_tilde, (std::pow(1 - p.nu, 2) + p.kappa) * m4(m));
        EXPECT_LT(r.lambda_tilde, (p.kappa + 1) * m4(m));
        EXPECT_GT(r.lambda_tilde, prev);
        EXPECT_LT(r.residual, 1e-12);
        EXPECT_EQ(r.branch, Branch::VertEvenMinus);
        prev = r.lambda_tilde;
    }
}

TEST(LambdaMinus, FirstFrequency) {
    auto r = lambda_minus(paper(), 1);
    rescale(r, model().geometry);
    EXPECT_NEAR(r.frequency, 0.0045, 5e-5);
}

TEST(LambdaMinus, GenericDeterminantVanishes) {
    const auto p = paper();
    for (int m : {1, 4, 10}) {
        const auto r = lambda_minus(p, m);
        const auto rr = regime_roots(r.lambda_tilde, m, p.kappa);
        ASSERT_EQ(rr.regime, Regime::Low);
        const long double w = p.l_tilde;
        const auto det = generic_det([&](int k) { return dcosh(k, rr.beta, w); },
                                     [&](int k) { return dcosh(k, rr.gamma, w); }, m, p.nu);
        EXPECT_LT(det, 1e-8) << "m=" << m;
    }
}

TEST(LambdaMinus, ContinuousInKappa) {
    SpectrumProblem p{1e-12, 0.3, 0.5};
    const double base = lambda_minus(p, 2).lambda_tilde;
    double prev = 1.0;
    for (double k : {1e-3, 1e-6, 1e-9}) {
        p.kappa = k;
        const double d = std::abs(lambda_minus(p, 2).lambda_tilde - base);
        EXPECT_LT(d, prev);
        EXPECT_LT(d, 2 * k * m4(2));
        prev = d;
    }
}

TEST(LambdaPlus, AbsentForPaper) {
    const auto p = paper();
    for (int m = 1; m <= 100; ++m) {
        EXPECT_FALSE(plus_branch_exists(p, m));
        EXPECT_FALSE(lambda_plus(p, m).has_value());
    }
    EXPECT_FALSE(plus_branch_exists(p, 2500));
}

TEST(LambdaPlus, PresentOnWideStrip) {
    const SpectrumProblem p{1.0, 0.49, 3.0};
    ASSERT_TRUE(plus_branch_exists(p, 4));
    const auto plus = lambda_plus(p, 4);
    ASSERT_TRUE(plus.has_value());
    const auto minus = lambda_minus(p, 4);
    EXPECT_GT(plus->lambda_tilde, minus.lambda_tilde);
    EXPECT_LT(plus->lambda_tilde, (p.kappa + 1) * m4(4));
    EXPECT_LT(record_residual(p, *plus).max(), 1e-8);
    const auto rr = regime_roots(plus->lambda_tilde, 4, p.kappa);
    const auto det = generic_det([&](int k) { return dsinh(k, rr.beta, p.l_tilde); },
                                 [&](int k) { return dsinh(k, rr.gamma, p.l_tilde); }, 4, p.nu);
    EXPECT_LT(det, 1e-8);
}

TEST(Special, RootAndPresence) {
    const double s = special_root(0.2);
    EXPECT_NEAR(s, 81.0, 1e-9);
    EXPECT_FALSE(special_branch(paper()).has_value());

    const double nu = 0.45;
    const double s2 = special_root(nu);
    EXPECT_NEAR(std::tanh(s2), std::pow(nu / (2 - nu), 2) * s2, 1e-13 * s2);
    const SpectrumProblem p{2.0, nu, s2 / (std::sqrt(2.0) * 3.0)};
    const auto sp = special_branch(p);
    ASSERT_TRUE(sp.has_value());
    EXPECT_EQ(sp->m, 3);
    EXPECT_DOUBLE_EQ(sp->lambda_tilde, 3.0 * m4(3));
    EXPECT_LT(sp->residual, 1e-12);
    EXPECT_LT(record_residual(p, *sp).max(), 1e-8);
}

TEST(High, TorsionalFrequencies) {
    const auto p = paper();
    const double printed[8] = {0.0404, 0.0822, 0.1270, 0.1760, 0.2301, 0.2904, 0.3574, 0.4317};
    for (int m = 1; m <= 8; ++m) {
        auto r = high_eigenvalues(p, m, 1, Parity::Odd).front();
        EXPECT_GT(r.lambda_tilde, (p.kappa + 1) * m4(m));
        rescale(r, model().geometry);
        EXPECT_NEAR(r.frequency, printed[m - 1], 5e-5 + 1e-12) << "m=" << m;
    }
}

TEST(High, RootsAscendAndSatisfyEdges) {
    const auto p = paper();
    for (auto parity : {Parity::Even, Parity::Odd}) {
        const auto roots = high_eigenvalues(p, 2, 3, parity);
        ASSERT_EQ(roots.size(), 3u);
        for (std::size_t j = 0; j < roots.size(); ++j) {
            EXPECT_EQ(roots[j].j, int(j) + 1);
            if (j) { EXPECT_GT(roots[j].lambda_tilde, roots[j - 1].lambda_tilde); }
            EXPECT_LT(record_residual(p, roots[j]).max(), 1e-8);
            const auto rr = regime_roots(roots[j].lambda_tilde, 2, p.kappa);
            ASSERT_EQ(rr.regime, Regime::High);
            const long double w = p.l_tilde;
            const long double det =
                parity == Parity::Even
                    ? generic_det([&](int k) { return dcosh(k, rr.beta, w); },
                                  [&](int k) { return dcos(k, rr.gamma, w); }, 2, p.nu)
                    : generic_det([&](int k) { return dsinh(k, rr.beta, w); },
                                  [&](int k) { return dsin(k, rr.gamma, w); }, 2, p.nu);
            EXPECT_LT(det, 1e-8);
        }
    }
}

TEST(High, BelowCutoffMatchesCount) {
    const auto p = paper();
    const auto three = high_eigenvalues(p, 1, 3, Parity::Odd);
    const auto below = high_eigenvalues_below(p, 1, three[2].lambda_tilde * (1 + 1e-12), Parity::Odd);
    ASSERT_EQ(below.size(), 3u);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(below[j].lambda_tilde, three[j].lambda_tilde);
}

TEST(LowSpectrum, NoRootsBelowKappa) {
    const auto p = paper();
    for (int m = 1; m <= 5; ++m) {
        const auto rep = assert_no_low_spectrum(p, m, 1000);
        EXPECT_TRUE(rep.passed);
        EXPECT_GT(rep.det4, 0.0);
    }
    SpectrumProblem stiff = p;
    stiff.kappa = 1e4;
    EXPECT_TRUE(assert_no_low_spectrum(stiff, 3, 1000).passed);
}

TEST(Rescale, Units) {
    const auto& g = model().geometry;
    EXPECT_EQ(dimensional_lambda(0.0, g), 0.0);
    const auto p = paper();
    const double lam = dimensional_lambda(p.kappa + 1 - p.nu * p.nu, g);
    EXPECT_NEAR(beamrod::frequency_from_eigenvalue(lam, g.l, g.M), 0.00451, 5e-6);
    auto g2 = g;
    g2.R *= 2;
    EXPECT_DOUBLE_EQ(dimensional_lambda(7.0, g2), 2 * dimensional_lambda(7.0, g));
}

TEST(Enumerate, EmptyBelowFirst) {
    const auto p = paper();
    EXPECT_TRUE(enumerate_spectrum(p, 0.5 * lambda_minus(p, 1).lambda_tilde).empty());
}

TEST(Enumerate, InterleavingAndUnion) {
    const auto p = paper();
    const double top = lambda_minus(p, 10).lambda_tilde * (1 + 1e-12);
    const auto spec = enumerate_spectrum(p, top);
    std::vector<double> expected;
    for (int m = 1; m <= 10; ++m) {
        expected.push_back(lambda_minus(p, m).lambda_tilde);
        for (auto par : {Parity::Even, Parity::Odd})
            for (const auto& r : high_eigenvalues_below(p, m, top, par)) expected.push_back(r.lambda_tilde);
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(spec.size(), expected.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        EXPECT_EQ(spec[i].lambda_tilde, expected[i]);
        EXPECT_EQ(spec[i].multiplicity, 1);
        if (i) { EXPECT_GT(spec[i].lambda_tilde, spec[i - 1].lambda_tilde); }
    }
    EXPECT_EQ(spec[0].branch, Branch::VertEvenMinus);
    EXPECT_EQ(spec[1].branch, Branch::VertEvenMinus);
    EXPECT_EQ(spec[2].branch, Branch::HighOdd);
    EXPECT_EQ(spec[2].m, 1);
    int minus = 0;
    for (const auto& r : spec) minus += r.branch == Branch::VertEvenMinus;
    EXPECT_EQ(minus, 10);
}

TEST(Enumerate, ThreadCountDoesNotMatter) {
    const auto p = paper();
    const double top = lambda_minus(p, 6).lambda_tilde * 1.01;
    const auto a = enumerate_spectrum(p, top, 1);
    const auto b = enumerate_spectrum(p, top, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].lambda_tilde, b[i].lambda_tilde);
}

TEST(Records, ProfileResiduals) {
    const auto p = paper();
    for (int m = 1; m <= 10; ++m) EXPECT_LT(record_residual(p, lambda_minus(p, m)).max(), 1e-8);
    for (int m = 1; m <= 8; ++m)
        EXPECT_LT(record_residual(p, high_eigenvalues(p, m, 1, Parity::Odd).front()).max(), 1e-8);
}

TEST(Oracle, LeastEvenAndOddMatch) {
    const auto p = paper();
    for (int m = 1; m <= 2; ++m) {
        const oracle::ModeForm form{double(m), p.kappa, p.nu, p.l_tilde, 2001};
        const auto modes = oracle::oracle_eigen(form, 2);
        const double minus = lambda_minus(p, m).lambda_tilde;
        const double eta = high_eigenvalues(p, m, 1, Parity::Odd).front().lambda_tilde;
        EXPECT_EQ(modes[0].parity, Parity::Even);
        EXPECT_LT(std::abs(modes[0].lambda_tilde - minus) / minus, 1e-6);
        EXPECT_EQ(modes[1].parity, Parity::Odd);
        EXPECT_LT(std::abs(modes[1].lambda_tilde - eta) / eta, 1e-5);
    }
}

TEST(Errors, BadInputs) {
    EXPECT_THROW(lambda_minus(paper(), 0), std::invalid_argument);
    SpectrumProblem bad{-1.0, 0.2, 0.1};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    EXPECT_EQ(to_string(Branch::HighOdd), "high_odd");
    EXPECT_EQ(parity_of(Branch::VertOddPlus), Parity::Odd);
}
