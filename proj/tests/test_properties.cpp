// Randomized checks of invariants over admissible parameters; every generator has a fixed seed.
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "orthodeck/beamrod.hpp"
#include "orthodeck/deck.hpp"
#include "orthodeck/errors.hpp"
#include "orthodeck/material.hpp"
#include "orthodeck/platespectrum.hpp"
#include "orthodeck/platestatic.hpp"

using namespace orthodeck;

namespace {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    material::ReinforcedMaterial material() {
        material::ReinforcedMaterial m{};
        m.E1 = log_uniform(1e9, 5e11);
        m.E2 = m.E1 / log_uniform(1.0001, 500.0);
        m.nu = uniform(0.01, 0.49);
        m.nu23_override = uniform(-0.6, 0.6);
        return m;
    }

    spectrum::SpectrumProblem problem() {
        return {log_uniform(0.1, 500.0), uniform(0.05, 0.45), log_uniform(0.01, 2.0)};
    }

private:
    std::mt19937_64 rng_;
};

constexpr int kCases = 200;

}  // namespace

TEST(MaterialProperties, StiffnessInvertsCompliance) {
    Gen g(101);
    int checked = 0;
    for (int t = 0; t < kCases; ++t) {
        const auto m = g.material();
        try {
            m.validate();
        } catch (const DegenerateMaterial&) {
            continue;
        }
        const auto C = material::stiffness_matrix(m);
        const auto S = material::compliance_matrix(m.to_orthotropic());
        const material::Matrix6 err = C * S - material::Matrix6::Identity();
        EXPECT_LT(err.cwiseAbs().maxCoeff(), 1e-10) << "case " << t;
        EXPECT_NEAR(C(5, 5), C(1, 1) - C(1, 2), 1e-10 * C(1, 1));
        ++checked;
    }
    EXPECT_GT(checked, kCases / 2);
}

TEST(MaterialProperties, ReciprocityAndEnergy) {
    Gen g(202);
    for (int t = 0; t < kCases; ++t) {
        auto m = g.material();
        m.nu23_override = g.uniform(-0.3, 0.3);
        const auto o = m.to_orthotropic();
        EXPECT_NEAR(o.nu21 / o.E2, o.nu12 / o.E1, 1e-12 * o.nu12 / o.E1);
        EXPECT_NEAR(o.nu31 / o.E3, o.nu13 / o.E1, 1e-12 * o.nu13 / o.E1);
        EXPECT_NEAR(o.nu32 / o.E3, o.nu23 / o.E2, 1e-12 * std::abs(o.nu23 / o.E2) + 1e-30);
        material::Strain6 e;
        for (int i = 0; i < 6; ++i) e(i) = g.uniform(-1e-3, 1e-3);
        EXPECT_GT(material::energy_density(m, e), 0.0);
    }
}

TEST(MaterialProperties, CalibrationMatchesRodRigidity) {
    Gen g(303);
    for (int t = 0; t < kCases; ++t) {
        const double E = g.log_uniform(1e10, 5e11), I = g.log_uniform(1e-3, 10.0), nu = g.uniform(0.05, 0.45);
        const double l = g.uniform(1.0, 20.0);
        const double R_T = g.log_uniform(1e-6, 0.5) * 2 * E * I * (1 - nu);
        const double E2 = material::calibrate_E2(E, I, R_T, nu);
        if (!(E2 < E)) continue;
        const material::ReinforcedMaterial m{E, E2, nu, std::nullopt, std::nullopt};
        EXPECT_LT(material::torsion_energy_match_residual(m, I, R_T, l), 1e-10);
    }
}

TEST(MaterialProperties, KappaZeroOnlyWhenIsotropic) {
    Gen g(404);
    for (int t = 0; t < kCases; ++t) {
        auto m = g.material();
        m.nu23_override.reset();
        EXPECT_GT(material::derive_constants(m).kappa, 0.0);
        m.E2 = m.E1;
        EXPECT_EQ(material::derive_constants(m).kappa, 0.0);
    }
}

TEST(MaterialProperties, Nu23LeavesPlateUnchanged) {
    Gen g(505);
    const auto base = tacoma_model();
    for (int t = 0; t < 20; ++t) {
        auto mat = base.material;
        mat.nu23_override = g.uniform(-0.5, 0.5);
        const auto other = DeckModel::build(mat, base.beam);
        EXPECT_EQ(other.geometry.R, base.geometry.R);
        EXPECT_EQ(other.plate().kappa, base.plate().kappa);
        EXPECT_EQ(spectrum::lambda_minus(spectrum::SpectrumProblem::from(other), 1).lambda_tilde,
                  spectrum::lambda_minus(spectrum::SpectrumProblem::from(base), 1).lambda_tilde);
    }
}

TEST(SpectrumProperties, MinusBranchBracketsMonotoneAndResidual) {
    Gen g(606);
    for (int t = 0; t < 60; ++t) {
        const auto p = g.problem();
        double prev = 0.0;
        for (int m = 1; m <= 6; ++m) {
            const auto r = spectrum::lambda_minus(p, m);
            const double m4 = std::pow(double(m), 4);
            EXPECT_GT(r.lambda_tilde, (std::pow(1 - p.nu, 2) + p.kappa) * m4);
            EXPECT_LT(r.lambda_tilde, (p.kappa + 1) * m4);
            EXPECT_GT(r.lambda_tilde, prev);
            EXPECT_LT(spectrum::record_residual(p, r).max(), 1e-8)
                << "kappa=" << p.kappa << " nu=" << p.nu << " l=" << p.l_tilde << " m=" << m;
            prev = r.lambda_tilde;
            if (auto plus = spectrum::lambda_plus(p, m)) {
                EXPECT_GT(plus->lambda_tilde, r.lambda_tilde);
                EXPECT_LT(plus->lambda_tilde, (p.kappa + 1) * m4);
            }
        }
    }
}

TEST(SpectrumProperties, HighRootsAboveThreshold) {
    Gen g(707);
    for (int t = 0; t < 40; ++t) {
        const auto p = g.problem();
        const int m = g.integer(1, 5);
        for (auto par : {Parity::Even, Parity::Odd}) {
            const auto roots = spectrum::high_eigenvalues(p, m, 2, par);
            ASSERT_EQ(roots.size(), 2u);
            EXPECT_GT(roots[0].lambda_tilde, (p.kappa + 1) * std::pow(double(m), 4));
            EXPECT_GT(roots[1].lambda_tilde, roots[0].lambda_tilde);
            for (const auto& r : roots) EXPECT_LT(spectrum::record_residual(p, r).max(), 1e-8);
        }
    }
}

TEST(SpectrumProperties, NoLowSpectrum) {
    Gen g(808);
    for (int t = 0; t < 20; ++t) {
        const auto p = g.problem();
        EXPECT_TRUE(spectrum::assert_no_low_spectrum(p, g.integer(1, 5), 200).passed);
    }
}

TEST(StaticProperties, RootsAndResiduals) {
    Gen g(909);
    for (int t = 0; t < 30; ++t) {
        const double L = g.uniform(50.0, 1000.0);
        const auto geom = DeckGeometry::make(L, g.uniform(0.005, 0.2) * L, g.log_uniform(1e5, 1e9), 1000.0);
        const PlateCoefficients pc{g.log_uniform(0.1, 300.0), g.uniform(0.05, 0.45)};
        const double ms = g.uniform(0.01, 5.0);
        const auto r = plate::mode_roots(ms, pc.kappa);
        EXPECT_NEAR(r.beta * r.beta - r.gamma * r.gamma, ms * ms, 1e-12 * ms * ms);
        for (auto kind : {plate::Load::Kind::Constant, plate::Load::Kind::Torsion}) {
            const auto field = plate::solve_plate(geom, pc, {kind, g.uniform(1.0, 200.0)}, 15);
            EXPECT_LT(plate::residual(field, 31, 11).max(), 1e-8) << "case " << t;
        }
    }
}

TEST(BeamProperties, Linearity) {
    Gen g(1001);
    for (int t = 0; t < kCases; ++t) {
        beamrod::BeamRodParams p{g.log_uniform(1e9, 5e11), g.log_uniform(1e-3, 1.0), g.log_uniform(1e6, 1e10),
                                 g.log_uniform(100, 1e4), g.uniform(100, 1000), g.uniform(1, 20)};
        const double f0 = g.uniform(1, 200);
        const double a = beamrod::beam_deflection_constant(p, f0)(p.L / 3);
        EXPECT_NEAR(beamrod::beam_deflection_constant(p, 2 * f0)(p.L / 3), 2 * a, 1e-12 * std::abs(a));
        const double th = beamrod::rod_torsion_sine(p, f0).amplitude;
        p.R_T *= 2;
        EXPECT_NEAR(beamrod::rod_torsion_sine(p, f0).amplitude, th / 2, 1e-12 * th);
    }
}
