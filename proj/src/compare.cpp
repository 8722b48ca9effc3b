#include "orthodeck/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orthodeck/beamrod.hpp"
#include "orthodeck/parallel.hpp"
#include "orthodeck/platespectrum.hpp"

namespace orthodeck::compare {


std::vector<FrequencyRow> table_vertical(const DeckModel& model, int m_max, double rel_tol, unsigned threads) {
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    const auto p = spectrum::SpectrumProblem::from(model);
    const auto beam = beamrod::beamrod_frequencies(model.beam, m_max);
    return parallel_map(std::size_t(m_max), threads, [&](std::size_t i) {
        const int m = int(i) + 1;
        auto rec = spectrum::lambda_minus(p, m, rel_tol);
        spectrum::rescale(rec, model.geometry);
        const double mu = beam.vertical[i];
        return FrequencyRow{m, rec.frequency, mu, std::abs(rec.frequency - mu)};
    });
}

std::vector<FrequencyRow> table_torsional(const DeckModel& model, int m_max, double rel_tol, unsigned threads) {
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    const auto p = spectrum::SpectrumProblem::from(model);
    const auto rod = beamrod::beamrod_frequencies(model.beam, m_max);
    return parallel_map(std::size_t(m_max), threads, [&](std::size_t i) {
        const int m = int(i) + 1;
        auto rec = spectrum::high_eigenvalues(p, m, 1, Parity::Odd, rel_tol).front();
        spectrum::rescale(rec, model.geometry);
        const double tau = rod.torsional[i];
        return FrequencyRow{m, rec.frequency, tau, std::abs(rec.frequency - tau)};
    });
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

StaticFigures static_figures(const DeckModel& model, int n_points, int truncation, unsigned threads, double f0,
                             double tau0) {
    if (n_points < 2) throw std::invalid_argument("need at least two sample points");
    const auto& g = model.geometry;
    const auto pc = model.plate();
    using Kind = plate::Load::Kind;

    const auto constant = plate::solve_plate(g, pc, {Kind::Constant, f0}, truncation, threads);
    const auto sine = plate::solve_plate(g, pc, {Kind::Sine, f0}, truncation, threads);
    const auto torsion = plate::solve_plate(g, pc, {Kind::Torsion, tau0}, std::max(truncation, 2), threads);
    const auto psi_c = beamrod::beam_deflection_constant(model.beam, f0);
    const auto psi_s = beamrod::beam_deflection_sine(model.beam, f0);
    const auto theta = beamrod::rod_torsion_sine(model.beam, tau0);

    StaticFigures out{};
    for (int i = 0; i < n_points; ++i) {
        const double x = g.L * i / (n_points - 1);
        out.constant.x.push_back(x);
        out.constant.plate.push_back(constant.evaluate(x, 0.0));
        out.constant.beamrod.push_back(psi_c(x));
        out.sine.x.push_back(x);
        out.sine.plate.push_back(sine.evaluate(x, 0.0));
        out.sine.beamrod.push_back(psi_s(x));
        out.torsion.x.push_back(x);
        out.torsion.plate.push_back(std::atan(torsion.evaluate(x, g.l) / g.l));
        out.torsion.beamrod.push_back(theta(x));
    }
    out.constant_midspan_plate = constant.evaluate(g.L / 2, 0.0);
    out.constant_midspan_beam = psi_c(g.L / 2);
    out.sine_midspan_plate = sine.evaluate(g.L / 2, 0.0);
    out.sine_midspan_beam = psi_s(g.L / 2);
    // sin(2 pi x / L) peaks at L/4
    out.torsion_amplitude_plate = std::abs(std::atan(torsion.evaluate(g.L / 4, g.l) / g.l));
    out.torsion_amplitude_rod = std::abs(theta.amplitude);
    out.truncation_error_estimate = constant.truncation_error_estimate;
    return out;
}

std::vector<StaticConvergenceRow> converge_static(const DeckModel& model, const std::vector<double>& l_list,
                                                  plate::Load load, int truncation, int nx, int ny,
                                                  unsigned threads) {
    if (load.kind == plate::Load::Kind::Torsion)
        throw std::invalid_argument("converge_static compares vertical loads with the beam");
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 x 2 points");
    std::vector<StaticConvergenceRow> rows;
    for (double l : l_list) {
        const auto mdl = model.with_half_width(l);
        const auto& g = mdl.geometry;
        const auto field = plate::solve_plate(g, mdl.plate(), load, truncation, threads);
        StaticConvergenceRow row{load.kind, l, 0.0, 0.0};
        for (int i = 0; i < nx; ++i) {
            const double x = g.L * i / (nx - 1);
            const double psi = load.kind == plate::Load::Kind::Constant
                                   ? beamrod::beam_deflection_constant(mdl.beam, load.amplitude)(x)
                                   : beamrod::beam_deflection_sine(mdl.beam, load.amplitude)(x);
            row.max_psi = std::max(row.max_psi, std::abs(psi));
            for (int j = 0; j < ny; ++j) {
                const double y = -l + 2.0 * l * j / (ny - 1);
                row.sup_diff = std::max(row.sup_diff, std::abs(field.evaluate(x, y) - psi));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<SpectralConvergenceRow> converge_spectral(const DeckModel& model, const std::vector<double>& l_list,
                                                      const std::vector<int>& m_set, unsigned threads) {
    if (m_set.empty()) return {};
    const int m_top = *std::max_element(m_set.begin(), m_set.end());
    if (*std::min_element(m_set.begin(), m_set.end()) < 1) throw std::invalid_argument("mode index must be >= 1");
    std::vector<SpectralConvergenceRow> rows;
    for (double l : l_list) {
        const auto mdl = model.with_half_width(l);
        const auto p = spectrum::SpectrumProblem::from(mdl);
        // lambda_minus for m = 1..m_top already supplies m_top eigenvalues
        const double cutoff = spectrum::lambda_minus(p, m_top).lambda_tilde * (1.0 + 1e-12);
        const auto spec = spectrum::enumerate_spectrum(p, cutoff, threads);
        std::vector<double> sorted;
        for (const auto& r : spec)
            for (int k = 0; k < r.multiplicity; ++k) sorted.push_back(r.lambda_tilde);
        const auto beam = beamrod::beam_eigenvalues(mdl.beam, m_top);
        for (int m : m_set) {
            const double lam = spectrum::dimensional_lambda(sorted.at(std::size_t(m) - 1), mdl.geometry);
            const double lam0 = beam[std::size_t(m) - 1];
            rows.push_back({l, m, lam, lam0, std::abs(lam - lam0) / lam0});
        }
    }
    return rows;
}

double LimitRow::rel_err_a() const { return std::abs(a - a_limit) / std::abs(a_limit); }
double LimitRow::rel_err_d() const { return std::abs(d - d_limit) / std::abs(d_limit); }

std::vector<LimitRow> coefficient_limits(const DeckModel& model, const std::vector<int>& m_set, double l,
                                         double f0) {
    const auto mdl = model.with_half_width(l);
    const auto& g = mdl.geometry;
    const auto pc = mdl.plate();
    const double k = pc.kappa, nu = pc.nu;
    std::vector<LimitRow> rows;
    for (int m : m_set) {
        if (m < 1 || m % 2 == 0) throw std::invalid_argument("constant load drives odd modes only");
        const auto rhs = plate::load_coefficients({plate::Load::Kind::Constant, f0}, m, g.R).back();
        const auto sol = plate::solve_mode_even(g, pc, m, rhs.constant);
        const auto c = sol.hom_coeffs();
        const double ms4 = std::pow(sol.m_star, 4);
        const double denom = (k + 1.0) * (k + 1.0 - nu * nu) * ms4;
        const double a_lim = nu * nu * rhs.constant / denom;
        const double d_lim = nu * (k + 1.0 - nu) * rhs.constant / (std::sqrt(k) * denom);
        rows.push_back({m, l, c[0], a_lim, c[3], d_lim});
    }
    return rows;
}

}  // namespace orthodeck::compare
