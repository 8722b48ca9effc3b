#pragma once

#include <vector>

#include "orthodeck/deck.hpp"
#include "orthodeck/platestatic.hpp"

namespace orthodeck::compare {

/// Plate frequency against the beam-rod frequency for one mode.
struct FrequencyRow {
    int m;
    double plate_hz;
    double beamrod_hz;
    double abs_diff;
};

/// nu_m^vert from lambda_minus and mu_m from the beam, m = 1..m_max.
std::vector<FrequencyRow> table_vertical(const DeckModel& model, int m_max = 10, double rel_tol = 0.0,
                                         unsigned threads = 1);

/// nu_m^tors from the least odd eigenvalue above (kappa + 1) m^4 and tau_m from the rod.
std::vector<FrequencyRow> table_torsional(const DeckModel& model, int m_max = 8, double rel_tol = 0.0,
                                          unsigned threads = 1);

/// Half away from zero at 4 decimals.
double round4(double x);

/// Sampled curves along the span.
struct Curve {
    std::vector<double> x;
    std::vector<double> plate;
    std::vector<double> beamrod;
};

struct StaticFigures {
    Curve constant;  ///< u(x, 0) and psi(x) under f0 = 100 N/m^2
    Curve sine;      ///< u(x, 0) and psi(x) under f0 sin(pi x / L)
    Curve torsion;   ///< arctan(u(x, l) / l) and theta(x) under tau0 = 75 N/m^3
    double constant_midspan_plate;
    double constant_midspan_beam;
    double sine_midspan_plate;
    double sine_midspan_beam;
    double torsion_amplitude_plate;
    double torsion_amplitude_rod;
    double truncation_error_estimate;  ///< of the constant-load series
};

StaticFigures static_figures(const DeckModel& model, int n_points = 401, int truncation = 99,
                             unsigned threads = 1, double f0 = 100.0, double tau0 = 75.0);

struct StaticConvergenceRow {
    plate::Load::Kind load;
    double l;
    double sup_diff;  ///< sup over the grid of |u_l - psi|, m
    double max_psi;
    double relative() const { return sup_diff / max_psi; }
};

/// sup |u_l(x, y) - psi(x)| on an nx x ny grid for each half width, with R and d^3 held fixed.
std::vector<StaticConvergenceRow> converge_static(const DeckModel& model, const std::vector<double>& l_list,
                                                  plate::Load load, int truncation = 99, int nx = 401,
                                                  int ny = 21, unsigned threads = 1);

struct SpectralConvergenceRow {
    double l;
    int m;
    double lambda_l;  ///< m-th smallest plate eigenvalue, N/m^3
    double lambda_0;  ///< hinged beam eigenvalue, N/m^3
    double rel_err;
};

/// |lambda_m^l - lambda_m^0| / lambda_m^0 with R and d^3 held fixed.
std::vector<SpectralConvergenceRow> converge_spectral(const DeckModel& model, const std::vector<double>& l_list,
                                                      const std::vector<int>& m_set, unsigned threads = 1);

struct LimitRow {
    int m;
    double l;
    double a, a_limit;
    double d, d_limit;
    double rel_err_a() const;
    double rel_err_d() const;
};

/// Even-mode coefficients a, d of the constant-load solution against their l -> 0 limits.
std::vector<LimitRow> coefficient_limits(const DeckModel& model, const std::vector<int>& m_set, double l,
                                         double f0 = 100.0);

}  // namespace orthodeck::compare
