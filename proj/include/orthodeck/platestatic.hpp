#pragma once

#include <array>
#include <complex>
#include <vector>

#include "orthodeck/deck.hpp"

namespace orthodeck::plate {

/// Loads whose x-dependence expands in sin(m pi x / L).
struct Load {
    enum class Kind { Constant, Sine, Torsion };
    Kind kind;
    /// f0 (N/m^2) for Constant and Sine, tau0 (N/m^3) for Torsion.
    double amplitude;

    /// f(x, y): -f0, -f0 sin(pi x / L) or tau0 y sin(2 pi x / L).
    double value(double x, double y, double L) const;
    /// Largest |f| over the deck, used to make residuals relative.
    double scale(double l) const;
};

/// Right-hand side c0 + c1 y of the mode-m ODE for u (the load's Fourier coefficient divided by R).
struct ModeRhs {
    int m;
    Parity parity;
    double constant;
    double slope;
};

/// Modes 1..N of the load; constant load contributes odd m only, sine load m = 1,
/// torsion load m = 2.
std::vector<ModeRhs> load_coefficients(const Load& load, int N, double R);

struct RootPair {
    double beta;
    double gamma;
};

/// Roots beta +- i gamma of a^4 - 2 m*^2 a^2 + (kappa + 1) m*^4 = 0.
RootPair mode_roots(double m_star, double kappa);

/// Closed-form solution Y(y) of
///   Y'''' - 2 m*^2 Y'' + (kappa + 1) m*^4 Y = c0 + c1 y,  |y| < l,
///   Y'' - nu m*^2 Y = 0,  Y''' + (nu - 2) m*^2 Y' = 0  at y = +-l.
///
/// The homogeneous part is Re[C S(y)] with S(y) = cosh(alpha y) e^{-beta l} (even) or
/// sinh(alpha y) e^{-beta l} (odd), alpha = beta + i gamma. The exponential scaling keeps
/// every quantity bounded for large beta l.
struct ModeSolution {
    int m = 0;
    double m_star = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    Parity parity = Parity::Even;
    double particular_constant = 0.0;  ///< Y_p = particular_constant + particular_slope * y
    double particular_slope = 0.0;
    std::complex<double> scaled_coeff{};
    double half_width = 0.0;

    double condition = 1.0;       ///< 2x2 condition number, second row scaled by 1/beta
    bool ill_conditioned = false;  ///< condition > 1e12
    double bc_residual = 0.0;      ///< max relative residual of the two edge conditions

    double derivative(int k, double y) const;
    double operator()(double y) const { return derivative(0, y); }

    /// Unscaled (a, b, c, d) of a cosh(by)cos(gy) + b sinh(by)cos(gy) + c cosh(by)sin(gy) + d sinh(by)sin(gy).
    std::array<double, 4> hom_coeffs() const;
};

/// Even mode under a y-independent right-hand side rhs_const.
ModeSolution solve_mode_even(const DeckGeometry& geom, const PlateCoefficients& pc, int m,
                             double rhs_const);

/// Odd mode under the right-hand side rhs_slope * y.
ModeSolution solve_mode_odd(const DeckGeometry& geom, const PlateCoefficients& pc, int m,
                            double rhs_slope);

/// Mode m = 2 under f = tau0 y sin(2 pi x / L).
ModeSolution solve_mode_torsion(const DeckGeometry& geom, const PlateCoefficients& pc, double tau0);

/// Truncated series u(x, y) = sum_m Y_m(y) sin(m pi x / L).
struct PlateField {
    DeckGeometry geometry;
    PlateCoefficients coefficients;
    Load load;
    int truncation = 0;
    std::vector<ModeSolution> modes;
    /// Tail estimate from the m^-5 decay of the last retained mode amplitude.
    double truncation_error_estimate = 0.0;

    double evaluate(double x, double y) const;
    /// d^kx/dx^kx d^ky/dy^ky u
    double derivative(int kx, int ky, double x, double y) const;
};

/// Solves mode by mode (independently, optionally on several threads).
PlateField solve_plate(const DeckGeometry& geom, const PlateCoefficients& pc, const Load& load,
                       int truncation = 99, unsigned threads = 1);

struct ResidualReport {
    double pde = 0.0;           ///< max |R (Lap^2 u + kappa u_xxxx) - f_N| / load scale
    double navier = 0.0;        ///< max |u| and |u_xx| at x = 0, L, relative to max |u|, max |u_xx|
    double free_moment = 0.0;   ///< max |u_yy + nu u_xx| at y = +-l, relative to the term sizes
    double free_shear = 0.0;    ///< max |u_yyy + (2 - nu) u_xxy| at y = +-l, relative
    double max() const;
};

/// Residuals of the plate problem on an nx x ny grid. The PDE residual is taken against the
/// truncated load expansion f_N that the field was built from.
ResidualReport residual(const PlateField& field, int nx = 101, int ny = 21);

}  // namespace orthodeck::plate
