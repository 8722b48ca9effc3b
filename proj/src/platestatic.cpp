#include "orthodeck/platestatic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "orthodeck/errors.hpp"
#include "orthodeck/parallel.hpp"
#include "orthodeck/roots.hpp"

namespace orthodeck::plate {

using cplx = std::complex<double>;
using std::numbers::pi;

namespace {

struct ScaledHyperbolic {
    cplx cosh;  ///< cosh(alpha y) e^{-beta l}
    cplx sinh;  ///< sinh(alpha y) e^{-beta l}
};

ScaledHyperbolic scaled_hyperbolic(double beta, double gamma, double y, double l) {
    const cplx rot(std::cos(gamma * y), std::sin(gamma * y));
    const cplx up = std::exp(beta * (y - l)) * rot;
    const cplx down = std::exp(-beta * (y + l)) * std::conj(rot);
    return {0.5 * (up + down), 0.5 * (up - down)};
}

cplx ipow(cplx a, int k) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < k; ++i) r *= a;
    return r;
}

// d^k/dx^k sin(w x)
double sin_derivative(int k, double w, double x) {
    const double s = std::pow(w, k);
    switch (k % 4) {
        case 0: return s * std::sin(w * x);
        case 1: return s * std::cos(w * x);
        case 2: return -s * std::sin(w * x);
        default: return -s * std::cos(w * x);
    }
}

double condition_2x2(double a, double b, double c, double d) {
    const double f = a * a + b * b + c * c + d * d;
    const double det = std::abs(a * d - b * c);
    if (det == 0.0) return std::numeric_limits<double>::infinity();
    const double disc = std::sqrt(std::max(0.0, f * f - 4.0 * det * det));
    return (f + disc) / (2.0 * det);
}

ModeSolution solve_mode(const DeckGeometry& geom, const PlateCoefficients& pc, int m, Parity parity,
                        double rhs_const, double rhs_slope) {
    geom.validate();
    pc.validate();
    if (m < 1) throw std::invalid_argument("mode index must be >= 1");

    ModeSolution s;
    s.m = m;
    s.m_star = m * pi / geom.L;
    s.parity = parity;
    s.half_width = geom.l;
    const auto [beta, gamma] = mode_roots(s.m_star, pc.kappa);
    s.beta = beta;
    s.gamma = gamma;

    const double ms2 = s.m_star * s.m_star;
    const double lead = (pc.kappa + 1.0) * ms2 * ms2;
    s.particular_constant = rhs_const / lead;
    s.particular_slope = rhs_slope / lead;
    if (rhs_const == 0.0 && rhs_slope == 0.0) return s;

    const double l = geom.l;
    const double nu = pc.nu;
    const cplx alpha(beta, gamma);
    const auto h = scaled_hyperbolic(beta, gamma, l, l);
    const bool even = parity == Parity::Even;
    const cplx t0 = even ? h.cosh : h.sinh;  // T(l)
    const cplx t1 = even ? h.sinh : h.cosh;  // T'(l) / alpha
    // moment condition Y'' - nu m*^2 Y, shear condition Y''' + (nu - 2) m*^2 Y'
    const cplx moment = alpha * alpha * t0 - nu * ms2 * t0;
    const cplx shear = ipow(alpha, 3) * t1 + (nu - 2.0) * ms2 * alpha * t1;

    const double yp = s.particular_constant + s.particular_slope * l;
    const double r1 = nu * ms2 * yp;
    const double r2 = -(nu - 2.0) * ms2 * s.particular_slope;

    // unknowns p, q with Y_hom = p Re T + q Im T
    const double a11 = moment.real(), a12 = moment.imag();
    const double a21 = shear.real(), a22 = shear.imag();
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0 || !std::isfinite(det))
        throw NumericalFailure("plate mode " + std::to_string(m) + ": singular edge system");
    const double p = (r1 * a22 - a12 * r2) / det;
    const double q = (a11 * r2 - a21 * r1) / det;
    s.scaled_coeff = cplx(p, -q);

    s.condition = condition_2x2(a11, a12, a21 / beta, a22 / beta);
    s.ill_conditioned = s.condition > 1e12;

    const double Y = s.derivative(0, l), Y1 = s.derivative(1, l);
    const double Y2 = s.derivative(2, l), Y3 = s.derivative(3, l);
    const double m_res = std::abs(Y2 - nu * ms2 * Y) / (std::abs(Y2) + nu * ms2 * std::abs(Y) + 1e-300);
    const double s_res =
        std::abs(Y3 + (nu - 2.0) * ms2 * Y1) / (std::abs(Y3) + (2.0 - nu) * ms2 * std::abs(Y1) + 1e-300);
    s.bc_residual = std::max(m_res, s_res);
    return s;
}

}  // namespace

double Load::value(double x, double y, double L) const {
    switch (kind) {
        case Kind::Constant: return -amplitude;
        case Kind::Sine: return -amplitude * std::sin(pi * x / L);
        case Kind::Torsion: return amplitude * y * std::sin(2.0 * pi * x / L);
    }
    return 0.0;
}

double Load::scale(double l) const {
    return kind == Kind::Torsion ? std::abs(amplitude) * l : std::abs(amplitude);
}

std::vector<ModeRhs> load_coefficients(const Load& load, int N, double R) {
    if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("plate rigidity must be positive");
    std::vector<ModeRhs> out;
    switch (load.kind) {
        case Load::Kind::Constant:
            // Fourier sine coefficients of -f0 on (0, L): -4 f0 / (pi m) for odd m
            for (int m = 1; m <= N; m += 2)
                out.push_back({m, Parity::Even, -4.0 * load.amplitude / (pi * m) / R, 0.0});
            break;
        case Load::Kind::Sine:
            out.push_back({1, Parity::Even, -load.amplitude / R, 0.0});
            break;
        case Load::Kind::Torsion:
            if (N >= 2) out.push_back({2, Parity::Odd, 0.0, load.amplitude / R});
            break;
    }
    return out;
}

RootPair mode_roots(double m_star, double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("kappa must be non-negative");
    const double root = std::sqrt(kappa + 1.0);
    return {m_star * std::sqrt((root + 1.0) / 2.0), m_star * std::sqrt(roots::sqrt1pm1(kappa) / 2.0)};
}

double ModeSolution::derivative(int k, double y) const {
    double value = 0.0;
    if (k == 0)
        value = particular_constant + particular_slope * y;
    else if (k == 1)
        value = particular_slope;
    if (scaled_coeff == cplx{}) return value;

    const auto h = scaled_hyperbolic(beta, gamma, y, half_width);
    const bool base_cosh = parity == Parity::Even;
    const cplx t = (base_cosh == (k % 2 == 0)) ? h.cosh : h.sinh;
    return value + (scaled_coeff * ipow(cplx(beta, gamma), k) * t).real();
}

std::array<double, 4> ModeSolution::hom_coeffs() const {
    const cplx A = scaled_coeff * std::exp(-beta * half_width);
    if (parity == Parity::Even) return {A.real(), 0.0, 0.0, -A.imag()};
    return {0.0, A.real(), -A.imag(), 0.0};
}

ModeSolution solve_mode_even(const DeckGeometry& geom, const PlateCoefficients& pc, int m,
                             double rhs_const) {
    return solve_mode(geom, pc, m, Parity::Even, rhs_const, 0.0);
}

ModeSolution solve_mode_odd(const DeckGeometry& geom, const PlateCoefficients& pc, int m,
                            double rhs_slope) {
    return solve_mode(geom, pc, m, Parity::Odd, 0.0, rhs_slope);
}

ModeSolution solve_mode_torsion(const DeckGeometry& geom, const PlateCoefficients& pc, double tau0) {
    if (!std::isfinite(tau0)) throw std::invalid_argument("tau0 must be finite");
    return solve_mode_odd(geom, pc, 2, tau0 / geom.R);
}

double PlateField::evaluate(double x, double y) const { return derivative(0, 0, x, y); }

double PlateField::derivative(int kx, int ky, double x, double y) const {
    const double L = geometry.L, l = geometry.l;
    if (!(x >= -1e-12 * L && x <= L * (1.0 + 1e-12)) || !(std::abs(y) <= l * (1.0 + 1e-12)))
        throw DomainError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") lies outside the deck");
    double sum = 0.0;
    for (const auto& mode : modes) sum += mode.derivative(ky, y) * sin_derivative(kx, mode.m_star, x);
    return sum;
}

PlateField solve_plate(const DeckGeometry& geom, const PlateCoefficients& pc, const Load& load,
                       int truncation, unsigned threads) {
    const auto rhs = load_coefficients(load, truncation, geom.R);
    PlateField field{geom, pc, load, truncation, {}, 0.0};
    field.modes = parallel_map(rhs.size(), threads, [&](std::size_t i) {
        const auto& r = rhs[i];
        return r.parity == Parity::Even ? solve_mode_even(geom, pc, r.m, r.constant)
                                        : solve_mode_odd(geom, pc, r.m, r.slope);
    });

    if (load.kind == Load::Kind::Constant && !field.modes.empty()) {
        const auto& last = field.modes.back();
        const double amp = std::max(std::abs(last(0.0)), std::abs(last(geom.l)));
        // sum over odd m > N of amp (N / m)^5 is about amp N / 8
        field.truncation_error_estimate = amp * last.m / 8.0;
    }
    return field;
}

double ResidualReport::max() const { return std::max({pde, navier, free_moment, free_shear}); }

ResidualReport residual(const PlateField& field, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("residual grid needs at least 2 x 2 points");
    const auto& g = field.geometry;
    const double kappa = field.coefficients.kappa, nu = field.coefficients.nu;
    const auto rhs = load_coefficients(field.load, std::max(field.truncation, 1), g.R);
    const double load_scale = field.load.scale(g.l);

    auto f_projected = [&](double x, double y) {
        double f = 0.0;
        for (const auto& r : rhs) f += g.R * (r.constant + r.slope * y) * std::sin(r.m * pi * x / g.L);
        return f;
    };

    ResidualReport rep;
    double u_max = 0.0, uxx_max = 0.0, nav_u = 0.0, nav_uxx = 0.0;
    double mom_scale = 0.0, shear_scale = 0.0, mom = 0.0, shear = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double x = g.L * i / (nx - 1);
        for (int j = 0; j < ny; ++j) {
            const double y = -g.l + 2.0 * g.l * j / (ny - 1);
            const double u = field.derivative(0, 0, x, y);
            const double uxx = field.derivative(2, 0, x, y);
            const double op = (1.0 + kappa) * field.derivative(4, 0, x, y) +
                              2.0 * field.derivative(2, 2, x, y) + field.derivative(0, 4, x, y);
            const double res = std::abs(g.R * op - f_projected(x, y));
            if (load_scale > 0.0) rep.pde = std::max(rep.pde, res / load_scale);
            u_max = std::max(u_max, std::abs(u));
            uxx_max = std::max(uxx_max, std::abs(uxx));
            if (i == 0 || i == nx - 1) {
                nav_u = std::max(nav_u, std::abs(u));
                nav_uxx = std::max(nav_uxx, std::abs(uxx));
            }
        }
        for (double y : {-g.l, g.l}) {
            const double uyy = field.derivative(0, 2, x, y), uxx = field.derivative(2, 0, x, y);
            const double uyyy = field.derivative(0, 3, x, y), uxxy = field.derivative(2, 1, x, y);
            mom = std::max(mom, std::abs(uyy + nu * uxx));
            mom_scale = std::max(mom_scale, std::abs(uyy) + nu * std::abs(uxx));
            shear = std::max(shear, std::abs(uyyy + (2.0 - nu) * uxxy));
            shear_scale = std::max(shear_scale, std::abs(uyyy) + (2.0 - nu) * std::abs(uxxy));
        }
    }
    auto ratio = [](double num, double den) { return den > 0.0 ? num / den : num; };
    rep.navier = std::max(ratio(nav_u, u_max), ratio(nav_uxx, uxx_max));
    rep.free_moment = ratio(mom, mom_scale);
    rep.free_shear = ratio(shear, shear_scale);
    return rep;
}

}  // namespace orthodeck::plate
