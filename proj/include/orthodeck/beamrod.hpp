#pragma once

#include <array>
#include <vector>

namespace orthodeck::beamrod {

/// Beam (vertical bending) plus rod (torsion) description of the deck.
struct BeamRodParams {
    double E;    ///< Young modulus, Pa
    double I;    ///< moment of inertia of the cross section, m^4
    double R_T;  ///< torsional rigidity, N m^2
    double M;    ///< mass per unit length, kg/m
    double L;    ///< span, m
    double l;    ///< half width, m

    void validate() const;
    /// Effective thickness cubed from I = d^3 l / 6.
    double d3() const { return 6.0 * I / l; }
};

/// Polynomial in x, coefficients ascending.
class Polynomial {
public:
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    double derivative(int k, double x) const;
    double operator()(double x) const { return derivative(0, x); }
    const std::vector<double>& coefficients() const { return c_; }

private:
    std::vector<double> c_;
};

/// amplitude * sin(wavenumber * x)
struct SineProfile {
    double amplitude;
    double wavenumber;

    double derivative(int k, double x) const;
    double operator()(double x) const { return derivative(0, x); }
};

/// Hinged beam under the uniform surface load -f0 (downward), i.e. EI psi'''' = -2 l f0.
/// Deflections are negative downward.
Polynomial beam_deflection_constant(const BeamRodParams& p, double f0);

/// Hinged beam under -f0 sin(pi x / L).
SineProfile beam_deflection_sine(const BeamRodParams& p, double f0);

/// Rod with fixed ends under the torque density (2/3) tau0 l^3 sin(2 pi x / L).
SineProfile rod_torsion_sine(const BeamRodParams& p, double tau0);

/// lambda_m^0 = E d^3 pi^4 m^4 / (12 L^4), m = 1..m_max, N/m^3.
std::vector<double> beam_eigenvalues(const BeamRodParams& p, int m_max);

struct BeamRodFrequencies {
    std::vector<double> vertical;   ///< mu_m, Hz
    std::vector<double> torsional;  ///< tau_m, Hz
};

BeamRodFrequencies beamrod_frequencies(const BeamRodParams& p, int m_max);

/// Plate-style frequency (1/pi) sqrt(l lambda / (2 M)) for an eigenvalue lambda in N/m^3.
double frequency_from_eigenvalue(double lambda, double l, double M);

}  // namespace orthodeck::beamrod
