#include "orthodeck/beamrod.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orthodeck::beamrod {

using std::numbers::pi;

void BeamRodParams::validate() const {
    if (!(E > 0.0 && I > 0.0 && R_T > 0.0 && M > 0.0 && L > 0.0 && l > 0.0))
        throw std::invalid_argument("beam-rod parameters must all be positive");
}

double Polynomial::derivative(int k, double x) const {
    // Horner on the k-th derivative coefficients
    double acc = 0.0;
    for (int i = static_cast<int>(c_.size()) - 1; i >= k; --i) {
        double factor = 1.0;
        for (int j = 0; j < k; ++j) factor *= static_cast<double>(i - j);
        acc = acc * x + factor * c_[static_cast<std::size_t>(i)];
    }
    return acc;
}

double SineProfile::derivative(int k, double x) const {
    const double scale = amplitude * std::pow(wavenumber, k);
    const double phase = wavenumber * x;
    switch (k % 4) {
        case 0: return scale * std::sin(phase);
        case 1: return scale * std::cos(phase);
        case 2: return -scale * std::sin(phase);
        default: return -scale * std::cos(phase);
    }
}

Polynomial beam_deflection_constant(const BeamRodParams& p, double f0) {
    p.validate();
    if (f0 < 0.0) throw std::invalid_argument("f0 must be non-negative");
    const double c = -p.l * f0 / (12.0 * p.E * p.I);
    // c (x^4 - 2 L x^3 + L^3 x)
    return Polynomial({0.0, c * p.L * p.L * p.L, 0.0, -2.0 * c * p.L, c});
}

SineProfile beam_deflection_sine(const BeamRodParams& p, double f0) {
    p.validate();
    if (f0 < 0.0) throw std::invalid_argument("f0 must be non-negative");
    const double L4 = std::pow(p.L, 4);
    return {-2.0 * p.l * L4 * f0 / (p.E * p.I * std::pow(pi, 4)), pi / p.L};
}

SineProfile rod_torsion_sine(const BeamRodParams& p, double tau0) {
    p.validate();
    if (tau0 < 0.0) throw std::invalid_argument("tau0 must be non-negative");
    const double amp = tau0 * p.l * p.l * p.l * p.L * p.L / (6.0 * pi * pi * p.R_T);
    return {amp, 2.0 * pi / p.L};
}

std::vector<double> beam_eigenvalues(const BeamRodParams& p, int m_max) {
    p.validate();
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    const double base = p.E * p.d3() * std::pow(pi, 4) / (12.0 * std::pow(p.L, 4));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m_max));
    for (int m = 1; m <= m_max; ++m) out.push_back(base * std::pow(static_cast<double>(m), 4));
    return out;
}

BeamRodFrequencies beamrod_frequencies(const BeamRodParams& p, int m_max) {
    p.validate();
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    const double vert = std::sqrt(p.E * p.I * pi * pi / (4.0 * p.M * std::pow(p.L, 4)));
    const double tors = std::sqrt(3.0 * p.R_T / (4.0 * p.M * p.l * p.l * p.L * p.L));
    BeamRodFrequencies f;
    for (int m = 1; m <= m_max; ++m) {
        f.vertical.push_back(vert * m * m);
        f.torsional.push_back(tors * m);
    }
    return f;
}

double frequency_from_eigenvalue(double lambda, double l, double M) {
    return std::sqrt(l * lambda / (2.0 * M)) / pi;
}

}  // namespace orthodeck::beamrod
