#include "orthodeck/material.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthodeck/errors.hpp"

namespace orthodeck::material {

namespace {

bool rel_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidMaterial(std::string(name) + " must be positive and finite, got " +
                              std::to_string(value));
}

// Cholesky-style pivots; tolerance is relative to the largest diagonal entry.
bool is_spd(const Matrix6& A) {
    const double scale = A.diagonal().cwiseAbs().maxCoeff();
    const double tol = 1e-12 * scale;
    Matrix6 work = A;
    for (int k = 0; k < 6; ++k) {
        const double pivot = work(k, k);
        if (!(pivot > tol)) return false;
        for (int i = k + 1; i < 6; ++i) {
            const double f = work(i, k) / pivot;
            for (int j = k; j < 6; ++j) work(i, j) -= f * work(k, j);
        }
    }
    return true;
}

}  // namespace

double OrthotropicMaterial::delta() const {
    return (1.0 - nu12 * nu21 - nu13 * nu31 - nu23 * nu32 - 2.0 * nu12 * nu23 * nu31) /
           (E1 * E2 * E3);
}

void OrthotropicMaterial::validate() const {
    require_positive(E1, "E1");
    require_positive(E2, "E2");
    require_positive(E3, "E3");
    require_positive(mu12, "mu12");
    require_positive(mu13, "mu13");
    require_positive(mu23, "mu23");
    if (!rel_equal(nu21 / E2, nu12 / E1, 1e-12) || !rel_equal(nu31 / E3, nu13 / E1, 1e-12) ||
        !rel_equal(nu32 / E3, nu23 / E2, 1e-12))
        throw InvalidMaterial("Poisson ratios violate nu_ji / E_j = nu_ij / E_i");
    if (!(delta() > 0.0)) throw DegenerateMaterial("compliance block determinant delta <= 0");
}

Matrix6 compliance_matrix(const OrthotropicMaterial& m) {
    m.validate();
    Matrix6 S = Matrix6::Zero();
    S(0, 0) = 1.0 / m.E1;
    S(0, 1) = -m.nu21 / m.E2;
    S(0, 2) = -m.nu31 / m.E3;
    S(1, 0) = -m.nu12 / m.E1;
    S(1, 1) = 1.0 / m.E2;
    S(1, 2) = -m.nu32 / m.E3;
    S(2, 0) = -m.nu13 / m.E1;
    S(2, 1) = -m.nu23 / m.E2;
    S(2, 2) = 1.0 / m.E3;
    S(3, 3) = 1.0 / (2.0 * m.mu12);
    S(4, 4) = 1.0 / (2.0 * m.mu13);
    S(5, 5) = 1.0 / (2.0 * m.mu23);
    return S;
}

double ReinforcedMaterial::delta() const {
    const double n21 = nu21();
    const double n23 = nu23();
    // E3 = E2, nu13 = nu12, nu31 = nu21, nu32 = nu23
    return (1.0 - 2.0 * nu * n21 - n23 * n23 - 2.0 * nu * n23 * n21) / (E1 * E2 * E2);
}

double ReinforcedMaterial::mu12() const {
    return mu12_override.value_or(K_cal() * (1.0 - nu) / 2.0);
}

void ReinforcedMaterial::validate() const {
    require_positive(E1, "E1");
    require_positive(E2, "E2");
    if (E1 < E2) throw InvalidMaterial("reinforcement requires E1 >= E2");
    if (!(nu > 0.0 && nu < 0.5)) throw InvalidMaterial("nu must lie in (0, 1/2)");
    if (nu23_override && !(std::abs(*nu23_override) < 1.0))
        throw InvalidMaterial("nu23 must lie in (-1, 1)");
    if (mu12_override) require_positive(*mu12_override, "mu12");
    if (!(delta() > 0.0)) throw DegenerateMaterial("compliance block determinant delta <= 0");
}

Matrix6 stiffness_matrix(const ReinforcedMaterial& m) {
    m.validate();
    const double d = m.delta();
    const double E1 = m.E1, E2 = m.E2, n12 = m.nu, n23 = m.nu23();

    Matrix6 C = Matrix6::Zero();
    C(0, 0) = (1.0 - n23 * n23) / (d * E2 * E2);
    C(0, 1) = C(1, 0) = n12 * (1.0 + n23) / (d * E1 * E2);
    C(0, 2) = C(2, 0) = C(0, 1);
    C(1, 1) = (E1 - E2 * n12 * n12) / (d * E1 * E1 * E2);
    C(1, 2) = C(2, 1) = (E1 * n23 + E2 * n12 * n12) / (d * E1 * E1 * E2);
    C(2, 2) = C(1, 1);
    C(3, 3) = 2.0 * m.mu12();
    C(4, 4) = 2.0 * m.mu12();
    C(5, 5) = (E1 * (1.0 - n23) - 2.0 * E2 * n12 * n12) / (d * E1 * E1 * E2);

    if (!is_spd(C)) throw DegenerateMaterial("stiffness matrix is not positive definite");
    return C;
}

OrthotropicMaterial ReinforcedMaterial::to_orthotropic() const {
    validate();
    const Matrix6 C = stiffness_matrix(*this);
    OrthotropicMaterial o{};
    o.E1 = E1;
    o.E2 = E2;
    o.E3 = E2;
    o.nu12 = nu;
    o.nu13 = nu;
    o.nu23 = nu23();
    o.nu21 = nu21();
    o.nu31 = nu21();
    o.nu32 = nu23();
    o.mu12 = mu12();
    o.mu13 = mu12();
    o.mu23 = 0.5 * (C(1, 1) - C(1, 2));
    return o;
}

double energy_density(const ReinforcedMaterial& mat, const Strain6& e) {
    const Matrix6 C = stiffness_matrix(mat);
    const Eigen::Vector3d diag = e.head<3>();
    const double normal = 0.5 * diag.dot(C.topLeftCorner<3, 3>() * diag);
    return normal + C(3, 3) * e(3) * e(3) + C(4, 4) * e(4) * e(4) + C(5, 5) * e(5) * e(5);
}

DerivedConstants derive_constants(const ReinforcedMaterial& mat) {
    mat.validate();
    return DerivedConstants{
        .K_cal = mat.K_cal(),
        .kappa = (mat.E1 - mat.E2) / mat.E2,
        .nu21 = mat.nu21(),
        .delta = mat.delta(),
    };
}

double torsional_constant_K(double d1, double d2, double h, double width_2l) {
    if (d1 < 0.0 || d2 < 0.0 || h < 0.0 || width_2l < 0.0)
        throw std::invalid_argument("section dimensions must be non-negative");
    const double web = h * d1 * d1 * d1 / 3.0;
    return web + web + width_2l * d2 * d2 * d2 / 3.0;
}

double calibrate_E2(double E, double I, double R_T, double nu) {
    if (!(E > 0.0) || !(I > 0.0) || !(R_T > 0.0))
        throw std::invalid_argument("calibrate_E2: E, I and R_T must be positive");
    if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("calibrate_E2: nu must lie in (0, 1/2)");
    return E * R_T / (2.0 * E * I * (1.0 - nu) + nu * nu * R_T);
}

double plate_rigidity(double E1, double I, double kappa, double nu, double l) {
    if (!(E1 > 0.0) || !(I > 0.0) || !(l > 0.0) || kappa < 0.0)
        throw std::invalid_argument("plate_rigidity: inputs must be positive");
    return E1 * I / (2.0 * (1.0 + kappa - nu * nu) * l);
}

double torsion_energy_match_residual(const ReinforcedMaterial& mat, double I, double R_T, double l) {
    const double d3 = 6.0 * I / l;
    const double lhs = d3 * mat.K_cal() * (1.0 - mat.nu) * l / 3.0;
    return std::abs(lhs - R_T) / R_T;
}

}  // namespace orthodeck::material
