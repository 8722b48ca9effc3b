#pragma once

#include <Eigen/Dense>
#include <optional>

namespace orthodeck::material {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
/// Strain in the order e11, e22, e33, e12, e13, e23 (tensor components, not engineering shear).
using Strain6 = Eigen::Matrix<double, 6, 1>;

/// General orthotropic solid: nine independent constants, stored with all six Poisson ratios.
struct OrthotropicMaterial {
    double E1, E2, E3;
    double nu12, nu13, nu23;
    double nu21, nu31, nu32;
    double mu12, mu13, mu23;

    /// Throws InvalidMaterial / DegenerateMaterial.
    void validate() const;
    /// Determinant of the normal-stress block of the compliance matrix.
    double delta() const;
};

/// Orthotropic solid with a one-dimensional reinforcement along x1 and transverse isotropy in (x2, x3).
///
/// Five constants determine it: E1, E2, nu (= nu12), nu23 and mu12. nu23 does not
/// enter the plate energy; it defaults to nu. mu12 defaults to K (1 - nu) / 2, the
/// isotropic-plate relation.
struct ReinforcedMaterial {
    double E1;
    double E2;
    double nu;
    std::optional<double> nu23_override;
    std::optional<double> mu12_override;

    double nu21() const { return nu * E2 / E1; }
    double nu23() const { return nu23_override.value_or(nu); }
    double K_cal() const { return E2 / (1.0 - nu * nu21()); }
    double mu12() const;
    double delta() const;

    /// Checks E1 >= E2 > 0, 0 < nu < 1/2 and delta > 0.
    void validate() const;
    /// Full orthotropic description with E2 = E3, nu21 = nu31, nu12 = nu13,
    /// nu23 = nu32, mu12 = mu13 and mu23 = (C2222 - C2233) / 2.
    OrthotropicMaterial to_orthotropic() const;
};

struct DerivedConstants {
    double K_cal;  ///< effective plate modulus E2 / (1 - nu12 nu21), Pa
    double kappa;  ///< reinforcement ratio (E1 - E2) / E2
    double nu21;
    double delta;  ///< 1/Pa^3
};

Matrix6 compliance_matrix(const OrthotropicMaterial& mat);
Matrix6 stiffness_matrix(const ReinforcedMaterial& mat);

/// Elastic energy per unit volume, J/m^3.
double energy_density(const ReinforcedMaterial& mat, const Strain6& strain);

DerivedConstants derive_constants(const ReinforcedMaterial& mat);

/// Torsional constant of a deck section built from two webs (height h, thickness d1)
/// and a slab (width 2l, thickness d2), summing the thin-rectangle terms b t^3 / 3.
double torsional_constant_K(double d1, double d2, double h, double width_2l);

/// E2 that makes the plate's torsional energy equal the rod's, given E = E1.
double calibrate_E2(double E, double I, double R_T, double nu);

/// Plate rigidity d^3 K / 12 with the thickness absorbed through I = d^3 l / 6.
double plate_rigidity(double E1, double I, double kappa, double nu, double l);

/// Residual of d^3 K (1 - nu) l / 3 = R_T, relative to R_T.
double torsion_energy_match_residual(const ReinforcedMaterial& mat, double I, double R_T, double l);

}  // namespace orthodeck::material
