#pragma once

#include <functional>
#include <vector>

#include "orthodeck/deck.hpp"

namespace orthodeck::oracle {

/// Single-mode quadratic form on [-w, w]
///   Q_m(h) = int h''^2 - 2 nu m^2 h h'' + (1 + kappa) m^4 h^2 + 2 (1 - nu) m^2 h'^2 dy,
/// discretized with C1 Hermite cubics on n_nodes equispaced nodes. The free-edge conditions are
/// natural for Q_m and are not imposed.
///
/// Assembly, factorization and bisection run in quadruple precision: for narrow strips the
/// stiffness/mass ratio is near 1e18 and double precision loses every digit.
struct ModeForm {
    double m;
    double kappa;
    double nu;
    double half_width;
    int n_nodes;

    void validate() const;
    /// Node coordinates y_i = -w + 2 w i / (n - 1).
    std::vector<double> nodes() const;
};

/// Nodal values and slopes of a discrete profile.
struct DiscreteProfile {
    std::vector<double> y;
    std::vector<double> h;
    std::vector<double> dh;
};

struct OracleMode {
    double lambda_tilde;
    Parity parity;
    /// min/max of the discrete L2 norms of h(y) - h(-y) and h(y) + h(-y)
    double parity_defect;
    DiscreteProfile profile;
};

/// Number of discrete eigenvalues below sigma (inertia of A - sigma B).
int count_below(const ModeForm& form, double sigma);

/// k smallest eigenpairs of A h = lambda B h, ascending.
std::vector<OracleMode> oracle_eigen(const ModeForm& form, int k);

/// Every eigenpair with eigenvalue below cutoff.
std::vector<OracleMode> oracle_eigen_below(const ModeForm& form, double cutoff);

struct BvpSolution {
    DiscreteProfile profile;
    double residual;  ///< |A h - b| / |b| of the discrete system
};

/// Minimizer of Q_m(h) / 2 - int rhs h dy, i.e. the weak form of
/// h'''' - 2 m^2 h'' + (1 + kappa) m^4 h = rhs with natural edge conditions.
BvpSolution oracle_bvp(const ModeForm& form, const std::function<double(double)>& rhs);

/// A x for dofs interleaved as (h_0, h'_0, h_1, h'_1, ...).
std::vector<double> apply_form(const ModeForm& form, const std::vector<double>& dofs);

/// b_i = int f phi_i dy (4-point Gauss per element).
std::vector<double> load_vector(const ModeForm& form, const std::function<double(double)>& f);

/// Smallest pivot of the LDL^T factorization of A divided by the largest diagonal entry.
double min_relative_pivot(const ModeForm& form);

}  // namespace orthodeck::oracle
