#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orthodeck/deck.hpp"
#include "orthodeck/profile.hpp"

namespace orthodeck::spectrum {

/// Dimensionless eigenproblem on (0, pi) x (-l~, l~):
///   Lap^2 u + kappa u_xxxx = lambda~ u, hinged at x = 0, pi, free at y = +-l~.
struct SpectrumProblem {
    double kappa;
    double nu;
    double l_tilde;

    void validate() const;
    static SpectrumProblem from(const DeckModel& model);
};

enum class Branch { VertEvenMinus, VertOddPlus, Special, HighEven, HighOdd };
std::string to_string(Branch b);
Parity parity_of(Branch b);

enum class Regime {
    BelowKappa,  ///< lambda~ < kappa m^4
    AtKappa,     ///< lambda~ = kappa m^4
    Low,         ///< kappa m^4 < lambda~ < (kappa + 1) m^4
    Boundary,    ///< lambda~ = (kappa + 1) m^4
    High         ///< lambda~ > (kappa + 1) m^4
};

/// Roots of a^4 - 2 m^2 a^2 + (kappa + 1) m^4 - lambda~ = 0 in the form used by each regime:
/// Low: +-beta, +-gamma real; High: +-beta real, +-i gamma; BelowKappa: +-beta +- i gamma;
/// AtKappa: double root m (beta = gamma = m); Boundary: 0 and +-beta.
struct RegimeRoots {
    double beta;
    double gamma;
    Regime regime;
};

RegimeRoots regime_roots(double lambda_tilde, int m, double kappa);

struct EigenvalueRecord {
    Branch branch;
    int m;
    int j = 0;  ///< 1-based index within the high branches, 0 otherwise
    double lambda_tilde;
    double lambda = 0.0;     ///< N/m^3, set by rescale
    double frequency = 0.0;  ///< Hz, set by rescale
    double beta = 0.0;
    double gamma = 0.0;
    Profile profile;          ///< eigenfunction in y~, largest coefficient 1
    double residual = 0.0;    ///< relative residual of the defining determinant
    int multiplicity = 1;
};

/// Roots are bisected until the relative width in lambda~ drops below rel_tol; 0 runs the
/// bisection to full double precision.
///
/// Even eigenvalue in ((kappa + (1 - nu)^2) m^4, (kappa + 1) m^4). Always exists.
EigenvalueRecord lambda_minus(const SpectrumProblem& p, int m, double rel_tol = 0.0);

/// l~ m sqrt(2) coth(l~ m sqrt(2)) > ((2 - nu) / nu)^2
bool plus_branch_exists(const SpectrumProblem& p, int m);

/// Odd eigenvalue below (kappa + 1) m^4, present only when plus_branch_exists.
std::optional<EigenvalueRecord> lambda_plus(const SpectrumProblem& p, int m, double rel_tol = 0.0);

/// Root s > 0 of tanh(s) = (nu / (2 - nu))^2 s.
double special_root(double nu);

/// Eigenvalue (kappa + 1) m^4 at m = s / (sqrt(2) l~), present only if that m is an integer.
std::optional<EigenvalueRecord> special_branch(const SpectrumProblem& p);

/// Boundary determinants of the high regime divided by cosh(beta l~) (and by gamma for the
/// odd system), as functions of gamma.
double high_determinant(const SpectrumProblem& p, int m, double gamma, Parity parity);

/// First j_max eigenvalues above (kappa + 1) m^4 with the given parity, ascending.
std::vector<EigenvalueRecord> high_eigenvalues(const SpectrumProblem& p, int m, int j_max, Parity parity,
                                               double rel_tol = 0.0);

/// All eigenvalues above (kappa + 1) m^4 and at most lambda_max with the given parity.
std::vector<EigenvalueRecord> high_eigenvalues_below(const SpectrumProblem& p, int m, double lambda_max,
                                                     Parity parity, double rel_tol = 0.0);

struct LowSpectrumReport {
    int m = 0;
    int samples = 0;
    double det1_min = 0.0, det1_max = 0.0;
    double det2_min = 0.0, det2_max = 0.0;
    double det3 = 0.0;  ///< at lambda~ = kappa m^4, expected > 0
    double det4 = 0.0;  ///< expected > 0
    bool passed = false;
};

/// Even and odd boundary determinants for lambda~ < kappa m^4, normalized by gamma cosh^2(beta l~).
double low_determinant(const SpectrumProblem& p, int m, double lambda_tilde, Parity parity);

/// Samples the determinants on (0, kappa m^4) and at kappa m^4; throws InvariantViolation on a
/// sign change or a zero.
LowSpectrumReport assert_no_low_spectrum(const SpectrumProblem& p, int m, int n_samples = 1000);

/// Fills lambda = (pi^4 R / L^4) lambda~ and the frequency (1/pi) sqrt(l lambda / (2 M)).
void rescale(EigenvalueRecord& rec, const DeckGeometry& geom);
double dimensional_lambda(double lambda_tilde, const DeckGeometry& geom);

/// Every eigenvalue with lambda~ <= lambda_max, all branches, sorted ascending. Roots of
/// different branches within 1e-9 relative are merged with multiplicity 2.
std::vector<EigenvalueRecord> enumerate_spectrum(const SpectrumProblem& p, double lambda_max,
                                                 unsigned threads = 1);

/// Residual of the record's eigenfunction in the strip ODE and both edge conditions.
ProfileResidual record_residual(const SpectrumProblem& p, const EigenvalueRecord& rec, int samples = 201);

}  // namespace orthodeck::spectrum
