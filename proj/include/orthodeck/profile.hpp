#pragma once

#include <string>
#include <vector>

namespace orthodeck {

/// One term of a y-profile on [-w, w].
///
/// Hyperbolic terms are stored divided by cosh(rate * w) so they stay O(1) for large rate * w.
struct ProfileTerm {
    enum class Kind { CoshScaled, SinhScaled, Cos, Sin, Linear };
    Kind kind;
    double rate;
    double coeff;

    double derivative(int k, double y, double half_width) const;
    std::string label() const;
};

/// Linear combination of ProfileTerms, e.g. an eigenfunction h_m(y) of a free-edge strip.
struct Profile {
    double half_width = 0.0;
    std::vector<ProfileTerm> terms;

    double derivative(int k, double y) const;
    double operator()(double y) const { return derivative(0, y); }

    /// Rescales so the largest |coeff| is 1 with a positive sign.
    void normalize();
};

/// Relative residuals of the strip eigenproblem
///   h'''' - 2 m^2 h'' + (kappa + 1) m^4 h = lambda h,
///   h'' - nu m^2 h = 0,  h''' + (nu - 2) m^2 h' = 0  at y = +-w.
struct ProfileResidual {
    double ode = 0.0;
    double moment = 0.0;
    double shear = 0.0;
    double max() const;
};

ProfileResidual profile_residual(const Profile& h, double m, double kappa, double nu, double lambda_tilde,
                                 int samples = 201);

}  // namespace orthodeck
