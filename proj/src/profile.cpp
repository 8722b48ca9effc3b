#include "orthodeck/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orthodeck {

namespace {

// cosh(r y) / cosh(r w) and sinh(r y) / cosh(r w) for |y| <= w, r >= 0
double cosh_scaled(double r, double y, double w) {
    return (std::exp(r * (y - w)) + std::exp(-r * (y + w))) / (1.0 + std::exp(-2.0 * r * w));
}

double sinh_scaled(double r, double y, double w) {
    return (std::exp(r * (y - w)) - std::exp(-r * (y + w))) / (1.0 + std::exp(-2.0 * r * w));
}

}  // namespace

double ProfileTerm::derivative(int k, double y, double half_width) const {
    if (k < 0) throw std::invalid_argument("negative derivative order");
    const double rk = std::pow(rate, k);
    switch (kind) {
        case Kind::CoshScaled:
            return coeff * rk * (k % 2 == 0 ? cosh_scaled(rate, y, half_width) : sinh_scaled(rate, y, half_width));
        case Kind::SinhScaled:
            return coeff * rk * (k % 2 == 0 ? sinh_scaled(rate, y, half_width) : cosh_scaled(rate, y, half_width));
        case Kind::Cos: {
            static constexpr int sgn[4] = {1, -1, -1, 1};
            const double v = k % 2 == 0 ? std::cos(rate * y) : std::sin(rate * y);
            return coeff * rk * sgn[k % 4] * v;
        }
        case Kind::Sin: {
            static constexpr int sgn[4] = {1, 1, -1, -1};
            const double v = k % 2 == 0 ? std::sin(rate * y) : std::cos(rate * y);
            return coeff * rk * sgn[k % 4] * v;
        }
        case Kind::Linear:
            if (k == 0) return coeff * y;
            if (k == 1) return coeff;
            return 0.0;
    }
    return 0.0;
}

std::string ProfileTerm::label() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case Kind::CoshScaled: os << "cosh_scaled"; break;
        case Kind::SinhScaled: os << "sinh_scaled"; break;
        case Kind::Cos: os << "cos"; break;
        case Kind::Sin: os << "sin"; break;
        case Kind::Linear: return "y";
    }
    os << "(" << rate << ")";
    return os.str();
}

double Profile::derivative(int k, double y) const {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.derivative(k, y, half_width);
    return sum;
}

void Profile::normalize() {
    const ProfileTerm* big = nullptr;
    for (const auto& t : terms)
        if (!big || std::abs(t.coeff) > std::abs(big->coeff)) big = &t;
    if (!big || big->coeff == 0.0) return;
    const double s = 1.0 / big->coeff;
    for (auto& t : terms) t.coeff *= s;
}

double ProfileResidual::max() const { return std::max({ode, moment, shear}); }

ProfileResidual profile_residual(const Profile& h, double m, double kappa, double nu, double lambda_tilde,
                                 int samples) {
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    const double w = h.half_width;
    const double m2 = m * m, m4 = m2 * m2;
    ProfileResidual r;
    double res = 0.0, scale = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double y = -w + 2.0 * w * i / (samples - 1);
        const double h0 = h.derivative(0, y), h2 = h.derivative(2, y), h4 = h.derivative(4, y);
        res = std::max(res, std::abs(h4 - 2.0 * m2 * h2 + ((kappa + 1.0) * m4 - lambda_tilde) * h0));
        scale = std::max(scale, std::abs(h4) + 2.0 * m2 * std::abs(h2) + (kappa + 1.0) * m4 * std::abs(h0) +
                                    std::abs(lambda_tilde * h0));
    }
    r.ode = scale > 0.0 ? res / scale : res;
    for (double y : {-w, w}) {
        const double h0 = h.derivative(0, y), h1 = h.derivative(1, y);
        const double h2 = h.derivative(2, y), h3 = h.derivative(3, y);
        const double ms = std::abs(h2) + nu * m2 * std::abs(h0);
        const double ss = std::abs(h3) + (2.0 - nu) * m2 * std::abs(h1);
        const double mr = std::abs(h2 - nu * m2 * h0), sr = std::abs(h3 + (nu - 2.0) * m2 * h1);
        r.moment = std::max(r.moment, ms > 0.0 ? mr / ms : mr);
        r.shear = std::max(r.shear, ss > 0.0 ? sr / ss : sr);
    }
    return r;
}

}  // namespace orthodeck
