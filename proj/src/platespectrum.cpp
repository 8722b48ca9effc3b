#include "orthodeck/platespectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "orthodeck/errors.hpp"
#include "orthodeck/parallel.hpp"
#include "orthodeck/roots.hpp"

namespace orthodeck::spectrum {

using std::numbers::pi;
using Kind = ProfileTerm::Kind;

namespace {

void check_mode(int m) {
    if (m < 1) throw std::invalid_argument("mode index must be >= 1");
}

double pow4(double m) { return m * m * m * m; }

std::string bracket_context(const char* branch, int m) {
    return std::string(branch) + " branch, m = " + std::to_string(m);
}

// lambda~ on the low branches as a function of s = sqrt(lambda~ - kappa m^4)
struct LowBranch {
    const SpectrumProblem& p;
    int m;
    double m2() const { return double(m) * m; }
    double lambda(double s) const { return p.kappa * pow4(m) + s * s; }
    auto width() const {
        return [this](double lo, double hi) { return std::pair{lambda(lo), lambda(hi)}; };
    }
};

// beta (gamma^2 - m^2 nu)^2 tanh(l~ beta) - gamma (beta^2 - m^2 nu)^2 tanh(l~ gamma), and the
// size of the two terms
std::pair<double, double> g_minus(const SpectrumProblem& p, int m, double s) {
    const double m2 = double(m) * m;
    const double beta = std::sqrt(m2 + s), gamma = std::sqrt(std::max(0.0, m2 - s));
    const double a = beta * std::pow(gamma * gamma - m2 * p.nu, 2) * std::tanh(p.l_tilde * beta);
    const double b = gamma * std::pow(beta * beta - m2 * p.nu, 2) * std::tanh(p.l_tilde * gamma);
    return {a - b, std::abs(a) + std::abs(b)};
}

// beta (gamma^2 - m^2 nu)^2 tanh(l~ gamma) / gamma - (beta^2 - m^2 nu)^2 tanh(l~ beta)
std::pair<double, double> g_plus(const SpectrumProblem& p, int m, double s) {
    const double m2 = double(m) * m;
    const double beta = std::sqrt(m2 + s), gamma = std::sqrt(std::max(0.0, m2 - s));
    const double a =
        beta * std::pow(gamma * gamma - m2 * p.nu, 2) * p.l_tilde * roots::tanhc(p.l_tilde * gamma);
    const double b = std::pow(beta * beta - m2 * p.nu, 2) * std::tanh(p.l_tilde * beta);
    return {a - b, std::abs(a) + std::abs(b)};
}

struct HighTerms {
    double det;
    double scale;
    double beta;
};

HighTerms high_terms(const SpectrumProblem& p, int m, double gamma, Parity parity) {
    const double m2 = double(m) * m;
    const double g2 = gamma * gamma;
    const double beta = std::sqrt(g2 + 2.0 * m2);
    const double lt = p.l_tilde;
    const double th = std::tanh(beta * lt);
    const double c = std::cos(gamma * lt), s = std::sin(gamma * lt);
    const double bm = beta * beta - p.nu * m2;                       // beta^2 - nu m^2
    const double gm = g2 + p.nu * m2;                                // gamma^2 + nu m^2
    const double b3 = beta * (beta * beta - (2.0 - p.nu) * m2);      // beta^3 - (2 - nu) m^2 beta
    const double g3 = g2 + (2.0 - p.nu) * m2;                        // (gamma^3 + (2 - nu) m^2 gamma) / gamma
    double t1, t2;
    if (parity == Parity::Even) {
        t1 = bm * gamma * g3 * s;
        t2 = gm * c * b3 * th;
    } else {
        t1 = -bm * th * g3 * c;
        t2 = gm * b3 * lt * roots::sinc(gamma * lt);
    }
    return {t1 + t2, std::abs(t1) + std::abs(t2), beta};
}

double high_lambda(int m, double kappa, double gamma) {
    const double s = gamma * gamma + double(m) * m;
    return kappa * pow4(m) + s * s;
}

EigenvalueRecord high_record(const SpectrumProblem& p, int m, int j, double gamma, Parity parity) {
    const auto t = high_terms(p, m, gamma, parity);
    const double m2 = double(m) * m;
    const double beta = t.beta;
    const double bm = beta * beta - p.nu * m2, gm = gamma * gamma + p.nu * m2;
    EigenvalueRecord r;
    r.branch = parity == Parity::Even ? Branch::HighEven : Branch::HighOdd;
    r.m = m;
    r.j = j;
    r.lambda_tilde = high_lambda(m, p.kappa, gamma);
    r.beta = beta;
    r.gamma = gamma;
    r.profile.half_width = p.l_tilde;
    if (parity == Parity::Even) {
        r.profile.terms = {{Kind::CoshScaled, beta, gm * std::cos(gamma * p.l_tilde)}, {Kind::Cos, gamma, bm}};
    } else {
        r.profile.terms = {{Kind::SinhScaled, beta, gm * std::sin(gamma * p.l_tilde)},
                           {Kind::Sin, gamma, bm * std::tanh(beta * p.l_tilde)}};
    }
    r.profile.normalize();
    r.residual = t.scale > 0.0 ? std::abs(t.det) / t.scale : 0.0;
    return r;
}

// Scans gamma upward from just above the regime boundary in steps of (pi / 16) / l~.
std::vector<EigenvalueRecord> scan_high(const SpectrumProblem& p, int m, Parity parity, int j_max,
                                        double lambda_max, double rel_tol) {
    p.validate();
    check_mode(m);
    // lambda~ = (kappa + 1) m^4 (1 + 1e-9): gamma^2 = m^2 (sqrt(1 + eps) - 1), eps = 1e-9 (kappa + 1)
    const double gamma0 = m * std::sqrt(roots::sqrt1pm1(1e-9 * (p.kappa + 1.0)));
    const double step = (pi / 16.0) / p.l_tilde;
    const bool bounded = j_max > 0;
    const long max_steps = bounded ? 16L * (2L * j_max + 8L) : 100000000L;

    auto det = [&](double g) { return high_terms(p, m, g, parity).det; };
    auto width = [&](double lo, double hi) {
        return std::pair{high_lambda(m, p.kappa, lo), high_lambda(m, p.kappa, hi)};
    };
    const std::string ctx =
        bracket_context(parity == Parity::Even ? "high_even" : "high_odd", m);

    std::vector<EigenvalueRecord> out;
    double g_prev = gamma0, f_prev = det(gamma0);
    for (long k = 1; k <= max_steps; ++k) {
        if (!bounded && high_lambda(m, p.kappa, g_prev) > lambda_max) return out;
        const double g = gamma0 + k * step;
        const double f = det(g);
        if (f == 0.0 || std::signbit(f) != std::signbit(f_prev)) {
            const double root = roots::bisect(det, {g_prev, g}, rel_tol, width, ctx);
            auto rec = high_record(p, m, int(out.size()) + 1, root, parity);
            if (!bounded && rec.lambda_tilde > lambda_max) return out;
            out.push_back(std::move(rec));
            if (bounded && int(out.size()) == j_max) return out;
            // step past an exact zero so it is not found twice
            if (f == 0.0) {
                g_prev = g + 1e-12 * step;
                f_prev = det(g_prev);
                continue;
            }
        }
        g_prev = g;
        f_prev = f;
    }
    std::ostringstream os;
    os.precision(17);
    os << ctx << ": scan exhausted after " << max_steps << " steps, gamma in [" << gamma0 << ", " << g_prev
       << "], lambda~ in [" << high_lambda(m, p.kappa, gamma0) << ", " << high_lambda(m, p.kappa, g_prev)
       << "], found " << out.size() << " of " << j_max << " roots";
    throw NumericalFailure(os.str());
}

}  // namespace

void SpectrumProblem::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("spectrum requires kappa > 0");
    if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("spectrum requires 0 < nu < 1/2");
    if (!(l_tilde > 0.0) || !std::isfinite(l_tilde)) throw std::invalid_argument("spectrum requires l~ > 0");
}

SpectrumProblem SpectrumProblem::from(const DeckModel& model) {
    SpectrumProblem p{model.derived.kappa, model.material.nu, model.geometry.l_tilde};
    p.validate();
    return p;
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::VertEvenMinus: return "vert_even_minus";
        case Branch::VertOddPlus: return "vert_odd_plus";
        case Branch::Special: return "special";
        case Branch::HighEven: return "high_even";
        case Branch::HighOdd: return "high_odd";
    }
    return "unknown";
}

Parity parity_of(Branch b) {
    return b == Branch::VertEvenMinus || b == Branch::HighEven ? Parity::Even : Parity::Odd;
}

RegimeRoots regime_roots(double lambda_tilde, int m, double kappa) {
    if (!(lambda_tilde > 0.0)) throw std::invalid_argument("regime_roots requires lambda~ > 0");
    check_mode(m);
    const double m2 = double(m) * m, m4 = m2 * m2;
    const double delta = lambda_tilde - kappa * m4;
    if (delta < 0.0) {
        const double t = std::sqrt((kappa + 1.0) * m4 - lambda_tilde);
        return {std::sqrt((t + m2) / 2.0), std::sqrt((t - m2) / 2.0), Regime::BelowKappa};
    }
    if (delta == 0.0) return {double(m), double(m), Regime::AtKappa};
    const double s = std::sqrt(delta);
    const double edge = (kappa + 1.0) * m4 - lambda_tilde;
    if (edge == 0.0) return {std::sqrt(2.0) * m, 0.0, Regime::Boundary};
    if (edge > 0.0) return {std::sqrt(m2 + s), std::sqrt(edge / (m2 + s)), Regime::Low};
    return {std::sqrt(s + m2), std::sqrt(-edge / (s + m2)), Regime::High};
}

EigenvalueRecord lambda_minus(const SpectrumProblem& p, int m, double rel_tol) {
    p.validate();
    check_mode(m);
    const LowBranch br{p, m};
    const double m2 = br.m2();
    const double s = roots::bisect([&](double x) { return g_minus(p, m, x).first; },
                                   {(1.0 - p.nu) * m2, m2}, rel_tol, br.width(),
                                   bracket_context("vert_even_minus", m));
    EigenvalueRecord r;
    r.branch = Branch::VertEvenMinus;
    r.m = m;
    r.lambda_tilde = br.lambda(s);
    r.beta = std::sqrt(m2 + s);
    r.gamma = std::sqrt(m2 - s);
    const auto [g, scale] = g_minus(p, m, s);
    r.residual = scale > 0.0 ? std::abs(g) / scale : 0.0;
    const double P = (1.0 - p.nu) * m2;
    r.profile.half_width = p.l_tilde;
    r.profile.terms = {{Kind::CoshScaled, r.beta, s - P}, {Kind::CoshScaled, r.gamma, s + P}};
    r.profile.normalize();
    return r;
}

bool plus_branch_exists(const SpectrumProblem& p, int m) {
    p.validate();
    check_mode(m);
    const double x = p.l_tilde * m * std::sqrt(2.0);
    const double bound = std::pow((2.0 - p.nu) / p.nu, 2);
    return 1.0 / roots::tanhc(x) > bound;
}

std::optional<EigenvalueRecord> lambda_plus(const SpectrumProblem& p, int m, double rel_tol) {
    if (!plus_branch_exists(p, m)) return std::nullopt;
    const LowBranch br{p, m};
    const double m2 = br.m2();
    const double s = roots::bisect([&](double x) { return g_plus(p, m, x).first; },
                                   {(1.0 - p.nu) * m2, m2}, rel_tol, br.width(),
                                   bracket_context("vert_odd_plus", m));
    EigenvalueRecord r;
    r.branch = Branch::VertOddPlus;
    r.m = m;
    r.lambda_tilde = br.lambda(s);
    r.beta = std::sqrt(m2 + s);
    r.gamma = std::sqrt(m2 - s);
    const auto [g, scale] = g_plus(p, m, s);
    r.residual = scale > 0.0 ? std::abs(g) / scale : 0.0;
    const double lt = p.l_tilde;
    r.profile.half_width = lt;
    r.profile.terms = {
        {Kind::SinhScaled, r.beta, (r.gamma * r.gamma - p.nu * m2) * std::tanh(r.gamma * lt)},
        {Kind::SinhScaled, r.gamma, -(r.beta * r.beta - p.nu * m2) * std::tanh(r.beta * lt)}};
    r.profile.normalize();

    const double lm = lambda_minus(p, m, rel_tol).lambda_tilde;
    if (!(r.lambda_tilde > lm))
        throw InvariantViolation(bracket_context("vert_odd_plus", m) + ": root does not exceed lambda_minus");
    return r;
}

double special_root(double nu) {
    if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("special_root requires 0 < nu < 1/2");
    const double q = std::pow(nu / (2.0 - nu), 2);
    return roots::bisect([q](double s) { return std::tanh(s) - q * s; }, {1e-6, 1.0 / q + 1.0}, 1e-15,
                         "special branch");
}

std::optional<EigenvalueRecord> special_branch(const SpectrumProblem& p) {
    p.validate();
    const double s = special_root(p.nu);
    const double m_star = s / (std::sqrt(2.0) * p.l_tilde);
    const double m_round = std::round(m_star);
    if (m_round < 1.0 || std::abs(m_star - m_round) > 1e-9) return std::nullopt;

    EigenvalueRecord r;
    r.branch = Branch::Special;
    r.m = int(m_round);
    r.lambda_tilde = (p.kappa + 1.0) * pow4(m_round);
    const double rate = std::sqrt(2.0) * m_round;
    r.beta = rate;
    r.gamma = 0.0;
    r.profile.half_width = p.l_tilde;
    r.profile.terms = {{Kind::SinhScaled, rate, p.nu * p.l_tilde},
                       {Kind::Linear, 0.0, (2.0 - p.nu) * std::tanh(rate * p.l_tilde)}};
    r.profile.normalize();
    const double x = rate * p.l_tilde;
    const double a = p.nu * p.nu * x, b = std::pow(2.0 - p.nu, 2) * std::tanh(x);
    r.residual = std::abs(a - b) / (a + b);
    return r;
}

double high_determinant(const SpectrumProblem& p, int m, double gamma, Parity parity) {
    return high_terms(p, m, gamma, parity).det;
}

std::vector<EigenvalueRecord> high_eigenvalues(const SpectrumProblem& p, int m, int j_max, Parity parity,
                                               double rel_tol) {
    if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
    return scan_high(p, m, parity, j_max, 0.0, rel_tol);
}

std::vector<EigenvalueRecord> high_eigenvalues_below(const SpectrumProblem& p, int m, double lambda_max,
                                                     Parity parity, double rel_tol) {
    return scan_high(p, m, parity, 0, lambda_max, rel_tol);
}

double low_determinant(const SpectrumProblem& p, int m, double lambda_tilde, Parity parity) {
    const auto rr = regime_roots(lambda_tilde, m, p.kappa);
    if (rr.regime != Regime::BelowKappa)
        throw std::invalid_argument("low_determinant requires lambda~ < kappa m^4");
    const double m2 = double(m) * m;
    const double beta = rr.beta, gamma = rr.gamma, lt = p.l_tilde;
    const double P = beta * beta - gamma * gamma - p.nu * m2;
    const double Q3 = 3.0 * beta * beta - gamma * gamma + (p.nu - 2.0) * m2;
    const double Q1 = beta * beta - 3.0 * gamma * gamma + (p.nu - 2.0) * m2;
    const double th = std::tanh(beta * lt);
    const double ch = std::cosh(beta * lt);
    const double sech2 = 1.0 / (ch * ch);
    const double sc = std::sin(gamma * lt) * std::cos(gamma * lt);
    const double sc_over_g = lt * roots::sinc(gamma * lt) * std::cos(gamma * lt);
    const double sg = parity == Parity::Even ? 1.0 : -1.0;
    return P * Q3 * th + sg * 2.0 * beta * gamma * Q3 * sc * sech2 - 2.0 * beta * beta * Q1 * th +
           sg * beta * P * Q1 * sc_over_g * sech2;
}

LowSpectrumReport assert_no_low_spectrum(const SpectrumProblem& p, int m, int n_samples) {
    p.validate();
    check_mode(m);
    if (n_samples < 100) throw std::invalid_argument("assert_no_low_spectrum needs at least 100 samples");
    LowSpectrumReport rep;
    rep.m = m;
    rep.samples = n_samples;
    const double top = p.kappa * pow4(m);
    rep.det1_min = rep.det2_min = std::numeric_limits<double>::infinity();
    rep.det1_max = rep.det2_max = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_samples; ++k) {
        const double lam = top * (k + 0.5) / n_samples;
        const double d1 = low_determinant(p, m, lam, Parity::Even);
        const double d2 = low_determinant(p, m, lam, Parity::Odd);
        rep.det1_min = std::min(rep.det1_min, d1);
        rep.det1_max = std::max(rep.det1_max, d1);
        rep.det2_min = std::min(rep.det2_min, d2);
        rep.det2_max = std::max(rep.det2_max, d2);
    }
    const double mm = m, lt = p.l_tilde, nu = p.nu;
    const double ch = std::cosh(mm * lt);
    const double lead = (1.0 - nu) * (nu + 3.0) * pow4(mm) * std::tanh(mm * lt);
    const double tail = (1.0 - nu) * (1.0 - nu) * pow4(mm) * mm * lt / (ch * ch);
    rep.det3 = lead - tail;
    rep.det4 = lead + tail;

    auto fixed_sign = [](double lo, double hi) { return (lo > 0.0 && hi > 0.0) || (lo < 0.0 && hi < 0.0); };
    rep.passed = fixed_sign(rep.det1_min, rep.det1_max) && fixed_sign(rep.det2_min, rep.det2_max) &&
                 rep.det3 > 0.0 && rep.det4 > 0.0;
    if (!rep.passed) {
        std::ostringstream os;
        os.precision(17);
        os << "low spectrum check failed for m = " << m << ": det1 in [" << rep.det1_min << ", "
           << rep.det1_max << "], det2 in [" << rep.det2_min << ", " << rep.det2_max
           << "], det3 = " << rep.det3 << ", det4 = " << rep.det4;
        throw InvariantViolation(os.str());
    }
    return rep;
}

double dimensional_lambda(double lambda_tilde, const DeckGeometry& geom) {
    return std::pow(pi / geom.L, 4) * geom.R * lambda_tilde;
}

void rescale(EigenvalueRecord& rec, const DeckGeometry& geom) {
    geom.validate();
    rec.lambda = dimensional_lambda(rec.lambda_tilde, geom);
    rec.frequency = beamrod::frequency_from_eigenvalue(rec.lambda, geom.l, geom.M);
}

std::vector<EigenvalueRecord> enumerate_spectrum(const SpectrumProblem& p, double lambda_max,
                                                 unsigned threads) {
    p.validate();
    if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
    // every branch at mode m lies above (kappa + (1 - nu)^2) m^4
    const double floor_coeff = p.kappa + (1.0 - p.nu) * (1.0 - p.nu);
    const int m_max = int(std::floor(std::pow(lambda_max / floor_coeff, 0.25))) + 1;

    auto per_mode = parallel_map(std::size_t(m_max), threads, [&](std::size_t i) {
        const int m = int(i) + 1;
        std::vector<EigenvalueRecord> out;
        auto lm = lambda_minus(p, m);
        if (lm.lambda_tilde <= lambda_max) out.push_back(std::move(lm));
        if (auto lp = lambda_plus(p, m); lp && lp->lambda_tilde <= lambda_max) out.push_back(std::move(*lp));
        if ((p.kappa + 1.0) * pow4(m) < lambda_max) {
            for (Parity par : {Parity::Even, Parity::Odd})
                for (auto& r : high_eigenvalues_below(p, m, lambda_max, par)) out.push_back(std::move(r));
        }
        return out;
    });

    std::vector<EigenvalueRecord> all;
    for (auto& v : per_mode)
        for (auto& r : v) all.push_back(std::move(r));
    if (auto sp = special_branch(p); sp && sp->lambda_tilde <= lambda_max) all.push_back(std::move(*sp));

    std::stable_sort(all.begin(), all.end(), [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
        if (a.lambda_tilde != b.lambda_tilde) return a.lambda_tilde < b.lambda_tilde;
        if (a.m != b.m) return a.m < b.m;
        return int(a.branch) < int(b.branch);
    });
    std::vector<EigenvalueRecord> merged;
    for (auto& r : all) {
        if (!merged.empty()) {
            auto& last = merged.back();
            if (last.branch != r.branch &&
                std::abs(r.lambda_tilde - last.lambda_tilde) <= 1e-9 * std::abs(r.lambda_tilde)) {
                ++last.multiplicity;
                continue;
            }
        }
        merged.push_back(std::move(r));
    }
    return merged;
}

ProfileResidual record_residual(const SpectrumProblem& p, const EigenvalueRecord& rec, int samples) {
    return profile_residual(rec.profile, rec.m, p.kappa, p.nu, rec.lambda_tilde, samples);
}

}  // namespace orthodeck::spectrum
