#include "orthodeck/oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "orthodeck/errors.hpp"

namespace orthodeck::oracle {

namespace {

using quad = __float128;
constexpr int KD = 3;  // half bandwidth with interleaved (h, h') dofs

quad qabs(quad x) { return x < 0 ? -x : x; }

/// Lower band of a symmetric matrix: at(i, j) = A(i, j) for 0 <= i - j <= KD.
struct Band {
    int n = 0;
    std::vector<quad> a;

    explicit Band(int size) : n(size), a(std::size_t(size) * (KD + 1), quad(0)) {}
    quad& at(int i, int j) { return a[std::size_t(i) * (KD + 1) + (i - j)]; }
    quad at(int i, int j) const { return a[std::size_t(i) * (KD + 1) + (i - j)]; }
    /// Symmetric access for |i - j| <= KD.
    quad sym(int i, int j) const { return i >= j ? at(i, j) : at(j, i); }
};

using Local = std::array<std::array<quad, 4>, 4>;

struct Assembly {
    Band A;
    Band B;
};

Assembly assemble(const ModeForm& form) {
    form.validate();
    const int nn = form.n_nodes;
    const int n = 2 * nn;
    const quad w = form.half_width;
    const quad h = 2 * w / (nn - 1);
    const quad m2 = quad(form.m) * quad(form.m);
    const quad m4 = m2 * m2;
    const quad nu = form.nu;
    const quad c0 = (1 + quad(form.kappa)) * m4;
    const quad c1 = 2 * m2;

    const quad h2 = h * h, h3 = h2 * h;
    const Local k2 = {{{12 / h3, 6 / h2, -12 / h3, 6 / h2},
                       {6 / h2, 4 / h, -6 / h2, 2 / h},
                       {-12 / h3, -6 / h2, 12 / h3, -6 / h2},
                       {6 / h2, 2 / h, -6 / h2, 4 / h}}};
    const quad s1 = 1 / (30 * h);
    const Local k1 = {{{36 * s1, 3 * h * s1, -36 * s1, 3 * h * s1},
                       {3 * h * s1, 4 * h2 * s1, -3 * h * s1, -h2 * s1},
                       {-36 * s1, -3 * h * s1, 36 * s1, -3 * h * s1},
                       {3 * h * s1, -h2 * s1, -3 * h * s1, 4 * h2 * s1}}};
    const quad s0 = h / 420;
    const Local mass = {{{156 * s0, 22 * h * s0, 54 * s0, -13 * h * s0},
                         {22 * h * s0, 4 * h2 * s0, 13 * h * s0, -3 * h2 * s0},
                         {54 * s0, 13 * h * s0, 156 * s0, -22 * h * s0},
                         {-13 * h * s0, -3 * h2 * s0, -22 * h * s0, 4 * h2 * s0}}};

    Assembly out{Band(n), Band(n)};
    for (int e = 0; e + 1 < nn; ++e) {
        const int base = 2 * e;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c <= r; ++c) {
                out.A.at(base + r, base + c) += k2[r][c] + c1 * k1[r][c] + c0 * mass[r][c];
                out.B.at(base + r, base + c) += mass[r][c];
            }
    }
    // -nu m^2 [h g' + h' g] evaluated between -w and w
    out.A.at(1, 0) += nu * m2;
    out.A.at(n - 1, n - 2) -= nu * m2;
    return out;
}

struct Ldl {
    Band f;  // unit lower factor below the diagonal, D on the diagonal
    int negatives = 0;
};

Ldl factor(const Band& A, const Band* B, quad sigma) {
    Ldl out{A, 0};
    Band& F = out.f;
    if (B)
        for (std::size_t i = 0; i < F.a.size(); ++i) F.a[i] -= sigma * B->a[i];
    const int n = F.n;
    for (int i = 0; i < n; ++i) {
        const int k0 = std::max(0, i - KD);
        for (int j = k0; j < i; ++j) {
            quad s = F.at(i, j);
            for (int k = k0; k < j; ++k) s -= F.at(i, k) * F.at(j, k) * F.at(k, k);
            F.at(i, j) = s / F.at(j, j);
        }
        quad d = F.at(i, i);
        for (int k = k0; k < i; ++k) d -= F.at(i, k) * F.at(i, k) * F.at(k, k);
        if (d == 0) d = quad(1e-300) * quad(1e-300);
        F.at(i, i) = d;
        if (d < 0) ++out.negatives;
    }
    return out;
}

std::vector<quad> solve(const Ldl& ldl, std::vector<quad> b) {
    const Band& F = ldl.f;
    const int n = F.n;
    for (int i = 0; i < n; ++i)
        for (int k = std::max(0, i - KD); k < i; ++k) b[i] -= F.at(i, k) * b[k];
    for (int i = 0; i < n; ++i) b[i] /= F.at(i, i);
    for (int i = n - 1; i >= 0; --i)
        for (int k = i + 1; k <= std::min(n - 1, i + KD); ++k) b[i] -= F.at(k, i) * b[k];
    return b;
}

std::vector<quad> multiply(const Band& A, const std::vector<quad>& x) {
    const int n = A.n;
    std::vector<quad> y(n, quad(0));
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - KD); j <= std::min(n - 1, i + KD); ++j) y[i] += A.sym(i, j) * x[j];
    return y;
}

quad norm(const std::vector<quad>& x) {
    quad s = 0;
    for (quad v : x) s += v * v;
    return sqrtq(s);
}

std::vector<quad> load_quad(const ModeForm& form, const std::function<double(double)>& f) {
    static constexpr double gx[4] = {-0.86113631159405257522, -0.33998104358485626480, 0.33998104358485626480,
                                     0.86113631159405257522};
    static constexpr double gw[4] = {0.34785484513745385737, 0.65214515486254614263, 0.65214515486254614263,
                                     0.34785484513745385737};
    const int nn = form.n_nodes;
    const quad w = form.half_width;
    const quad h = 2 * w / (nn - 1);
    std::vector<quad> b(2 * std::size_t(nn), quad(0));
    for (int e = 0; e + 1 < nn; ++e) {
        const quad y0 = -w + h * e;
        for (int g = 0; g < 4; ++g) {
            const quad xi = (1 + quad(gx[g])) / 2;
            const quad y = y0 + h * xi;
            const quad fy = f(double(y)) * quad(gw[g]) * h / 2;
            const quad xi2 = xi * xi, xi3 = xi2 * xi;
            b[2 * e] += fy * (1 - 3 * xi2 + 2 * xi3);
            b[2 * e + 1] += fy * h * (xi - 2 * xi2 + xi3);
            b[2 * e + 2] += fy * (3 * xi2 - 2 * xi3);
            b[2 * e + 3] += fy * h * (xi3 - xi2);
        }
    }
    return b;
}

DiscreteProfile to_profile(const ModeForm& form, const std::vector<quad>& x, double scale) {
    DiscreteProfile p;
    p.y = form.nodes();
    const int nn = form.n_nodes;
    p.h.resize(nn);
    p.dh.resize(nn);
    for (int i = 0; i < nn; ++i) {
        p.h[i] = double(x[2 * i]) * scale;
        p.dh[i] = double(x[2 * i + 1]) * scale;
    }
    return p;
}

// k-th eigenvalue (0-based) by bisection on the inertia count
quad kth_eigenvalue(const Assembly& as, int k, quad lo, quad hi) {
    for (int it = 0; it < 200; ++it) {
        if (hi - lo <= quad(1e-26) * hi) break;
        const quad mid = (lo + hi) / 2;
        if (factor(as.A, &as.B, mid).negatives > k)
            hi = mid;
        else
            lo = mid;
    }
    return (lo + hi) / 2;
}

OracleMode eigenpair(const ModeForm& form, const Assembly& as, quad lambda) {
    const int n = as.A.n;
    const Ldl ldl = factor(as.A, &as.B, lambda);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<quad> x(n);
    for (auto& v : x) v = dist(rng);
    for (int it = 0; it < 4; ++it) {
        x = solve(ldl, multiply(as.B, x));
        const quad nx = norm(x);
        for (auto& v : x) v /= nx;
    }

    OracleMode mode;
    mode.lambda_tilde = double(lambda);
    const int nn = form.n_nodes;
    quad big = 0;
    for (int i = 0; i < nn; ++i)
        if (qabs(x[2 * i]) > qabs(big)) big = x[2 * i];
    mode.profile = to_profile(form, x, big != 0 ? double(1 / big) : 1.0);

    double even = 0.0, odd = 0.0;
    for (int i = 0; i < nn; ++i) {
        const double a = mode.profile.h[i], b = mode.profile.h[nn - 1 - i];
        even += (a - b) * (a - b);
        odd += (a + b) * (a + b);
    }
    mode.parity = even <= odd ? Parity::Even : Parity::Odd;
    const double hi = std::max(even, odd);
    mode.parity_defect = hi > 0.0 ? std::sqrt(std::min(even, odd) / hi) : 0.0;
    return mode;
}

}  // namespace

void ModeForm::validate() const {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("oracle: mode must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("oracle: kappa must be positive");
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("oracle: nu must lie in (0, 1)");
    if (!(half_width > 0.0)) throw std::invalid_argument("oracle: half width must be positive");
    if (n_nodes < 3) throw std::invalid_argument("oracle: need at least 3 nodes");
}

std::vector<double> ModeForm::nodes() const {
    std::vector<double> y(n_nodes);
    const quad w = half_width;
    for (int i = 0; i < n_nodes; ++i) y[i] = double(-w + 2 * w * i / (n_nodes - 1));
    return y;
}

int count_below(const ModeForm& form, double sigma) {
    const auto as = assemble(form);
    return factor(as.A, &as.B, sigma).negatives;
}

std::vector<OracleMode> oracle_eigen(const ModeForm& form, int k) {
    if (k < 1) throw std::invalid_argument("oracle: k must be >= 1");
    if (k > 2 * form.n_nodes) throw std::invalid_argument("oracle: k exceeds the discrete dimension");
    const auto as = assemble(form);
    if (factor(as.A, nullptr, 0).negatives != 0)
        throw NumericalFailure("oracle: stiffness matrix is not positive definite");

    quad hi = (1 + quad(form.kappa)) * quad(form.m) * quad(form.m) * quad(form.m) * quad(form.m) + 1;
    while (factor(as.A, &as.B, hi).negatives < k) hi *= 2;

    std::vector<OracleMode> out;
    quad lo = 0;
    for (int i = 0; i < k; ++i) {
        const quad lam = kth_eigenvalue(as, i, lo, hi);
        out.push_back(eigenpair(form, as, lam));
        lo = lam * (1 - quad(1e-24));
    }
    return out;
}

std::vector<OracleMode> oracle_eigen_below(const ModeForm& form, double cutoff) {
    const int k = count_below(form, cutoff);
    if (k == 0) return {};
    return oracle_eigen(form, k);
}

BvpSolution oracle_bvp(const ModeForm& form, const std::function<double(double)>& rhs) {
    const auto as = assemble(form);
    const auto b = load_quad(form, rhs);
    const Ldl ldl = factor(as.A, nullptr, 0);
    if (ldl.negatives != 0) throw NumericalFailure("oracle: stiffness matrix is not positive definite");
    const auto x = solve(ldl, b);
    auto r = multiply(as.A, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    const quad nb = norm(b);
    BvpSolution sol;
    sol.profile = to_profile(form, x, 1.0);
    sol.residual = nb > 0 ? double(norm(r) / nb) : double(norm(r));
    return sol;
}

std::vector<double> apply_form(const ModeForm& form, const std::vector<double>& dofs) {
    const auto as = assemble(form);
    if (dofs.size() != std::size_t(as.A.n)) throw std::invalid_argument("oracle: dof vector has wrong size");
    std::vector<quad> x(dofs.begin(), dofs.end());
    const auto y = multiply(as.A, x);
    return {y.begin(), y.end()};
}

std::vector<double> load_vector(const ModeForm& form, const std::function<double(double)>& f) {
    form.validate();
    const auto b = load_quad(form, f);
    return {b.begin(), b.end()};
}

double min_relative_pivot(const ModeForm& form) {
    const auto as = assemble(form);
    quad diag = 0;
    for (int i = 0; i < as.A.n; ++i) diag = std::max(diag, qabs(as.A.at(i, i)));
    const Ldl ldl = factor(as.A, nullptr, 0);
    quad piv = ldl.f.at(0, 0);
    for (int i = 0; i < as.A.n; ++i) piv = std::min(piv, ldl.f.at(i, i));
    return double(piv / diag);
}

}  // namespace orthodeck::oracle
