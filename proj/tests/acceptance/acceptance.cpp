// Acceptance criteria 1-8. `acceptance N` runs criterion N; no argument runs all of them.
// Prints one "criterion N: PASS|FAIL ..." line each; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "orthodeck/beamrod.hpp"
#include "orthodeck/compare.hpp"
#include "orthodeck/config.hpp"
#include "orthodeck/material.hpp"
#include "orthodeck/oracle.hpp"
#include "orthodeck/platespectrum.hpp"
#include "orthodeck/platestatic.hpp"

using namespace orthodeck;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

const DeckModel& model() {
    static const DeckModel m = config::load(ORTHODECK_CONFIG).model();
    return m;
}

Outcome criterion1() {
    const double printed[10] = {0.0045, 0.0180, 0.0406, 0.0722, 0.1128, 0.1624, 0.2211, 0.2887, 0.3654, 0.4512};
    const auto t0 = Clock::now();
    const auto rows = compare::table_vertical(model(), 10);
    const double elapsed = seconds_since(t0);
    bool rounded = true;
    double worst = 0.0;
    int worst_m = 0;
    std::string over;
    for (const auto& r : rows) {
        rounded = rounded && compare::round4(r.plate_hz) == printed[r.m - 1] &&
                  compare::round4(r.beamrod_hz) == printed[r.m - 1];
        if (r.abs_diff > worst) {
            worst = r.abs_diff;
            worst_m = r.m;
        }
        if (r.abs_diff > 1e-6) over += " m=" + std::to_string(r.m) + ":" + fmt(r.abs_diff);
    }
    const bool pass = rounded && worst <= 1e-6 && elapsed < 10.0;
    std::string d = "rounded values " + std::string(rounded ? "match" : "differ") + "; max |nu-mu| = " + fmt(worst) +
                    " Hz at m=" + std::to_string(worst_m) + " (limit 1e-6)";
    if (!over.empty()) d += "; over limit:" + over;
    return {pass, d + "; " + fmt(elapsed) + " s"};
}

Outcome criterion2() {
    const double plate[8] = {0.0404, 0.0822, 0.1270, 0.1760, 0.2301, 0.2904, 0.3574, 0.4317};
    const double rod[8] = {0.0401, 0.0802, 0.1204, 0.1605, 0.2006, 0.2407, 0.2808, 0.3209};
    const auto t0 = Clock::now();
    const auto rows = compare::table_torsional(model(), 8);
    const double elapsed = seconds_since(t0);
    std::string bad;
    for (const auto& r : rows) {
        if (compare::round4(r.plate_hz) != plate[r.m - 1]) bad += " nu_tors m=" + std::to_string(r.m);
        if (compare::round4(r.beamrod_hz) != rod[r.m - 1]) bad += " tau m=" + std::to_string(r.m);
    }
    const bool pass = bad.empty() && elapsed < 30.0;
    return {pass, (bad.empty() ? "all 16 values match" : "mismatch:" + bad) + "; " + fmt(elapsed) + " s"};
}

Outcome criterion3() {
    const double E = 2.1e11, I = 0.15, R_T = 4.05e8, nu = 0.2;
    const double E2 = material::calibrate_E2(E, I, R_T, nu);
    const double K = material::torsional_constant_K(0.15, 0.05, 2.0, 12.0);
    const material::ReinforcedMaterial mat{E, E2, nu, std::nullopt, std::nullopt};
    const double R = material::plate_rigidity(E, I, material::derive_constants(mat).kappa, nu, 6.0);
    const double eE2 = std::abs(E2 / 1.687e9 - 1), eK = std::abs(K / 5e-3 - 1), eR = std::abs(R / 2.109e7 - 1);
    const bool pass = eE2 <= 2e-3 && eK <= 1e-2 && eR <= 2e-3;
    return {pass, "E2 = " + fmt(E2) + " (rel " + fmt(eE2) + "), K = " + fmt(K) + " (rel " + fmt(eK) +
                      "), R = " + fmt(R) + " (rel " + fmt(eR) + ")"};
}

Outcome criterion4() {
    const auto f = compare::static_figures(model());
    const auto& b = model().beam;
    const double tau0 = 75.0;
    const double closed = tau0 * b.l * b.l * b.l * b.L * b.L / (6.0 * std::numbers::pi * std::numbers::pi * b.R_T);
    const double up = std::abs(f.constant_midspan_plate), ub = std::abs(f.constant_midspan_beam);
    const double et = std::abs(f.torsion_amplitude_rod / closed - 1);
    const bool pass = up > 250 && up < 280 && ub > 250 && ub < 280 && et <= 5e-3;
    return {pass, "|u(L/2,0)| = " + fmt(up) + " m, |psi(L/2)| = " + fmt(ub) + " m, rod amplitude " +
                      fmt(f.torsion_amplitude_rod) + " rad (rel " + fmt(et) + ")"};
}

Outcome criterion5() {
    const auto p = spectrum::SpectrumProblem::from(model());
    std::string d;
    bool pass = true;
    for (int m = 1; m <= 3; ++m) {
        // 3 (kappa + 1) m^4 lies below the first torsional root, so the window is widened to include it
        const double cutoff = 3.0 * (p.kappa + 1) * std::pow(m, 4);
        const double eta = spectrum::high_eigenvalues(p, m, 1, Parity::Odd).front().lambda_tilde;
        const double top = std::max(cutoff, 1.01 * eta);
        std::vector<spectrum::EigenvalueRecord> branch;
        for (const auto& r : spectrum::enumerate_spectrum(p, top))
            if (r.m == m) branch.push_back(r);
        const auto orc = oracle::oracle_eigen_below({double(m), p.kappa, p.nu, p.l_tilde, 2001}, top);
        bool ok = orc.size() == branch.size();
        double worst = 0.0;
        for (std::size_t j = 0; ok && j < branch.size(); ++j) {
            worst = std::max(worst, std::abs(orc[j].lambda_tilde / branch[j].lambda_tilde - 1));
            ok = orc[j].parity == spectrum::parity_of(branch[j].branch);
        }
        ok = ok && worst <= 1e-4;
        pass = pass && ok;
        d += "m=" + std::to_string(m) + ": " + std::to_string(branch.size()) + " branch / " +
             std::to_string(orc.size()) + " oracle, max rel " + fmt(worst) + "; ";
    }

    const auto& g = model().geometry;
    const auto pc = model().plate();
    for (auto kind : {plate::Load::Kind::Constant, plate::Load::Kind::Torsion}) {
        const double amp = kind == plate::Load::Kind::Torsion ? 75.0 : 100.0;
        const auto rhs = plate::load_coefficients({kind, amp}, 2, g.R).front();
        const auto sol = rhs.parity == Parity::Even ? plate::solve_mode_even(g, pc, rhs.m, rhs.constant)
                                                    : plate::solve_mode_odd(g, pc, rhs.m, rhs.slope);
        const auto b = oracle::oracle_bvp({sol.m_star, pc.kappa, pc.nu, g.l, 2001},
                                          [&](double y) { return rhs.constant + rhs.slope * y; });
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < b.profile.y.size(); ++i) {
            err = std::max(err, std::abs(b.profile.h[i] - sol(b.profile.y[i])));
            scale = std::max(scale, std::abs(sol(b.profile.y[i])));
        }
        pass = pass && err / scale <= 1e-4;
        d += "bvp m=" + std::to_string(rhs.m) + " rel " + fmt(err / scale) + "; ";
    }
    return {pass, d};
}

Outcome criterion6() {
    const auto p = spectrum::SpectrumProblem::from(model());
    bool bracketed = true, increasing = true;
    double prev = 0.0;
    for (int m = 1; m <= 10; ++m) {
        const double lam = spectrum::lambda_minus(p, m).lambda_tilde;
        const double m4 = std::pow(m, 4);
        bracketed = bracketed && lam > (std::pow(1 - p.nu, 2) + p.kappa) * m4 && lam < (p.kappa + 1) * m4;
        increasing = increasing && lam > prev;
        prev = lam;
    }
    bool low = true;
    for (int m = 1; m <= 5; ++m) {
        try {
            low = low && spectrum::assert_no_low_spectrum(p, m, 1000).passed;
        } catch (const std::exception&) {
            low = false;
        }
    }
    int present = 0;
    for (int m = 1; m <= 100; ++m) present += spectrum::plus_branch_exists(p, m) || spectrum::lambda_plus(p, m);
    const bool pass = bracketed && increasing && low && present == 0;
    return {pass, std::string("brackets ") + (bracketed ? "ok" : "broken") + ", increasing " +
                      (increasing ? "ok" : "broken") + ", low spectrum " + (low ? "absent" : "FOUND") +
                      ", lambda+ present for " + std::to_string(present) + " of m<=100"};
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

Outcome criterion7() {
    const std::vector<double> ls = {6.0, 3.0, 1.5, 0.75};
    bool pass = true;
    std::string d;
    for (auto kind : {plate::Load::Kind::Constant, plate::Load::Kind::Sine}) {
        const auto rows = compare::converge_static(model(), ls, {kind, 100.0});
        std::vector<double> seq;
        for (const auto& r : rows) seq.push_back(r.sup_diff);
        const bool ok = strictly_decreasing(seq) && rows.back().relative() < 1e-2;
        pass = pass && ok;
        d += std::string(kind == plate::Load::Kind::Constant ? "static constant" : "static sine") + " final " +
             fmt(rows.back().relative()) + (ok ? "" : " (bad)") + "; ";
    }
    const auto spec = compare::converge_spectral(model(), ls, {1, 2, 3});
    for (int m = 1; m <= 3; ++m) {
        std::vector<double> seq;
        for (const auto& r : spec)
            if (r.m == m) seq.push_back(r.rel_err);
        const bool ok = strictly_decreasing(seq) && seq.back() < 1e-3;
        pass = pass && ok;
        d += "spectral m=" + std::to_string(m) + " final " + fmt(seq.back()) + (ok ? "" : " (bad)") + "; ";
    }
    double lim = 0.0;
    for (const auto& r : compare::coefficient_limits(model(), {1, 3, 5, 7, 9}, model().geometry.L * 1e-4))
        lim = std::max({lim, r.rel_err_a(), r.rel_err_d()});
    pass = pass && lim <= 1e-2;
    return {pass, d + "limit coefficients max rel " + fmt(lim)};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::set<fs::path> listing(const fs::path& dir) {
    std::set<fs::path> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) out.insert(fs::relative(e.path(), dir));
    return out;
}

Outcome criterion8() {
    const fs::path base = fs::temp_directory_path() / "orthodeck_acceptance";
    fs::remove_all(base);
    const auto t0 = Clock::now();
    int codes[2];
    const unsigned threads[2] = {1, 4};
    for (int i = 0; i < 2; ++i) {
        const fs::path out = base / ("threads" + std::to_string(threads[i]));
        const std::string cmd = std::string("\"") + ORTHODECK_CLI + "\" validate --config \"" + ORTHODECK_CONFIG +
                                "\" --out \"" + out.string() + "\" --threads " + std::to_string(threads[i]) +
                                " > \"" + (base / ("log" + std::to_string(i) + ".txt")).string() + "\" 2>&1";
        fs::create_directories(base);
        codes[i] = std::system(cmd.c_str());
    }
    const double elapsed = seconds_since(t0);
    const auto a = listing(base / "threads1"), b = listing(base / "threads4");
    bool same = a == b && !a.empty();
    std::string diff;
    for (const auto& f : a)
        if (!b.count(f) || slurp(base / "threads1" / f) != slurp(base / "threads4" / f)) {
            same = false;
            diff += " " + f.string();
        }
    const bool ran = codes[0] != -1 && codes[1] != -1;
    const bool pass = ran && same && elapsed / 2 < 300.0;
    return {pass, std::to_string(a.size()) + " files " + (same ? "byte-identical" : "differ:" + diff) +
                      "; validate exit " + std::to_string(WEXITSTATUS(codes[0])) + "/" +
                      std::to_string(WEXITSTATUS(codes[1])) + "; " + fmt(elapsed / 2) + " s per run"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8};
    std::vector<int> which;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    } else {
        for (int n = 1; n <= 8; ++n) which.push_back(n);
    }
    int failures = 0;
    for (int n : which) {
        if (n < 1 || n > 8) {
            std::cerr << "no criterion " << n << "\n";
            return 2;
        }
        Outcome o{false, ""};
        try {
            o = criteria[std::size_t(n) - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
        failures += !o.pass;
    }
    return failures;
}
