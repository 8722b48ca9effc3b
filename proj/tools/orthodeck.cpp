// orthodeck: batch runs of the plate and beam-rod deck models.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "orthodeck/compare.hpp"
#include "orthodeck/config.hpp"
#include "orthodeck/csv.hpp"
#include "orthodeck/errors.hpp"
#include "orthodeck/oracle.hpp"
#include "orthodeck/parallel.hpp"
#include "orthodeck/platespectrum.hpp"
#include "orthodeck/platestatic.hpp"

namespace fs = std::filesystem;
using namespace orthodeck;
using csv::raw;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    std::string config;
    std::string out;
    int m_max = 0;
    int threads = 0;
    double tol = -1.0;
};

struct Context {
    config::RunConfig cfg;
    DeckModel model;
    fs::path out;
};

Context make_context(const Flags& f) {
    auto cfg = config::load(f.config);
    if (f.m_max > 0) cfg.run.m_max = f.m_max;
    if (f.threads > 0) cfg.run.threads = unsigned(f.threads);
    if (f.tol >= 0.0) cfg.run.tol = f.tol;
    fs::path out = f.out.empty() ? fs::path(cfg.run.output_dir) : fs::path(f.out);
    return {cfg, cfg.model(), out};
}

void note(const fs::path& p) { std::cout << "wrote " << p.string() << "\n"; }

// calibrate --------------------------------------------------------------------------

void run_calibrate(const Context& c) {
    const auto& mat = c.model.material;
    const auto& d = c.model.derived;
    nlohmann::ordered_json card;
    card["E1"] = mat.E1;
    card["E2"] = mat.E2;
    card["E2_source"] = c.cfg.calibrated ? "calibrated" : "given";
    card["nu12"] = mat.nu;
    card["nu21"] = d.nu21;
    card["nu23"] = mat.nu23();
    card["mu12"] = mat.mu12();
    card["K_cal"] = d.K_cal;
    card["kappa"] = d.kappa;
    card["delta"] = d.delta;
    card["d3"] = c.model.d3();
    card["plate_rigidity_R"] = c.model.geometry.R;
    card["l_tilde"] = c.model.geometry.l_tilde;
    card["torsion_energy_residual"] =
        material::torsion_energy_match_residual(mat, c.model.beam.I, c.model.beam.R_T, c.model.beam.l);
    const auto path = c.out / "material_card.json";
    csv::write_text(path, card.dump(2) + "\n");
    note(path);
}

// spectrum ---------------------------------------------------------------------------

std::string coeff_string(const Profile& p) {
    std::string s;
    for (const auto& t : p.terms) {
        if (!s.empty()) s += ';';
        s += t.label() + ":" + raw(t.coeff);
    }
    return s;
}

std::vector<spectrum::EigenvalueRecord> spectrum_records(const Context& c) {
    const auto p = spectrum::SpectrumProblem::from(c.model);
    const auto& run = c.cfg.run;
    auto per_mode = parallel_map(std::size_t(run.m_max), run.threads, [&](std::size_t i) {
        const int m = int(i) + 1;
        std::vector<spectrum::EigenvalueRecord> v;
        v.push_back(spectrum::lambda_minus(p, m, run.tol));
        if (auto lp = spectrum::lambda_plus(p, m, run.tol)) v.push_back(*lp);
        for (Parity par : {Parity::Even, Parity::Odd})
            for (auto& r : spectrum::high_eigenvalues(p, m, run.j_max, par, run.tol)) v.push_back(r);
        return v;
    });
    std::vector<spectrum::EigenvalueRecord> all;
    for (auto& v : per_mode) all.insert(all.end(), v.begin(), v.end());
    if (auto sp = spectrum::special_branch(p); sp && sp->m <= run.m_max) all.push_back(*sp);
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.lambda_tilde != b.lambda_tilde) return a.lambda_tilde < b.lambda_tilde;
        return a.m < b.m;
    });
    for (auto& r : all) spectrum::rescale(r, c.model.geometry);
    return all;
}

void run_spectrum(const Context& c) {
    csv::Table t({"branch", "m", "j", "lambda_tilde", "lambda", "frequency_hz", "coeffs"});
    for (const auto& r : spectrum_records(c))
        t.row({spectrum::to_string(r.branch), std::to_string(r.m), std::to_string(r.j), raw(r.lambda_tilde),
               raw(r.lambda), raw(r.frequency), coeff_string(r.profile)});
    const auto path = c.out / "spectrum.csv";
    t.write(path);
    note(path);
}

// static -----------------------------------------------------------------------------

compare::StaticFigures run_static(const Context& c) {
    const auto& run = c.cfg.run;
    const auto fig =
        compare::static_figures(c.model, run.figure_points, run.truncation, run.threads, run.f0, run.tau0);
    auto curve = [&](const compare::Curve& cv, const std::vector<std::string>& header, bool plate_first,
                     const std::string& name) {
        csv::Table t(header);
        for (std::size_t i = 0; i < cv.x.size(); ++i) {
            const double a = plate_first ? cv.plate[i] : cv.beamrod[i];
            const double b = plate_first ? cv.beamrod[i] : cv.plate[i];
            t.row({raw(cv.x[i]), raw(a), raw(b)});
        }
        t.write(c.out / name);
        note(c.out / name);
    };
    curve(fig.constant, {"x", "u_mid", "psi"}, true, "static_constant.csv");
    curve(fig.sine, {"x", "u_mid", "psi"}, true, "static_sine.csv");
    curve(fig.torsion, {"x", "theta_rod", "theta_plate"}, false, "static_torsion.csv");

    csv::Table s({"quantity", "value"});
    s.row({"constant_midspan_plate", raw(fig.constant_midspan_plate)});
    s.row({"constant_midspan_beam", raw(fig.constant_midspan_beam)});
    s.row({"sine_midspan_plate", raw(fig.sine_midspan_plate)});
    s.row({"sine_midspan_beam", raw(fig.sine_midspan_beam)});
    s.row({"torsion_amplitude_plate", raw(fig.torsion_amplitude_plate)});
    s.row({"torsion_amplitude_rod", raw(fig.torsion_amplitude_rod)});
    s.row({"truncation_error_estimate", raw(fig.truncation_error_estimate)});
    s.write(c.out / "static_summary.csv");
    note(c.out / "static_summary.csv");
    return fig;
}

// frequencies ------------------------------------------------------------------------

struct Tables {
    std::vector<compare::FrequencyRow> vertical;
    std::vector<compare::FrequencyRow> torsional;
};

Tables run_frequencies(const Context& c) {
    const auto& run = c.cfg.run;
    Tables tb{compare::table_vertical(c.model, run.m_max, run.tol, run.threads),
              compare::table_torsional(c.model, run.m_max_torsional, run.tol, run.threads)};
    auto emit = [&](const std::vector<compare::FrequencyRow>& rows, const std::string& stem,
                    const std::string& plate, const std::string& beam) {
        csv::Table t({"m", plate + "_hz", beam + "_hz", "abs_diff_hz"});
        csv::Table r({"m", plate, beam});
        for (const auto& row : rows) {
            t.row({std::to_string(row.m), raw(row.plate_hz), raw(row.beamrod_hz), raw(row.abs_diff)});
            r.row({std::to_string(row.m), csv::rounded4(row.plate_hz), csv::rounded4(row.beamrod_hz)});
        }
        t.write(c.out / (stem + ".csv"));
        r.write(c.out / (stem + "_rounded.csv"));
        note(c.out / (stem + ".csv"));
        note(c.out / (stem + "_rounded.csv"));
    };
    emit(tb.vertical, "table1_vertical", "nu_vert", "mu");
    emit(tb.torsional, "table2_torsional", "nu_tors", "tau");
    return tb;
}

// converge ---------------------------------------------------------------------------

// the configured half width, halved three times
const std::vector<double> kHalfWidthFactors = {1.0, 0.5, 0.25, 0.125};

struct Convergence {
    std::vector<compare::StaticConvergenceRow> stat;
    std::vector<compare::SpectralConvergenceRow> spec;
    std::vector<compare::LimitRow> limits;
};

Convergence run_converge(const Context& c) {
    const auto& run = c.cfg.run;
    std::vector<double> ls;
    for (double f : kHalfWidthFactors) ls.push_back(c.model.beam.l * f);
    Convergence cv;
    using Kind = plate::Load::Kind;
    for (Kind k : {Kind::Constant, Kind::Sine}) {
        auto rows = compare::converge_static(c.model, ls, {k, run.f0}, run.truncation, 401, 21, run.threads);
        cv.stat.insert(cv.stat.end(), rows.begin(), rows.end());
    }
    cv.spec = compare::converge_spectral(c.model, ls, {1, 2, 3}, run.threads);
    cv.limits = compare::coefficient_limits(c.model, {1, 3, 5}, c.model.beam.L * 1e-4, run.f0);

    csv::Table s({"load", "l", "sup_diff", "max_psi", "relative"});
    for (const auto& r : cv.stat)
        s.row({r.load == Kind::Constant ? "constant" : "sine", raw(r.l), raw(r.sup_diff), raw(r.max_psi),
               raw(r.relative())});
    csv::Table p({"l", "m", "lambda_l", "lambda_0", "rel_err"});
    for (const auto& r : cv.spec) p.row({raw(r.l), std::to_string(r.m), raw(r.lambda_l), raw(r.lambda_0), raw(r.rel_err)});
    csv::Table q({"m", "l", "a", "a_limit", "d", "d_limit", "rel_err_a", "rel_err_d"});
    for (const auto& r : cv.limits)
        q.row({std::to_string(r.m), raw(r.l), raw(r.a), raw(r.a_limit), raw(r.d), raw(r.d_limit), raw(r.rel_err_a()),
               raw(r.rel_err_d())});
    for (auto [t, name] : {std::pair{&s, "converge_static.csv"}, std::pair{&p, "converge_spectral.csv"},
                           std::pair{&q, "coefficient_limits.csv"}}) {
        t->write(c.out / name);
        note(c.out / name);
    }
    return cv;
}

// validate ---------------------------------------------------------------------------

class Checks {
public:
    void add(const std::string& name, double value, double threshold, bool pass) {
        table_.row({name, raw(value), raw(threshold), pass ? "pass" : "FAIL"});
        if (!pass) ++failures_;
    }
    /// value must stay at or below threshold
    void at_most(const std::string& name, double value, double threshold) {
        add(name, value, threshold, value <= threshold);
    }
    int failures() const { return failures_; }
    const csv::Table& table() const { return table_; }

private:
    csv::Table table_{{"check", "value", "threshold", "status"}};
    int failures_ = 0;
};

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

int run_validate(const Context& c) {
    const auto& run = c.cfg.run;
    const auto& g = c.model.geometry;
    const auto pc = c.model.plate();
    const auto p = spectrum::SpectrumProblem::from(c.model);
    Checks ck;

    run_calibrate(c);
    ck.at_most("material.torsion_energy_residual",
               std::abs(material::torsion_energy_match_residual(c.model.material, c.model.beam.I, c.model.beam.R_T,
                                                                c.model.beam.l)),
               c.cfg.calibrated ? 1e-12 : 1.0);

    // vertical branch brackets, ordering, residuals
    const double k = p.kappa, nu = p.nu;
    double prev = 0.0;
    bool ordered = true, bracketed = true;
    double disp = 0.0, prof = 0.0;
    for (int m = 1; m <= run.m_max; ++m) {
        const auto r = spectrum::lambda_minus(p, m, run.tol);
        const double m4 = std::pow(m, 4);
        bracketed = bracketed && r.lambda_tilde > (k + (1 - nu) * (1 - nu)) * m4 && r.lambda_tilde < (k + 1) * m4;
        ordered = ordered && r.lambda_tilde > prev;
        prev = r.lambda_tilde;
        disp = std::max(disp, r.residual);
        prof = std::max(prof, spectrum::record_residual(p, r).max());
    }
    ck.add("spectrum.lambda_minus_bracketed", bracketed, 1, bracketed);
    ck.add("spectrum.lambda_minus_increasing", ordered, 1, ordered);
    ck.at_most("spectrum.lambda_minus_dispersion_residual", disp, 1e-12);
    ck.at_most("spectrum.lambda_minus_profile_residual", prof, 1e-8);

    int plus_present = 0;
    bool plus_ok = true;
    for (int m = 1; m <= 100; ++m) {
        if (auto lp = spectrum::lambda_plus(p, m, run.tol)) {
            ++plus_present;
            plus_ok = plus_ok && lp->lambda_tilde < (k + 1) * std::pow(m, 4) &&
                      spectrum::record_residual(p, *lp).max() < 1e-8;
        }
    }
    ck.add("spectrum.lambda_plus_count_m_le_100", plus_present, 100, plus_ok);

    double high_det = 0.0, high_prof = 0.0;
    bool high_above = true;
    for (int m = 1; m <= run.m_max; ++m)
        for (Parity par : {Parity::Even, Parity::Odd})
            for (const auto& r : spectrum::high_eigenvalues(p, m, run.j_max, par, run.tol)) {
                high_det = std::max(high_det, r.residual);
                high_prof = std::max(high_prof, spectrum::record_residual(p, r).max());
                high_above = high_above && r.lambda_tilde > (k + 1) * std::pow(m, 4);
            }
    ck.add("spectrum.high_above_boundary", high_above, 1, high_above);
    ck.at_most("spectrum.high_determinant_residual", high_det, 1e-10);
    ck.at_most("spectrum.high_profile_residual", high_prof, 1e-8);

    bool low_ok = true;
    for (int m = 1; m <= 5; ++m) {
        try {
            spectrum::assert_no_low_spectrum(p, m, 1000);
        } catch (const InvariantViolation&) {
            low_ok = false;
        }
    }
    ck.add("spectrum.no_low_spectrum_m1_5", low_ok, 1, low_ok);

    // oracle agreement, one-to-one with parity, below 3 (kappa + 1) m^4 and for the first odd high root
    auto oracle_rows = parallel_map(3, run.threads, [&](std::size_t i) {
        const int m = int(i) + 1;
        const double cutoff = 3.0 * (k + 1) * std::pow(m, 4);
        oracle::ModeForm form{double(m), k, nu, p.l_tilde, run.oracle_nodes};
        const auto tors = spectrum::high_eigenvalues(p, m, 1, Parity::Odd, run.tol).front();
        const double top = std::max(cutoff, tors.lambda_tilde * 1.01);
        std::vector<spectrum::EigenvalueRecord> expect;
        for (const auto& r : spectrum::enumerate_spectrum(p, top))
            if (r.m == m) expect.push_back(r);
        const auto orc = oracle::oracle_eigen_below(form, top);
        double worst = 0.0;
        bool matched = orc.size() == expect.size();
        for (std::size_t j = 0; matched && j < expect.size(); ++j) {
            worst = std::max(worst, std::abs(orc[j].lambda_tilde - expect[j].lambda_tilde) / expect[j].lambda_tilde);
            matched = orc[j].parity == spectrum::parity_of(expect[j].branch);
        }
        return std::pair{matched, worst};
    });
    for (int m = 1; m <= 3; ++m) {
        const auto [matched, worst] = oracle_rows[std::size_t(m) - 1];
        ck.add("oracle.eigen_one_to_one_m" + std::to_string(m), matched, 1, matched);
        ck.at_most("oracle.eigen_rel_err_m" + std::to_string(m), worst, 1e-4);
    }

    // static fields
    using Kind = plate::Load::Kind;
    for (auto [kind, name] : {std::pair{Kind::Constant, "constant"}, std::pair{Kind::Sine, "sine"},
                              std::pair{Kind::Torsion, "torsion"}}) {
        const double amp = kind == Kind::Torsion ? run.tau0 : run.f0;
        const auto field = plate::solve_plate(g, pc, {kind, amp}, std::max(run.truncation, 2), run.threads);
        double bc = 0.0;
        for (const auto& md : field.modes) bc = std::max(bc, md.bc_residual);
        ck.at_most(std::string("static.") + name + "_pde_bc_residual", plate::residual(field).max(), 1e-8);
        ck.at_most(std::string("static.") + name + "_mode_bc_residual", bc, 1e-9);
    }
    for (auto [kind, name] : {std::pair{Kind::Constant, "constant_m1"}, std::pair{Kind::Torsion, "torsion_m2"}}) {
        const double amp = kind == Kind::Torsion ? run.tau0 : run.f0;
        const auto rhs = plate::load_coefficients({kind, amp}, 2, g.R).front();
        const auto sol = rhs.parity == Parity::Even ? plate::solve_mode_even(g, pc, rhs.m, rhs.constant)
                                                    : plate::solve_mode_odd(g, pc, rhs.m, rhs.slope);
        oracle::ModeForm form{sol.m_star, pc.kappa, pc.nu, g.l, run.oracle_nodes};
        const auto b = oracle::oracle_bvp(form, [&](double y) { return rhs.constant + rhs.slope * y; });
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < b.profile.y.size(); ++i) {
            err = std::max(err, std::abs(b.profile.h[i] - sol(b.profile.y[i])));
            scale = std::max(scale, std::abs(sol(b.profile.y[i])));
        }
        ck.at_most(std::string("oracle.bvp_") + name, scale > 0 ? err / scale : err, 1e-4);
    }

    // convergence
    const auto cv = run_converge(c);
    for (auto [kind, name] : {std::pair{Kind::Constant, "constant"}, std::pair{Kind::Sine, "sine"}}) {
        std::vector<double> seq;
        double last = 0.0;
        for (const auto& r : cv.stat)
            if (r.load == kind) {
                seq.push_back(r.sup_diff);
                last = r.relative();
            }
        const bool dec = strictly_decreasing(seq);
        ck.add(std::string("converge.static_") + name + "_decreasing", dec, 1, dec);
        ck.at_most(std::string("converge.static_") + name + "_final_rel", last, 1e-2);
    }
    for (int m = 1; m <= 3; ++m) {
        std::vector<double> seq;
        for (const auto& r : cv.spec)
            if (r.m == m) seq.push_back(r.rel_err);
        const bool dec = strictly_decreasing(seq);
        ck.add("converge.spectral_m" + std::to_string(m) + "_decreasing", dec, 1, dec);
        ck.at_most("converge.spectral_m" + std::to_string(m) + "_final_rel", seq.back(), 1e-3);
    }
    for (const auto& r : cv.limits)
        ck.at_most("converge.limit_coeff_m" + std::to_string(r.m), std::max(r.rel_err_a(), r.rel_err_d()), 1e-2);

    run_spectrum(c);
    run_frequencies(c);
    run_static(c);

    const auto path = c.out / "validate.csv";
    ck.table().write(path);
    note(path);
    std::cout << (ck.failures() == 0 ? "validation passed" : "validation FAILED: " + std::to_string(ck.failures()) +
                                                                 " check(s)")
              << "\n";
    return ck.failures() == 0 ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plate and beam-rod models of a suspension bridge deck"};
    app.require_subcommand(1);
    Flags flags;

    auto add = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "output directory (overrides [run] output_dir)");
        sub->add_option("--m-max", flags.m_max, "number of vertical modes")->check(CLI::PositiveNumber);
        sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--tol", flags.tol, "relative bisection width in lambda~ (0 = full precision)")
            ->check(CLI::Range(0.0, 1e-3));
        return sub;
    };
    auto* calibrate = add("calibrate", "write the material card");
    auto* spectrum = add("spectrum", "write the eigenvalue branches");
    auto* statics = add("static", "write the static figure data");
    auto* frequencies = add("frequencies", "write the frequency tables");
    auto* converge = add("converge", "write the convergence studies");
    auto* validate = add("validate", "run the invariant and oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const Context c = make_context(flags);
        if (calibrate->parsed()) run_calibrate(c);
        if (spectrum->parsed()) run_spectrum(c);
        if (statics->parsed()) run_static(c);
        if (frequencies->parsed()) run_frequencies(c);
        if (converge->parsed()) run_converge(c);
        if (validate->parsed()) return run_validate(c);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
