#include "orthodeck/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "orthodeck/errors.hpp"

namespace orthodeck::config {

namespace {

struct Entry {
    std::string value;
    int line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"material", {"E1", "E2", "calibrate", "nu", "nu23", "mu12"}},
        {"beam", {"E", "I", "R_T"}},
        {"geometry", {"L", "l", "M"}},
        {"run",
         {"m_max", "m_max_torsional", "j_max", "truncation", "tol", "output_dir", "threads", "oracle_nodes",
          "figure_points", "f0", "tau0"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class Reader {
public:
    Reader(std::map<std::string, Section> sections, std::map<std::string, int> header_lines, std::string source)
        : sections_(std::move(sections)), headers_(std::move(header_lines)), source_(std::move(source)) {}

    const Entry* find(const std::string& sec, const std::string& key) const {
        const auto s = sections_.find(sec);
        if (s == sections_.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    bool has(const std::string& sec, const std::string& key) const { return find(sec, key) != nullptr; }

    int line_of(const std::string& sec, const std::string& key) const {
        if (const Entry* e = find(sec, key)) return e->line;
        return header_line(sec);
    }

    int header_line(const std::string& sec) const {
        const auto h = headers_.find(sec);
        return h == headers_.end() ? 0 : h->second;
    }

    [[noreturn]] void fail(int line, const std::string& what) const { throw ConfigError(source_, line, what); }

    double number(const std::string& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (!e) fail(header_line(sec), "missing key [" + sec + "] " + key);
        return parse_double(*e, sec, key);
    }

    double number_or(const std::string& sec, const std::string& key, double fallback) const {
        const Entry* e = find(sec, key);
        return e ? parse_double(*e, sec, key) : fallback;
    }

    long integer_or(const std::string& sec, const std::string& key, long fallback) const {
        const Entry* e = find(sec, key);
        if (!e) return fallback;
        long v = 0;
        const char* b = e->value.data();
        const char* end = b + e->value.size();
        const auto r = std::from_chars(b, end, v);
        if (r.ec != std::errc() || r.ptr != end) fail(e->line, "[" + sec + "] " + key + " must be an integer");
        return v;
    }

    bool boolean_or(const std::string& sec, const std::string& key, bool fallback) const {
        const Entry* e = find(sec, key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        fail(e->line, "[" + sec + "] " + key + " must be true or false");
    }

    std::string text_or(const std::string& sec, const std::string& key, const std::string& fallback) const {
        const Entry* e = find(sec, key);
        return e ? e->value : fallback;
    }

private:
    double parse_double(const Entry& e, const std::string& sec, const std::string& key) const {
        double v = 0.0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        const auto r = std::from_chars(b, end, v);
        if (r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
            fail(e.line, "[" + sec + "] " + key + " must be a finite number, got '" + e.value + "'");
        return v;
    }

    std::map<std::string, Section> sections_;
    std::map<std::string, int> headers_;
    std::string source_;
};

Reader tokenize(const std::string& text, const std::string& source) {
    std::map<std::string, Section> sections;
    std::map<std::string, int> headers;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line = 0;
    bool any = false;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find_first_of("#;");
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        any = true;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(source, line, "malformed section header '" + s + "'");
            current = trim(s.substr(1, s.size() - 2));
            if (!known_keys().count(current)) throw ConfigError(source, line, "unknown section [" + current + "]");
            if (headers.count(current)) throw ConfigError(source, line, "duplicate section [" + current + "]");
            headers[current] = line;
            sections[current];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(source, line, "expected 'key = value', got '" + s + "'");
        if (current.empty()) throw ConfigError(source, line, "key outside of any section");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (!known_keys().at(current).count(key))
            throw ConfigError(source, line, "unknown key '" + key + "' in [" + current + "]");
        if (value.empty()) throw ConfigError(source, line, "empty value for '" + key + "'");
        auto& sec = sections[current];
        if (sec.count(key)) throw ConfigError(source, line, "duplicate key '" + key + "' in [" + current + "]");
        sec[key] = {value, line};
    }
    if (!any) throw ConfigError(source, 0, "configuration is empty\n" + schema());
    for (const char* required : {"material", "beam", "geometry"})
        if (!headers.count(required))
            throw ConfigError(source, 0, std::string("missing section [") + required + "]\n" + schema());
    return Reader(std::move(sections), std::move(headers), source);
}

}  // namespace

std::string schema() {
    return "sections and keys (SI units):\n"
           "  [material]  E1 (Pa, defaults to [beam] E), nu, and exactly one of E2 (Pa) or calibrate = true;\n"
           "              optional nu23, mu12 (Pa)\n"
           "  [beam]      E (Pa), I (m^4), R_T (N m^2)\n"
           "  [geometry]  L (m), l (m, half width), M (kg/m)\n"
           "  [run]       optional: m_max, m_max_torsional, j_max, truncation, tol, output_dir, threads,\n"
           "              oracle_nodes, figure_points, f0 (N/m^2), tau0 (N/m^3)\n";
}

RunConfig parse(const std::string& text, const std::string& source) {
    const Reader r = tokenize(text, source);
    RunConfig cfg;
    cfg.source = source;

    cfg.beam.E = r.number("beam", "E");
    cfg.beam.I = r.number("beam", "I");
    cfg.beam.R_T = r.number("beam", "R_T");
    cfg.beam.L = r.number("geometry", "L");
    cfg.beam.l = r.number("geometry", "l");
    cfg.beam.M = r.number("geometry", "M");
    try {
        cfg.beam.validate();
    } catch (const std::invalid_argument& e) {
        r.fail(r.header_line("beam"), e.what());
    }
    if (!(cfg.beam.l < cfg.beam.L)) r.fail(r.line_of("geometry", "l"), "half width l must be smaller than L");

    auto& mat = cfg.material;
    mat.E1 = r.number_or("material", "E1", cfg.beam.E);
    if (r.has("material", "E1") && mat.E1 != cfg.beam.E)
        r.fail(r.line_of("material", "E1"), "[material] E1 must equal [beam] E");
    mat.nu = r.number("material", "nu");
    if (r.has("material", "nu23")) mat.nu23_override = r.number("material", "nu23");
    if (r.has("material", "mu12")) mat.mu12_override = r.number("material", "mu12");

    const bool calibrate = r.boolean_or("material", "calibrate", false);
    const bool has_e2 = r.has("material", "E2");
    if (calibrate == has_e2)
        r.fail(r.header_line("material"), "give exactly one of E2 or calibrate = true in [material]");
    try {
        if (calibrate) {
            mat.E2 = material::calibrate_E2(cfg.beam.E, cfg.beam.I, cfg.beam.R_T, mat.nu);
            cfg.calibrated = true;
        } else {
            mat.E2 = r.number("material", "E2");
        }
        mat.validate();
        if (!(mat.E1 > mat.E2)) throw std::invalid_argument("plate model requires E1 > E2 (kappa > 0)");
        const auto model = cfg.model();
        model.plate().validate();
    } catch (const std::invalid_argument& e) {
        r.fail(r.header_line("material"), e.what());
    }

    auto& run = cfg.run;
    auto positive_int = [&](const char* key, long fallback, long lo) {
        const long v = r.integer_or("run", key, fallback);
        if (v < lo) r.fail(r.line_of("run", key), std::string("[run] ") + key + " must be >= " + std::to_string(lo));
        return v;
    };
    run.m_max = int(positive_int("m_max", run.m_max, 1));
    run.m_max_torsional = int(positive_int("m_max_torsional", run.m_max_torsional, 1));
    run.j_max = int(positive_int("j_max", run.j_max, 1));
    run.truncation = int(positive_int("truncation", run.truncation, 1));
    run.threads = unsigned(positive_int("threads", run.threads, 1));
    run.oracle_nodes = int(positive_int("oracle_nodes", run.oracle_nodes, 201));
    run.figure_points = int(positive_int("figure_points", run.figure_points, 2));
    run.tol = r.number_or("run", "tol", run.tol);
    if (run.tol < 0.0 || run.tol >= 1e-3) r.fail(r.line_of("run", "tol"), "[run] tol must lie in [0, 1e-3)");
    run.f0 = r.number_or("run", "f0", run.f0);
    run.tau0 = r.number_or("run", "tau0", run.tau0);
    if (run.f0 < 0.0) r.fail(r.line_of("run", "f0"), "[run] f0 must be non-negative");
    run.output_dir = r.text_or("run", "output_dir", run.output_dir);
    return cfg;
}

RunConfig load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path.string(), 0, "cannot open configuration file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path.string());
}

}  // namespace orthodeck::config
