#pragma once

#include <filesystem>
#include <string>

#include "orthodeck/deck.hpp"

namespace orthodeck::config {

struct RunOptions {
    int m_max = 10;            ///< vertical table rows, spectrum modes
    int m_max_torsional = 8;   ///< torsional table rows
    int j_max = 3;             ///< high-branch roots per mode and parity in the spectrum file
    int truncation = 99;       ///< largest mode index of the static series
    double tol = 0.0;          ///< relative bisection width in lambda~; 0 = full precision
    std::string output_dir = "out";
    unsigned threads = 1;
    int oracle_nodes = 2001;
    int figure_points = 401;
    double f0 = 100.0;         ///< N/m^2
    double tau0 = 75.0;        ///< N/m^3
};

struct RunConfig {
    std::string source;
    material::ReinforcedMaterial material;
    bool calibrated = false;  ///< E2 came from the torsion calibration
    beamrod::BeamRodParams beam;
    RunOptions run;

    DeckModel model() const { return DeckModel::build(material, beam); }
};

/// Parses the key = value format described in docs/config.md. Every problem is reported as a
/// ConfigError carrying the line number of the offending entry.
RunConfig parse(const std::string& text, const std::string& source = "<config>");
RunConfig load(const std::filesystem::path& path);

/// Short description of the accepted sections and keys.
std::string schema();

}  // namespace orthodeck::config
