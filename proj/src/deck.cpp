#include "orthodeck/deck.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orthodeck {

DeckGeometry DeckGeometry::make(double L, double l, double R, double M) {
    DeckGeometry g{L, l, std::numbers::pi * l / L, R, M};
    g.validate();
    return g;
}

void DeckGeometry::validate() const {
    if (!(L > 0.0) || !(l > 0.0) || !(l < L))
        throw std::invalid_argument("deck geometry requires 0 < l < L");
    if (!(R > 0.0)) throw std::invalid_argument("plate rigidity must be positive");
    if (!(M > 0.0)) throw std::invalid_argument("mass density must be positive");
}

void PlateCoefficients::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("plate model requires kappa > 0");
    if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("plate model requires 0 < nu < 1/2");
}

DeckModel DeckModel::build(const material::ReinforcedMaterial& mat, const beamrod::BeamRodParams& beam) {
    beam.validate();
    DeckModel model;
    model.material = mat;
    model.derived = material::derive_constants(mat);
    model.beam = beam;
    const double R = material::plate_rigidity(mat.E1, beam.I, model.derived.kappa, mat.nu, beam.l);
    model.geometry = DeckGeometry::make(beam.L, beam.l, R, beam.M);
    return model;
}

DeckModel DeckModel::with_half_width(double l) const {
    DeckModel out = *this;
    const double d3 = beam.d3();
    out.beam.l = l;
    out.beam.I = d3 * l / 6.0;
    out.geometry = DeckGeometry::make(geometry.L, l, geometry.R, geometry.M);
    return out;
}

DeckModel tacoma_model(bool calibrate_e2) {
    const beamrod::BeamRodParams beam{
        .E = 2.1e11, .I = 0.15, .R_T = 4.05e8, .M = 7198.0, .L = 853.44, .l = 6.0};
    material::ReinforcedMaterial mat{.E1 = 2.1e11, .E2 = 1.687e9, .nu = 0.2,
                                     .nu23_override = {}, .mu12_override = {}};
    if (calibrate_e2) mat.E2 = material::calibrate_E2(beam.E, beam.I, beam.R_T, mat.nu);
    return DeckModel::build(mat, beam);
}

}  // namespace orthodeck
