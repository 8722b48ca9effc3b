#pragma once

#include "orthodeck/beamrod.hpp"
#include "orthodeck/material.hpp"

namespace orthodeck {

/// Symmetry of a y-profile about the midline of the deck.
enum class Parity { Even, Odd };

/// Rectangle (0, L) x (-l, l) with the plate rigidity R = d^3 K / 12 (thickness absorbed).
struct DeckGeometry {
    double L;
    double l;
    double l_tilde;  ///< pi l / L, half width after rescaling the span to pi
    double R;        ///< N m
    double M;        ///< kg/m

    static DeckGeometry make(double L, double l, double R, double M);
    void validate() const;
};

/// The two dimensionless numbers that fix the plate operator and its free-edge conditions.
struct PlateCoefficients {
    double kappa;
    double nu;

    void validate() const;
};

/// Plate and beam-rod descriptions of one deck, built from the same constants.
struct DeckModel {
    material::ReinforcedMaterial material;
    material::DerivedConstants derived;
    DeckGeometry geometry;
    beamrod::BeamRodParams beam;

    PlateCoefficients plate() const { return {derived.kappa, material.nu}; }
    double d3() const { return beam.d3(); }

    /// Same material and thickness at a different half width: R and d^3 stay fixed, I = d^3 l / 6.
    DeckModel with_half_width(double l) const;

    /// beam.E is the Young modulus of the beam; it should equal material.E1.
    static DeckModel build(const material::ReinforcedMaterial& mat, const beamrod::BeamRodParams& beam);
};

/// Tacoma Narrows deck: E1 = 2.1e11 Pa, nu = 0.2, I = 0.15 m^4, R_T = 4.05e8 N m^2,
/// L = 853.44 m, l = 6 m, M = 7198 kg/m. E2 is 1.687e9 Pa, or calibrated from I and R_T.
DeckModel tacoma_model(bool calibrate_e2 = false);

}  // namespace orthodeck
