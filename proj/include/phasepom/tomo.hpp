#pragma once

#include "phasepom/cont.hpp"
#include "phasepom/finite.hpp"

#include <optional>
#include <string>

namespace phasepom {

// Samples of x -> tr[A pi(s(x))]; length M^2 (continuous) or d^2 (finite).
struct CharField {
    CVec values;
    std::string label;
};

// Samples of x -> tr[W pi(s(x)) T pi(s(x))^{-1}]: the outcome density of the
// covariant observable built from T, evaluated at the measured operator W.
struct MeasurementData {
    CVec samples;
    std::string label_w, label_t;
};

struct ICReport {
    double min_abs = 0.0;
    double zero_fraction = 0.0;
    bool pass = false;
};

struct ReconstructionResult {
    CMat estimate;
    int damped_modes = 0;
    ICReport ic;
};

// ---- continuous regime -------------------------------------------------

CharField char_function(const CMat& A, const PhaseGrid& grid);

// Nodes count as zeros of the reference character when |chi| <= zero_eps*max.
// Pass verdict: zero-node fraction below 1e-2 (a.e.-nonvanishing surrogate:
// the grid analogue only fails on sets of positive node measure).
ICReport ic_condition(const DensityOperator& T, const PhaseGrid& grid,
                      double zero_eps = 1e-300);

MeasurementData forward_model(const CMat& W, const DensityOperator& T, const PhaseGrid& grid);

// F(g) = sum_x w * kappa(x,g) * field(x) with the commutator character
// kappa(x,g) = chi(s(x)^{-1} g^{-1} s(x) g); evaluated by two matrix products
// over the separable kernel (same sums as the direct double loop).
CVec symplectic_transform(const CVec& field, const PhaseGrid& grid);

// kappa above, computed through the continuous group operations.
Complex filter_character(double qx, double px, double qg, double pg);

// Deconvolution: (1) symplectic transform of the data, (2) regularized
// division by the reference character (damped nodes counted), (3) least
// squares of the filtered transform against the transforms of the
// displacement-pair model fields on the cutoff block (Householder QR).
// Throws NotInformationallyComplete when ic_condition fails.
ReconstructionResult reconstruct(const MeasurementData& data, const DensityOperator& T,
                                 const PhaseGrid& grid, int cutoff,
                                 double eps_reg = 1e-300);

// max-node |forward_model(W1) - forward_model(W2)|
double separation_test(const DensityOperator& W1, const DensityOperator& W2,
                       const DensityOperator& T, const PhaseGrid& grid);

// ---- finite regime (exact) ----------------------------------------------

CharField char_function_finite(const FiniteHeisenberg& grp, const CMat& A);

ICReport ic_condition_finite(const FiniteHeisenberg& grp, const DensityOperator& T,
                             double zero_eps = 1e-12);

MeasurementData forward_model_finite(const FiniteHeisenberg& grp, const CMat& W,
                                     const DensityOperator& T);

CVec symplectic_transform_finite(const FiniteHeisenberg& grp, const CVec& field);

ReconstructionResult reconstruct_finite(const FiniteHeisenberg& grp,
                                        const MeasurementData& data,
                                        const DensityOperator& T, double eps_reg = 1e-8);

double separation_test_finite(const FiniteHeisenberg& grp, const DensityOperator& W1,
                              const DensityOperator& W2, const DensityOperator& T);

// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2 with eigenvalue clipping.
double fidelity(const CMat& a, const CMat& b);

}  // namespace phasepom
