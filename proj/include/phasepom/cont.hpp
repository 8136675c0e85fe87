#pragma once

#include "phasepom/fock.hpp"
#include "phasepom/grid.hpp"

#include <string>
#include <vector>

namespace phasepom {

// Sampled coefficient function x -> <pi(s(x)) u, v>, row-major over nodes.
// Inner products are conjugate-linear in the first argument throughout.
struct CoefficientField {
    PhaseGrid grid;
    CVec values;
    std::string label_u, label_v;
};

struct DefectReport {
    std::string name;
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Hermitian operator with spectrum expected in [0,1] on the trusted block.
struct Effect {
    CMat entries;
};

CoefficientField coeff_field(const CVec& u, const CVec& v, const PhaseGrid& grid);

// Identical samples to coeff_field; named for its role as the image of v
// under the isometry attached to u (scaled by ||u||).
CoefficientField w_transform(const CVec& u, const CVec& v, const PhaseGrid& grid);

// sum_x w conj(f) g; grids must match.
Complex field_inner(const CoefficientField& f, const CoefficientField& g);

// max over index quadruples <= index_max of |<c_{e_i,e_j}, c_{e_k,e_l}> - delta delta|.
DefectReport check_orthogonality(int index_max, const PhaseGrid& grid, const FockSpace& space);

// sum over masked nodes of w * pi(s(x)) T pi(s(x))^{-1}, on the space of T.
Effect qt_effect(const DensityOperator& T, const Region& E, const PhaseGrid& grid);
Effect qt_effect_mask(const DensityOperator& T, const std::vector<std::uint8_t>& mask,
                      const PhaseGrid& grid);

double hermiticity_defect(const Effect& e);
// (min, max) eigenvalue of the Hermitian part on the top block.
std::pair<double, double> effect_spectrum_range(const Effect& e, int block);

struct CovarianceReport {
    double defect = 0.0;
    double shift_q = 0.0;  // shift after rounding to whole grid steps
    double shift_p = 0.0;
};

// Spectral norm of pi(g) Q_T(E) pi(g)^{-1} - Q_T(g.E) on the top block.
// (q,p) of g is rounded to whole grid steps; the translated node set is the
// exact integer translate of E's mask, and must stay inside the grid.
CovarianceReport covariance_defect(const DensityOperator& T, const Region& E,
                                   const GroupElementCont& g, const PhaseGrid& grid,
                                   int physical_block);

// |<W_u v, 1_E W_u w>_grid - <v, Q_{|u><u|}(E) w>|, requires ||u|| = 1.
double neumark_defect(const CVec& u, const Region& E, const CVec& v, const CVec& w,
                      const PhaseGrid& grid);

// Normalized member field f_{n,p} = c_{e_n,e_p} o s (no extra prefactor: this
// is the convention under which the family is orthonormal for the measure
// dq dp/(2 pi); see README).
CoefficientField f_basis(int n, int p, const PhaseGrid& grid);

// Parseval defect | ||t||^2 - sum_{n,p<=n_max} |<f_{n,p}, t>|^2 | / ||t||^2.
double resolution_defect(int n_max, const CoefficientField& test, const PhaseGrid& grid);

// chi(s(x)^{-1} g s(g^{-1}.x)) for x = (qx, px): the phase of the induced
// left action, computed through the group operations (never a literal sign).
Complex induced_phase(const GroupElementCont& g, double qx, double px);

}  // namespace phasepom
