#pragma once

#include "phasepom/common.hpp"

#include <cstdint>
#include <vector>

namespace phasepom {

// Uniform endpoint grid on [-L,L]^2 carrying the measure dq dp / (2 pi).
// M odd keeps the origin on a node. Node (i,j) sits at (coord[i], coord[j]),
// weight w = h^2/(2 pi) each, so the total weight is (M h)^2 / (2 pi).
struct PhaseGrid {
    double extent;
    int points;
    double h;
    double w;
    RVec coord;

    PhaseGrid(double L, int M);

    int nodes() const { return points * points; }
    int index(int i, int j) const { return i * points + j; }
    double q(int i) const { return coord[i]; }
    double p(int j) const { return coord[j]; }
    Complex z(int i, int j) const { return Complex(-coord[i], coord[j]) / std::sqrt(2.0); }
    double sum_weights() const { return w * nodes(); }

    bool same_as(const PhaseGrid& o) const {
        return points == o.points && extent == o.extent;
    }
};

// Measurable sets are realized as node masks. Membership is decided in
// integer index space (disk centers snap to the nearest node), so a region
// translated by a whole number of grid steps selects the exactly translated
// node set; additivity and covariance checks then carry no boundary ties.
struct Region {
    enum class Kind { FullPlane, Rectangle, Disk };
    Kind kind = Kind::FullPlane;
    double q0 = 0, q1 = 0, p0 = 0, p1 = 0;  // rectangle bounds
    double cq = 0, cp = 0, radius = 0;      // disk

    static Region full_plane();
    static Region rectangle(double q0, double q1, double p0, double p1);
    static Region disk(double cq, double cp, double radius);
};

Region translate(const Region& r, double dq, double dp);

// One byte per node, row-major (index = i*M + j).
std::vector<std::uint8_t> region_mask(const Region& r, const PhaseGrid& grid);

}  // namespace phasepom
