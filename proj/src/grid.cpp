#include "phasepom/grid.hpp"

#include <cmath>

namespace phasepom {

PhaseGrid::PhaseGrid(double L, int M) : extent(L), points(M) {
    if (L <= 0.0) throw std::invalid_argument("PhaseGrid: extent must be positive");
    if (M < 3 || M % 2 == 0) throw std::invalid_argument("PhaseGrid: points must be odd and >= 3");
    h = 2.0 * L / (M - 1);
    w = h * h / (2.0 * M_PI);
    coord.resize(M);
    for (int i = 0; i < M; ++i) coord[i] = -L + h * i;
}

Region Region::full_plane() { return {}; }

Region Region::rectangle(double q0, double q1, double p0, double p1) {
    if (q1 < q0 || p1 < p0) throw std::invalid_argument("Region: rectangle bounds out of order");
    Region r;
    r.kind = Kind::Rectangle;
    r.q0 = q0;
    r.q1 = q1;
    r.p0 = p0;
    r.p1 = p1;
    return r;
}

Region Region::disk(double cq, double cp, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("Region: disk radius must be positive");
    Region r;
    r.kind = Kind::Disk;
    r.cq = cq;
    r.cp = cp;
    r.radius = radius;
    return r;
}

Region translate(const Region& r, double dq, double dp) {
    Region out = r;
    switch (r.kind) {
        case Region::Kind::FullPlane:
            break;
        case Region::Kind::Rectangle:
            out.q0 += dq;
            out.q1 += dq;
            out.p0 += dp;
            out.p1 += dp;
            break;
        case Region::Kind::Disk:
            out.cq += dq;
            out.cp += dp;
            break;
    }
    return out;
}

namespace {

// index range [lo, hi] of coords inside [a, b], with a guard that keeps the
// decision stable when a bound sits on a node up to rounding
void coord_range(const PhaseGrid& g, double a, double b, int& lo, int& hi) {
    const double guard = 1e-9;
    lo = static_cast<int>(std::ceil((a + g.extent) / g.h - guard));
    hi = static_cast<int>(std::floor((b + g.extent) / g.h + guard));
    lo = std::max(lo, 0);
    hi = std::min(hi, g.points - 1);
}

}  // namespace

std::vector<std::uint8_t> region_mask(const Region& r, const PhaseGrid& g) {
    std::vector<std::uint8_t> mask(g.nodes(), 0);
    switch (r.kind) {
        case Region::Kind::FullPlane:
            std::fill(mask.begin(), mask.end(), 1);
            break;
        case Region::Kind::Rectangle: {
            int i0, i1, j0, j1;
            coord_range(g, r.q0, r.q1, i0, i1);
            coord_range(g, r.p0, r.p1, j0, j1);
            for (int i = i0; i <= i1; ++i)
                for (int j = j0; j <= j1; ++j) mask[g.index(i, j)] = 1;
            break;
        }
        case Region::Kind::Disk: {
            // center snapped to the nearest node; membership decided on
            // integer offsets so translated disks translate node-exactly
            const long ic = std::lround((r.cq + g.extent) / g.h);
            const long jc = std::lround((r.cp + g.extent) / g.h);
            const double r2 = r.radius * r.radius / (g.h * g.h) + 1e-9;
            const long span = static_cast<long>(std::floor(std::sqrt(r2))) + 1;
            for (long i = std::max(ic - span, 0L); i <= std::min(ic + span, g.points - 1L); ++i)
                for (long j = std::max(jc - span, 0L); j <= std::min(jc + span, g.points - 1L);
                     ++j) {
                    const double d2 =
                        static_cast<double>((i - ic) * (i - ic) + (j - jc) * (j - jc));
                    if (d2 <= r2) mask[g.index(static_cast<int>(i), static_cast<int>(j))] = 1;
                }
            break;
        }
    }
    return mask;
}

}  // namespace phasepom
