#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "phasepom/cont.hpp"
#include "phasepom/fock.hpp"
#include "phasepom/grid.hpp"

#include <cmath>

using namespace phasepom;

namespace {

CVec basis_vec(int n, int dim) {
    CVec v = CVec::Zero(dim);
    v[n] = 1.0;
    return v;
}

DensityOperator vacuum_state(int dim) {
    CMat m = CMat::Zero(dim, dim);
    m(0, 0) = 1.0;
    return DensityOperator(m);
}

}  // namespace

TEST_CASE("phase grid layout") {
    CHECK_THROWS_AS(PhaseGrid(7.0, 140), std::invalid_argument);  // even
    CHECK_THROWS_AS(PhaseGrid(7.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(PhaseGrid(0.0, 141), std::invalid_argument);

    PhaseGrid g(7.0, 141);
    CHECK(g.h == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.coord[0] == -7.0);
    CHECK(g.coord[140] == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(g.coord[70] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.nodes() == 141 * 141);
    // endpoint rule: total weight is nodes * w, slightly above (2L)^2 / (2pi)
    CHECK(g.sum_weights() == doctest::Approx(g.nodes() * g.w).epsilon(1e-14));
    const Complex z = g.z(70, 70);
    CHECK(std::abs(z) == 0.0);
}

TEST_CASE("region masks") {
    PhaseGrid g(2.0, 5);  // h = 1
    const auto full = region_mask(Region::full_plane(), g);
    std::size_t count = 0;
    for (auto m : full) count += m;
    CHECK(count == 25);

    const auto rect = region_mask(Region::rectangle(0.0, 2.0, -1.0, 1.0), g);
    count = 0;
    for (auto m : rect) count += m;
    CHECK(count == 9);  // q in {0,1,2} x p in {-1,0,1}

    const auto disk = region_mask(Region::disk(0.0, 0.0, 1.0), g);
    count = 0;
    for (auto m : disk) count += m;
    CHECK(count == 5);

    CHECK_THROWS_AS(Region::rectangle(2.0, 0.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Region::disk(0.0, 0.0, -1.0), std::invalid_argument);

    const Region moved = translate(Region::disk(0.0, 0.0, 1.0), 1.0, -1.0);
    CHECK(moved.cq == 1.0);
    CHECK(moved.cp == -1.0);
}

TEST_CASE("coefficient field samples") {
    PhaseGrid g(5.0, 101);
    const int c = 50;
    CoefficientField f = coeff_field(basis_vec(0, 40), basis_vec(0, 40), g);
    CHECK(std::abs(f.values[g.index(c, c)] - Complex(1.0, 0.0)) <= 1e-14);
    for (auto [i, j] : {std::pair{c + 10, c}, {c, c - 7}, {c + 4, c + 9}}) {
        const double q = g.q(i), p = g.p(j);
        CHECK(std::abs(std::abs(f.values[g.index(i, j)]) - std::exp(-(q * q + p * p) / 4.0)) <=
              1e-8);
    }
    CoefficientField f01 = coeff_field(basis_vec(0, 40), basis_vec(1, 40), g);
    CHECK(std::abs(f01.values[g.index(c, c)]) == 0.0);
}

TEST_CASE("field inner products") {
    PhaseGrid g(7.0, 141);
    CoefficientField c00 = coeff_field(basis_vec(0, 50), basis_vec(0, 50), g);
    CoefficientField c01 = coeff_field(basis_vec(0, 50), basis_vec(1, 50), g);
    CHECK(std::abs(field_inner(c00, c00) - Complex(1.0, 0.0)) <= 1e-6);
    CHECK(std::abs(field_inner(c00, c01)) <= 1e-6);

    CoefficientField zero{g, CVec::Zero(g.nodes()), "", ""};
    CHECK(std::abs(field_inner(zero, c00)) == 0.0);

    PhaseGrid other(6.0, 121);
    CoefficientField mism = coeff_field(basis_vec(0, 50), basis_vec(0, 50), other);
    CHECK_THROWS_AS(field_inner(c00, mism), std::invalid_argument);
}

TEST_CASE("matrix coefficient gram") {
    FockSpace sp(60, 12);
    PhaseGrid g(7.0, 141);
    CHECK_THROWS_AS(check_orthogonality(13, g, sp), std::invalid_argument);

    DefectReport base = check_orthogonality(0, g, sp);
    CHECK(base.defect <= 1e-6);  // the norm of c_{e0,e0} is 1 under this measure
    CHECK(base.pass);

    // widening the window at fixed spacing cannot hurt
    DefectReport narrow = check_orthogonality(0, PhaseGrid(6.0, 121), sp);
    CHECK(narrow.defect >= base.defect);

    DefectReport block = check_orthogonality(3, PhaseGrid(8.0, 161), sp);
    CHECK(block.defect <= 1e-5);
}

TEST_CASE("effects of regions") {
    FockSpace sp(60, 12);
    PhaseGrid g(8.0, 161);
    DensityOperator vac = vacuum_state(60);

    Effect empty = qt_effect(vac, Region::rectangle(10.0, 11.0, 10.0, 11.0), g);
    CHECK(max_abs(empty.entries) == 0.0);

    Effect full = qt_effect(vac, Region::full_plane(), g);
    CHECK(max_abs(full.entries.topLeftCorner(12, 12) - CMat::Identity(12, 12)) <= 1e-5);
    CHECK(hermiticity_defect(full) <= 1e-14);

    auto [lo, hi] = effect_spectrum_range(full, 12);
    CHECK(lo >= -1e-8);
    CHECK(hi <= 1.0 + 1e-8);

    auto [lo2, hi2] = effect_spectrum_range(qt_effect(vac, Region::disk(1.0, -0.5, 2.0), g), 12);
    CHECK(lo2 >= -1e-8);
    CHECK(hi2 <= 1.0 + 1e-8);
}

TEST_CASE("disjoint regions add") {
    FockSpace sp(40, 12);
    PhaseGrid g(5.0, 101);
    DensityOperator t = random_density(sp, 2, 3);
    const Region left = Region::rectangle(-3.0, -0.05, -2.0, 2.0);
    const Region right = Region::rectangle(0.05, 3.0, -2.0, 2.0);
    const Region both = Region::rectangle(-3.0, 3.0, -2.0, 2.0);
    const CMat gap = qt_effect(t, Region::rectangle(-0.04, 0.04, -2.0, 2.0), g).entries;
    const CMat sum = qt_effect(t, left, g).entries + qt_effect(t, right, g).entries + gap;
    CHECK(max_abs(sum - qt_effect(t, both, g).entries) <= 1e-12);
}

TEST_CASE("density of small disks approaches the point density") {
    PhaseGrid g(7.0, 141);
    DensityOperator vac = vacuum_state(40);
    double prev_dev = 1.0;
    for (double r : {0.5, 0.25, 0.1}) {
        const Region disk = Region::disk(0.0, 0.0, r);
        const auto mask = region_mask(disk, g);
        double area = 0.0;
        for (auto m : mask) area += m ? g.w : 0.0;
        const double density = qt_effect(vac, disk, g).entries(0, 0).real() / area;
        const double dev = std::abs(density - 1.0);
        CHECK(dev < prev_dev);
        prev_dev = dev;
    }
    CHECK(prev_dev <= 0.01);
}

TEST_CASE("window growth at fixed spacing tightens normalization") {
    FockSpace sp(60, 12);
    DensityOperator vac = vacuum_state(60);
    double prev = 1.0;
    for (int m : {121, 141, 161}) {
        const double L = 0.05 * (m - 1);
        const double defect =
            max_abs(qt_effect(vac, Region::full_plane(), PhaseGrid(L, m))
                        .entries.topLeftCorner(12, 12) -
                    CMat::Identity(12, 12));
        CHECK(defect < prev);
        prev = defect;
    }
}

TEST_CASE("covariance under grid-commensurate shifts") {
    FockSpace sp(60, 12);
    PhaseGrid g(8.0, 161);
    DensityOperator vac = vacuum_state(60);
    const Region disk = Region::disk(0.0, 0.0, 2.0);

    CovarianceReport id = covariance_defect(vac, disk, {0.0, 0.0, 0.0}, g, 12);
    CHECK(id.defect <= 1e-12);

    CovarianceReport central = covariance_defect(vac, disk, {1.234, 0.0, 0.0}, g, 12);
    CHECK(central.defect <= 1e-12);

    CovarianceReport shifted = covariance_defect(vac, disk, {0.0, 0.7, -0.3}, g, 12);
    CHECK(shifted.defect <= 1e-5);
    CHECK(shifted.shift_q == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(shifted.shift_p == doctest::Approx(-0.3).epsilon(1e-12));

    // the rounded shift is the nearest node multiple
    CovarianceReport rounded = covariance_defect(vac, disk, {0.0, 0.72, -0.31}, g, 12);
    CHECK(rounded.shift_q == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rounded.shift_p == doctest::Approx(-0.3).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(
        covariance_defect(vac, Region::disk(6.0, 0.0, 1.5), {0.0, 3.0, 0.0}, g, 12),
        "region-escapes-grid", RegionEscapesGrid);
}

TEST_CASE("scaled isometry of the transform") {
    // indices above ~4 need the finer window; (8,161) resolves the block used here
    PhaseGrid g(8.0, 161);
    Rng rng(12);
    CVec u = CVec::Zero(40), v = CVec::Zero(40), w = CVec::Zero(40);
    for (int i = 0; i < 4; ++i) {
        u[i] = rng.cnormal();
        v[i] = rng.cnormal();
        w[i] = rng.cnormal();
    }
    u /= u.norm();
    v /= v.norm();
    w /= w.norm();
    CoefficientField fv = w_transform(u, v, g);
    CoefficientField fw = w_transform(u, w, g);
    const Complex expect = u.squaredNorm() * v.dot(w);
    CHECK(std::abs(field_inner(fv, fw) - expect) <= 1e-5);

    CoefficientField fv2 = w_transform(2.0 * u, v, g);
    CoefficientField fw2 = w_transform(2.0 * u, w, g);
    const Complex quad = field_inner(fv2, fw2);
    CHECK(std::abs(quad - 4.0 * field_inner(fv, fw)) <= 1e-12 * std::abs(quad));

    CoefficientField f0 = w_transform(u, basis_vec(2, 40), g);
    CoefficientField f1 = w_transform(u, basis_vec(3, 40), g);
    CHECK(std::abs(field_inner(f0, f1)) <= 1e-6);
}

TEST_CASE("projective dilation identity") {
    PhaseGrid g(7.0, 141);
    CVec u = basis_vec(0, 12);

    CHECK(neumark_defect(u, Region::full_plane(), basis_vec(0, 12), basis_vec(0, 12), g) <=
          1e-12);
    CHECK(neumark_defect(u, Region::rectangle(0.0, 2.0, -1.0, 1.0), basis_vec(0, 12),
                         basis_vec(1, 12), g) <= 1e-10);

    Rng rng(13);
    CVec v = CVec::Zero(12), w = CVec::Zero(12);
    for (int i = 0; i < 7; ++i) {
        v[i] = rng.cnormal();
        w[i] = rng.cnormal();
    }
    CHECK(neumark_defect(u, Region::disk(0.5, -1.0, 1.5), v, w, g) <= 1e-10);

    CHECK_THROWS_AS(neumark_defect(2.0 * u, Region::full_plane(), v, w, g),
                    std::invalid_argument);
}

TEST_CASE("orthonormal field family") {
    PhaseGrid g(5.0, 101);
    CoefficientField f00 = f_basis(0, 0, g);
    CHECK(std::abs(f00.values[g.index(50, 50)] - Complex(1.0, 0.0)) <= 1e-14);

    CoefficientField same = w_transform(basis_vec(1, 3), basis_vec(0, 3), g);
    CoefficientField f10 = f_basis(1, 0, g);
    CHECK(max_abs(CMat(f10.values - same.values)) == 0.0);

    CHECK_THROWS_AS(f_basis(-1, 0, g), std::invalid_argument);
    CHECK_THROWS_AS(f_basis(0, 200, g), std::invalid_argument);
}

TEST_CASE("parseval sums over the field family") {
    PhaseGrid g(7.0, 141);
    CoefficientField f12 = f_basis(1, 2, g);
    const double d2 = resolution_defect(2, f12, g);
    CHECK(d2 <= 1e-5);
    const double d3 = resolution_defect(3, f12, g);
    const double d4 = resolution_defect(4, f12, g);
    CHECK(d3 <= d2 + 1e-12);
    CHECK(d4 <= d3 + 1e-12);

    CoefficientField zero{g, CVec::Zero(g.nodes()), "", ""};
    CHECK_THROWS_AS(resolution_defect(3, zero, g), std::invalid_argument);
}

TEST_CASE("transform intertwines displacement with translation") {
    PhaseGrid g(6.0, 121);
    const GroupElementCont el{0.3, 0.5, -0.2};
    FockSpace sp(40, 12);
    CVec u = basis_vec(0, 40);
    CVec v = basis_vec(1, 40);

    CoefficientField lhs = w_transform(u, pi_cont(el, sp) * v, g);
    CoefficientField base = w_transform(u, v, g);

    const int kq = 5, kp = -2;  // el.q / h, el.p / h
    double worst = 0.0;
    for (int i = 0; i < g.points; ++i)
        for (int j = 0; j < g.points; ++j) {
            const int is = i - kq, js = j - kp;
            if (is < 0 || is >= g.points || js < 0 || js >= g.points) continue;
            const Complex expect =
                induced_phase(el, g.q(i), g.p(j)) * base.values[g.index(is, js)];
            worst = std::max(worst, std::abs(lhs.values[g.index(i, j)] - expect));
        }
    CHECK(worst <= 1e-8);
}

TEST_CASE("induced phase") {
    CHECK(std::abs(std::abs(induced_phase({0.4, 0.3, -0.8}, 1.1, 0.2)) - 1.0) <= 1e-15);
    // central elements act by their character everywhere
    const Complex ph = induced_phase({0.9, 0.0, 0.0}, 0.7, -0.4);
    CHECK(std::abs(ph - std::polar(1.0, 0.9)) <= 1e-15);
}
