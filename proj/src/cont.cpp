#include "phasepom/cont.hpp"

#include "phasepom/parallel.hpp"

#include <cmath>

namespace phasepom {

namespace {

constexpr std::size_t kNodeChunk = 4096;

// eigenpairs of a density operator with weights folded in: columns sqrt(l) v,
// truncated to their joint support so displacement blocks stay minimal
struct ScaledSupport {
    CMat cols;  // support_dim x rank
    int support = 0;
};

ScaledSupport scaled_eigvecs(const DensityOperator& T) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(T.entries()));
    const RVec& lam = es.eigenvalues();
    std::vector<int> keep;
    for (int i = 0; i < lam.size(); ++i)
        if (lam[i] > 1e-15) keep.push_back(i);
    int support = 1;
    for (int idx : keep)
        support = std::max(support, support_dim(es.eigenvectors().col(idx), 0.0));
    ScaledSupport out;
    out.support = support;
    out.cols.resize(support, static_cast<int>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        out.cols.col(j) =
            std::sqrt(lam[keep[j]]) * es.eigenvectors().col(keep[j]).head(support);
    return out;
}

}  // namespace

CoefficientField coeff_field(const CVec& u, const CVec& v, const PhaseGrid& grid) {
    if (u.size() != v.size())
        throw std::invalid_argument("coeff_field: vectors live in different spaces");
    CoefficientField f{grid, CVec::Zero(grid.nodes()), "", ""};
    const int cu = support_dim(u);
    const int rv = support_dim(v);
    if (cu == 0 || rv == 0) return f;
    const CVec uh = u.head(cu);
    const CVec vh = v.head(rv);
    const int M = grid.points;
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), rv, cu);
            f.values[x] = (block * uh).dot(vh);
        }
    });
    return f;
}

CoefficientField w_transform(const CVec& u, const CVec& v, const PhaseGrid& grid) {
    return coeff_field(u, v, grid);
}

Complex field_inner(const CoefficientField& f, const CoefficientField& g) {
    if (!f.grid.same_as(g.grid)) throw std::invalid_argument("field_inner: grid mismatch");
    return f.grid.w * f.values.dot(g.values);
}

DefectReport check_orthogonality(int index_max, const PhaseGrid& grid, const FockSpace& space) {
    if (index_max < 0 || index_max > space.physical_block)
        throw std::invalid_argument("check_orthogonality: index_max must be in [0, physical_block]");
    const int k = index_max + 1;
    const int dim = k * k;
    const int M = grid.points;
    const std::size_t nchunks = (grid.nodes() + kNodeChunk - 1) / kNodeChunk;
    std::vector<CMat> partial(nchunks, CMat::Zero(dim, dim));
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        CVec vec(dim);
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), k, k);
            // vec[a] with a = (i_a, j_a): conj(c_{e_i,e_j}(x)) = D(j_a, i_a)
            for (int ia = 0; ia < k; ++ia)
                for (int ja = 0; ja < k; ++ja) vec[ia * k + ja] = block(ja, ia);
            partial[c].noalias() += vec * vec.adjoint();
        }
    });
    CMat gram = CMat::Zero(dim, dim);
    for (const CMat& p : partial) gram += p;
    gram *= grid.w;
    const double defect = max_abs(gram - CMat::Identity(dim, dim));
    return {"orthogonality", defect, 1e-5, defect <= 1e-5};
}

Effect qt_effect_mask(const DensityOperator& T, const std::vector<std::uint8_t>& mask,
                      const PhaseGrid& grid) {
    if (mask.size() != static_cast<std::size_t>(grid.nodes()))
        throw std::invalid_argument("qt_effect: mask size does not match grid");
    const int n = T.dim();
    const ScaledSupport sc = scaled_eigvecs(T);
    const int M = grid.points;
    const std::size_t nchunks = (grid.nodes() + kNodeChunk - 1) / kNodeChunk;
    std::vector<CMat> partial(nchunks, CMat::Zero(n, n));
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        CMat img;
        for (std::size_t x = b; x < e; ++x) {
            if (!mask[x]) continue;
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), n, sc.support);
            img.noalias() = block * sc.cols;
            partial[c].noalias() += img * img.adjoint();
        }
    });
    CMat acc = CMat::Zero(n, n);
    for (const CMat& p : partial) acc += p;
    return Effect{grid.w * acc};
}

Effect qt_effect(const DensityOperator& T, const Region& E, const PhaseGrid& grid) {
    return qt_effect_mask(T, region_mask(E, grid), grid);
}

double hermiticity_defect(const Effect& e) { return max_abs(e.entries - e.entries.adjoint()); }

std::pair<double, double> effect_spectrum_range(const Effect& e, int block) {
    const CMat top = hermitize(e.entries.topLeftCorner(block, block));
    Eigen::SelfAdjointEigenSolver<CMat> es(top, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

CovarianceReport covariance_defect(const DensityOperator& T, const Region& E,
                                   const GroupElementCont& g, const PhaseGrid& grid,
                                   int physical_block) {
    if (physical_block < 1 || physical_block > T.dim())
        throw std::invalid_argument("covariance_defect: physical_block out of range");
    const long kq = std::lround(g.q / grid.h);
    const long kp = std::lround(g.p / grid.h);
    const int M = grid.points;
    const auto mask = region_mask(E, grid);
    std::vector<std::uint8_t> shifted(mask.size(), 0);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (!mask[grid.index(i, j)]) continue;
            const long i2 = i + kq;
            const long j2 = j + kp;
            if (i2 < 0 || i2 >= M || j2 < 0 || j2 >= M) throw RegionEscapesGrid();
            shifted[grid.index(static_cast<int>(i2), static_cast<int>(j2))] = 1;
        }
    const Effect q1 = qt_effect_mask(T, mask, grid);
    const Effect q2 = qt_effect_mask(T, shifted, grid);
    const GroupElementCont rounded{g.t, kq * grid.h, kp * grid.h};
    const CMat pg = pi_cont_block(rounded, T.dim(), T.dim());
    const CMat diff = pg * q1.entries * pg.adjoint() - q2.entries;
    const CMat top = hermitize(diff.topLeftCorner(physical_block, physical_block));
    Eigen::SelfAdjointEigenSolver<CMat> es(top, Eigen::EigenvaluesOnly);
    const double defect =
        std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
    return {defect, rounded.q, rounded.p};
}

double neumark_defect(const CVec& u, const Region& E, const CVec& v, const CVec& w,
                      const PhaseGrid& grid) {
    if (std::abs(u.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("neumark_defect: u must be a unit vector");
    const CoefficientField fv = coeff_field(u, v, grid);
    const CoefficientField fw = coeff_field(u, w, grid);
    const auto mask = region_mask(E, grid);
    Complex lhs(0.0, 0.0);
    for (int x = 0; x < grid.nodes(); ++x)
        if (mask[x]) lhs += std::conj(fv.values[x]) * fw.values[x];
    lhs *= grid.w;
    const DensityOperator proj(hermitize(u * u.adjoint()));
    const Effect q = qt_effect_mask(proj, mask, grid);
    const Complex rhs = v.dot(q.entries * w);
    return std::abs(lhs - rhs);
}

CoefficientField f_basis(int n, int p, const PhaseGrid& grid) {
    if (n < 0 || p < 0 || n > 127 || p > 127)
        throw std::invalid_argument("f_basis: index out of range");
    CoefficientField f{grid, CVec::Zero(grid.nodes()), "e_" + std::to_string(n),
                       "e_" + std::to_string(p)};
    const int M = grid.points;
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), p + 1, n + 1);
            f.values[x] = std::conj(block(p, n));
        }
    });
    return f;
}

double resolution_defect(int n_max, const CoefficientField& test, const PhaseGrid& grid) {
    if (n_max < 0 || n_max > 127)
        throw std::invalid_argument("resolution_defect: n_max out of range");
    if (!test.grid.same_as(grid))
        throw std::invalid_argument("resolution_defect: grid mismatch");
    const double nrm = grid.w * test.values.squaredNorm();
    if (nrm <= 0.0) throw std::invalid_argument("resolution_defect: zero test field");
    const int k = n_max + 1;
    const int M = grid.points;
    const std::size_t nchunks = (grid.nodes() + kNodeChunk - 1) / kNodeChunk;
    std::vector<CMat> partial(nchunks, CMat::Zero(k, k));
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t c, std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), k, k);
            // <f_{n,p}, t> accumulates w * conj(f_{n,p}) t = w * D(p,n) t(x)
            partial[c].noalias() += test.values[x] * block.transpose();
        }
    });
    CMat acc = CMat::Zero(k, k);
    for (const CMat& p : partial) acc += p;
    acc *= grid.w;
    return std::abs(nrm - acc.squaredNorm()) / nrm;
}

Complex induced_phase(const GroupElementCont& g, double qx, double px) {
    const GroupElementCont sx = section_cont(qx, px);
    const GroupElementCont ginv = group_inv_cont(g);
    const GroupElementCont y = section_cont(qx + ginv.q, px + ginv.p);
    const GroupElementCont h = group_mul_cont(group_inv_cont(sx), group_mul_cont(g, y));
    return std::polar(1.0, h.t);
}

}  // namespace phasepom
