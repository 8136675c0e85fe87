#include "phasepom/tomo.hpp"

#include "phasepom/parallel.hpp"

#include <cmath>

namespace phasepom {

namespace {

constexpr std::size_t kNodeChunk = 4096;

struct OperatorSupport {
    CMat block;  // top-left nonzero block
    int rows = 0, cols = 0;
};

OperatorSupport trim(const CMat& a) {
    int r = 0, c = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != Complex(0.0, 0.0)) {
                r = std::max(r, i + 1);
                c = std::max(c, j + 1);
            }
    r = std::max(r, 1);
    c = std::max(c, 1);
    return {a.topLeftCorner(r, c), r, c};
}

struct ScaledSupport {
    CMat cols;
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

using RowMajorMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// separable kernel factors of the commutator character, evaluated through
// filter_character so the orientation comes from the group law
void kernel_factors(const PhaseGrid& grid, CMat& e1, CMat& e2) {
    const int m = grid.points;
    e1.resize(m, m);
    e2.resize(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            e1(a, b) = filter_character(0.0, grid.coord[a], grid.coord[b], 0.0);
            e2(a, b) = filter_character(grid.coord[a], 0.0, 0.0, grid.coord[b]);
        }
}

// F = w * E1 * field^T * E2 (field row-major, so its column-major view is the
// transpose); identical sums to the direct double loop, reassociated
void apply_kernel(const CMat& e1, const CMat& e2, double w, const Complex* src, Complex* dst,
                  int m) {
    Eigen::Map<const CMat> field_t(src, m, m);
    RowMajorMat out = w * (e1 * (field_t * e2));
    Eigen::Map<RowMajorMat>(dst, m, m) = out;
}

}  // namespace

CharField char_function(const CMat& A, const PhaseGrid& grid) {
    if (A.rows() != A.cols()) throw std::invalid_argument("char_function: matrix must be square");
    const OperatorSupport sup = trim(A);
    const CMat at = sup.block.transpose();
    CharField out{CVec::Zero(grid.nodes()), ""};
    const int M = grid.points;
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), sup.cols, sup.rows);
            out.values[x] = block.cwiseProduct(at).sum();
        }
    });
    return out;
}

ICReport ic_condition(const DensityOperator& T, const PhaseGrid& grid, double zero_eps) {
    const CharField chi = char_function(T.entries(), grid);
    const double mx = chi.values.cwiseAbs().maxCoeff();
    int zeros = 0;
    double min_abs = mx;
    for (int x = 0; x < chi.values.size(); ++x) {
        const double a = std::abs(chi.values[x]);
        min_abs = std::min(min_abs, a);
        if (a <= zero_eps * mx) ++zeros;
    }
    const double fraction = static_cast<double>(zeros) / grid.nodes();
    return {min_abs, fraction, fraction < 1e-2};
}

MeasurementData forward_model(const CMat& W, const DensityOperator& T, const PhaseGrid& grid) {
    if (W.rows() != W.cols()) throw std::invalid_argument("forward_model: W must be square");
    if (W.rows() > T.dim())
        throw std::invalid_argument("forward_model: W does not fit inside the space of T");
    const int k = static_cast<int>(W.rows());
    const ScaledSupport sc = scaled_eigvecs(T);
    MeasurementData data{CVec::Zero(grid.nodes()), "", ""};
    const int M = grid.points;
    parallel_chunks(grid.nodes(), kNodeChunk, [&](std::size_t, std::size_t b, std::size_t e) {
        CMat img, wimg;
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), k, sc.support);
            img.noalias() = block * sc.cols;
            wimg.noalias() = W * img;
            data.samples[x] = img.conjugate().cwiseProduct(wimg).sum();
        }
    });
    return data;
}

Complex filter_character(double qx, double px, double qg, double pg) {
    const GroupElementCont sx = section_cont(qx, px);
    const GroupElementCont g = section_cont(qg, pg);
    const GroupElementCont comm = group_mul_cont(
        group_mul_cont(group_inv_cont(sx), group_inv_cont(g)), group_mul_cont(sx, g));
    return std::polar(1.0, comm.t);
}

CVec symplectic_transform(const CVec& field, const PhaseGrid& grid) {
    if (field.size() != grid.nodes())
        throw std::invalid_argument("symplectic_transform: field size does not match grid");
    CMat e1, e2;
    kernel_factors(grid, e1, e2);
    CVec out(field.size());
    apply_kernel(e1, e2, grid.w, field.data(), out.data(), grid.points);
    return out;
}

ReconstructionResult reconstruct(const MeasurementData& data, const DensityOperator& T,
                                 const PhaseGrid& grid, int cutoff, double eps_reg) {
    if (data.samples.size() != grid.nodes())
        throw std::invalid_argument("reconstruct: data size does not match grid");
    if (cutoff < 1 || cutoff > 64)
        throw std::invalid_argument("reconstruct: cutoff out of range [1, 64]");
    const ICReport ic = ic_condition(T, grid);
    if (!ic.pass)
        throw NotInformationallyComplete(
            "reconstruct: reference characteristic function vanishes on " +
            std::to_string(ic.zero_fraction * 100.0) + "% of nodes");

    const CharField chi = char_function(T.entries(), grid);
    const double mx = chi.values.cwiseAbs().maxCoeff();
    const double cut = eps_reg * mx;
    int damped = 0;

    CVec fhat = symplectic_transform(data.samples, grid);
    for (int x = 0; x < fhat.size(); ++x) {
        if (std::abs(chi.values[x]) <= cut) {
            fhat[x] = Complex(0.0, 0.0);
            ++damped;
        }
    }

    // model fields of the displacement pairs: column (m,n) holds the samples
    // x -> (pi(s(x)) T pi(s(x))^{-1})[n, m], so that samples = B vec(W)
    const int k = cutoff;
    const int ncols = k * k;
    const ScaledSupport sc = scaled_eigvecs(T);
    const int M = grid.points;
    const std::size_t nodes = static_cast<std::size_t>(grid.nodes());
    CMat design(nodes, ncols);
    parallel_chunks(nodes, kNodeChunk, [&](std::size_t, std::size_t b, std::size_t e) {
        CMat img;
        for (std::size_t x = b; x < e; ++x) {
            const int i = static_cast<int>(x) / M;
            const int j = static_cast<int>(x) % M;
            const CMat block = displacement_block(grid.z(i, j), k, sc.support);
            img.noalias() = block * sc.cols;
            for (int m = 0; m < k; ++m)
                for (int n = 0; n < k; ++n)
                    design(x, m * k + n) = img.row(m).dot(img.row(n));
        }
    });

    // push every model field through the same windowed transform as the data,
    // so the least-squares model is exact on this grid by construction
    CMat e1, e2;
    kernel_factors(grid, e1, e2);
    parallel_chunks(ncols, 8, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) {
            CVec col = design.col(c);
            apply_kernel(e1, e2, grid.w, col.data(), design.col(c).data(), M);
        }
    });
    for (int x = 0; x < static_cast<int>(nodes); ++x)
        if (std::abs(chi.values[x]) <= cut) design.row(x).setZero();

    const double sw = std::sqrt(grid.w);
    design *= sw;
    const CVec rhs = sw * fhat;
    const CVec sol = design.householderQr().solve(rhs);

    CMat est(k, k);
    for (int m = 0; m < k; ++m)
        for (int n = 0; n < k; ++n) est(m, n) = sol[m * k + n];
    return {hermitize(est), damped, ic};
}

double separation_test(const DensityOperator& W1, const DensityOperator& W2,
                       const DensityOperator& T, const PhaseGrid& grid) {
    const MeasurementData a = forward_model(W1.entries(), T, grid);
    const MeasurementData b = forward_model(W2.entries(), T, grid);
    return (a.samples - b.samples).cwiseAbs().maxCoeff();
}

// ---- finite regime --------------------------------------------------------

CharField char_function_finite(const FiniteHeisenberg& grp, const CMat& A) {
    const int d = grp.modulus();
    if (A.rows() != d || A.cols() != d)
        throw std::invalid_argument("char_function_finite: dimension mismatch");
    CharField out{CVec::Zero(d * d), ""};
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p)
            out.values[grp.xindex(q, p)] = (A * schrodinger_rep(grp, section(q, p))).trace();
    return out;
}

ICReport ic_condition_finite(const FiniteHeisenberg& grp, const DensityOperator& T,
                             double zero_eps) {
    const CharField chi = char_function_finite(grp, T.entries());
    const double mx = chi.values.cwiseAbs().maxCoeff();
    int zeros = 0;
    double min_abs = mx;
    for (int x = 0; x < chi.values.size(); ++x) {
        const double a = std::abs(chi.values[x]);
        min_abs = std::min(min_abs, a);
        if (a <= zero_eps * mx) ++zeros;
    }
    const double fraction =
        static_cast<double>(zeros) / static_cast<double>(chi.values.size());
    return {min_abs, fraction, zeros == 0};
}

MeasurementData forward_model_finite(const FiniteHeisenberg& grp, const CMat& W,
                                     const DensityOperator& T) {
    const int d = grp.modulus();
    if (W.rows() != d || W.cols() != d || T.dim() != d)
        throw std::invalid_argument("forward_model_finite: dimension mismatch");
    MeasurementData data{CVec::Zero(d * d), "", ""};
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            const CMat pi = schrodinger_rep(grp, section(q, p));
            data.samples[grp.xindex(q, p)] = (W * pi * T.entries() * pi.adjoint()).trace();
        }
    return data;
}

CVec symplectic_transform_finite(const FiniteHeisenberg& grp, const CVec& field) {
    const int d = grp.modulus();
    if (field.size() != d * d)
        throw std::invalid_argument("symplectic_transform_finite: field size mismatch");
    CVec out = CVec::Zero(d * d);
    for (int qg = 0; qg < d; ++qg)
        for (int pg = 0; pg < d; ++pg) {
            const FiniteGroupElement g = section(qg, pg);
            Complex acc(0.0, 0.0);
            for (int qx = 0; qx < d; ++qx)
                for (int px = 0; px < d; ++px) {
                    const FiniteGroupElement sx = section(qx, px);
                    const FiniteGroupElement comm = group_mul(
                        grp, group_mul(grp, group_inv(grp, sx), group_inv(grp, g)),
                        group_mul(grp, sx, g));
                    acc += grp.chi(comm) * field[grp.xindex(qx, px)];
                }
            out[grp.xindex(qg, pg)] = acc / static_cast<double>(d);
        }
    return out;
}

ReconstructionResult reconstruct_finite(const FiniteHeisenberg& grp,
                                        const MeasurementData& data,
                                        const DensityOperator& T, double eps_reg) {
    const int d = grp.modulus();
    if (data.samples.size() != d * d)
        throw std::invalid_argument("reconstruct_finite: data size mismatch");
    const ICReport ic = ic_condition_finite(grp, T);
    if (!ic.pass)
        throw NotInformationallyComplete(
            "reconstruct_finite: reference characteristic function has zeros (" +
            std::to_string(ic.zero_fraction * 100.0) + "% of points)");
    const CharField chi = char_function_finite(grp, T.entries());
    const double mx = chi.values.cwiseAbs().maxCoeff();
    const CVec f = symplectic_transform_finite(grp, data.samples);
    int damped = 0;
    CMat est = CMat::Zero(d, d);
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            const int x = grp.xindex(q, p);
            if (std::abs(chi.values[x]) <= eps_reg * mx) {
                ++damped;
                continue;
            }
            est.noalias() +=
                (f[x] / chi.values[x]) * schrodinger_rep(grp, section(q, p));
        }
    est /= static_cast<double>(d);
    return {est, damped, ic};
}

double separation_test_finite(const FiniteHeisenberg& grp, const DensityOperator& W1,
                              const DensityOperator& W2, const DensityOperator& T) {
    const MeasurementData a = forward_model_finite(grp, W1.entries(), T);
    const MeasurementData b = forward_model_finite(grp, W2.entries(), T);
    return (a.samples - b.samples).cwiseAbs().maxCoeff();
}

double fidelity(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("fidelity: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMat> ea(hermitize(a));
    const RVec la = ea.eigenvalues().cwiseMax(0.0);
    const CMat sqrt_a = ea.eigenvectors() * la.cwiseSqrt().asDiagonal() *
                        ea.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> em(hermitize(sqrt_a * b * sqrt_a),
                                           Eigen::EigenvaluesOnly);
    const double root_sum = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root_sum * root_sum;
}

}  // namespace phasepom
