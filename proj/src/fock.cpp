#include "phasepom/fock.hpp"

#include <cmath>

namespace phasepom {

std::pair<CMat, CMat> ladder_ops(const FockSpace& space) {
    const int n = space.cutoff;
    CMat a = CMat::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return {a, a.adjoint()};
}

std::pair<CMat, CMat> quadratures(const FockSpace& space) {
    auto [a, ad] = ladder_ops(space);
    const double s = 1.0 / std::sqrt(2.0);
    CMat q = s * (a + ad);
    CMat p = (a - ad) * Complex(0.0, -s);
    return {q, p};
}

// Diagonal-wise evaluation: for each offset k = |m-n| the Laguerre values
// L_n^{(k)}(x) follow the forward three-term recurrence
//   (n+1) L_{n+1}^{(k)} = (2n+1+k-x) L_n^{(k)} - (n+k) L_{n-1}^{(k)},
// and the prefactor sqrt(n!/(n+k)!) |beta|^k e^{-x/2} is accumulated
// multiplicatively, so every intermediate stays bounded.
CMat displacement_block(Complex beta, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("displacement_block: empty block");
    CMat out = CMat::Zero(rows, cols);
    const double x = std::norm(beta);
    const double ex = std::exp(-0.5 * x);
    if (beta == Complex(0.0, 0.0)) {
        for (int i = 0; i < std::min(rows, cols); ++i) out(i, i) = 1.0;
        return out;
    }
    const int kmax = std::max(rows, cols) - 1;
    Complex bk_lower(1.0, 0.0);   // beta^k          (m = n + k)
    Complex bk_upper(1.0, 0.0);   // (-conj(beta))^k (n = m + k)
    double inv_sqrt_kfact = 1.0;  // 1/sqrt(k!)
    std::vector<double> lag;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) {
            bk_lower *= beta;
            bk_upper *= -std::conj(beta);
            inv_sqrt_kfact /= std::sqrt(static_cast<double>(k));
        }
        const int nmax_lower = std::min(cols, rows - k);  // entries (n+k, n)
        const int nmax_upper = std::min(rows, cols - k);  // entries (m, m+k)
        const int nmax = std::max(nmax_lower, nmax_upper);
        if (nmax <= 0) continue;
        lag.assign(nmax, 0.0);
        lag[0] = 1.0;
        if (nmax > 1) lag[1] = 1.0 + k - x;
        for (int n = 1; n + 1 < nmax; ++n)
            lag[n + 1] = ((2.0 * n + 1.0 + k - x) * lag[n] - (n + k) * lag[n - 1]) / (n + 1.0);
        double ratio = inv_sqrt_kfact;  // sqrt(n!/(n+k)!)
        for (int n = 0; n < nmax; ++n) {
            if (n > 0) ratio *= std::sqrt(n / static_cast<double>(n + k));
            const double common = ex * ratio * lag[n];
            if (n < nmax_lower) out(n + k, n) = bk_lower * common;
            if (k > 0 && n < nmax_upper) out(n, n + k) = bk_upper * common;
        }
    }
    return out;
}

GroupElementCont group_mul_cont(const GroupElementCont& a, const GroupElementCont& b) {
    return {a.t + b.t + 0.5 * (a.q * b.p - a.p * b.q), a.q + b.q, a.p + b.p};
}

GroupElementCont group_inv_cont(const GroupElementCont& a) { return {-a.t, -a.q, -a.p}; }

CMat pi_cont_block(const GroupElementCont& g, int rows, int cols) {
    CMat d = displacement_block(z_of(g.q, g.p), rows, cols);
    if (g.t != 0.0) d *= std::polar(1.0, g.t);
    return d;
}

CMat pi_cont(const GroupElementCont& g, const FockSpace& space) {
    return pi_cont_block(g, space.cutoff, space.cutoff);
}

DensityOperator::DensityOperator(CMat entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw InvalidStateError("density operator: matrix must be square and nonempty");
    if (!entries_.allFinite())
        throw InvalidStateError("density operator: entries must be finite");
    const double herm = max_abs(entries_ - entries_.adjoint());
    if (herm > 1e-12)
        throw InvalidStateError("density operator: not Hermitian (defect " +
                                std::to_string(herm) + ")");
    const double tr_dev = std::abs(entries_.trace() - Complex(1.0, 0.0));
    if (tr_dev > 1e-12)
        throw InvalidStateError("density operator: trace differs from 1 by " +
                                std::to_string(tr_dev));
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(entries_), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -1e-12)
        throw InvalidStateError("density operator: negative eigenvalue " + std::to_string(lo));
}

DensityOperator random_density(const FockSpace& space, int rank, std::uint64_t seed) {
    const int n = space.cutoff;
    if (rank < 1 || rank > n)
        throw std::invalid_argument("random_density: rank out of range");
    Rng rng(seed);
    CMat g(n, rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.cnormal();
    Eigen::HouseholderQR<CMat> qr(g);
    CMat qfull = qr.householderQ() * CMat::Identity(n, rank);
    RVec lam(rank);
    for (int j = 0; j < rank; ++j) lam[j] = std::abs(rng.normal());
    lam /= lam.sum();
    CMat t = qfull * lam.asDiagonal() * qfull.adjoint();
    return DensityOperator(hermitize(t));
}

CMat embed_block(const CMat& small, int dim) {
    if (small.rows() > dim || small.cols() > dim)
        throw std::invalid_argument("embed_block: target dimension too small");
    CMat out = CMat::Zero(dim, dim);
    out.topLeftCorner(small.rows(), small.cols()) = small;
    return out;
}

int support_dim(const CVec& v, double tol) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (std::abs(v[i]) > tol) return i + 1;
    return 0;
}

}  // namespace phasepom
