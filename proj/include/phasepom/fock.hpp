#pragma once

#include "phasepom/common.hpp"

#include <utility>

namespace phasepom {

// Truncated Fock space: basis e_0 .. e_{cutoff-1}; results are trusted on the
// top physical_block only (displacement leaks population toward the cutoff).
struct FockSpace {
    int cutoff;
    int physical_block;

    FockSpace(int n, int nphys) : cutoff(n), physical_block(nphys) {
        if (n < 2) throw std::invalid_argument("FockSpace: cutoff must be >= 2");
        if (nphys < 1 || nphys > n)
            throw std::invalid_argument("FockSpace: need 1 <= physical_block <= cutoff");
    }
};

// (a, a*) with a e_n = sqrt(n) e_{n-1}, a* e_n = sqrt(n+1) e_{n+1}.
std::pair<CMat, CMat> ladder_ops(const FockSpace& space);

// Q = (a + a*)/sqrt(2), P = (a - a*)/(sqrt(2) i); both Hermitian by construction.
std::pair<CMat, CMat> quadratures(const FockSpace& space);

// <m|D(beta)|n> for m < rows, n < cols, D(beta) = exp(beta a* - conj(beta) a).
// Closed form sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2)
// evaluated diagonal-wise with the forward Laguerre recurrence. Entries are
// those of the untruncated operator: the recurrence never references rows
// beyond the requested block, so there is no truncation error here at all.
CMat displacement_block(Complex beta, int rows, int cols);

inline CMat displacement(Complex beta, const FockSpace& space) {
    return displacement_block(beta, space.cutoff, space.cutoff);
}

struct GroupElementCont {
    double t = 0.0, q = 0.0, p = 0.0;
};

// Product with the symmetric central cocycle. The sign pairs with the phase
// convention of pi_cont below; the homomorphism test in test_fock pins it.
GroupElementCont group_mul_cont(const GroupElementCont& a, const GroupElementCont& b);
GroupElementCont group_inv_cont(const GroupElementCont& a);

inline GroupElementCont section_cont(double q, double p) { return {0.0, q, p}; }

inline Complex z_of(double q, double p) { return Complex(-q, p) / std::sqrt(2.0); }

// pi(t,q,p) = e^{it} D(z(q,p)).
CMat pi_cont(const GroupElementCont& g, const FockSpace& space);
CMat pi_cont_block(const GroupElementCont& g, int rows, int cols);

class DensityOperator {
public:
    // Validates Hermiticity (1e-12), spectrum >= -1e-12, unit trace (1e-12).
    explicit DensityOperator(CMat entries);

    const CMat& entries() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()); }

private:
    CMat entries_;
};

// Reproducible rank-r state: orthonormalized complex-Gaussian columns with
// random convex weights.
DensityOperator random_density(const FockSpace& space, int rank, std::uint64_t seed);

// Top-left embedding into a larger space (zero elsewhere).
CMat embed_block(const CMat& small, int dim);

// 1 + highest index with |v[i]| > tol (0 for the zero vector).
int support_dim(const CVec& v, double tol = 0.0);

}  // namespace phasepom
