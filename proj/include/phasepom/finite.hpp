#pragma once

#include "phasepom/common.hpp"

#include <functional>
#include <vector>

namespace phasepom {

struct FiniteGroupElement {
    int t = 0, q = 0, p = 0;

    bool operator==(const FiniteGroupElement&) const = default;
};

// Heisenberg group over Z_d, d odd >= 3, with a primitive central character
// chi(t) = omega^{k t}. The symmetric cocycle needs 2^{-1} mod d, hence odd d.
class FiniteHeisenberg {
public:
    explicit FiniteHeisenberg(int d, int char_index = 1);

    int modulus() const { return d_; }
    int char_index() const { return k_; }
    int half_inv() const { return half_inv_; }

    int mod(long e) const {
        int r = static_cast<int>(e % d_);
        return r < 0 ? r + d_ : r;
    }

    // omega^e (base root, before the character power)
    Complex omega(long e) const { return root_[mod(e)]; }
    // chi applied to a central element; rejects non-central input
    Complex chi(const FiniteGroupElement& h) const;

    int xindex(int q, int p) const { return mod(q) * d_ + mod(p); }

private:
    int d_, k_, half_inv_;
    std::vector<Complex> root_;
};

FiniteGroupElement group_mul(const FiniteHeisenberg& grp, const FiniteGroupElement& a,
                             const FiniteGroupElement& b);
FiniteGroupElement group_inv(const FiniteHeisenberg& grp, const FiniteGroupElement& a);

inline FiniteGroupElement section(int q, int p) { return {0, q, p}; }

std::vector<FiniteGroupElement> all_elements(const FiniteHeisenberg& grp);

// pi(t,q,p) e_k = chi(t + 2^{-1} q p + p k) e_{k+q mod d}, a d x d unitary.
CMat schrodinger_rep(const FiniteHeisenberg& grp, const FiniteGroupElement& a);

// Left action on C^{d^2}: (l(a) f)(x) = chi(s(x)^{-1} a s(a^{-1}.x)) f(a^{-1}.x).
CMat induced_rep(const FiniteHeisenberg& grp, const FiniteGroupElement& a);

// f_phi(s(x)) = sum_t chi(t) phi(s(x) (t,0,0)); the central average that maps
// an arbitrary function on the group into the equivariant space.
CVec induce_from_function(const FiniteHeisenberg& grp,
                          const std::function<Complex(const FiniteGroupElement&)>& phi);

// Column j is x -> <pi(s(x)) u, e_j> = conj((pi(s(x)) u)[j]); d^2 x d.
// Adjoints of these matrices are taken in the weighted inner product
// (1/d) sum conj(f) g, so W* W = ||u||^2 I reads W^H W / d numerically.
CMat intertwiner(const FiniteHeisenberg& grp, const CVec& u);

// || sum_i W_{e_i} W_{e_i}^H / d - I ||_F
double resolution_identity(const FiniteHeisenberg& grp);

struct IsotypicReport {
    double multiplicity = 0.0;   // character inner product <char_l, char_pi>/|G|
    double range_overlap = 0.0;  // max_{i != j} max-entry of W_{e_i}^H W_{e_j} / d
};

IsotypicReport isotypic_decompose(const FiniteHeisenberg& grp);

// Rank of { delta_x . (W_u e_j) : x in X, j < d } (pointwise-masked columns).
int minimality_rank(const FiniteHeisenberg& grp, const CVec& u);

// max over a in G, singletons {x} of |l(a) P_x l(a)^H - P_{a.x}| (max entry).
double imprimitivity_check(const FiniteHeisenberg& grp);

}  // namespace phasepom
