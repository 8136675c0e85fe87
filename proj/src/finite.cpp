#include "phasepom/finite.hpp"

#include <numeric>

namespace phasepom {

FiniteHeisenberg::FiniteHeisenberg(int d, int char_index) : d_(d), k_(char_index) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("FiniteHeisenberg: modulus must be odd and >= 3");
    if (d > 31) throw std::invalid_argument("FiniteHeisenberg: modulus capped at 31 (dense tables)");
    k_ = ((char_index % d) + d) % d;
    if (std::gcd(k_, d) != 1)
        throw std::invalid_argument(
            "FiniteHeisenberg: central character must be primitive (gcd(index, d) = 1)");
    half_inv_ = (d + 1) / 2;  // 2 * (d+1)/2 = d + 1 = 1 mod d
    root_.resize(d);
    for (int r = 0; r < d; ++r) root_[r] = std::polar(1.0, 2.0 * M_PI * r / d);
}

Complex FiniteHeisenberg::chi(const FiniteGroupElement& h) const {
    if (mod(h.q) != 0 || mod(h.p) != 0)
        throw std::logic_error("chi: element is not central");
    return omega(static_cast<long>(k_) * h.t);
}

FiniteGroupElement group_mul(const FiniteHeisenberg& grp, const FiniteGroupElement& a,
                             const FiniteGroupElement& b) {
    const long t = static_cast<long>(a.t) + b.t +
                   static_cast<long>(grp.half_inv()) *
                       (static_cast<long>(a.p) * b.q - static_cast<long>(a.q) * b.p);
    return {grp.mod(t), grp.mod(static_cast<long>(a.q) + b.q),
            grp.mod(static_cast<long>(a.p) + b.p)};
}

FiniteGroupElement group_inv(const FiniteHeisenberg& grp, const FiniteGroupElement& a) {
    return {grp.mod(-static_cast<long>(a.t)), grp.mod(-static_cast<long>(a.q)),
            grp.mod(-static_cast<long>(a.p))};
}

std::vector<FiniteGroupElement> all_elements(const FiniteHeisenberg& grp) {
    const int d = grp.modulus();
    std::vector<FiniteGroupElement> out;
    out.reserve(static_cast<std::size_t>(d) * d * d);
    for (int t = 0; t < d; ++t)
        for (int q = 0; q < d; ++q)
            for (int p = 0; p < d; ++p) out.push_back({t, q, p});
    return out;
}

CMat schrodinger_rep(const FiniteHeisenberg& grp, const FiniteGroupElement& a) {
    const int d = grp.modulus();
    CMat m = CMat::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const long phase = static_cast<long>(grp.char_index()) *
                           (a.t + static_cast<long>(grp.half_inv()) * a.q * a.p +
                            static_cast<long>(a.p) * j);
        m(grp.mod(static_cast<long>(j) + a.q), j) = grp.omega(phase);
    }
    return m;
}

CMat induced_rep(const FiniteHeisenberg& grp, const FiniteGroupElement& a) {
    const int d = grp.modulus();
    CMat l = CMat::Zero(d * d, d * d);
    const FiniteGroupElement ainv = group_inv(grp, a);
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            const FiniteGroupElement sx = section(q, p);
            const FiniteGroupElement sy = section(grp.mod(q + ainv.q), grp.mod(p + ainv.p));
            const FiniteGroupElement h =
                group_mul(grp, group_mul(grp, group_inv(grp, sx), a), sy);
            l(grp.xindex(q, p), grp.xindex(sy.q, sy.p)) = grp.chi(h);
        }
    return l;
}

CVec induce_from_function(const FiniteHeisenberg& grp,
                          const std::function<Complex(const FiniteGroupElement&)>& phi) {
    const int d = grp.modulus();
    CVec f = CVec::Zero(d * d);
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            Complex acc(0.0, 0.0);
            for (int t = 0; t < d; ++t)
                acc += grp.chi({t, 0, 0}) * phi(group_mul(grp, section(q, p), {t, 0, 0}));
            f[grp.xindex(q, p)] = acc;
        }
    return f;
}

CMat intertwiner(const FiniteHeisenberg& grp, const CVec& u) {
    const int d = grp.modulus();
    if (u.size() != d) throw std::invalid_argument("intertwiner: vector dimension mismatch");
    if (u.norm() == 0.0) throw std::invalid_argument("intertwiner: zero vector");
    CMat w(d * d, d);
    for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
            const CVec img = schrodinger_rep(grp, section(q, p)) * u;
            for (int j = 0; j < d; ++j) w(grp.xindex(q, p), j) = std::conj(img[j]);
        }
    return w;
}

double resolution_identity(const FiniteHeisenberg& grp) {
    const int d = grp.modulus();
    CMat acc = CMat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        const CMat w = intertwiner(grp, CVec::Unit(d, i));
        acc.noalias() += w * w.adjoint() / static_cast<double>(d);
    }
    return (acc - CMat::Identity(d * d, d * d)).norm();
}

IsotypicReport isotypic_decompose(const FiniteHeisenberg& grp) {
    const int d = grp.modulus();
    Complex mult(0.0, 0.0);
    for (const auto& g : all_elements(grp))
        mult += induced_rep(grp, g).trace() * std::conj(schrodinger_rep(grp, g).trace());
    mult /= static_cast<double>(d) * d * d;
    double overlap = 0.0;
    std::vector<CMat> ws;
    for (int i = 0; i < d; ++i) ws.push_back(intertwiner(grp, CVec::Unit(d, i)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            overlap = std::max(overlap, max_abs(ws[i].adjoint() * ws[j] / static_cast<double>(d)));
        }
    return {mult.real(), overlap};
}

int minimality_rank(const FiniteHeisenberg& grp, const CVec& u) {
    const int d = grp.modulus();
    const CMat w = intertwiner(grp, u);
    if (d <= 7) {
        // the literal collection: one singly-supported column per (x, basis j)
        CMat cols = CMat::Zero(d * d, d * d * d);
        for (int x = 0; x < d * d; ++x)
            for (int j = 0; j < d; ++j) cols(x, x * d + j) = w(x, j);
        Eigen::ColPivHouseholderQR<CMat> qr(cols);
        qr.setThreshold(1e-10);
        return static_cast<int>(qr.rank());
    }
    // each column is supported on a single x, so the span is the set of
    // coordinates hit by a nonzero sample; equal to the decomposition rank
    int rank = 0;
    for (int x = 0; x < d * d; ++x)
        if (w.row(x).cwiseAbs().maxCoeff() > 1e-10 * w.norm()) ++rank;
    return rank;
}

double imprimitivity_check(const FiniteHeisenberg& grp) {
    const int d = grp.modulus();
    double worst = 0.0;
    for (const auto& a : all_elements(grp)) {
        const CMat l = induced_rep(grp, a);
        for (int q = 0; q < d; ++q)
            for (int p = 0; p < d; ++p) {
                const CVec c = l.col(grp.xindex(q, p));
                CMat conj_proj = c * c.adjoint();
                const int target = grp.xindex(grp.mod(q + a.q), grp.mod(p + a.p));
                conj_proj(target, target) -= 1.0;
                worst = std::max(worst, max_abs(conj_proj));
            }
    }
    return worst;
}

}  // namespace phasepom
