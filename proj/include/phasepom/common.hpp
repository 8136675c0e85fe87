#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace phasepom {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInformationallyComplete : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegionEscapesGrid : std::runtime_error {
    RegionEscapesGrid() : std::runtime_error("region-escapes-grid") {}
};

// Deterministic Gaussian source. std::normal_distribution is
// implementation-defined, so seeds would not reproduce across platforms;
// Box-Muller over the raw engine is stable everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0,1), 53-bit
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(th);
        have_ = true;
        return r * std::cos(th);
    }

    Complex cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
    bool have_ = false;
    double spare_ = 0.0;
};

inline CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

inline double max_abs(const CMat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace phasepom
