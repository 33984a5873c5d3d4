#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ginlab {

using cplx = std::complex<double>;

/// One atom of the limiting measure of the mean matrix: eigenvalue `a` with
/// asymptotic fraction `c` of the diagonal.
struct Atom {
    cplx a;
    double c = 0.0;
};

/// Parameters of the deformed complex Ginibre ensemble.
///
/// The mean matrix is X0 = diag(a_1 I_{r_1}, ..., a_t I_{r_t}, z0 I_{r0}, A_{t+1}, 0_{R0}).
/// A_{t+1} is stored by its eigenvalues: a normal block is unitarily
/// diagonalizable, and both the Gaussian density Tr (X - X0)(X - X0)^* and the
/// spectrum are invariant under simultaneous unitary conjugation, so a
/// diagonal block loses no generality.
struct DeformationSpec {
    double tau = 1.0;
    std::vector<Atom> atoms;
    int r0 = 0;
    std::vector<cplx> finite_block;
    int R0 = 0;
};

/// A DeformationSpec that has passed validate_spec(). Only validate_spec can
/// construct one.
class ValidatedSpec {
public:
    const DeformationSpec& spec() const noexcept { return spec_; }
    double tau() const noexcept { return spec_.tau; }
    const std::vector<Atom>& atoms() const noexcept { return spec_.atoms; }

private:
    explicit ValidatedSpec(DeformationSpec s) : spec_(std::move(s)) {}
    friend ValidatedSpec validate_spec(DeformationSpec spec);

    DeformationSpec spec_;
};

/// Checks tau > 0, c_a > 0, sum c_a = 1 (to 1e-12), distinct atoms and
/// nonnegative block sizes. Weights are never renormalized.
ValidatedSpec validate_spec(DeformationSpec spec);

/// Sum_a c_a / |a_a - z0|^2.  Throws AtomCollisionError when z0 is an atom.
double p00(const ValidatedSpec& spec, cplx z0);

enum class PointTag { Bulk, Edge, Exterior };

struct PointClass {
    PointTag tag = PointTag::Exterior;
    double p00 = 0.0;
};

/// Absolute tolerance on |p00 - 1/tau| for the Edge band.
inline constexpr double kEdgeEpsilon = 1e-9;

PointClass classify_point(const ValidatedSpec& spec, cplx z0);

const char* to_string(PointTag tag);

struct Window {
    double x_min, x_max, y_min, y_max;
};

struct BoundaryCurve {
    struct Polyline {
        std::vector<cplx> points;
        bool closed = false;
    };
    std::vector<Polyline> polylines;
    double grid_resolution = 0.0;
};

/// Residual |p00 - 1/tau| every traced vertex is refined to.
inline constexpr double kBoundaryResidual = 1e-10;

/// Traces the level set p00 = 1/tau (the boundary of the limiting support)
/// inside `window` by marching squares on a grid of pitch `resolution`. Each
/// vertex is refined by bisection along its grid edge. Grid nodes that land
/// exactly on an atom are treated as +infinity (deep inside the support).
BoundaryCurve trace_boundary(const ValidatedSpec& spec, const Window& window, double resolution);

/// Multiplicities of the atoms in an N x N mean matrix. r_a =
/// floor(c_a * M) with M = N - r0 - r_{t+1} - R0; the remainder goes one by
/// one to the atoms with the largest fractional parts (ties to the lower index).
std::vector<int> atom_multiplicities(const ValidatedSpec& spec, int N);

/// Diagonal of the mean matrix X0: atom copies, r0 copies of z0, the finite
/// block, then R0 zeros.
Eigen::VectorXcd build_mean_matrix(const ValidatedSpec& spec, int N, cplx z0 = {});

}  // namespace ginlab
