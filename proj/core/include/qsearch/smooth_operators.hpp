#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qsearch/complex_linalg.hpp"

namespace qsearch {

/// Finite tensor-product grid with the same axis on every coordinate, so the
/// cyclic coordinate permutation T maps grid points to grid points exactly.
/// Points are addressed by a row-major linear index over {0..g-1}^n_coords.
class DiscretizedDomain {
public:
    DiscretizedDomain(int n_coords, std::vector<double> axis_grid);

    int n_coords() const { return n_coords_; }
    const std::vector<double>& axis_grid() const { return axis_grid_; }
    std::size_t grid_size() const { return axis_grid_.size(); }
    std::size_t point_count() const { return point_count_; }

    std::vector<int> coords_of(std::size_t index) const;
    std::size_t index_of(const std::vector<int>& coords) const;

    /// Linear index of T^tau applied to the point at `index`.
    std::size_t permute_point(std::size_t index, int tau) const;

private:
    int n_coords_;
    std::vector<double> axis_grid_;
    std::size_t point_count_;
    std::vector<std::size_t> step_;  // one application of T per point
};

/// One cyclic step rotates coordinates: output coordinate c is input
/// coordinate (c + tau) mod n. T^n is the identity; negative tau allowed.
std::vector<int> cyclic_permute(const std::vector<int>& p, int tau);

/// Family s_j = s_1(T^{j-1} .) on a discretized domain, j = 1..N with
/// N = n_coords. Only s_1 is stored; the rest are derived by construction.
class SmoothFamily {
public:
    SmoothFamily(DiscretizedDomain domain, std::vector<Complex> s1_values);

    const DiscretizedDomain& domain() const { return domain_; }
    int family_size() const { return domain_.n_coords(); }

    /// s_j evaluated at a grid point, j in 1..N.
    Complex value(int j, std::size_t point) const;

    const std::vector<Complex>& s1() const { return s1_; }

private:
    DiscretizedDomain domain_;
    std::vector<Complex> s1_;
};

using GridFunction = std::vector<Complex>;  // one value per grid point

SmoothFamily constant_family(const DiscretizedDomain& domain);

/// Indicator family from the grid partition U_j = {x : canonical argmax
/// coordinate = j}, canonical = smallest index among maximal coordinates.
/// Shift covariance (and hence the family identities) holds on tie-free
/// points only; see tie_free_points.
SmoothFamily indicator_family(const DiscretizedDomain& domain);

/// 2D family s1 = cos(beta), with beta ramping smoothly 0 -> pi/2 across the
/// x2 = x1 boundary over a band of width transition_width * (axis range),
/// using the C-infinity step e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}).
SmoothFamily smooth_cone_profile(const DiscretizedDomain& domain, double transition_width);

struct PartitionReport {
    bool ok;
    double max_deviation;
};

struct DeltaReport {
    bool ok;
    double max_residual;
    int worst_tau;
    std::size_t worst_point;
};

using PointFilter = std::function<bool(std::size_t)>;

/// max_x | sum_j |s_j(x)|^2 - 1 | < 1e-10, over points accepted by `filter`
/// (all points when the filter is empty).
PartitionReport check_partition(const SmoothFamily& fam, const PointFilter& filter = {});

/// For every accepted x and every tau in 0..N-1:
/// | sum_{j=1}^{N} w^{tau j} conj(s_j(x)) s_{j+tau}(x) - delta_{tau,0} | < 1e-10,
/// with j+tau wrapping mod N into 1..N.
DeltaReport check_delta_condition(const SmoothFamily& fam, const PointFilter& filter = {});

/// Matrix of V_j over grid functions:
/// (V_j f)(x) = (1/sqrt(N)) conj(s_j(x)) sum_tau w^{-tau j} f(T^tau x).
/// The phase is the conjugate of the companion projection formula so that
/// projection(fam, j) == V_j V_j^dagger holds exactly.
CMatrix analysis_operator(const SmoothFamily& fam, int j);

/// Matrix of P_j:
/// (P_j f)(x) = conj(s_j(x)) sum_tau conj(w^{tau j}) s_j(T^tau x) f(T^tau x).
CMatrix projection(const SmoothFamily& fam, int j);

/// N x N unitary built from the family at one grid point, laid out exactly as
/// the cyclically indexed construction the worked matrices use:
/// entry (j,k), 1-based, is conj(s_{1+((k-j) mod N)}(x)) * w^{j(k-1)}.
/// For the constant family this is the DFT-like collapse gate for every x.
/// Rejects points where the partition of unity fails.
CMatrix smooth_unitary(const SmoothFamily& fam, std::size_t point);

/// [[s1, -s2], [s2, s1]]; requires s1^2 + s2^2 = 1 within 1e-10.
CMatrix rotation_2d(double s1, double s2);

/// Points whose maximal coordinate value is attained exactly once.
std::vector<std::size_t> tie_free_points(const DiscretizedDomain& domain);

/// Submatrix on the given point subset (operators above preserve the span of
/// any T-invariant subset, so the restriction is well defined).
CMatrix restrict_to_points(const CMatrix& m, const std::vector<std::size_t>& points);

}  // namespace qsearch
