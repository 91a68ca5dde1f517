#include "qsearch/smooth_operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsearch {

namespace {

int mod_n(int value, int n) {
    int r = value % n;
    return r < 0 ? r + n : r;
}

// w^e with exact wrap-around, from the precomputed root table.
Complex root_power(const CVector& roots, long long e) {
    const long long n = static_cast<long long>(roots.dim());
    long long r = e % n;
    if (r < 0) r += n;
    return roots[static_cast<std::size_t>(r)];
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

DiscretizedDomain::DiscretizedDomain(int n_coords, std::vector<double> axis_grid)
    : n_coords_(n_coords), axis_grid_(std::move(axis_grid)) {
    if (n_coords_ < 1) throw std::invalid_argument("domain: n_coords must be positive");
    if (axis_grid_.empty()) throw std::invalid_argument("domain: axis grid must be non-empty");
    for (std::size_t i = 1; i < axis_grid_.size(); ++i) {
        if (!(axis_grid_[i - 1] < axis_grid_[i])) {
            throw std::invalid_argument("domain: axis values must be strictly increasing");
        }
    }
    point_count_ = 1;
    for (int c = 0; c < n_coords_; ++c) point_count_ *= axis_grid_.size();

    step_.resize(point_count_);
    for (std::size_t p = 0; p < point_count_; ++p) {
        step_[p] = index_of(cyclic_permute(coords_of(p), 1));
    }
}

std::vector<int> DiscretizedDomain::coords_of(std::size_t index) const {
    std::vector<int> coords(n_coords_);
    const std::size_t g = grid_size();
    for (int c = n_coords_ - 1; c >= 0; --c) {
        coords[c] = static_cast<int>(index % g);
        index /= g;
    }
    return coords;
}

std::size_t DiscretizedDomain::index_of(const std::vector<int>& coords) const {
    if (coords.size() != static_cast<std::size_t>(n_coords_)) {
        throw std::invalid_argument("domain: coordinate tuple length mismatch");
    }
    const std::size_t g = grid_size();
    std::size_t idx = 0;
    for (int c = 0; c < n_coords_; ++c) {
        if (coords[c] < 0 || coords[c] >= static_cast<int>(g)) {
            throw std::invalid_argument("domain: coordinate out of range");
        }
        idx = idx * g + static_cast<std::size_t>(coords[c]);
    }
    return idx;
}

std::size_t DiscretizedDomain::permute_point(std::size_t index, int tau) const {
    int t = mod_n(tau, n_coords_);
    std::size_t p = index;
    for (int i = 0; i < t; ++i) p = step_[p];
    return p;
}

std::vector<int> cyclic_permute(const std::vector<int>& p, int tau) {
    const int n = static_cast<int>(p.size());
    if (n == 0) throw std::invalid_argument("cyclic_permute: empty tuple");
    std::vector<int> out(p.size());
    for (int c = 0; c < n; ++c) out[c] = p[mod_n(c + tau, n)];
    return out;
}

SmoothFamily::SmoothFamily(DiscretizedDomain domain, std::vector<Complex> s1_values)
    : domain_(std::move(domain)), s1_(std::move(s1_values)) {
    if (s1_.size() != domain_.point_count()) {
        throw std::invalid_argument("family: s1 must assign a value to every grid point");
    }
}

Complex SmoothFamily::value(int j, std::size_t point) const {
    const int n = family_size();
    if (j < 1 || j > n) throw std::invalid_argument("family: j out of range 1..N");
    return s1_[domain_.permute_point(point, j - 1)];
}

SmoothFamily constant_family(const DiscretizedDomain& domain) {
    const double a = 1.0 / std::sqrt(static_cast<double>(domain.n_coords()));
    return SmoothFamily(domain, std::vector<Complex>(domain.point_count(), Complex(a, 0.0)));
}

SmoothFamily indicator_family(const DiscretizedDomain& domain) {
    std::vector<Complex> s1(domain.point_count(), Complex(0.0, 0.0));
    const auto& axis = domain.axis_grid();
    for (std::size_t p = 0; p < domain.point_count(); ++p) {
        const auto coords = domain.coords_of(p);
        int argmax = 0;
        for (int c = 1; c < domain.n_coords(); ++c) {
            if (axis[coords[c]] > axis[coords[argmax]]) argmax = c;
        }
        if (argmax == 0) s1[p] = Complex(1.0, 0.0);
    }
    return SmoothFamily(domain, std::move(s1));
}

SmoothFamily smooth_cone_profile(const DiscretizedDomain& domain, double transition_width) {
    if (domain.n_coords() != 2) {
        throw std::invalid_argument("smooth_cone_profile: requires a 2D domain");
    }
    if (!(transition_width > 0.0 && transition_width < 1.0)) {
        throw std::invalid_argument("smooth_cone_profile: transition_width must lie in (0,1)");
    }
    const auto& axis = domain.axis_grid();
    if (axis.size() < 2) {
        throw std::invalid_argument("smooth_cone_profile: axis needs at least two values");
    }
    const double range = axis.back() - axis.front();
    const double band = transition_width * range;
    const double half_pi = 1.5707963267948966192313216916398;

    std::vector<Complex> s1(domain.point_count());
    for (std::size_t p = 0; p < domain.point_count(); ++p) {
        const auto coords = domain.coords_of(p);
        const double x1 = axis[coords[0]];
        const double x2 = axis[coords[1]];
        const double t = (x2 - x1) / band + 0.5;
        s1[p] = Complex(std::cos(half_pi * smooth_step(t)), 0.0);
    }
    return SmoothFamily(domain, std::move(s1));
}

PartitionReport check_partition(const SmoothFamily& fam, const PointFilter& filter) {
    const int n = fam.family_size();
    double worst = 0.0;
    for (std::size_t p = 0; p < fam.domain().point_count(); ++p) {
        if (filter && !filter(p)) continue;
        double sum = 0.0;
        for (int j = 1; j <= n; ++j) sum += std::norm(fam.value(j, p));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return {worst < 1e-10, worst};
}

DeltaReport check_delta_condition(const SmoothFamily& fam, const PointFilter& filter) {
    const int n = fam.family_size();
    const CVector roots = roots_of_unity(static_cast<std::size_t>(n));
    DeltaReport report{true, 0.0, 0, 0};
    for (std::size_t p = 0; p < fam.domain().point_count(); ++p) {
        if (filter && !filter(p)) continue;
        for (int tau = 0; tau < n; ++tau) {
            Complex acc(0.0, 0.0);
            for (int j = 1; j <= n; ++j) {
                const int j_shift = mod_n(j + tau - 1, n) + 1;
                acc += root_power(roots, static_cast<long long>(tau) * j) *
                       std::conj(fam.value(j, p)) * fam.value(j_shift, p);
            }
            const double residual = std::abs(acc - (tau == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0)));
            if (residual > report.max_residual) {
                report.max_residual = residual;
                report.worst_tau = tau;
                report.worst_point = p;
            }
        }
    }
    report.ok = report.max_residual < 1e-10;
    return report;
}

CMatrix analysis_operator(const SmoothFamily& fam, int j) {
    const int n = fam.family_size();
    if (j < 1 || j > n) throw std::invalid_argument("analysis_operator: j out of range 1..N");
    const std::size_t dim = fam.domain().point_count();
    const CVector roots = roots_of_unity(static_cast<std::size_t>(n));
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    CMatrix v(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const Complex front = inv_sqrt_n * std::conj(fam.value(j, x));
        for (int tau = 0; tau < n; ++tau) {
            const std::size_t y = fam.domain().permute_point(x, tau);
            v(x, y) += front * root_power(roots, -static_cast<long long>(tau) * j);
        }
    }
    return v;
}

CMatrix projection(const SmoothFamily& fam, int j) {
    const int n = fam.family_size();
    if (j < 1 || j > n) throw std::invalid_argument("projection: j out of range 1..N");
    const std::size_t dim = fam.domain().point_count();
    const CVector roots = roots_of_unity(static_cast<std::size_t>(n));

    CMatrix pj(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const Complex front = std::conj(fam.value(j, x));
        for (int tau = 0; tau < n; ++tau) {
            const std::size_t y = fam.domain().permute_point(x, tau);
            pj(x, y) += front * root_power(roots, -static_cast<long long>(tau) * j) * fam.value(j, y);
        }
    }
    return pj;
}

CMatrix smooth_unitary(const SmoothFamily& fam, std::size_t point) {
    const int n = fam.family_size();
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) sum += std::norm(fam.value(j, point));
    if (std::abs(sum - 1.0) >= 1e-10) {
        std::ostringstream msg;
        msg << "smooth_unitary: partition of unity fails at point " << point
            << " (sum of |s_j|^2 = " << sum << ")";
        throw std::invalid_argument(msg.str());
    }

    const CVector roots = roots_of_unity(static_cast<std::size_t>(n));
    CMatrix u(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
            const int member = mod_n(k - j, n) + 1;
            u(j - 1, k - 1) = std::conj(fam.value(member, point)) *
                              root_power(roots, static_cast<long long>(j) * (k - 1));
        }
    }
    return u;
}

CMatrix rotation_2d(double s1, double s2) {
    if (std::abs(s1 * s1 + s2 * s2 - 1.0) >= 1e-10) {
        throw std::invalid_argument("rotation_2d: s1^2 + s2^2 must equal 1");
    }
    CMatrix m(2, 2);
    m(0, 0) = Complex(s1, 0.0);
    m(0, 1) = Complex(-s2, 0.0);
    m(1, 0) = Complex(s2, 0.0);
    m(1, 1) = Complex(s1, 0.0);
    return m;
}

std::vector<std::size_t> tie_free_points(const DiscretizedDomain& domain) {
    std::vector<std::size_t> out;
    const auto& axis = domain.axis_grid();
    for (std::size_t p = 0; p < domain.point_count(); ++p) {
        const auto coords = domain.coords_of(p);
        double best = axis[coords[0]];
        for (int c = 1; c < domain.n_coords(); ++c) best = std::max(best, axis[coords[c]]);
        int hits = 0;
        for (int c = 0; c < domain.n_coords(); ++c) {
            if (axis[coords[c]] == best) ++hits;
        }
        if (hits == 1) out.push_back(p);
    }
    return out;
}

CMatrix restrict_to_points(const CMatrix& m, const std::vector<std::size_t>& points) {
    if (points.empty()) throw std::invalid_argument("restrict_to_points: empty subset");
    CMatrix out(points.size(), points.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        for (std::size_t c = 0; c < points.size(); ++c) {
            out(r, c) = m(points[r], points[c]);
        }
    }
    return out;
}

}  // namespace qsearch
