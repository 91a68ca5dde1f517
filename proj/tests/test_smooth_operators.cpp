#include <doctest.h>

#include <random>

#include "qsearch/search_oracles.hpp"
#include "qsearch/smooth_operators.hpp"
#include "test_support.hpp"

using namespace qsearch;

namespace {

DiscretizedDomain grid(int n_coords, int g) {
    std::vector<double> axis(g);
    for (int i = 0; i < g; ++i) axis[i] = static_cast<double>(i);
    return DiscretizedDomain(n_coords, axis);
}

PointFilter tie_free_filter(const DiscretizedDomain& d) {
    auto pts = tie_free_points(d);
    return [pts](std::size_t p) {
        return std::find(pts.begin(), pts.end(), p) != pts.end();
    };
}

// Independent evaluation of P_j f by the literal double loop over (tau, x).
GridFunction brute_force_projection(const SmoothFamily& fam, int j, const GridFunction& f) {
    const int n = fam.family_size();
    const CVector roots = roots_of_unity(n);
    GridFunction out(fam.domain().point_count(), Complex(0, 0));
    for (std::size_t x = 0; x < out.size(); ++x) {
        Complex acc(0, 0);
        for (int tau = 0; tau < n; ++tau) {
            const std::size_t y = fam.domain().permute_point(x, tau);
            acc += std::conj(roots[(tau * j) % n]) * fam.value(j, y) * f[y];
        }
        out[x] = std::conj(fam.value(j, x)) * acc;
    }
    return out;
}

}  // namespace

TEST_CASE("cyclic_permute definition, period and inverse") {
    const std::vector<int> p{5, 7, 9};
    CHECK(cyclic_permute(p, 1) == std::vector<int>{7, 9, 5});
    CHECK(cyclic_permute(p, 3) == p);
    CHECK(cyclic_permute(cyclic_permute(p, -1), 1) == p);
}

TEST_CASE("check_partition on the three stock families") {
    const DiscretizedDomain d = grid(3, 4);

    const auto constant = check_partition(constant_family(d));
    CHECK(constant.ok);
    CHECK(constant.max_deviation < 1e-15);

    // Indicator partition holds on tie-free points.
    const auto indicator = check_partition(indicator_family(d), tie_free_filter(d));
    CHECK(indicator.ok);

    // s1 = 1 with N = 2 sums to 2.
    const DiscretizedDomain d2 = grid(2, 3);
    const SmoothFamily ones(d2, std::vector<Complex>(d2.point_count(), Complex(1, 0)));
    const auto bad = check_partition(ones);
    CHECK_FALSE(bad.ok);
    CHECK(bad.max_deviation == doctest::Approx(1.0));
}

TEST_CASE("check_delta_condition families") {
    const DiscretizedDomain d3 = grid(3, 3);
    CHECK(check_delta_condition(constant_family(d3)).ok);
    CHECK(check_delta_condition(indicator_family(d3), tie_free_filter(d3)).ok);

    // Any real 2D family passing the partition check satisfies the condition.
    std::mt19937_64 rng(7);
    const DiscretizedDomain d2 = grid(2, 5);
    for (int trial = 0; trial < 5; ++trial) {
        const SmoothFamily fam = test_support::random_real_2d_family(d2, rng);
        REQUIRE(check_partition(fam).ok);
        CHECK(check_delta_condition(fam).ok);
    }

    // Adversarial N=3 complex family, normalized orbitwise so the partition
    // holds exactly while the delta condition generically fails.
    std::normal_distribution<double> gauss;
    std::vector<Complex> s1(d3.point_count());
    for (std::size_t p = 0; p < d3.point_count(); ++p) {
        s1[p] = Complex(gauss(rng), gauss(rng));
    }
    std::vector<bool> seen(d3.point_count(), false);
    for (std::size_t p = 0; p < d3.point_count(); ++p) {
        if (seen[p]) continue;
        std::vector<std::size_t> orbit{p};
        seen[p] = true;
        std::size_t q = d3.permute_point(p, 1);
        while (q != p) {
            orbit.push_back(q);
            seen[q] = true;
            q = d3.permute_point(q, 1);
        }
        double sum = 0.0;
        for (std::size_t pt : orbit) sum += std::norm(s1[pt]);
        const double scale = std::sqrt(static_cast<double>(orbit.size()) / 3.0 / sum);
        for (std::size_t pt : orbit) s1[pt] *= scale;
    }
    const SmoothFamily adversarial(d3, s1);
    REQUIRE(check_partition(adversarial).ok);
    const auto delta = check_delta_condition(adversarial);
    CHECK_FALSE(delta.ok);
    CHECK(delta.max_residual > 1e-6);

    // The partition alone already makes every P_j an orthogonal projection
    // equal to V_j V_j'; only the resolution of identity needs the delta
    // condition.
    CMatrix sum(d3.point_count(), d3.point_count());
    for (int j = 1; j <= 3; ++j) {
        const CMatrix pj = projection(adversarial, j);
        const CMatrix vj = analysis_operator(adversarial, j);
        CHECK(max_abs_diff(matmul(pj, pj), pj) < 1e-10);
        CHECK(max_abs_diff(pj, adjoint(pj)) < 1e-10);
        CHECK(max_abs_diff(pj, matmul(vj, adjoint(vj))) < 1e-10);
        sum = add(sum, pj);
    }
    CHECK(max_abs_diff(sum, CMatrix::identity(d3.point_count())) > 1e-3);
}

TEST_CASE("analysis operator N=2 constant family expansions") {
    const DiscretizedDomain d = grid(2, 4);
    const SmoothFamily fam = constant_family(d);
    const CMatrix v1 = analysis_operator(fam, 1);
    const CMatrix v2 = analysis_operator(fam, 2);

    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    GridFunction f(d.point_count());
    for (Complex& z : f) z = Complex(gauss(rng), gauss(rng));

    // V_2 f = (f(x) + f(Tx))/2 and V_1 f = (f(x) - f(Tx))/2.
    for (std::size_t x = 0; x < d.point_count(); ++x) {
        const std::size_t tx = d.permute_point(x, 1);
        Complex acc1(0, 0);
        Complex acc2(0, 0);
        for (std::size_t y = 0; y < d.point_count(); ++y) {
            acc1 += v1(x, y) * f[y];
            acc2 += v2(x, y) * f[y];
        }
        CHECK(std::abs(acc2 - 0.5 * (f[x] + f[tx])) < 1e-12);
        CHECK(std::abs(acc1 - 0.5 * (f[x] - f[tx])) < 1e-12);
    }

    // Symmetric f is annihilated by V_1.
    GridFunction sym(d.point_count());
    for (std::size_t x = 0; x < d.point_count(); ++x) {
        const auto coords = d.coords_of(x);
        sym[x] = Complex(static_cast<double>(coords[0] + coords[1]), 0.0);
    }
    for (std::size_t x = 0; x < d.point_count(); ++x) {
        Complex acc(0, 0);
        for (std::size_t y = 0; y < d.point_count(); ++y) acc += v1(x, y) * sym[y];
        CHECK(std::abs(acc) < 1e-12);
    }

    CHECK_THROWS_AS(analysis_operator(fam, 0), std::invalid_argument);
    CHECK_THROWS_AS(analysis_operator(fam, 3), std::invalid_argument);
}

TEST_CASE("projection N=2 constant family and symmetric input") {
    const DiscretizedDomain d = grid(2, 3);
    const SmoothFamily fam = constant_family(d);
    const CMatrix p1 = projection(fam, 1);
    const CMatrix p2 = projection(fam, 2);

    std::mt19937_64 rng(19);
    std::normal_distribution<double> gauss;
    GridFunction f(d.point_count());
    for (Complex& z : f) z = Complex(gauss(rng), gauss(rng));

    for (std::size_t x = 0; x < d.point_count(); ++x) {
        const std::size_t tx = d.permute_point(x, 1);
        Complex acc1(0, 0);
        Complex acc2(0, 0);
        for (std::size_t y = 0; y < d.point_count(); ++y) {
            acc1 += p1(x, y) * f[y];
            acc2 += p2(x, y) * f[y];
        }
        CHECK(std::abs(acc1 - 0.5 * (f[x] - f[tx])) < 1e-12);
        CHECK(std::abs(acc2 - 0.5 * (f[x] + f[tx])) < 1e-12);
    }
}

TEST_CASE("projection matches the brute-force double loop (indicator family)") {
    const DiscretizedDomain d = grid(3, 4);
    const SmoothFamily fam = indicator_family(d);
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss;
    GridFunction f(d.point_count());
    for (Complex& z : f) z = Complex(gauss(rng), gauss(rng));

    for (int j = 1; j <= 3; ++j) {
        const CMatrix pj = projection(fam, j);
        const GridFunction expected = brute_force_projection(fam, j, f);
        for (std::size_t x = 0; x < d.point_count(); ++x) {
            Complex acc(0, 0);
            for (std::size_t y = 0; y < d.point_count(); ++y) acc += pj(x, y) * f[y];
            CHECK(std::abs(acc - expected[x]) < 1e-12);
        }
    }

    // On tie-free points P_j acts as multiplication by the indicator.
    const auto pts = tie_free_points(d);
    for (int j = 1; j <= 3; ++j) {
        const CMatrix pj = projection(fam, j);
        const CMatrix sub = restrict_to_points(pj, pts);
        for (std::size_t a = 0; a < pts.size(); ++a) {
            for (std::size_t b = 0; b < pts.size(); ++b) {
                const Complex expect =
                    a == b ? fam.value(j, pts[a]) * std::conj(fam.value(j, pts[a])) : Complex(0, 0);
                CHECK(std::abs(sub(a, b) - expect) < 1e-12);
            }
        }
    }
}

TEST_CASE("projection identities for families passing the checks") {
    std::mt19937_64 rng(29);
    const DiscretizedDomain d2 = grid(2, 4);
    const DiscretizedDomain d3 = grid(3, 3);

    std::vector<SmoothFamily> families;
    std::vector<PointFilter> filters;
    families.push_back(constant_family(d3));
    filters.emplace_back();
    families.push_back(constant_family(d2));
    filters.emplace_back();
    families.push_back(indicator_family(d3));
    filters.push_back(tie_free_filter(d3));
    families.push_back(test_support::random_real_2d_family(d2, rng));
    filters.emplace_back();
    families.push_back(smooth_cone_profile(d2, 0.5));
    filters.emplace_back();

    for (std::size_t i = 0; i < families.size(); ++i) {
        const SmoothFamily& fam = families[i];
        const int n = fam.family_size();
        REQUIRE(check_partition(fam, filters[i]).ok);
        REQUIRE(check_delta_condition(fam, filters[i]).ok);

        std::vector<std::size_t> pts;
        if (filters[i]) {
            pts = tie_free_points(fam.domain());
        } else {
            pts.resize(fam.domain().point_count());
            for (std::size_t p = 0; p < pts.size(); ++p) pts[p] = p;
        }

        CMatrix sum(pts.size(), pts.size());
        for (int j = 1; j <= n; ++j) {
            const CMatrix pj = restrict_to_points(projection(fam, j), pts);
            const CMatrix vj = restrict_to_points(analysis_operator(fam, j), pts);
            CHECK(max_abs_diff(matmul(pj, pj), pj) < 1e-10);
            CHECK(max_abs_diff(pj, adjoint(pj)) < 1e-10);
            CHECK(max_abs_diff(pj, matmul(vj, adjoint(vj))) < 1e-10);
            sum = add(sum, pj);
        }
        CHECK(test_support::max_offdiag_from_identity(sum) < 1e-10);

        for (std::size_t p : pts) {
            CHECK(is_unitary(smooth_unitary(fam, p), 1e-10));
        }
    }
}

TEST_CASE("smooth_unitary forms") {
    // Constant family reproduces the collapse gate at every point.
    const DiscretizedDomain d3 = grid(3, 3);
    const SmoothFamily c3 = constant_family(d3);
    const CMatrix u3 = build_U(3);
    for (std::size_t p = 0; p < d3.point_count(); ++p) {
        CHECK(max_abs_diff(smooth_unitary(c3, p), u3) < 1e-12);
    }

    // 2D real family gives the rotation form [[s1, -s2], [s2, s1]].
    const DiscretizedDomain d2 = grid(2, 2);
    std::vector<Complex> s1(d2.point_count());
    for (std::size_t p = 0; p < d2.point_count(); ++p) {
        const std::size_t tp = d2.permute_point(p, 1);
        if (p == tp) {
            s1[p] = Complex(std::sqrt(0.5), 0);
        } else if (p < tp) {
            s1[p] = Complex(0.6, 0);
        } else {
            s1[p] = Complex(0.8, 0);
        }
    }
    const SmoothFamily fam2(d2, s1);
    for (std::size_t p = 0; p < d2.point_count(); ++p) {
        const std::size_t tp = d2.permute_point(p, 1);
        if (p == tp) continue;
        const double a = fam2.value(1, p).real();
        const double b = fam2.value(2, p).real();
        CHECK(max_abs_diff(smooth_unitary(fam2, p), rotation_2d(a, b)) < 1e-12);
    }

    // Degenerate member (s1, s2) = (1, 0) gives the identity.
    std::vector<Complex> degen(d2.point_count());
    for (std::size_t p = 0; p < d2.point_count(); ++p) {
        const std::size_t tp = d2.permute_point(p, 1);
        if (p == tp) {
            degen[p] = Complex(std::sqrt(0.5), 0);
        } else {
            degen[p] = p < tp ? Complex(1, 0) : Complex(0, 0);
        }
    }
    const SmoothFamily fdegen(d2, degen);
    std::size_t off_diag = 0;
    for (std::size_t p = 0; p < d2.point_count(); ++p) {
        if (d2.permute_point(p, 1) != p) {
            off_diag = p;
            break;
        }
    }
    CHECK(max_abs_diff(smooth_unitary(fdegen, off_diag), CMatrix::identity(2)) < 1e-12);

    // Partition violations are rejected with a diagnostic.
    const SmoothFamily broken(d2, std::vector<Complex>(d2.point_count(), Complex(1, 0)));
    CHECK_THROWS_AS(smooth_unitary(broken, 0), std::invalid_argument);
}

TEST_CASE("rotation_2d") {
    CHECK(max_abs_diff(rotation_2d(1.0, 0.0), CMatrix::identity(2)) == 0.0);

    const double r = 1.0 / std::sqrt(2.0);
    const CMatrix rot = rotation_2d(r, r);
    CHECK(is_unitary(rot, 1e-12));
    CHECK(max_abs_diff(matmul(rot, adjoint(rot)), CMatrix::identity(2)) < 1e-12);

    const CMatrix m = rotation_2d(0.6, 0.8);
    Complex col_dot(0, 0);
    for (std::size_t r2 = 0; r2 < 2; ++r2) col_dot += std::conj(m(r2, 0)) * m(r2, 1);
    CHECK(std::abs(col_dot) < 1e-12);

    CHECK(max_abs_diff(matmul(rotation_2d(0.6, 0.8), rotation_2d(0.6, -0.8)),
                       CMatrix::identity(2)) < 1e-12);
    CHECK_THROWS_AS(rotation_2d(0.9, 0.9), std::invalid_argument);
}

TEST_CASE("smooth cone profile") {
    const DiscretizedDomain d = grid(2, 8);
    const SmoothFamily cone = smooth_cone_profile(d, 0.2);

    // Deep plateaus on both sides of the boundary.
    const std::size_t region1 = d.index_of({7, 0});
    const std::size_t region2 = d.index_of({0, 7});
    CHECK(std::abs(cone.value(1, region1) - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(cone.value(2, region1)) < 1e-12);
    CHECK(std::abs(cone.value(1, region2)) < 1e-12);
    CHECK(std::abs(cone.value(2, region2) - Complex(1, 0)) < 1e-12);

    for (std::size_t p = 0; p < d.point_count(); ++p) {
        const double sum = std::norm(cone.value(1, p)) + std::norm(cone.value(2, p));
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    CHECK(check_partition(cone).ok);
    CHECK(check_delta_condition(cone).ok);

    CHECK_THROWS_AS(smooth_cone_profile(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(smooth_cone_profile(d, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(smooth_cone_profile(grid(3, 4), 0.5), std::invalid_argument);
}
