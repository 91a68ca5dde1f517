#include <doctest.h>

#include <random>

#include "qsearch/search_oracles.hpp"
#include "qsearch/simulate.hpp"
#include "qsearch/synthesis.hpp"
#include "test_support.hpp"

using namespace qsearch;

namespace {

CMatrix dft(std::size_t n) {
    const CVector roots = roots_of_unity(n);
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix q(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) q(a, b) = inv * roots[(a * b) % n];
    return q;
}

CMatrix reconstruct(std::size_t dim, const std::vector<TwoLevelUnitary>& factors) {
    CMatrix acc = CMatrix::identity(dim);
    for (const TwoLevelUnitary& f : factors) acc = matmul(acc, embed_two_level(dim, f));
    return acc;
}

}  // namespace

TEST_CASE("two_level_decompose examples") {
    std::mt19937_64 rng(101);

    // A 2x2 unitary decomposes into a single factor equal to itself.
    const CMatrix u2 = test_support::random_unitary(2, rng);
    const auto single = two_level_decompose(u2);
    REQUIRE(single.size() == 1);
    CHECK(max_abs_diff(reconstruct(2, single), u2) < 1e-10);
    CHECK(max_abs_diff(embed_two_level(2, single[0]), u2) < 1e-10);

    // The collapse gate at N=4.
    const CMatrix u = build_U(4);
    const auto factors = two_level_decompose(u);
    CHECK(factors.size() <= 4 * 3 / 2);
    CHECK(max_abs_diff(reconstruct(4, factors), u) < 1e-8);

    // Identity gives the empty list.
    CHECK(two_level_decompose(CMatrix::identity(8)).empty());

    CMatrix notu(2, 2);
    notu(0, 0) = Complex(2, 0);
    CHECK_THROWS_AS(two_level_decompose(notu), std::invalid_argument);
}

TEST_CASE("two_level_decompose on random unitaries and diagonals") {
    std::mt19937_64 rng(103);
    for (std::size_t dim : {2ul, 3ul, 4ul, 5ul, 8ul}) {
        for (int trial = 0; trial < 5; ++trial) {
            const CMatrix u = test_support::random_unitary(dim, rng);
            const auto factors = two_level_decompose(u);
            CHECK(factors.size() <= dim * (dim - 1) / 2);
            CHECK(max_abs_diff(reconstruct(dim, factors), u) < 1e-8);
        }
    }

    // Diagonal phases: factor count stays within the bound.
    std::uniform_real_distribution<double> ang(0.0, 6.2831853);
    for (std::size_t dim : {2ul, 4ul, 8ul}) {
        CMatrix d(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const double t = ang(rng);
            d(i, i) = Complex(std::cos(t), std::sin(t));
        }
        const auto factors = two_level_decompose(d);
        CHECK(factors.size() <= dim * (dim - 1) / 2);
        CHECK(max_abs_diff(reconstruct(dim, factors), d) < 1e-8);
    }
}

TEST_CASE("qft circuit matches the DFT matrix") {
    for (int n = 1; n <= 4; ++n) {
        const CMatrix got = circuit_unitary(qft_circuit(n));
        CHECK(max_abs_diff(got, dft(std::size_t{1} << n)) < 1e-12);
    }
}

TEST_CASE("shift circuit implements index addition") {
    for (int n = 1; n <= 4; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (std::size_t z = 0; z < dim; ++z) {
            const CMatrix got = circuit_unitary(shift_circuit(n, z));
            CMatrix expected(dim, dim);
            for (std::size_t c = 0; c < dim; ++c) expected((c + z) % dim, c) = Complex(1, 0);
            CHECK(max_abs_diff(got, expected) < 1e-11);
        }
    }
}

TEST_CASE("symmetric phase network") {
    for (int n = 1; n <= 5; ++n) {
        std::vector<int> qubits(n);
        for (int q = 0; q < n; ++q) qubits[q] = q;
        const double theta = 0.7391;
        Circuit c(n);
        append_symmetric_phase(c, qubits, theta);
        const CMatrix got = circuit_unitary(c);
        const std::size_t dim = std::size_t{1} << n;
        CMatrix expected = CMatrix::identity(dim);
        expected(dim - 1, dim - 1) = Complex(std::cos(theta), std::sin(theta));
        CHECK(max_abs_diff(got, expected) < 1e-11);
    }
}

TEST_CASE("mcx and basis transpositions") {
    for (int n = 2; n <= 4; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        std::vector<int> controls;
        for (int q = 0; q < n - 1; ++q) controls.push_back(q);
        Circuit c(n);
        append_mcx(c, controls, n - 1);
        const CMatrix got = circuit_unitary(c);
        CMatrix expected = CMatrix::identity(dim);
        expected(dim - 1, dim - 1) = Complex(0, 0);
        expected(dim - 2, dim - 2) = Complex(0, 0);
        expected(dim - 1, dim - 2) = Complex(1, 0);
        expected(dim - 2, dim - 1) = Complex(1, 0);
        CHECK(max_abs_diff(got, expected) < 1e-11);
    }

    std::mt19937_64 rng(107);
    for (int n = 2; n <= 4; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
        for (int trial = 0; trial < 6; ++trial) {
            std::size_t a = pick(rng);
            std::size_t b = pick(rng);
            if (a == b) continue;
            Circuit c(n);
            append_basis_transposition(c, n, a, b);
            const CMatrix got = circuit_unitary(c);
            CMatrix expected = CMatrix::identity(dim);
            expected(a, a) = expected(b, b) = Complex(0, 0);
            expected(a, b) = expected(b, a) = Complex(1, 0);
            CHECK(max_abs_diff(got, expected) < 1e-11);
        }
    }
}

TEST_CASE("synthesize qft_family on the collapse gate") {
    for (std::size_t n : {2ul, 4ul, 8ul, 16ul}) {
        const CMatrix u = build_U(n);
        const SynthesisResult result = synthesize(u, SynthesisHint::QftFamily);
        CHECK_FALSE(result.fallback);
        CHECK(phase_aligned_distance(u, circuit_unitary(result.circuit)) < 1e-8);
    }
}

TEST_CASE("synthesize qft_family on the one-gate oracle") {
    for (std::size_t n : {4ul, 8ul, 16ul}) {
        for (int s = 1; s <= static_cast<int>(n); s += 3) {
            const CMatrix ut = build_U_tilde(MarkedSequence::single_marked(n, s));
            const SynthesisResult result = synthesize(ut, SynthesisHint::QftFamily);
            CHECK_FALSE(result.fallback);
            CHECK(phase_aligned_distance(ut, circuit_unitary(result.circuit)) < 1e-8);
        }
    }
}

TEST_CASE("synthesize permutation on the cyclic oracle") {
    for (std::size_t n : {4ul, 8ul, 16ul}) {
        for (int s = 1; s <= static_cast<int>(n); s += 2) {
            for (auto conv :
                 {PermutationConvention::RowStart, PermutationConvention::PaperRecovery}) {
                const CMatrix f = build_F(MarkedSequence::single_marked(n, s), conv);
                const SynthesisResult result = synthesize(f, SynthesisHint::Permutation);
                CHECK_FALSE(result.fallback);
                const CMatrix got = circuit_unitary(result.circuit);
                CHECK(max_abs_diff(got, f) < 1e-8);
            }
        }
    }
}

TEST_CASE("synthesize permutation on a non-affine permutation uses MCX chains") {
    // A single transposition of basis states 1 and 6 is not an affine map.
    const std::size_t dim = 8;
    CMatrix p = CMatrix::identity(dim);
    p(1, 1) = p(6, 6) = Complex(0, 0);
    p(1, 6) = p(6, 1) = Complex(1, 0);
    const SynthesisResult result = synthesize(p, SynthesisHint::Permutation);
    CHECK_FALSE(result.fallback);
    CHECK(max_abs_diff(circuit_unitary(result.circuit), p) < 1e-8);
}

TEST_CASE("synthesize identity gives an empty circuit") {
    const SynthesisResult result = synthesize(CMatrix::identity(8), SynthesisHint::Generic);
    CHECK(result.circuit.ops.empty());
}

TEST_CASE("hint mismatch falls back to generic with a warning flag") {
    std::mt19937_64 rng(109);
    const CMatrix u = test_support::random_unitary(4, rng);
    const SynthesisResult qft = synthesize(u, SynthesisHint::QftFamily);
    CHECK(qft.fallback);
    CHECK(phase_aligned_distance(u, circuit_unitary(qft.circuit)) < 1e-8);

    const SynthesisResult perm = synthesize(u, SynthesisHint::Permutation);
    CHECK(perm.fallback);
    CHECK(phase_aligned_distance(u, circuit_unitary(perm.circuit)) < 1e-8);
}

TEST_CASE("generic synthesis round-trips random unitaries") {
    std::mt19937_64 rng(113);
    for (std::size_t dim : {2ul, 4ul, 8ul}) {
        for (int trial = 0; trial < 25; ++trial) {
            const CMatrix u = test_support::random_unitary(dim, rng);
            const SynthesisResult result = synthesize(u, SynthesisHint::Generic);
            CHECK(phase_aligned_distance(u, circuit_unitary(result.circuit)) < 1e-8);
        }
    }
}

TEST_CASE("synthesize validates inputs") {
    CHECK_THROWS_AS(synthesize(CMatrix::identity(3), SynthesisHint::Generic),
                    std::invalid_argument);
    CMatrix notu(4, 4);
    notu(0, 0) = Complex(1, 0);
    CHECK_THROWS_AS(synthesize(notu, SynthesisHint::Generic), std::invalid_argument);
}

TEST_CASE("structured counts are far below generic synthesis") {
    const CMatrix u = build_U(32);
    const SynthesisResult structured = synthesize(u, SynthesisHint::QftFamily);
    const SynthesisResult generic = synthesize(u, SynthesisHint::Generic);
    CHECK_FALSE(structured.fallback);
    const GateCensus a = gate_census(structured.circuit);
    const GateCensus b = gate_census(generic.circuit);
    CHECK(a.total < b.total);
    // Structured synthesis stays O(n^2) in the qubit count.
    CHECK(a.total <= 15 * 5 * 5);
}
