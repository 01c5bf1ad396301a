#include <doctest.h>

#include <cmath>

#include "anderson/eigensolve.hpp"
#include "anderson/rng.hpp"

using namespace anderson;

namespace {

std::vector<double> random_symmetric(int n, std::uint64_t seed, double scale = 1.0) {
    rng::Xoshiro256ss gen(seed);
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = scale * (2.0 * gen.uniform01() - 1.0);
            a[static_cast<std::size_t>(i) * n + j] = v;
            a[static_cast<std::size_t>(j) * n + i] = v;
        }
    return a;
}

std::vector<double> random_tridiagonal(int n, std::uint64_t seed, std::vector<double>& diag,
                                       std::vector<double>& off) {
    rng::Xoshiro256ss gen(seed);
    diag.resize(n);
    off.resize(n - 1);
    for (auto& v : diag) v = 4.0 * gen.uniform01() - 2.0;
    for (auto& v : off) v = 2.0 * gen.uniform01() - 1.0;
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = diag[i];
    for (int i = 0; i + 1 < n; ++i) {
        a[static_cast<std::size_t>(i) * n + i + 1] = off[i];
        a[static_cast<std::size_t>(i + 1) * n + i] = off[i];
    }
    return a;
}

}  // namespace

TEST_CASE("diagonal matrix: sorted eigenvalues, permutation eigenvectors") {
    std::vector<double> a = {3, 0, 0, 0, 1, 0, 0, 0, 2};
    const auto s = eig_all_dense(std::move(a), 3);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
    // eigenvector of eigenvalue 1 is e_1, of 2 is e_2, of 3 is e_0
    CHECK(std::fabs(s.eigenvector(0)[1]) == doctest::Approx(1.0));
    CHECK(std::fabs(s.eigenvector(1)[2]) == doctest::Approx(1.0));
    CHECK(std::fabs(s.eigenvector(2)[0]) == doctest::Approx(1.0));
}

TEST_CASE("Dirichlet chain oracle at selected sizes") {
    for (int n : {1, 2, 3, 10, 50, 200}) {
        const auto got = eig_all_dense(dirichlet_matrix(n), n);
        const auto want = dirichlet_spectrum(n);
        for (int j = 0; j < n; ++j) {
            CHECK(std::fabs(got.eigenvalues[j] - want.eigenvalues[j]) < 1e-10);
            double dev_p = 0.0, dev_m = 0.0;
            for (int i = 0; i < n; ++i) {
                dev_p = std::max(dev_p, std::fabs(got.eigenvector(j)[i] - want.eigenvector(j)[i]));
                dev_m = std::max(dev_m, std::fabs(got.eigenvector(j)[i] + want.eigenvector(j)[i]));
            }
            CHECK(std::min(dev_p, dev_m) < 1e-8);
        }
    }
}

TEST_CASE("validation invariants on random dense matrices") {
    // eig_all_dense validates residual and orthonormality internally; a
    // violation would throw
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const auto s = eig_all_dense(random_symmetric(40, seed), 40);
        CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
    }
}

TEST_CASE("eigenvalues_only agrees with the full decomposition bit for bit") {
    const int n = 60;
    auto a = random_symmetric(n, 99);
    const auto full = eig_all_dense(a, n);
    const auto vals = eigenvalues_only_dense(std::move(a), n);
    for (int i = 0; i < n; ++i) CHECK(vals[i] == full.eigenvalues[i]);
}

TEST_CASE("trace conservation") {
    const int n = 80;
    auto a = random_symmetric(n, 7, 2.0);
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += a[static_cast<std::size_t>(i) * n + i];
    const auto vals = eigenvalues_only_dense(std::move(a), n);
    double sum = 0.0;
    for (double v : vals) sum += v;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-11));
}

TEST_CASE("dense limit enforced") {
    EigensolveOptions opts;
    opts.dense_limit = 10;
    CHECK_THROWS_AS(eig_all_dense(random_symmetric(11, 1), 11, opts), std::invalid_argument);
}

TEST_CASE("sturm counts: Dirichlet closed form") {
    const std::vector<double> diag(3, 0.0), off(2, 1.0);
    CHECK(sturm_count(diag, off, 0.0) == 1);
    CHECK(sturm_count(diag, off, 3.0) == 3);
    CHECK(sturm_count(diag, off, -3.0) == 0);
    CHECK(sturm_count(diag, off, 1.0) == 2);
}

TEST_CASE("sturm interval counts agree exactly with the dense solver") {
    // spec-sized property: 100 random tridiagonal instances, n <= 500
    rng::Xoshiro256ss pick(1234);
    for (int inst = 0; inst < 100; ++inst) {
        const int n = 3 + static_cast<int>(pick.next() % 498);
        std::vector<double> diag, off;
        auto a = random_tridiagonal(n, 1000 + inst, diag, off);
        const auto vals = eigenvalues_only_dense(std::move(a), n);
        for (int t = 0; t < 4; ++t) {
            double x1 = -4.0 + 8.0 * pick.uniform01();
            double x2 = -4.0 + 8.0 * pick.uniform01();
            if (x1 > x2) std::swap(x1, x2);
            const int sturm = sturm_count(diag, off, x2) - sturm_count(diag, off, x1);
            int dense = 0;
            for (double v : vals)
                if (v >= x1 && v < x2) ++dense;
            CHECK(sturm == dense);
        }
    }
}

TEST_CASE("sturm rejects mismatched offdiagonal length") {
    const std::vector<double> diag(3, 0.0), off(3, 1.0);
    CHECK_THROWS_AS(sturm_count(diag, off, 0.0), std::invalid_argument);
}

TEST_CASE("dirichlet closed forms") {
    const auto s2 = dirichlet_spectrum(2);
    CHECK(s2.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s2.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
    const auto s3 = dirichlet_spectrum(3);
    CHECK(s3.eigenvalues[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s3.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s3.eigenvalues[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto s1 = dirichlet_spectrum(1);
    CHECK(s1.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-15));
    // eigenvectors unit-normalized
    for (int j = 0; j < 3; ++j) {
        double norm = 0.0;
        for (double v : s3.eigenvector(j)) norm += v * v;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("dirichlet min gap") {
    CHECK(dirichlet_min_gap(2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dirichlet_min_gap(3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // adjacent-gap formula equals the exhaustive pairwise minimum
    const int n = 100;
    const auto s = dirichlet_spectrum(n);
    double brute = INFINITY;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            brute = std::min(brute, std::fabs(s.eigenvalues[i] - s.eigenvalues[j]));
    CHECK(dirichlet_min_gap(n) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(n * n * dirichlet_min_gap(n) > 0.5);
}

TEST_CASE("gap_to_rest") {
    std::vector<double> a = {0, 0, 0, 0, 1.0, 0, 0, 0, 5.0};
    const auto s = eig_all_dense(std::move(a), 3);
    CHECK(s.gap_to_rest(0) == doctest::Approx(1.0));
    CHECK(s.gap_to_rest(1) == doctest::Approx(1.0));
    CHECK(s.gap_to_rest(2) == doctest::Approx(4.0));
}
