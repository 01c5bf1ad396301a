#include <doctest.h>

#include <algorithm>
#include <set>

#include "anderson/lattice.hpp"

using anderson::LatticeCube;

TEST_CASE("cube sizes") {
    CHECK(LatticeCube(1, 1).n_sites() == 3);
    CHECK(LatticeCube(2, 2).n_sites() == 25);
    CHECK(LatticeCube(3, 2).n_sites() == 125);
    CHECK_THROWS_AS(LatticeCube(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(LatticeCube(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeCube(3, 50), std::invalid_argument);  // 101^3 > 1e6
    CHECK_NOTHROW(LatticeCube(3, 4, 1000));
    CHECK_THROWS_AS(LatticeCube(3, 5, 1000), std::invalid_argument);
}

TEST_CASE("enumeration is a bijection") {
    for (int d = 1; d <= 3; ++d) {
        LatticeCube cube(d, 2);
        std::vector<int> coords(d);
        std::set<long long> seen;
        for (long long i = 0; i < cube.n_sites(); ++i) {
            cube.coords_of(i, coords);
            for (int c : coords) {
                CHECK(c >= -2);
                CHECK(c <= 2);
            }
            CHECK(cube.flat_index(coords) == i);
            seen.insert(i);
        }
        CHECK(static_cast<long long>(seen.size()) == cube.n_sites());
    }
}

TEST_CASE("row-major order, last coordinate fastest") {
    LatticeCube cube(2, 1);
    const int first[] = {-1, -1};
    const int second[] = {-1, 0};
    const int last[] = {1, 1};
    CHECK(cube.flat_index(first) == 0);
    CHECK(cube.flat_index(second) == 1);
    CHECK(cube.flat_index(last) == 8);
}

TEST_CASE("periodic neighbors") {
    for (int d = 1; d <= 3; ++d) {
        LatticeCube cube(d, 2);
        std::vector<long long> nb, nb2;
        for (long long i = 0; i < cube.n_sites(); ++i) {
            cube.neighbors(i, nb);
            CHECK(static_cast<int>(nb.size()) == 2 * d);
            std::set<long long> uniq(nb.begin(), nb.end());
            CHECK(static_cast<int>(uniq.size()) == 2 * d);  // all distinct for side >= 3
            for (long long j : nb) {
                cube.neighbors(j, nb2);
                CHECK(std::count(nb2.begin(), nb2.end(), i) == 1);
            }
        }
    }
}

TEST_CASE("wrap crosses the boundary") {
    LatticeCube cube(1, 2);  // sites -2..2
    std::vector<long long> nb;
    const int edge[] = {2};
    cube.neighbors(cube.flat_index(edge), nb);
    const int other_edge[] = {-2};
    const int inner[] = {1};
    CHECK(std::count(nb.begin(), nb.end(), cube.flat_index(other_edge)) == 1);
    CHECK(std::count(nb.begin(), nb.end(), cube.flat_index(inner)) == 1);
}
