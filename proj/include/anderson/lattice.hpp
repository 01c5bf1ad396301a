#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace anderson {

// The index set Lambda_L = [-L, L]^d with periodic neighbor structure and a
// fixed site enumeration: row-major over coordinates (x_1, ..., x_d), each
// ascending, so the last coordinate varies fastest.
class LatticeCube {
public:
    static constexpr long long kDefaultMaxSites = 1'000'000;

    LatticeCube(int d, int L, long long max_sites = kDefaultMaxSites);

    int dim() const { return d_; }
    int half_side() const { return L_; }
    int side() const { return 2 * L_ + 1; }
    long long n_sites() const { return n_sites_; }

    // coords[i] in [-L, L]
    long long flat_index(std::span<const int> coords) const;
    void coords_of(long long flat, std::span<int> out) const;
    std::vector<int> coords_of(long long flat) const;

    // The 2d periodic neighbors of a site, as flat indices. Coordinates wrap
    // mod (2L+1); L = 0 is rejected at construction so neighbors are distinct
    // sites per axis direction.
    void neighbors(long long flat, std::vector<long long>& out) const;

    bool operator==(const LatticeCube& other) const {
        return d_ == other.d_ && L_ == other.L_;
    }

private:
    int d_;
    int L_;
    long long n_sites_;
};

}  // namespace anderson
