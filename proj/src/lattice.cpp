#include "anderson/lattice.hpp"

#include <stdexcept>
#include <string>

namespace anderson {

LatticeCube::LatticeCube(int d, int L, long long max_sites) : d_(d), L_(L) {
    if (d < 1) throw std::invalid_argument("LatticeCube: dimension must be >= 1");
    if (L < 1)
        throw std::invalid_argument(
            "LatticeCube: L must be >= 1 (L = 0 makes the periodic wrap degenerate)");
    long long n = 1;
    const long long side = 2LL * L + 1;
    for (int i = 0; i < d; ++i) {
        if (n > max_sites / side)
            throw std::invalid_argument("LatticeCube: (2L+1)^d exceeds max_sites = " +
                                        std::to_string(max_sites));
        n *= side;
    }
    n_sites_ = n;
}

long long LatticeCube::flat_index(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) != d_)
        throw std::invalid_argument("LatticeCube::flat_index: wrong coordinate count");
    long long flat = 0;
    for (int i = 0; i < d_; ++i) {
        const int c = coords[i];
        if (c < -L_ || c > L_)
            throw std::invalid_argument("LatticeCube::flat_index: coordinate out of range");
        flat = flat * side() + (c + L_);
    }
    return flat;
}

void LatticeCube::coords_of(long long flat, std::span<int> out) const {
    if (flat < 0 || flat >= n_sites_)
        throw std::invalid_argument("LatticeCube::coords_of: flat index out of range");
    for (int i = d_ - 1; i >= 0; --i) {
        out[i] = static_cast<int>(flat % side()) - L_;
        flat /= side();
    }
}

std::vector<int> LatticeCube::coords_of(long long flat) const {
    std::vector<int> out(d_);
    coords_of(flat, out);
    return out;
}

void LatticeCube::neighbors(long long flat, std::vector<long long>& out) const {
    out.clear();
    out.reserve(2 * d_);
    const int s = side();
    // stride of axis i in the row-major enumeration
    long long stride = 1;
    std::vector<long long> strides(d_);
    for (int i = d_ - 1; i >= 0; --i) {
        strides[i] = stride;
        stride *= s;
    }
    for (int i = 0; i < d_; ++i) {
        const long long pos = (flat / strides[i]) % s;  // coordinate i shifted to 0..s-1
        const long long base = flat - pos * strides[i];
        const long long up = (pos + 1) % s;
        const long long dn = (pos + s - 1) % s;
        out.push_back(base + up * strides[i]);
        out.push_back(base + dn * strides[i]);
    }
}

}  // namespace anderson
