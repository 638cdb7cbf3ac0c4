#ifndef BLF_TESTS_ORACLES_HPP
#define BLF_TESTS_ORACLES_HPP

// Slow reference implementations used to cross-check the fast library code.

#include <numeric>
#include <random>
#include <vector>

#include "blf/linalg.hpp"

namespace oracles {

inline std::int64_t det_laplace(const blf::MatZ& a) {
    using blf::Index;
    const Index n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    std::int64_t det = 0;
    for (Index j = 0; j < n; ++j) {
        if (a(0, j) == 0) continue;
        blf::MatZ sub(n - 1, n - 1);
        for (Index i = 1; i < n; ++i) {
            Index cc = 0;
            for (Index c = 0; c < n; ++c) {
                if (c == j) continue;
                sub(i - 1, cc++) = a(i, c);
            }
        }
        const std::int64_t term = a(0, j) * det_laplace(sub);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

inline bool next_subset(std::vector<blf::Index>& idx, blf::Index limit) {
    using blf::Index;
    const Index k = static_cast<Index>(idx.size());
    for (Index i = k - 1; i >= 0; --i) {
        if (idx[i] < limit - (k - i)) {
            ++idx[i];
            for (Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Invariant factors by determinantal divisors: d_k = gcd(k-minors)/gcd((k-1)-minors).
inline std::vector<std::int64_t> invariant_factors(const blf::MatZ& a) {
    using blf::Index;
    const Index m = a.rows(), n = a.cols();
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (Index k = 1; k <= std::min(m, n); ++k) {
        std::int64_t g = 0;
        std::vector<Index> rows(k), cols(k);
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::iota(cols.begin(), cols.end(), 0);
            do {
                blf::MatZ minor(k, k);
                for (Index i = 0; i < k; ++i)
                    for (Index j = 0; j < k; ++j) minor(i, j) = a(rows[i], cols[j]);
                g = std::gcd(g, det_laplace(minor));
            } while (next_subset(cols, n));
        } while (next_subset(rows, m));
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

inline blf::MatZ random_matrix(std::mt19937& rng, blf::Index max_dim, std::int64_t max_abs) {
    using blf::Index;
    std::uniform_int_distribution<Index> dim(1, max_dim);
    std::uniform_int_distribution<std::int64_t> entry(-max_abs, max_abs);
    blf::MatZ a(dim(rng), dim(rng));
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    return a;
}

}  // namespace oracles

#endif
