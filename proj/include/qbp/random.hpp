#pragma once

#include <cmath>
#include <random>

#include "qbp/linalg.hpp"

namespace qbp {

// Seeded generator for every randomized experiment. Distributions are
// hand-rolled on top of mt19937_64 so identical seeds give identical
// streams on every platform.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}

    uint64_t u64() { return eng(); }

    // uniform in [0, 1)
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return n == 0 ? 0 : eng() % n; }

    double gaussian() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }
};

inline StateVector random_state(Rng& rng, size_t dim) {
    StateVector v;
    v.amps.resize(dim);
    for (auto& a : v.amps) a = cplx(rng.gaussian(), rng.gaussian());
    double n = std::sqrt(v.norm2());
    for (auto& a : v.amps) a /= n;
    return v;
}

// Haar-ish unitary by Gram-Schmidt on a random complex matrix.
inline UnitaryOp random_unitary(Rng& rng, size_t dim) {
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (auto& c : cols)
        for (auto& x : c) x = cplx(rng.gaussian(), rng.gaussian());
    for (size_t j = 0; j < dim; ++j) {
        for (size_t k = 0; k < j; ++k) {
            cplx dot(0.0, 0.0);
            for (size_t i = 0; i < dim; ++i) dot += std::conj(cols[k][i]) * cols[j][i];
            for (size_t i = 0; i < dim; ++i) cols[j][i] -= dot * cols[k][i];
        }
        double n = 0.0;
        for (size_t i = 0; i < dim; ++i) n += std::norm(cols[j][i]);
        n = std::sqrt(n);
        for (size_t i = 0; i < dim; ++i) cols[j][i] /= n;
    }
    std::vector<cplx> dense(dim * dim);
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) dense[i * dim + j] = cols[j][i];
    return UnitaryOp::from_dense(dim, std::move(dense));
}

inline std::vector<uint32_t> random_permutation(Rng& rng, size_t n) {
    std::vector<uint32_t> p(n);
    for (size_t i = 0; i < n; ++i) p[i] = static_cast<uint32_t>(i);
    rng.shuffle(p);
    return p;
}

}  // namespace qbp
