#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qbp/bits.hpp"

namespace qbp {

using cplx = std::complex<double>;

// Absolute tolerance for all unitarity / normalization checks.
constexpr double kTol = 1e-9;

// ---------------------------------------------------------------------------
// State vectors
// ---------------------------------------------------------------------------

// Possibly sub-normalized complex state; norm can drop below 1 after a
// projective measurement keeps only the continue-branch.
struct StateVector {
    std::vector<cplx> amps;

    size_t dim() const { return amps.size(); }

    double norm2() const {
        double s = 0.0;
        for (const cplx& a : amps) s += std::norm(a);
        return s;
    }

    static StateVector basis(size_t dim, uint64_t idx) {
        if (idx >= dim) throw std::invalid_argument("StateVector::basis: index out of range");
        StateVector v;
        v.amps.assign(dim, cplx(0.0, 0.0));
        v.amps[idx] = cplx(1.0, 0.0);
        return v;
    }
};

// ---------------------------------------------------------------------------
// Small dense matrices
// ---------------------------------------------------------------------------

struct ComplexMatrix {
    size_t rows = 0, cols = 0;
    std::vector<cplx> a;  // row-major

    ComplexMatrix() = default;
    ComplexMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, cplx(0.0, 0.0)) {}

    cplx& at(size_t i, size_t j) { return a[i * cols + j]; }
    const cplx& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static ComplexMatrix identity(size_t n) {
        ComplexMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

struct RealMatrix {
    size_t rows = 0, cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& at(size_t i, size_t j) { return a[i * cols + j]; }
    const double& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static RealMatrix identity(size_t n) {
        RealMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline ComplexMatrix cm_mul(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("cm_mul: shape mismatch");
    ComplexMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            cplx v = x.at(i, k);
            if (v == cplx(0.0, 0.0)) continue;
            for (size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

inline RealMatrix rm_mul(const RealMatrix& x, const RealMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("rm_mul: shape mismatch");
    RealMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            double v = x.at(i, k);
            if (v == 0.0) continue;
            for (size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Unitary operators: dense, or a basis permutation with per-entry phases
// ---------------------------------------------------------------------------

struct UnitaryOp {
    enum class Kind { Perm, Dense };

    Kind kind = Kind::Perm;
    size_t dim_ = 0;
    std::vector<uint32_t> perm;  // |i> -> phase[i] |perm[i]>
    std::vector<cplx> phase;     // empty means all-ones
    std::vector<cplx> dense;     // row-major, column convention |out> = U |in>

    size_t dim() const { return dim_; }
    bool is_perm() const { return kind == Kind::Perm; }

    static UnitaryOp identity(size_t n) {
        UnitaryOp u;
        u.kind = Kind::Perm;
        u.dim_ = n;
        u.perm.resize(n);
        for (size_t i = 0; i < n; ++i) u.perm[i] = static_cast<uint32_t>(i);
        return u;
    }

    static UnitaryOp permutation(std::vector<uint32_t> p, std::vector<cplx> ph = {}) {
        UnitaryOp u;
        u.kind = Kind::Perm;
        u.dim_ = p.size();
        u.perm = std::move(p);
        u.phase = std::move(ph);
        if (!u.phase.empty() && u.phase.size() != u.dim_)
            throw std::invalid_argument("UnitaryOp::permutation: phase size mismatch");
        return u;
    }

    static UnitaryOp from_dense(size_t n, std::vector<cplx> entries) {
        if (entries.size() != n * n) throw std::invalid_argument("UnitaryOp::from_dense: size mismatch");
        UnitaryOp u;
        u.kind = Kind::Dense;
        u.dim_ = n;
        u.dense = std::move(entries);
        return u;
    }

    cplx phase_at(size_t i) const { return phase.empty() ? cplx(1.0, 0.0) : phase[i]; }

    ComplexMatrix to_dense() const {
        ComplexMatrix m(dim_, dim_);
        if (kind == Kind::Dense) {
            m.a = dense;
        } else {
            for (size_t i = 0; i < dim_; ++i) m.at(perm[i], i) = phase_at(i);
        }
        return m;
    }
};

inline bool is_unitary(const UnitaryOp& u, double tol = kTol) {
    if (u.kind == UnitaryOp::Kind::Perm) {
        std::vector<uint8_t> seen(u.dim(), 0);
        for (size_t i = 0; i < u.dim(); ++i) {
            if (u.perm[i] >= u.dim() || seen[u.perm[i]]) return false;
            seen[u.perm[i]] = 1;
            if (std::abs(std::abs(u.phase_at(i)) - 1.0) > tol) return false;
        }
        return true;
    }
    // U U+ = I entrywise
    const size_t n = u.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            cplx s(0.0, 0.0);
            for (size_t k = 0; k < n; ++k) s += u.dense[i * n + k] * std::conj(u.dense[j * n + k]);
            if (std::abs(s - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) > tol) return false;
        }
    return true;
}

inline bool is_identity(const UnitaryOp& u, double tol = kTol) {
    if (u.kind == UnitaryOp::Kind::Perm) {
        for (size_t i = 0; i < u.dim(); ++i)
            if (u.perm[i] != i || std::abs(u.phase_at(i) - cplx(1.0, 0.0)) > tol) return false;
        return true;
    }
    const size_t n = u.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (std::abs(u.dense[i * n + j] - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) > tol) return false;
    return true;
}

inline bool is_involution(const UnitaryOp& u, double tol = kTol) {
    if (u.kind == UnitaryOp::Kind::Perm) {
        for (size_t i = 0; i < u.dim(); ++i) {
            if (u.perm[u.perm[i]] != i) return false;
            if (std::abs(u.phase_at(i) * u.phase_at(u.perm[i]) - cplx(1.0, 0.0)) > tol) return false;
        }
        return true;
    }
    const size_t n = u.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            cplx s(0.0, 0.0);
            for (size_t k = 0; k < n; ++k) s += u.dense[i * n + k] * u.dense[k * n + j];
            if (std::abs(s - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) > tol) return false;
        }
    return true;
}

// after . before, staying in the permutation representation when possible
inline UnitaryOp compose(const UnitaryOp& after, const UnitaryOp& before) {
    if (after.dim() != before.dim()) throw std::invalid_argument("compose: dimension mismatch");
    const size_t n = after.dim();
    if (after.is_perm() && before.is_perm()) {
        std::vector<uint32_t> p(n);
        std::vector<cplx> ph;
        bool any_phase = !after.phase.empty() || !before.phase.empty();
        if (any_phase) ph.resize(n);
        for (size_t i = 0; i < n; ++i) {
            p[i] = after.perm[before.perm[i]];
            if (any_phase) ph[i] = before.phase_at(i) * after.phase_at(before.perm[i]);
        }
        return UnitaryOp::permutation(std::move(p), std::move(ph));
    }
    ComplexMatrix m = cm_mul(after.to_dense(), before.to_dense());
    return UnitaryOp::from_dense(n, std::move(m.a));
}

// Permutation path must stay O(dim); dense path is the generic product.
inline StateVector apply(const UnitaryOp& op, const StateVector& v) {
    if (op.dim() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
    StateVector out;
    out.amps.assign(v.dim(), cplx(0.0, 0.0));
    if (op.is_perm()) {
        for (size_t i = 0; i < v.dim(); ++i) out.amps[op.perm[i]] = op.phase_at(i) * v.amps[i];
    } else {
        const size_t n = v.dim();
        for (size_t r = 0; r < n; ++r) {
            cplx s(0.0, 0.0);
            for (size_t c = 0; c < n; ++c) s += op.dense[r * n + c] * v.amps[c];
            out.amps[r] = s;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

struct MeasureResult {
    double pr1 = 0.0;
    StateVector proj0, proj1;  // unrenormalized projections
};

// Qubit i is bit (m-1-i) of the basis index: most-significant-first, so
// index = x_0 x_1 ... x_{m-1} read as a binary string.
inline MeasureResult measure_qubit(const StateVector& v, int qubit) {
    const size_t n = v.dim();
    if (!is_pow2(n)) throw std::invalid_argument("measure_qubit: dimension is not a power of two");
    const int m = ceil_log2(n);
    if (qubit < 0 || qubit >= m) throw std::invalid_argument("measure_qubit: qubit index out of range");
    const int bit = m - 1 - qubit;
    MeasureResult r;
    r.proj0.amps.assign(n, cplx(0.0, 0.0));
    r.proj1.amps.assign(n, cplx(0.0, 0.0));
    for (size_t s = 0; s < n; ++s) {
        if ((s >> bit) & 1) {
            r.pr1 += std::norm(v.amps[s]);
            r.proj1.amps[s] = v.amps[s];
        } else {
            r.proj0.amps[s] = v.amps[s];
        }
    }
    return r;
}

// Projective event on an arbitrary set of basis states (bitmask for dims
// <= 64, explicit set otherwise is not needed here).
struct MaskMeasure {
    double pr1 = 0.0;
    StateVector cont;  // unrenormalized 0-branch
};

inline MaskMeasure measure_mask(const StateVector& v, uint64_t mask) {
    if (v.dim() > 64) throw std::invalid_argument("measure_mask: dim > 64 unsupported");
    MaskMeasure r;
    r.cont.amps.assign(v.dim(), cplx(0.0, 0.0));
    for (size_t s = 0; s < v.dim(); ++s) {
        if ((mask >> s) & 1)
            r.pr1 += std::norm(v.amps[s]);
        else
            r.cont.amps[s] = v.amps[s];
    }
    return r;
}

// ---------------------------------------------------------------------------
// sqr operator, complex -> real embedding, delta-closeness
// ---------------------------------------------------------------------------

// Squared magnitudes on the message coordinates, plain magnitudes on the
// two bookkeeping coordinates at the end.
inline std::vector<double> sqr_map(const std::vector<cplx>& z) {
    if (z.size() < 3 || !is_pow2(z.size() - 2))
        throw std::invalid_argument("sqr_map: length must be 2^l + 2");
    std::vector<double> s(z.size());
    for (size_t i = 0; i + 2 < z.size(); ++i) s[i] = std::norm(z[i]);
    s[z.size() - 2] = std::abs(z[z.size() - 2]);
    s[z.size() - 1] = std::abs(z[z.size() - 1]);
    return s;
}

// a+bi -> ((a, b), (-b, a)) per entry
inline RealMatrix embed_real(const ComplexMatrix& m) {
    RealMatrix r(2 * m.rows, 2 * m.cols);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) {
            const cplx& c = m.at(i, j);
            r.at(2 * i, 2 * j) = c.real();
            r.at(2 * i, 2 * j + 1) = c.imag();
            r.at(2 * i + 1, 2 * j) = -c.imag();
            r.at(2 * i + 1, 2 * j + 1) = c.real();
        }
    return r;
}

inline bool delta_close(double p, double q, double delta) {
    return p >= -1.0 && p <= 1.0 && q >= -1.0 && q <= 1.0 && std::abs(p - q) < delta;
}

inline bool delta_close(const RealMatrix& a, const RealMatrix& b, double delta) {
    if (delta < 0) throw std::invalid_argument("delta_close: negative delta");
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("delta_close: shape mismatch");
    for (size_t i = 0; i < a.a.size(); ++i)
        if (!delta_close(a.a[i], b.a[i], delta)) return false;
    return true;
}

}  // namespace qbp
