#pragma once

#include <cstdint>
#include <vector>

#include "faslab/errors.hpp"

namespace faslab {

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in exact matrix arithmetic; arbitrary-precision fallback required");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in exact matrix arithmetic; arbitrary-precision fallback required");
    return r;
}
}  // namespace detail

/// Dense square integer matrix with overflow-checked arithmetic.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int size() const { return n_; }
    std::int64_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    std::int64_t at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    IntMatrix multiply(const IntMatrix& other) const {
        if (n_ != other.n_) throw InputError("matrix size mismatch");
        IntMatrix r(n_);
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < n_; ++k) {
                const std::int64_t aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < n_; ++j) {
                    const std::int64_t bkj = other.at(k, j);
                    if (bkj == 0) continue;
                    r.at(i, j) = detail::checked_add(r.at(i, j), detail::checked_mul(aik, bkj));
                }
            }
        }
        return r;
    }

    std::int64_t trace() const {
        std::int64_t t = 0;
        for (int i = 0; i < n_; ++i) t = detail::checked_add(t, at(i, i));
        return t;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

private:
    int n_ = 0;
    std::vector<std::int64_t> a_;
};

inline IntMatrix matrix_power(IntMatrix base, int k) {
    if (k < 0) throw InputError("negative matrix power");
    IntMatrix result = IntMatrix::identity(base.size());
    while (k > 0) {
        if (k & 1) result = result.multiply(base);
        k >>= 1;
        if (k > 0) base = base.multiply(base);
    }
    return result;
}

/// Exact integer trace of the k-th power, k >= 1. Throws OverflowError rather
/// than wrapping silently.
inline std::int64_t trace_power(const IntMatrix& m, int k) {
    if (k < 1) throw InputError("trace_power requires k >= 1");
    return matrix_power(m, k).trace();
}

}  // namespace faslab
