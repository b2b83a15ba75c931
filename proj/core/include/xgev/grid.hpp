#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace xgev {

using cplx = std::complex<double>;

// Multi-index over at most two axes; unused axes stay zero.
using MultiIndex = std::array<int, 2>;

inline int mi_order(const MultiIndex& a) { return a[0] + a[1]; }

// Uniform grid over an axis-aligned box, dimension 1 or 2. Row-major storage
// (axis 0 slowest). Sample i covers coordinate lo + i*spacing; the grid is
// treated as periodic for spectral work, so hi is the wrap-around point.
struct GridSpec {
    int dim = 1;
    std::array<int, 2> n = {0, 1};
    std::array<double, 2> lo = {0.0, 0.0};
    std::array<double, 2> hi = {0.0, 0.0};

    void validate() const;
    double length(int axis) const { return hi[axis] - lo[axis]; }
    double spacing(int axis) const { return length(axis) / n[axis]; }
    std::size_t total() const {
        return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(dim == 2 ? n[1] : 1);
    }
    double coord(int axis, int i) const { return lo[axis] + spacing(axis) * i; }
    // Dual-grid frequency for FFT bin k (signed convention, |xi| <= Nyquist).
    double freq(int axis, int k) const;
    double nyquist(int axis) const;

    static GridSpec line(int n, double lo, double hi);
    static GridSpec square(int n, double lo, double hi);
};

bool operator==(const GridSpec& a, const GridSpec& b);

struct SampledField {
    GridSpec grid;
    std::vector<cplx> values;

    SampledField() = default;
    explicit SampledField(const GridSpec& g) : grid(g), values(g.total()) {}

    cplx& at(int i, int j = 0) {
        return values[static_cast<std::size_t>(i) * (grid.dim == 2 ? grid.n[1] : 1) + j];
    }
    const cplx& at(int i, int j = 0) const {
        return values[static_cast<std::size_t>(i) * (grid.dim == 2 ? grid.n[1] : 1) + j];
    }
    double sup_abs() const;
    // Trapezoid == rectangle rule on a periodic grid.
    cplx integral() const;
};

SampledField operator*(const SampledField& a, const SampledField& b);  // pointwise
SampledField& axpy(SampledField& y, cplx a, const SampledField& x);    // y += a*x

}  // namespace xgev
