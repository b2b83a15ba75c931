#include "xgev/grid.hpp"

#include <cmath>

namespace xgev {

void GridSpec::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
    for (int a = 0; a < dim; ++a) {
        if (n[a] < 2) throw std::invalid_argument("need >= 2 samples per axis");
        if (!(hi[a] > lo[a])) throw std::invalid_argument("box must have positive volume");
    }
}

double GridSpec::freq(int axis, int k) const {
    int na = n[axis];
    int ks = (k <= na / 2) ? k : k - na;
    return 2.0 * M_PI * ks / length(axis);
}

double GridSpec::nyquist(int axis) const { return M_PI / spacing(axis); }

GridSpec GridSpec::line(int n, double lo, double hi) {
    GridSpec g;
    g.dim = 1;
    g.n = {n, 1};
    g.lo = {lo, 0.0};
    g.hi = {hi, 0.0};
    g.validate();
    return g;
}

GridSpec GridSpec::square(int n, double lo, double hi) {
    GridSpec g;
    g.dim = 2;
    g.n = {n, n};
    g.lo = {lo, lo};
    g.hi = {hi, hi};
    g.validate();
    return g;
}

bool operator==(const GridSpec& a, const GridSpec& b) {
    if (a.dim != b.dim) return false;
    for (int ax = 0; ax < a.dim; ++ax)
        if (a.n[ax] != b.n[ax] || a.lo[ax] != b.lo[ax] || a.hi[ax] != b.hi[ax])
            return false;
    return true;
}

double SampledField::sup_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

cplx SampledField::integral() const {
    cplx s = 0.0;
    for (const auto& v : values) s += v;
    double cell = grid.spacing(0) * (grid.dim == 2 ? grid.spacing(1) : 1.0);
    return s * cell;
}

SampledField operator*(const SampledField& a, const SampledField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
    SampledField out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a.values[i] * b.values[i];
    return out;
}

SampledField& axpy(SampledField& y, cplx a, const SampledField& x) {
    if (!(y.grid == x.grid)) throw std::invalid_argument("grid mismatch");
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
    return y;
}

}  // namespace xgev
