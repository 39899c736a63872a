#include "rootcalc/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rootcalc::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

static GradedPoly coefficient_at(const std::vector<GradedPoly>& a, int la, const std::vector<GradedPoly>& b,
                                 int lb, int n) {
    GradedPoly acc;
    int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    // i indexes a, n - la - i indexes b
    int lo = std::max(0, n - la - lb - (nb - 1));
    int hi = std::min(na - 1, n - la - lb);
    for (int i = lo; i <= hi; ++i) {
        const GradedPoly& x = a[i];
        const GradedPoly& y = b[n - la - lb - i];
        if (x.is_zero() || y.is_zero())
            continue;
        acc += x * y;
    }
    return acc;
}

std::vector<GradedPoly> convolve_serial(const std::vector<GradedPoly>& a, int la, const std::vector<GradedPoly>& b,
                                        int lb, int D) {
    int n0 = la + lb;
    std::vector<GradedPoly> out(static_cast<std::size_t>(std::max(0, D - n0)));
    for (int n = n0; n < D; ++n)
        out[n - n0] = coefficient_at(a, la, b, lb, n);
    return out;
}

std::vector<GradedPoly> convolve_parallel(const std::vector<GradedPoly>& a, int la,
                                          const std::vector<GradedPoly>& b, int lb, int D) {
    int n0 = la + lb;
    int count = std::max(0, D - n0);
    std::vector<GradedPoly> out(static_cast<std::size_t>(count));
    // high exponents carry the most work, hand them out first
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = count - 1; k >= 0; --k)
        out[k] = coefficient_at(a, la, b, lb, n0 + k);
    return out;
}

GradedPoly poly_mul_parallel(const GradedPoly& a, const GradedPoly& b) {
    std::vector<std::pair<Monomial, Rational>> left(a.terms().begin(), a.terms().end());
    int n = static_cast<int>(left.size());
    std::vector<GradedPoly> partial(static_cast<std::size_t>(std::max(1, max_threads())));
#pragma omp parallel
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        GradedPoly local;
#pragma omp for schedule(static)
        for (int i = 0; i < n; ++i)
            local += GradedPoly(left[i].first, left[i].second) * b;
        partial[tid] = std::move(local);
    }
    GradedPoly r;
    for (auto& x : partial)
        r += x;
    return r;
}

}  // namespace rootcalc::kernels
