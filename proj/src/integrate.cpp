#include "wigf/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace wigf {
namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]. Column order: abscissa,
// Gauss-7 weight (0 for Kronrod-only nodes), Kronrod-15 weight.
constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& other) const { return err < other.err; }
};

template <class F>
Panel eval_panel(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double y0 = f(mid);
    if (std::isnan(y0)) throw numeric_error("integrand returned NaN");
    double g7 = kGK[0][1] * y0;
    double k15 = kGK[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK[i][0];
        const double yl = f(mid - dx);
        const double yr = f(mid + dx);
        if (std::isnan(yl) || std::isnan(yr)) throw numeric_error("integrand returned NaN");
        const double s = yl + yr;
        g7 += kGK[i][1] * s;
        k15 += kGK[i][2] * s;
    }
    g7 *= half;
    k15 *= half;

    const double err = std::abs(k15 - g7);
    return Panel{a, b, k15, err};
}

QuadResult adaptive(const std::function<double(double)>& f, double a, double b,
                    double rel_tol, double abs_tol, int max_subdiv) {
    std::priority_queue<Panel> heap;
    Panel first = eval_panel(f, a, b);
    double total = first.value;
    double total_err = first.err;
    heap.push(first);
    int subdivisions = 1;

    auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };

    while (total_err > tolerance()) {
        if (subdivisions >= max_subdiv)
            throw divergence_error("quadrature failed to converge after max subdivisions");
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw divergence_error("quadrature interval collapsed below machine precision");
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }
    if (!std::isfinite(total))
        throw divergence_error("quadrature produced a non-finite value");
    return QuadResult{total, total_err, subdivisions};
}

} // namespace

QuadResult integrate(const QuadSpec& q) {
    if (!(q.lo < q.hi)) throw domain_error("integrate: requires lo < hi");
    if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0))
        throw domain_error("integrate: tolerances must be positive");

    if (std::isinf(q.hi)) {
        const double lo = q.lo;
        const auto& f = q.integrand;
        auto mapped = [lo, &f](double u) {
            // deep subdivision can round a node onto u = 1; a convergent
            // integrand vanishes there
            if (!(u < 1.0)) return 0.0;
            const double w = 1.0 / (1.0 - u);
            const double x = lo + u * w;
            if (!std::isfinite(x)) return 0.0;
            const double y = f(x);
            if (y == 0.0) return 0.0;
            return y * w * w;
        };
        return adaptive(mapped, 0.0, 1.0, q.rel_tol, q.abs_tol, q.max_subdiv);
    }
    return adaptive(q.integrand, q.lo, q.hi, q.rel_tol, q.abs_tol, q.max_subdiv);
}

QuadResult integrate_tail(const QuadSpec& q, double t) {
    if (t < q.lo) throw domain_error("integrate_tail: t below lower limit");
    QuadSpec tail = q;
    tail.lo = t;
    return integrate(tail);
}

} // namespace wigf
