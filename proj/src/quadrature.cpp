#include "ccbuckle/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "ccbuckle/errors.hpp"

namespace ccb::quad {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; every
// second abscissa starting at index 1 is a 7-point Gauss node.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double sum = f(centre - dx) + f(centre + dx);
        kronrod += kKronrod[i] * sum;
        if (i % 2 == 1) {
            gauss += kGauss[i / 2] * sum;
        }
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_intervals) {
    if (a == b) {
        return {0.0, 0.0, 0};
    }
    std::priority_queue<Segment> work;
    work.push(gk15(f, a, b));
    double value = work.top().value;
    double error = work.top().error;
    int evaluations = 15;

    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (static_cast<int>(work.size()) >= max_intervals) {
            throw QuadratureFailure("quad::integrate: tolerance not reached within interval budget");
        }
        const Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }

    // Re-sum to shed the drift of the incremental updates.
    value = 0.0;
    error = 0.0;
    while (!work.empty()) {
        value += work.top().value;
        error += work.top().error;
        work.pop();
    }
    return {value, error, evaluations};
}

}  // namespace ccb::quad
