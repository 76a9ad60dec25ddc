#include "bsl/chebyshev.hpp"
#include "bsl/hypgeo.hpp"

#include <cmath>

namespace bsl {

std::vector<double> lobatto_points(int n) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = 0.5 * (1.0 - std::cos(kPi * j / (n - 1)));
    x[0] = 0.0;
    x[n - 1] = 1.0;
    return x;
}

std::vector<double> barycentric_weights(int n) {
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = (j % 2 ? -1.0 : 1.0) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
    return w;
}

std::vector<double> clenshaw_curtis_weights(int n) {
    // Waldvogel's closed form on [-1,1], halved for [0,1]; points ordered by theta_j = pi j/(n-1)
    int m = n - 1;
    std::vector<double> w(n, 0.0);
    for (int j = 0; j <= m; ++j) {
        double th = kPi * j / m;
        double s = 0.0;
        for (int k = 1; k <= m / 2; ++k) {
            double b = (2 * k == m) ? 1.0 : 2.0;
            s += b / (4.0 * k * k - 1.0) * std::cos(2.0 * k * th);
        }
        double c = (j == 0 || j == m) ? 1.0 : 2.0;
        w[j] = 0.5 * c / m * (1.0 - s);
    }
    return w;
}

void lagrange_row(const std::vector<double>& x, const std::vector<double>& w, double u, double* out) {
    int n = static_cast<int>(x.size());
    for (int j = 0; j < n; ++j)
        if (std::abs(u - x[j]) < 1e-15) {
            for (int k = 0; k < n; ++k) out[k] = k == j ? 1.0 : 0.0;
            return;
        }
    double den = 0.0;
    for (int j = 0; j < n; ++j) {
        out[j] = w[j] / (u - x[j]);
        den += out[j];
    }
    for (int j = 0; j < n; ++j) out[j] /= den;
}

} // namespace bsl
