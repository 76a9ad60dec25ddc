#pragma once
#include <vector>

namespace bsl {

// Chebyshev-Lobatto points on [0, 1], ascending, endpoints included
std::vector<double> lobatto_points(int n);
// barycentric weights for lobatto_points(n)
std::vector<double> barycentric_weights(int n);
// Clenshaw-Curtis weights on [0, 1] for lobatto_points(n); integrate polynomials of degree < n exactly
std::vector<double> clenshaw_curtis_weights(int n);

// all n Lagrange basis values at u (in units of the unit interval)
void lagrange_row(const std::vector<double>& x, const std::vector<double>& w, double u, double* out);

} // namespace bsl
