#pragma once
#include "bsl/transfer.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bsl {

// Point-mass form of a boundary distribution: masses nu_j at angles eta_j.
// arc[j] is the Markov arc the node came from (-1 for synthetic data).
struct BoundaryDistribution {
    std::vector<double> eta;
    std::vector<cplx> nu;
    std::vector<int> arc;
    cplx s;
    cplx c{1.0, 0.0};   // fitted normalization, see round_trip

    static BoundaryDistribution from_nodes(const Collocation& C, const CVector& nu, cplx s);
    static BoundaryDistribution single(double eta, cplx s, cplx mass = 1.0);
    static BoundaryDistribution from_masses(const std::vector<double>& eta, const std::vector<cplx>& nu, cplx s);

    cplx total() const;                 // <D, 1> = f(0)
    // right-continuous partial sums over (0, theta], extended by D(theta + 2pi) = D(theta) + f(0)
    cplx cumulative(double theta) const;
    // <D, psi 1_I> for I = (alpha, beta], beta - alpha in (0, 2pi]; exact for the step cumulative
    cplx stieltjes(const std::function<cplx(double)>& psi, double alpha, double beta) const;
    // same pairing over the closed Markov arcs listed (nodes counted by their arc)
    cplx pair_arcs(const std::function<cplx(double)>& psi, const std::vector<int>& arcs) const;

private:
    std::vector<size_t> order_;   // nodes by angle
    std::vector<cplx> partial_;   // partial_[i] = sum of the first i nodes by angle
    void index();
};

// f(z) = sum_j P(z, eta_j)^s nu_j
class EigenfunctionField {
public:
    explicit EigenfunctionField(const BoundaryDistribution& d);
    const BoundaryDistribution& distribution() const { return d_; }
    cplx f(cplx z) const;
    // d/dr in the hyperbolic polar radius
    cplx df_dr(cplx z) const;
    // both at z = tanh(r/2) e^{i theta}, stable for large r
    void polar(double r, double theta, cplx& f, cplx& df) const;

private:
    BoundaryDistribution d_;
    std::vector<double> nre_, nim_, sh_, ch_;   // sin/cos of eta/2
};

struct LaplaceReport {
    double max_residual = 0;
    double h = 0;
    bool ok = true;
    std::string text() const;
};
// 1/4 (1-|z|^2)^2 Lap_h f + s(1-s) f relative to |f|; h per sample min(h, (1-|z|)/10)
LaplaceReport verify_laplace_eigen(const EigenfunctionField& ef, const std::vector<cplx>& zs, double h = 1e-3,
                                   double tol = 1e-3);

// max |f(g z) - f(z)| / max |f(z)| over pairs with g z within hyperbolic distance max_radius of the origin
double automorphy_metric(const EigenfunctionField& ef, const std::vector<Mobius>& gens, const std::vector<cplx>& zs,
                         double max_radius = 1e300);

// integral over [0, alpha] of e^{-sr} (df/dr + s f)(tanh(r/2) e^{i theta}) sinh r dtheta
cplx otal_transform(const EigenfunctionField& ef, double r, double alpha, double rel_tol = 1e-8);
cplx otal_increment(const EigenfunctionField& ef, double r, double a, double b, double rel_tol = 1e-8);

struct EquivariancePair {
    cplx lhs, rhs;
    double deviation() const { return std::abs(lhs - rhs) / std::abs(rhs); }
};
// lhs = <D, (psi o g^-1) |(g^-1)'|^s 1_{g I}>, rhs = <D, psi 1_I>, I the closed Markov arc.
// g is the identity or the arc's own generator, so g I is a union of Markov arcs.
EquivariancePair equivariance(const BoundaryDistribution& d, const BowenSeriesMap& T, const Mobius& g, int arc,
                              const std::function<cplx(double)>& psi);

struct RoundTripRow {
    double a = 0, b = 0;
    cplx otal;
    cplx mass;
};
struct RoundTripReport {
    std::vector<double> radii;
    std::vector<cplx> c;                 // fitted per radius
    std::vector<double> shape_error;     // per radius
    std::vector<std::vector<RoundTripRow>> rows;
    std::string text() const;
};
// arcs given by their boundary angles (ccw, cyclic). Throws DegenerateTransfer if all masses vanish.
RoundTripReport round_trip(const EigenfunctionField& ef, const std::vector<double>& boundaries,
                           const std::vector<double>& radii, double rel_tol = 1e-8);
// 16 arcs whose ends are midpoints of every third Markov arc
std::vector<double> roundtrip_boundaries(const Partition& P, int arcs = 16);

// max over dyadic scales >= min_scale of |D(t+d) - D(t)| / d^{1/2}
double holder_half_constant(const BoundaryDistribution& d, double min_scale);

} // namespace bsl
