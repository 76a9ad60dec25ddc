#pragma once
#include "bsl/hypgeo.hpp"

#include <string>
#include <vector>

namespace bsl {

// Sides j = 0..n-1 run from vertex j to vertex j+1 (counterclockwise).
// gens[j] maps side j onto the opposite side pair(j); gens[pair(j)] is its inverse.
struct FuchsianGroup {
    int genus = 2;
    std::vector<cplx> vertices;
    std::vector<Mobius> gens;

    int sides() const { return static_cast<int>(vertices.size()); }
    int pair(int j) const { return (j + sides() / 2) % sides(); }
    // signed labels: j < n/2 -> j+1, else -(j-n/2+1)
    int label(int j) const { return j < sides() / 2 ? j + 1 : -(j - sides() / 2 + 1); }
    int index_of_label(int lab) const { return lab > 0 ? lab - 1 : -lab - 1 + sides() / 2; }
    // endpoints of the complete geodesic through side j; s_L lies beyond vertex j
    double side_left_endpoint(int j) const;
    double side_right_endpoint(int j) const;
    bool contains(cplx z, double margin = 0.0) const;   // closed polygon, Dirichlet form
};

struct OctagonConstants {
    double circumradius;   // hyperbolic
    double apothem;        // hyperbolic
    double euclid_vertex;  // tanh(R/2)
};
OctagonConstants octagon_constants();

FuchsianGroup build_regular_4g_gon(int genus);
// user generators on the regular polygon; checked by verify_pairing, never trusted
FuchsianGroup group_from_generators(const std::vector<Mobius>& gens);

struct PairingReport {
    double endpoint_error = 0;
    double inverse_error = 0;
    double relator_error = 0;
    double angle_sum_error = 0;
    double min_trace_excess = 0;   // min |tr| - 2
    bool ok = true;
    std::string text() const;
};
PairingReport verify_pairing(const FuchsianGroup& g, double tol = 1e-10);
void check_pairing(const FuchsianGroup& g, double tol = 1e-10);   // throws InvariantViolation

// product around the vertex cycle, generator order j, j-3, j-6, ...
Mobius vertex_relator(const FuchsianGroup& g);
std::vector<double> interior_angles(const FuchsianGroup& g);

struct EvenCornerReport {
    std::vector<double> worst_per_side;
    double worst = 0;
    bool ok = true;
    std::string text() const;
};
EvenCornerReport verify_even_corner(const FuchsianGroup& g, int depth, double tol = 1e-8);

} // namespace bsl
