#pragma once
#include <complex>
#include <vector>

namespace bsl {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTau = 2.0 * kPi;

// angle in [0, 2pi)
double wrap_angle(double a);
inline cplx unit(double theta) { return std::polar(1.0, theta); }
inline double angle_of(cplx z) { return wrap_angle(std::arg(z)); }

// z -> (a z + b) / (conj(b) z + conj(a)), |a|^2 - |b|^2 = 1, identified with (-a,-b).
// word holds signed generator labels, applied right to left like the maps.
struct Mobius {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    std::vector<int> word;

    static Mobius identity() { return {}; }
    static Mobius rotation(double theta);          // z -> e^{i theta} z
    static Mobius translation_real(double t);      // hyperbolic length t along (-1,1)
    static Mobius translation_to(cplx z0);         // 0 -> z0, fixes the diameter through z0

    void validate(double tol = 1e-12) const;       // throws InvalidMap
    cplx apply(cplx z) const;
    double apply_angle(double theta) const { return angle_of(apply(unit(theta))); }
    double boundary_derivative(cplx xi) const;     // |gamma'(xi)| on the circle
    double boundary_derivative_angle(double theta) const { return boundary_derivative(unit(theta)); }
    Mobius inverse() const;
    double trace_abs() const { return 2.0 * std::abs(a.real()); }
};

Mobius compose(const Mobius& m1, const Mobius& m2);   // m1 o m2
// distance up to sign, sup norm on (a,b)
double matrix_distance(const Mobius& m1, const Mobius& m2);

double hyperbolic_distance(cplx z, cplx w);
double poisson_kernel(cplx z, cplx xi);
double busemann(cplx xi, cplx w, cplx z);
double gromov_sq(cplx xi, cplx eta);

struct Chord {
    double backward;   // eta
    double forward;    // xi
};
cplx chord_point_nearest_origin(const Chord& c);
// point of the geodesic eta -> xi at signed distance u from the nearest point to the origin
cplx chord_point_at(const Chord& c, double u);
// Mobius map sending the real diameter (-1 -> 1) onto the oriented geodesic eta -> xi,
// with 0 going to the nearest point to the origin
Mobius chord_frame(const Chord& c);
// orthogonal-circle intersection of the geodesic eta -> xi with the complete geodesic through u,v
// returned as signed distance along the chord frame; false if they do not meet
bool chord_line_crossing(const Mobius& frame_inv, cplx u, cplx v, double& pos);

} // namespace bsl
