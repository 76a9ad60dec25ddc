#pragma once
#include "bsl/boundary_dynamics.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace bsl {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// inverse branch of T (or T^2) carrying arc l into the closure of arc k
struct Branch {
    int k, l;
    Mobius inv;
};

// per-arc function psi_k(theta), theta in the closure of arc k
using PiecewiseFn = std::function<cplx(int arc, double theta)>;

class TransferOperator {
public:
    explicit TransferOperator(const BowenSeriesMap& T, int steps = 1);

    const BowenSeriesMap& map() const { return T_; }
    const std::vector<Branch>& branches() const { return branches_; }
    int arcs() const { return T_.arcs(); }
    int steps() const { return steps_; }
    // rotation by 2pi/sides shifts arcs by this much and commutes with T; equals arcs() when absent
    int symmetry_shift() const { return shift_; }
    int symmetry_order() const { return arcs() / shift_; }

    // sum over inverse branches into the arc holding xi of |T'|^-s psi_k
    cplx apply(const PiecewiseFn& psi, double xi, cplx s) const;

    // position of theta inside arc k as a fraction of its length, closure-aware
    double local_coordinate(int k, double theta, double tol = 1e-9) const;

private:
    BowenSeriesMap T_;
    int steps_;
    std::vector<Branch> branches_;
    int shift_;
};

struct LogDet {
    double log_abs = 0;
    cplx phase{1, 0};
    cplx value() const { return std::exp(log_abs) * phase; }
};
LogDet log_det(const CMatrix& A);   // pivoted LU

struct SpectralResult {
    cplx s;
    cplx eigenvalue;
    int block = 0;                  // character index of the symmetry block
    CVector right;                  // psi at nodes
    CVector left;                   // nu, point masses at nodes
    double right_residual = 0;      // |M psi - lambda psi|_inf / |psi|_inf
    double left_residual = 0;
    double unit_residual = 0;       // |M psi - psi|_inf / |psi|_inf
    std::vector<cplx> nearest;      // eigenvalues closest to 1, ascending distance
};

// Chebyshev-Lobatto collocation of an operator with N nodes per arc. Everything except
// exp(s log|T'|) is computed once, so evaluating at many s is cheap.
class Collocation {
public:
    Collocation(const TransferOperator& op, int N);

    int N() const { return N_; }
    int dim() const { return op_.arcs() * N_; }
    const TransferOperator& op() const { return op_; }
    double node(int arc, int j) const;                // angle
    double weight(int arc, int j) const;              // Clenshaw-Curtis weight in angle
    const std::vector<double>& unit_nodes() const { return x_; }

    CMatrix matrix(cplx s) const;                     // dense reference
    CMatrix block(cplx s, int m) const;               // character-m block, dim shift*N
    int blocks() const { return op_.symmetry_order(); }

    LogDet det_dense(cplx s) const;                   // det(I - M)
    LogDet det(cplx s) const;                         // product over blocks

    CVector apply(cplx s, const CVector& v) const;    // M v
    CVector apply_left(cplx s, const CVector& nu) const;   // (nu^T M)^T

    std::vector<cplx> eigenvalues(cplx s) const;      // all blocks
    cplx leading_eigenvalue(cplx s) const;
    // eigenvalue nearest 1 with both eigenvectors; SpuriousMinimum when farther than max_gap
    SpectralResult eigenpair(cplx s, double max_gap = 1e-3) const;

    // interpolate a node vector at theta inside arc k
    cplx interpolate(const CVector& v, int k, double theta) const;

private:
    struct Entry {
        int row;     // l*N + i
        int k;       // column arc
        int lag;     // offset of the Lagrange row in lag_
    };
    const TransferOperator& op_;
    int N_;
    std::vector<double> x_, bw_, cc_;
    std::vector<Entry> entries_;
    std::vector<double> logd_;
    std::vector<double> lag_;
    std::vector<int> block_entries_;   // entries with row arc < shift

    void weights(cplx s, std::vector<double>& re, std::vector<double>& im) const;
    CVector expand(const CVector& u, int m, bool left) const;
};

struct ScanMinimum {
    double t = 0;
    double log_abs_det = 0;
    double log_threshold = 0;
    double gap = 0;           // |lambda - 1| for the eigenvalue nearest 1
    bool accepted = false;
};

struct DeterminantScan {
    std::vector<double> t;
    std::vector<LogDet> det;
    double log_median = 0;
    std::vector<ScanMinimum> minima;
};

// |det(I - M_{1/2+it})| on t_min, t_min+step, ... ; grid minima refined by golden section
// and kept when below 1e-3 times the median
DeterminantScan scan_critical_line(const Collocation& C, double t_min, double t_max, double step,
                                   double t_tol = 1e-10, double rel_threshold = 1e-3);
// golden-section minimum of log|det| on [a,b]
double refine_minimum(const Collocation& C, double a, double b, double t_tol = 1e-10);

} // namespace bsl
