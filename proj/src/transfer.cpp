#include "bsl/transfer.hpp"
#include "bsl/chebyshev.hpp"
#include "bsl/errors.hpp"
#include "bsl/simd.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace bsl {

namespace {

std::vector<Branch> one_step_branches(const BowenSeriesMap& T) {
    std::vector<Branch> out;
    const auto& g = T.group();
    for (int k = 0; k < T.arcs(); ++k) {
        Mobius inv = g.gens[T.partition().gen[k]].inverse();
        auto [first, count] = T.image_range(k);
        for (int c = 0; c < count; ++c) out.push_back({k, (first + c) % T.arcs(), inv});
    }
    return out;
}

// smallest shift p with cuts[i+p] = cuts[i] + 2pi/sides and gen[i+p] = gen[i]+1, compatible generators
int detect_shift(const BowenSeriesMap& T) {
    const auto& P = T.partition();
    const auto& g = T.group();
    int q = T.arcs(), n = g.sides();
    double rot = kTau / n;
    Mobius R = Mobius::rotation(rot);
    for (int j = 0; j < n; ++j)
        if (matrix_distance(compose(compose(R, g.gens[j]), R.inverse()), g.gens[(j + 1) % n]) > 1e-10) return q;
    for (int p = 1; p < q; ++p) {
        if (q % p) continue;
        bool ok = true;
        for (int i = 0; i < q && ok; ++i) {
            int ip = (i + p) % q;
            ok = circular_distance(P.cuts[ip], wrap_angle(P.cuts[i] + rot)) < 1e-10 &&
                 P.gen[ip] == (P.gen[i] + 1) % n;
        }
        if (ok) return p;
    }
    return q;
}

} // namespace

TransferOperator::TransferOperator(const BowenSeriesMap& T, int steps) : T_(T), steps_(steps) {
    if (steps != 1 && steps != 2) throw ConfigError("transfer operator supports one or two steps");
    branches_ = one_step_branches(T_);
    if (steps == 2) {
        std::vector<std::vector<const Branch*>> from(T_.arcs());
        for (auto& b : branches_) from[b.k].push_back(&b);
        std::vector<Branch> two;
        for (auto& b1 : branches_)
            for (auto* b2 : from[b1.l]) two.push_back({b1.k, b2->l, compose(b1.inv, b2->inv)});
        branches_ = std::move(two);
    }
    shift_ = detect_shift(T_);
}

double TransferOperator::local_coordinate(int k, double theta, double tol) const {
    const auto& P = T_.partition();
    double L = P.arc(k).length;
    double d = wrap_angle(theta - P.cuts[k]);
    if (d > kTau - tol) d -= kTau;
    if (d < -tol || d > L + tol) {
        std::ostringstream os;
        os << "inverse branch image " << theta << " escapes arc " << k;
        throw BranchConsistency(os.str());
    }
    return std::clamp(d / L, 0.0, 1.0);
}

cplx TransferOperator::apply(const PiecewiseFn& psi, double xi, cplx s) const {
    int l = T_.partition().arc_of(xi);
    cplx z = unit(xi), sum = 0;
    for (auto& b : branches_) {
        if (b.l != l) continue;
        double y = angle_of(b.inv.apply(z));
        local_coordinate(b.k, y);
        sum += std::exp(s * std::log(b.inv.boundary_derivative(z))) * psi(b.k, y);
    }
    return sum;
}

LogDet log_det(const CMatrix& A) {
    Eigen::PartialPivLU<CMatrix> lu(A);
    LogDet d;
    const CMatrix& U = lu.matrixLU();
    for (int i = 0; i < U.rows(); ++i) {
        double a = std::abs(U(i, i));
        if (a == 0) return {-std::numeric_limits<double>::infinity(), 0.0};
        d.log_abs += std::log(a);
        d.phase *= U(i, i) / a;
    }
    d.phase *= lu.permutationP().determinant();
    return d;
}

Collocation::Collocation(const TransferOperator& op, int N) : op_(op), N_(N) {
    if (N < 4) throw ConfigError("need at least 4 nodes per arc");
    x_ = lobatto_points(N);
    bw_ = barycentric_weights(N);
    cc_ = clenshaw_curtis_weights(N);
    const auto& br = op_.branches();
    entries_.reserve(br.size() * N);
    logd_.reserve(br.size() * N);
    lag_.resize(br.size() * N * N);
    for (auto& b : br)
        for (int i = 0; i < N; ++i) {
            cplx z = unit(node(b.l, i));
            double u = op_.local_coordinate(b.k, angle_of(b.inv.apply(z)));
            int off = static_cast<int>(entries_.size()) * N;
            lagrange_row(x_, bw_, u, &lag_[off]);
            if (b.l < op_.symmetry_shift()) block_entries_.push_back(static_cast<int>(entries_.size()));
            entries_.push_back({b.l * N + i, b.k, off});
            logd_.push_back(std::log(b.inv.boundary_derivative(z)));
        }
}

double Collocation::node(int arc, int j) const {
    const auto& P = op_.map().partition();
    return wrap_angle(P.cuts[arc] + x_[j] * P.arc(arc).length);
}

double Collocation::weight(int arc, int j) const { return cc_[j] * op_.map().partition().arc(arc).length; }

void Collocation::weights(cplx s, std::vector<double>& re, std::vector<double>& im) const {
    re.resize(logd_.size());
    im.resize(logd_.size());
    simd::cexp(logd_.size(), logd_.data(), s, re.data(), im.data());
}

CMatrix Collocation::matrix(cplx s) const {
    std::vector<double> re, im;
    weights(s, re, im);
    CMatrix M = CMatrix::Zero(dim(), dim());
    for (size_t e = 0; e < entries_.size(); ++e) {
        const Entry& en = entries_[e];
        cplx w(re[e], im[e]);
        for (int j = 0; j < N_; ++j) M(en.row, en.k * N_ + j) += w * lag_[en.lag + j];
    }
    return M;
}

CMatrix Collocation::block(cplx s, int m) const {
    int shift = op_.symmetry_shift(), order = op_.symmetry_order();
    std::vector<double> re, im;
    weights(s, re, im);
    std::vector<cplx> omega(order);
    for (int p = 0; p < order; ++p) omega[p] = std::polar(1.0, kTau * m * p / order);
    CMatrix B = CMatrix::Zero(shift * N_, shift * N_);
    for (int e : block_entries_) {
        const Entry& en = entries_[e];
        cplx w = cplx(re[e], im[e]) * omega[en.k / shift];
        int col = (en.k % shift) * N_;
        for (int j = 0; j < N_; ++j) B(en.row, col + j) += w * lag_[en.lag + j];
    }
    return B;
}

LogDet Collocation::det_dense(cplx s) const {
    CMatrix A = CMatrix::Identity(dim(), dim()) - matrix(s);
    return log_det(A);
}

LogDet Collocation::det(cplx s) const {
    LogDet d;
    for (int m = 0; m < blocks(); ++m) {
        CMatrix B = block(s, m);
        LogDet b = log_det(CMatrix::Identity(B.rows(), B.cols()) - B);
        d.log_abs += b.log_abs;
        d.phase *= b.phase;
    }
    return d;
}

CVector Collocation::apply(cplx s, const CVector& v) const {
    std::vector<double> re, im;
    weights(s, re, im);
    CVector out = CVector::Zero(dim());
    for (size_t e = 0; e < entries_.size(); ++e) {
        const Entry& en = entries_[e];
        cplx acc = 0;
        for (int j = 0; j < N_; ++j) acc += lag_[en.lag + j] * v[en.k * N_ + j];
        out[en.row] += cplx(re[e], im[e]) * acc;
    }
    return out;
}

CVector Collocation::apply_left(cplx s, const CVector& nu) const {
    std::vector<double> re, im;
    weights(s, re, im);
    CVector out = CVector::Zero(dim());
    for (size_t e = 0; e < entries_.size(); ++e) {
        const Entry& en = entries_[e];
        cplx c = nu[en.row] * cplx(re[e], im[e]);
        for (int j = 0; j < N_; ++j) out[en.k * N_ + j] += c * lag_[en.lag + j];
    }
    return out;
}

std::vector<cplx> Collocation::eigenvalues(cplx s) const {
    std::vector<cplx> ev;
    for (int m = 0; m < blocks(); ++m) {
        Eigen::ComplexEigenSolver<CMatrix> es(block(s, m), false);
        for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i]);
    }
    return ev;
}

cplx Collocation::leading_eigenvalue(cplx s) const {
    auto ev = eigenvalues(s);
    return *std::max_element(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
}

CVector Collocation::expand(const CVector& u, int m, bool left) const {
    int shift = op_.symmetry_shift(), order = op_.symmetry_order();
    CVector v(dim());
    for (int p = 0; p < order; ++p) {
        cplx w = std::polar(1.0, (left ? -1.0 : 1.0) * kTau * m * p / order);
        v.segment(p * shift * N_, shift * N_) = w * u;
    }
    return v;
}

namespace {

CVector inverse_iteration(const CMatrix& A, int iters) {
    Eigen::PartialPivLU<CMatrix> lu(A);
    CVector v(A.rows());
    for (int i = 0; i < v.size(); ++i) v[i] = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
    for (int it = 0; it < iters; ++it) {
        v = lu.solve(v);
        v /= v.norm();
    }
    return v;
}

double sup(const CVector& v) { return v.cwiseAbs().maxCoeff(); }

} // namespace

SpectralResult Collocation::eigenpair(cplx s, double max_gap) const {
    struct Cand {
        double d;
        int m;
        cplx lam;
    };
    std::vector<Cand> all;
    for (int m = 0; m < blocks(); ++m) {
        Eigen::ComplexEigenSolver<CMatrix> es(block(s, m), false);
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            all.push_back({std::abs(es.eigenvalues()[i] - 1.0), m, es.eigenvalues()[i]});
    }
    std::stable_sort(all.begin(), all.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
    SpectralResult r;
    r.s = s;
    for (size_t i = 0; i < all.size() && i < 6; ++i) r.nearest.push_back(all[i].lam);
    if (all.empty() || all[0].d > max_gap) {
        std::ostringstream os;
        os << "no eigenvalue within " << max_gap << " of 1 at s=" << s.real() << "+" << s.imag()
           << "i; nearest distance " << (all.empty() ? 0.0 : all[0].d);
        throw SpuriousMinimum(os.str());
    }
    r.eigenvalue = all[0].lam;
    r.block = all[0].m;
    CMatrix B = block(s, r.block);
    CMatrix A = B - r.eigenvalue * CMatrix::Identity(B.rows(), B.cols());
    r.right = expand(inverse_iteration(A, 3), r.block, false);
    CVector w = inverse_iteration(A.adjoint(), 3);
    r.left = expand(w.conjugate(), r.block, true);

    // psi: sup norm 1, largest entry real positive
    Eigen::Index imax;
    r.right.cwiseAbs().maxCoeff(&imax);
    r.right *= std::abs(r.right[imax]) / r.right[imax] / std::abs(r.right[imax]);
    // nu: total variation 1, total mass real positive when it is not negligible
    r.left /= r.left.cwiseAbs().sum();
    cplx mass = r.left.sum();
    if (std::abs(mass) > 1e-8) {
        r.left *= std::abs(mass) / mass;
    } else {
        r.left.cwiseAbs().maxCoeff(&imax);
        r.left *= std::abs(r.left[imax]) / r.left[imax];
    }

    CVector Mr = apply(s, r.right), Ml = apply_left(s, r.left);
    r.right_residual = sup(Mr - r.eigenvalue * r.right) / sup(r.right);
    r.left_residual = sup(Ml - r.eigenvalue * r.left) / sup(r.left);
    r.unit_residual = sup(Mr - r.right) / sup(r.right);
    return r;
}

cplx Collocation::interpolate(const CVector& v, int k, double theta) const {
    double u = op_.local_coordinate(k, theta);
    std::vector<double> row(N_);
    lagrange_row(x_, bw_, u, row.data());
    cplx acc = 0;
    for (int j = 0; j < N_; ++j) acc += row[j] * v[k * N_ + j];
    return acc;
}

double refine_minimum(const Collocation& C, double a, double b, double t_tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double t) { return C.det(cplx(0.5, t)).log_abs; };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > t_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

DeterminantScan scan_critical_line(const Collocation& C, double t_min, double t_max, double step, double t_tol,
                                   double rel_threshold) {
    if (t_min < 0 || step <= 0) throw ConfigError("scan needs t_min >= 0 and step > 0");
    DeterminantScan sc;
    if (t_max <= t_min) return sc;
    int n = static_cast<int>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) {
        double t = t_min + i * step;
        sc.t.push_back(t);
        sc.det.push_back(C.det(cplx(0.5, t)));
    }
    std::vector<double> la(n);
    for (int i = 0; i < n; ++i) la[i] = sc.det[i].log_abs;
    std::vector<double> sorted = la;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    double med = sorted[n / 2];
    if (n % 2 == 0) {
        double lo = *std::max_element(sorted.begin(), sorted.begin() + n / 2);
        med = std::log(0.5 * (std::exp(lo - med) + 1.0)) + med;
    }
    sc.log_median = med;
    double thr = med + std::log(rel_threshold);
    for (int i = 1; i + 1 < n; ++i) {
        if (!(la[i] < la[i - 1] && la[i] <= la[i + 1])) continue;
        ScanMinimum m;
        m.t = refine_minimum(C, sc.t[i - 1], sc.t[i + 1], t_tol);
        m.log_abs_det = C.det(cplx(0.5, m.t)).log_abs;
        m.log_threshold = thr;
        m.accepted = m.log_abs_det < thr;
        double gap = 1e300;
        for (cplx ev : C.eigenvalues(cplx(0.5, m.t))) gap = std::min(gap, std::abs(ev - 1.0));
        m.gap = gap;
        sc.minima.push_back(m);
    }
    return sc;
}

} // namespace bsl
