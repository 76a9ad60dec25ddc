#pragma once
#include "bsl/transfer.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace bsl {

// k(xi, eta) = J(xi, eta) exp W(xi, eta) = J 4/|xi - eta|^2
class InvolutionKernel {
public:
    explicit InvolutionKernel(const BakerSystem& B, double scale = 1.0);

    const BakerSystem& baker() const { return B_; }
    double kernel(double xi, double eta) const;
    cplx kernel_pow(double xi, double eta, cplx s) const;
    // with arc indices given explicitly (endpoints of closed arcs)
    double kernel_arcs(int kl, double xi, int kr, double eta) const;
    cplx kernel_pow_arcs(int kl, double xi, int kr, double eta, cplx s) const;
    // b_xi(O, z) + b_eta(O, z), z nearest point of the chord to O
    double W(double xi, double eta) const;
    double log_kernel(double xi, double eta) const { return std::log(scale_) + W(xi, eta); }
    // smallest chord length |xi - eta| between closure(I^L_k) and closure(Q^R_k)
    double gap() const { return gap_; }

private:
    const BakerSystem& B_;
    double scale_;
    double gap_;
};

using LogKernelFn = std::function<double(double, double)>;

struct IdentityReport {
    int samples = 0;
    double max_residual = 0;
    double threshold = 1e-10;
    bool ok = true;
    std::string text() const;
};
// A_L(xi) - A_R(eta') - W(xi', eta') + W(xi, eta) on uniform samples of the extension domain;
// log_k overrides W (negative controls)
IdentityReport verify_involution_identity(const InvolutionKernel& K, int samples, std::uint64_t seed,
                                          const LogKernelFn& log_k = {});

struct DualityReport {
    cplx s;
    int pairs = 0;
    double max_residual = 0;
    double threshold = 1e-10;
    bool ok = true;
    std::string text() const;
};
// L_R(k^s(xi',.))(eta) against L_L(k^s(., eta))(xi'); J may be replaced for negative controls
DualityReport verify_duality(const InvolutionKernel& K, cplx s, int pairs, std::uint64_t seed,
                             const Incidence* J_override = nullptr);

struct KernelTransfer {
    std::vector<double> xi;
    std::vector<cplx> psi;
    std::vector<cplx> Lpsi;
    double psi_sup = 0;
    double residual = 0;   // |L psi - psi|_inf / |psi|_inf
};

// psi(xi) = sum_j k^s(xi, eta_j) nu_j over the nodes eta_j of arcs l with J(arc xi, l) = 1.
// Residual checked pointwise with the left Bowen-Series operator on the grid xi.
class DualTransfer {
public:
    DualTransfer(const InvolutionKernel& K, const Collocation& C, const CVector& nu, cplx s);
    cplx psi(double xi) const;
    cplx psi_on_arc(int k, double xi) const;
    KernelTransfer evaluate(const std::vector<double>& grid) const;

private:
    const InvolutionKernel& K_;
    const Collocation& C_;
    cplx s_;
    TransferOperator L_;
    std::vector<double> eta_, nre_, nim_;
};

// throws DegenerateTransfer when |psi| collapses below 1e-10 |nu|
KernelTransfer transfer_dual_to_eigenfunction(const InvolutionKernel& K, const Collocation& C, const CVector& nu,
                                              cplx s, const std::vector<double>& grid);
std::vector<double> uniform_grid(int n, double offset = 0.5);

} // namespace bsl
