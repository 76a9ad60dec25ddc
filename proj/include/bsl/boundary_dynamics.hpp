#pragma once
#include "bsl/fuchsian.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bsl {

enum class Side { Left, Right };

double circular_distance(double a, double b);

// [start, start+length) for Left, (start, start+length] for Right
struct Arc {
    double start = 0;
    double length = 0;
    Side closure = Side::Left;
    double end() const { return wrap_angle(start + length); }
    bool contains(double theta, double tol = 1e-12) const;
    // open-interior overlap of positive length
    bool overlaps(double a_start, double a_length, double tol = 1e-12) const;
};

// Circle cut into arcs between sorted cut points, arc i = (cuts[i], cuts[i+1]) with closure by side.
struct Partition {
    std::vector<double> cuts;   // sorted ccw in [0, 2pi)
    std::vector<int> gen;       // generator index per arc
    Side side = Side::Left;

    int size() const { return static_cast<int>(cuts.size()); }
    Arc arc(int i) const;
    int arc_of(double theta, double tol = 1e-12) const;
    double midpoint(int i) const;
    // arcs with positive-length overlap with the open arc (a, a+len)
    std::vector<int> overlapping(double a, double len) const;
};

Partition build_coarse_partition(const FuchsianGroup& g, Side side);
Partition refine_to_markov(const Partition& coarse, const FuchsianGroup& g, int max_iter,
                           int* iterations = nullptr);

struct MarkovReport {
    double endpoint_error = 0;
    bool contiguous = true;
    double length_sum_error = 0;
    double min_unstable = 0;     // min |T'| over samples
    bool ok = true;
    std::string text() const;
};

class BowenSeriesMap {
public:
    BowenSeriesMap() = default;
    BowenSeriesMap(FuchsianGroup g, Partition p) : group_(std::move(g)), part_(std::move(p)) {}

    const FuchsianGroup& group() const { return group_; }
    const Partition& partition() const { return part_; }
    Side side() const { return part_.side; }
    int arcs() const { return part_.size(); }

    int coding(double theta) const { return part_.gen[part_.arc_of(theta)]; }
    const Mobius& generator(double theta) const { return group_.gens[coding(theta)]; }
    double apply(double theta) const { return generator(theta).apply_angle(theta); }
    double derivative(double theta) const { return generator(theta).boundary_derivative_angle(theta); }
    // image of arc i as (first arc index, arc count) in ccw order
    std::pair<int, int> image_range(int i) const;
    MarkovReport verify(int samples = 1000) const;

private:
    FuchsianGroup group_;
    Partition part_;
};

using Incidence = std::vector<std::vector<std::uint8_t>>;

struct BakerSystem {
    BowenSeriesMap left, right;
    Incidence J;
    std::vector<std::pair<int, int>> QR;   // per L-arc k: (first R-arc, count)
    std::vector<std::pair<int, int>> QL;   // per R-arc l: (first L-arc, count)

    int arcs() const { return left.arcs(); }
    bool in_sigma(double xi, double eta) const {
        return J[left.partition().arc_of(xi)][right.partition().arc_of(eta)] != 0;
    }
    Arc q_right(int k) const;
    Arc q_left(int l) const;
    // throws DomainError off the extension domain
    std::pair<double, double> apply(double xi, double eta) const;
    std::pair<double, double> inverse(double xi, double eta) const;
    const Mobius& gamma_L(double xi) const { return left.generator(xi); }
    const Mobius& gamma_R(double eta) const { return right.generator(eta); }
};

Incidence initial_incidence(int q);            // closures disjoint
Incidence prune_incidence(const BowenSeriesMap& L, const BowenSeriesMap& R, Incidence J);
int count_ones(const Incidence& J);

// assembles Q-arcs and checks every structural invariant; throws BakerConstruction
BakerSystem assemble_baker(const BowenSeriesMap& L, const BowenSeriesMap& R, const Incidence& J);
// secondary route only: fixed-point pruning from the disjoint-closure start
BakerSystem build_baker_pruned(const BowenSeriesMap& L, const BowenSeriesMap& R);

struct PreimageReport {
    int checked = 0;
    int mismatches = 0;
    int max_cardinality = 0;
    double pairing_error = 0;
    bool ok = true;
};
PreimageReport verify_preimage_bijection(const BakerSystem& B, double xi_p, double eta);

struct Cylinder {
    Arc left;              // I^L(n, xi)
    double q_start = 0;    // Q^R(n, xi) pushed forward
    double q_length = 0;
    Mobius word;           // gamma_L[n, xi]
};
Cylinder cylinder(const BakerSystem& B, int n, double xi);
// all xi with T_L^n xi = xi'
std::vector<double> forward_preimages(const BowenSeriesMap& T, int n, double xi_p);

// the built-in pipeline: group, Markov maps and the pruned baker
struct BoundarySystem {
    FuchsianGroup group;
    BowenSeriesMap left, right;
    BakerSystem baker;
    int refine_iterations_left = 0, refine_iterations_right = 0;
};
BoundarySystem build_boundary_system(const FuchsianGroup& g, int max_iter = 50);

} // namespace bsl
