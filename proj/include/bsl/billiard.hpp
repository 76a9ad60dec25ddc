#pragma once
#include "bsl/boundary_dynamics.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace bsl {

struct SectionPoint {
    double x;   // forward endpoint
    double y;   // backward endpoint
};

struct BilliardCrossing {
    cplx entry, exit;          // q, p
    double t_entry, t_exit;    // positions along the chord frame
    int entry_side = -1, exit_side = -1;
    bool tangent = false;
};

BilliardCrossing crossing_points(const FuchsianGroup& g, const SectionPoint& pt);
SectionPoint billiard_apply(const FuchsianGroup& g, const SectionPoint& pt);
SectionPoint billiard_inverse(const FuchsianGroup& g, const SectionPoint& pt);

// random geodesic through two uniform points of the polygon; tangent ones are redrawn
SectionPoint sample_section_point(const FuchsianGroup& g, std::mt19937_64& rng);

// Reduced words up to a length, one entry per group element, shortest and
// lexicographically first word kept.
class GroupBall {
public:
    GroupBall(const FuchsianGroup& g, int radius);
    // nearest element within tol (up to sign); nullptr if none
    const Mobius* find(const Mobius& m, double tol = 1e-7) const;
    int radius() const { return radius_; }
    size_t size() const { return elems_.size(); }

private:
    int radius_;
    std::vector<Mobius> elems_;
    std::unordered_multimap<std::int64_t, size_t> index_;
    static std::int64_t key(const Mobius& m);
};

struct ConjugacyResult {
    Mobius rho;          // exact group element, word = shortest word
    int word_length = 0;
    int walk = 0;        // backward billiard steps to the anchor
    SectionPoint image;  // pi(pt)
};

// pi(pt) = rho(pt) pt. rho is identity on crossings whose entry and exit sides are
// at least sides/2-1 apart and is carried along billiard orbits by the cocycle
// rho(B pt) = gamma_L[pi pt] rho(pt) gamma_B[pt]^-1.
class Conjugacy {
public:
    // baker may be null (used while J is still being seeded)
    Conjugacy(const FuchsianGroup& g, const BowenSeriesMap& left, const BakerSystem* baker, int ball_radius = 5);
    ConjugacyResult rho(const SectionPoint& pt, int max_word = 8, int max_walk = 256) const;
    bool is_anchor(const BilliardCrossing& c) const;
    const GroupBall& ball() const { return ball_; }

private:
    const FuchsianGroup& g_;
    const BowenSeriesMap& left_;
    const BakerSystem* baker_;
    GroupBall ball_;
};

struct ConjugacyReport {
    int samples = 0;
    int max_word = 0;
    int max_walk = 0;
    double conjugacy_error = 0;   // |T^ pi - pi B| on angles
    double cohomology_L = 0;      // gamma_L[pi pt] rho[pt] vs rho[B pt] gamma_B[pt]
    double cohomology_R = 0;      // gamma_R[pi B pt] rho[B pt] vs rho[pt] gamma_B[pt]^-1
    int not_in_sigma = 0;
    bool ok = true;
    std::string text() const;
};
ConjugacyReport verify_conjugacy(const FuchsianGroup& g, const BakerSystem& B, int samples,
                                 std::uint64_t seed, int max_word = 8);
// negative control: cohomology deviation with rho = identity everywhere
double identity_rho_deviation(const FuchsianGroup& g, const BakerSystem& B, int samples, std::uint64_t seed);

// primary J route: visited rectangles of pi-images of crossing geodesics, then pruned
Incidence seed_incidence(const FuchsianGroup& g, const BowenSeriesMap& L, const BowenSeriesMap& R,
                         int samples, int steps, std::uint64_t seed);
// both routes; throws BakerConstruction if they disagree
BakerSystem build_baker(const BowenSeriesMap& L, const BowenSeriesMap& R, int samples, std::uint64_t seed = 7);

struct OrbitRow {
    int step;
    SectionPoint pt;
    int exit_side;
    int rho_length;
};
std::vector<OrbitRow> billiard_orbit(const FuchsianGroup& g, const BakerSystem& B, SectionPoint start, int steps);

} // namespace bsl
