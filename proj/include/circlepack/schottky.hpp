#pragma once

// Schottky groups from disk pairs: validation, orbit packings with
// nested-disk pruning, Poincare series shell sums, and the critical-exponent
// estimate via shell-ratio bisection.
//
// Letters are indexed 0..2k-1: letter i < k is the generator pairing
// D_i -> D_i', letter i+k its inverse. Words print as letters a,b,c,...
// for generators and A,B,C,... for inverses. The target disk of a letter
// (gamma_i lands interior-of-everything-outside-D_i inside D_i') makes the
// orbit disks strictly nest along reduced words, which justifies pruning
// once the tracked radius drops below the floor.

#include <complex>
#include <string>
#include <vector>

#include "circlepack/apollonian.hpp"
#include "circlepack/inversive.hpp"

namespace circlepack {

struct Disk {
    std::complex<double> center;
    double radius = 0;
};

struct DiskPair {
    Disk d, d_prime;
    double twist = 0;
};

// z -> c' + e^{i twist} r r' / (z - c), normalized to determinant 1. Maps the
// boundary of d onto the boundary of d_prime and the interior of d to the
// exterior of d_prime.
MobiusMap standard_pairing(const Disk& d, const Disk& d_prime, double twist);

struct SchottkyGroup {
    std::vector<DiskPair> pairs;
    std::vector<MobiusMap> generators;  // one per pair

    static SchottkyGroup from_pairs(std::vector<DiskPair> pairs);
    // Explicit generators for some pairs (checked against the disks later by
    // validate).
    static SchottkyGroup from_generators(std::vector<DiskPair> pairs, std::vector<MobiusMap> gens);

    std::size_t genus() const { return pairs.size(); }
    std::size_t letters() const { return 2 * pairs.size(); }
    MobiusMap letter(std::size_t i) const;      // i < k: generator, else inverse
    std::size_t inverse_letter(std::size_t i) const;
    const Disk& target_disk(std::size_t i) const;  // A(letter i): D_i' resp. D_i
    static char letter_name(std::size_t i, std::size_t genus);
};

struct ValidationIssue {
    std::string what;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
    std::string to_string() const;
};

// Checks disjointness of the 2k closed disks, boundary mapping of each
// generator on sampled points (within 1e-9), and interior -> exterior.
ValidationReport validate(const SchottkyGroup& g);

// The sample group used by the toolkit's own diagnostics: genus 2, four unit
// disks centered at +-3 and +-3i, twist 0.
SchottkyGroup sample_genus2_group();

// Orbit circles of radius >= min_radius among the images of the 2k initial
// boundary circles, one circle per reduced word, canonically ordered.
Packing<double> generate_orbit(const SchottkyGroup& g, double min_radius,
                               const GenerateOptions& options = {});

// For each word length l = 1..max_len (1 = the identity shell offset: the
// 2k single letters), the sum over reduced words w of that length of
// exp(-s * d(o, w o)) with o = (0,0,1) in upper half-space;
// cosh d(o, gamma o) = (|a|^2+|b|^2+|c|^2+|d|^2)/2 for det-1 matrices.
std::vector<double> poincare_shell_sums(const SchottkyGroup& g, double s, int max_len, int workers = 1);

double hyperbolic_displacement(const MobiusMap& m);  // d(o, m o)

struct DeltaEstimate {
    double delta = 0;
    std::vector<double> shell_ratios_at_delta;  // diagnostic ratio curve S_l/S_{l-1}
    int max_len = 0;
};

// Bisection on s in [0,2] of the geometric growth ratio of consecutive
// shell sums (average of the last three ratios) to the crossing of 1.
// Tolerance 1e-3. Throws if the ratio at s = 2 still exceeds 1 (the
// truncation cannot see the abscissa for so thick a group).
DeltaEstimate estimate_delta(const SchottkyGroup& g, int max_len, int workers = 1);

}  // namespace circlepack
