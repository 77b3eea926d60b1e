#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "spintop/cell_complex.hpp"
#include "spintop/disorder.hpp"

namespace spintop {

struct PercolationReport {
    double x = 0.0;
    long long trials = 0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double bound = 0.0;  // [2x(1-x)]^n reference for the unfrustrated-set probability
    std::map<long long, long long> cluster_histogram;  // size -> count, all trials
    double largest_fraction = 0.0;
};

// Bonds in the closure of a plaquette set, ascending.
std::vector<int> closure_bonds(const CellComplex& cx, const std::vector<int>& plaqs);

// Exact probability that every plaquette of the set is unfrustrated:
// full sum over all sign assignments of the closure bonds.
double exact_prob_unfrustrated(const CellComplex& cx, const std::vector<int>& plaqs, double x,
                               int bond_cap = 30);

// Same sum in exact rational arithmetic for x = px/qx: the probability is
// num / qx^exponent. Keeps every comparison against closed-form values free
// of rounding.
struct ExactProb {
    unsigned __int128 num = 0;
    int qx = 1;
    int exponent = 0;  // denominator = qx^exponent

    double value() const;
    // Compare against (bnum/bden)^n without division.
    bool at_least_power(long long bnum, long long bden, int n) const;
    bool equals_power_of_half(int n) const;  // num/2^exponent == 2^-n
};

ExactProb exact_prob_unfrustrated_rational(const CellComplex& cx, const std::vector<int>& plaqs,
                                           int px, int qx, int bond_cap = 30);

// Monte-Carlo estimate of the same event with binomial standard error; the
// report carries the [2x(1-x)]^n lower bound for comparison.
PercolationReport mc_prob_unfrustrated(const CellComplex& cx, const std::vector<int>& plaqs,
                                       double x, long long trials, std::uint64_t seed);

enum class ScanMode { unfrustrated_plaquettes, negative_bonds };

// Disorder scan: per trial, sample couplings and label the clusters of the
// chosen network (plaquettes connected through shared lattice points, bonds
// through shared sites). Reports the mean largest-cluster fraction (over all
// plaquettes in plaquette mode, over the negative bonds in bond mode) and
// the aggregate size histogram. Trials may run on several workers; output is
// independent of the worker count.
PercolationReport cluster_scan(const Lattice& lat, double x, long long trials, std::uint64_t seed,
                               ScanMode mode, int workers = 1);

// Order-insensitive check of the incremental-decomposition hypothesis: the
// smallest achievable worst-case bond overlap when building the set one
// plaquette at a time. Overlap <= 2 is what the closed-form bound derivation
// assumes; <= 3 still pins the x = 1/2 probability to 2^-n.
struct DecompositionReport {
    int max_shared = 0;
    bool exact = true;           // subset DP (n <= 16) vs greedy upper bound
    bool bound_applies = false;  // max_shared <= 2
    bool half_equality = false;  // max_shared <= 3
};

DecompositionReport verify_decomposition(const CellComplex& cx, const std::vector<int>& plaqs);

}  // namespace spintop
