#pragma once

#include <span>
#include <vector>

#include "parnet/smooth_target.hpp"
#include "parnet/taylor.hpp"
#include "parnet/topology.hpp"

namespace parnet {

// One-hidden-layer sigmoid combination reproducing x^k up to O(A^N):
//   f(x) = k!/sigma^(k)(t_sigma) * sum_j alpha_j * sigmoid(beta_j x + t_sigma)
// with (alpha, beta) solving the moment system sum_j alpha_j beta_j^l = [l == k].
struct MonomialNetSpec {
    int k = 1;
    int N = 2;
    double t_sigma = 0.0;
    std::vector<double> betas;
    std::vector<double> alphas;
    double scale = 1.0;
    double half_width = 1.0;  // intended input range, error bound scope only

    double eval(double x) const;
    double moment_residual() const;  // max_l |sum_j alpha_j beta_j^l - [l==k]|
};

// Solves the N x N transposed-Vandermonde system (unique for pairwise-distinct
// betas). Throws on duplicates or when the back-substituted residual exceeds 1e-9.
std::vector<double> solve_moment_system(int k, int N, const std::vector<double>& betas);

// argmax_{t in [-4,4], step 0.01} |sigma^(k)(t)|.
double choose_t_sigma(int k);

MonomialNetSpec build_monomial_net(int k, int N, double A);

// Two-input multiplier by polarization: f(x,y) = (f_{x^2}(x+y) - f_{x^2}(x-y)) / 4.
struct Mult2Net {
    MonomialNetSpec square;
    double half_width = 1.0;

    double eval(double x, double y) const;
};

Mult2Net build_mult2(int N, double A);

// Binary product tree of two-input multipliers, padded with 1-inputs up to the
// next power of two. Depth ceil(log2 d_in) multiplier levels.
struct MultDNet {
    int d_in = 1;
    int N = 3;
    double half_width = 1.0;
    Mult2Net mult;
    MonomialNetSpec identity;  // carries odd wires between levels

    double eval(std::span<const double> x) const;
    int mult_layers() const;
    int max_neurons_per_layer() const;
};

// Throws std::invalid_argument when the range condition fails, reporting the
// offending product value. c_range is the calibrated stand-in for the otherwise
// existential constant in the admissibility condition c * 4^(d*N) * A^(N-1) <= 1.
MultDNet build_mult_d(int d_in, int N, double A, double c_range = 1e-9);

// One subnet of the estimator topology (K = 1) plus its output coefficient,
// stored as the subnet's weight vector with the coefficient in the output slot.
struct SubnetBlueprint {
    WeightVector weights;  // Topology(d, 1, L, r)

    double output_coefficient() const { return weights.output_weight(0); }
    double eval(std::span<const double> x) const;
};

double eval_blueprints(const std::vector<SubnetBlueprint>& blueprints,
                       std::span<const double> x);

struct AssemblyRequirements {
    int min_depth = 1;
    int min_width = 1;
};

// Width/depth the assembly of f at grid resolution K needs with N-neuron blocks.
AssemblyRequirements assembly_requirements(const SmoothTarget& f, int K, int N);

// Compiles the smoothed piecewise Taylor surrogate of f term by term into subnet
// blueprints: each monomial(-times-indicator) summand becomes a stack of
// identity / multiplier / indicator blocks, whose top-layer linear combination is
// split across blueprints sharing the lower layers. Summing the blueprints tracks
// eval_Pbar, so the sup error against f decays like K^(-p).
std::vector<SubnetBlueprint> assemble_taylor_net(const SmoothTarget& f, int K, int L, int r,
                                                 int N);

// Writes each blueprint into its subnet slot of a fresh zero weight vector.
// Untouched subnets keep zero output weights and contribute nothing.
WeightVector embed_blueprints(const std::vector<SubnetBlueprint>& blueprints,
                              const Topology& topology, const std::vector<int>& slots);

}  // namespace parnet
