#pragma once

#include <span>
#include <vector>

#include "parnet/topology.hpp"

namespace parnet {

// Hidden activations of every subnetwork: units[k][l-1][i] = f_{k,i+1}^{(l)}(x)
// for l = 1..L. All entries lie in (0,1).
struct ActivationTensor {
    Topology topology;
    std::vector<std::vector<std::vector<double>>> units;
};

// Full activation tensor for input x.
ActivationTensor forward_units(const WeightVector& w, std::span<const double> x);

// f_w(x) = sum_k w_out_k * f_{k,1}^{(L)}(x).
double forward(const WeightVector& w, std::span<const double> x);

double forward(const WeightVector& w, std::span<const double> x, const ActivationTensor& units);

// Gradient of w -> f_w(x) as a flat vector in the canonical ordering.
// This is the per-example backpropagation core shared by the risk gradient.
std::vector<double> network_gradient(const WeightVector& w, std::span<const double> x);

// Accumulates scale * d f_w(x) / dw into grad (grad has full flat length).
void accumulate_network_gradient(const WeightVector& w, std::span<const double> x,
                                 const ActivationTensor& units, double scale,
                                 std::vector<double>& grad);

// Gradient of f_w(x) with respect to the input x (length d).
std::vector<double> input_gradient(const WeightVector& w, std::span<const double> x);

}  // namespace parnet
