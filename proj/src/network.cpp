#include "parnet/network.hpp"

#include <stdexcept>

#include "parnet/sigmoid.hpp"

namespace parnet {

namespace {

void check_input(const WeightVector& w, std::span<const double> x) {
    if (static_cast<int>(x.size()) != w.topology().d)
        throw std::invalid_argument("forward: input dimension does not match topology");
}

}  // namespace

ActivationTensor forward_units(const WeightVector& w, std::span<const double> x) {
    check_input(w, x);
    const Topology& t = w.topology();
    ActivationTensor out;
    out.topology = t;
    out.units.assign(static_cast<std::size_t>(t.K),
                     std::vector<std::vector<double>>(
                         static_cast<std::size_t>(t.L),
                         std::vector<double>(static_cast<std::size_t>(t.r), 0.0)));
    for (int k = 0; k < t.K; ++k) {
        auto& subnet = out.units[static_cast<std::size_t>(k)];
        for (int i = 0; i < t.r; ++i) {
            double z = w.at({k, 0, i, 0});
            for (int j = 0; j < t.d; ++j) z += w.at({k, 0, i, j + 1}) * x[static_cast<std::size_t>(j)];
            subnet[0][static_cast<std::size_t>(i)] = sigmoid(z);
        }
        for (int l = 1; l < t.L; ++l) {
            const auto& prev = subnet[static_cast<std::size_t>(l - 1)];
            for (int i = 0; i < t.r; ++i) {
                double z = w.at({k, l, i, 0});
                for (int j = 0; j < t.r; ++j) z += w.at({k, l, i, j + 1}) * prev[static_cast<std::size_t>(j)];
                subnet[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] = sigmoid(z);
            }
        }
    }
    return out;
}

double forward(const WeightVector& w, std::span<const double> x, const ActivationTensor& units) {
    (void)x;
    const Topology& t = w.topology();
    double out = 0.0;
    for (int k = 0; k < t.K; ++k)
        out += w.output_weight(k) * units.units[static_cast<std::size_t>(k)][static_cast<std::size_t>(t.L - 1)][0];
    return out;
}

double forward(const WeightVector& w, std::span<const double> x) {
    const ActivationTensor units = forward_units(w, x);
    return forward(w, x, units);
}

void accumulate_network_gradient(const WeightVector& w, std::span<const double> x,
                                 const ActivationTensor& units, double scale,
                                 std::vector<double>& grad) {
    const Topology& t = w.topology();
    if (grad.size() != w.size())
        throw std::invalid_argument("accumulate_network_gradient: gradient size mismatch");
    std::vector<double> d_act(static_cast<std::size_t>(t.r));
    std::vector<double> d_pre(static_cast<std::size_t>(t.r));
    std::vector<double> d_act_prev(static_cast<std::size_t>(t.r));
    for (int k = 0; k < t.K; ++k) {
        const auto& subnet = units.units[static_cast<std::size_t>(k)];
        // Output weight partial: f_{k,1}^{(L)}.
        grad[w.flat_index({k, t.L, 0, 0})] += scale * subnet[static_cast<std::size_t>(t.L - 1)][0];
        const double w_out = w.output_weight(k);
        if (w_out == 0.0) continue;  // every inner partial carries this factor
        // Seed: only the first unit of the top layer feeds the output.
        for (int i = 0; i < t.r; ++i) d_act[static_cast<std::size_t>(i)] = (i == 0) ? scale * w_out : 0.0;
        for (int l = t.L; l >= 1; --l) {
            const auto& act = subnet[static_cast<std::size_t>(l - 1)];
            for (int i = 0; i < t.r; ++i) {
                const double a = act[static_cast<std::size_t>(i)];
                d_pre[static_cast<std::size_t>(i)] = d_act[static_cast<std::size_t>(i)] * a * (1.0 - a);
            }
            if (l == 1) {
                for (int i = 0; i < t.r; ++i) {
                    const double dp = d_pre[static_cast<std::size_t>(i)];
                    if (dp == 0.0) continue;
                    grad[w.flat_index({k, 0, i, 0})] += dp;
                    for (int j = 0; j < t.d; ++j)
                        grad[w.flat_index({k, 0, i, j + 1})] += dp * x[static_cast<std::size_t>(j)];
                }
            } else {
                const auto& prev = subnet[static_cast<std::size_t>(l - 2)];
                for (int j = 0; j < t.r; ++j) d_act_prev[static_cast<std::size_t>(j)] = 0.0;
                for (int i = 0; i < t.r; ++i) {
                    const double dp = d_pre[static_cast<std::size_t>(i)];
                    if (dp == 0.0) continue;
                    grad[w.flat_index({k, l - 1, i, 0})] += dp;
                    for (int j = 0; j < t.r; ++j) {
                        grad[w.flat_index({k, l - 1, i, j + 1})] += dp * prev[static_cast<std::size_t>(j)];
                        d_act_prev[static_cast<std::size_t>(j)] += dp * w.at({k, l - 1, i, j + 1});
                    }
                }
                std::swap(d_act, d_act_prev);
            }
        }
    }
}

std::vector<double> network_gradient(const WeightVector& w, std::span<const double> x) {
    const ActivationTensor units = forward_units(w, x);
    std::vector<double> grad(w.size(), 0.0);
    accumulate_network_gradient(w, x, units, 1.0, grad);
    return grad;
}

std::vector<double> input_gradient(const WeightVector& w, std::span<const double> x) {
    const Topology& t = w.topology();
    check_input(w, x);
    const ActivationTensor units = forward_units(w, x);
    std::vector<double> result(static_cast<std::size_t>(t.d), 0.0);
    std::vector<std::vector<double>> d_layer;  // d f^{(l)}_{k,i} / d x_s
    for (int k = 0; k < t.K; ++k) {
        const auto& subnet = units.units[static_cast<std::size_t>(k)];
        d_layer.assign(static_cast<std::size_t>(t.r), std::vector<double>(static_cast<std::size_t>(t.d), 0.0));
        for (int i = 0; i < t.r; ++i) {
            const double a = subnet[0][static_cast<std::size_t>(i)];
            for (int s = 0; s < t.d; ++s)
                d_layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
                    a * (1.0 - a) * w.at({k, 0, i, s + 1});
        }
        for (int l = 2; l <= t.L; ++l) {
            std::vector<std::vector<double>> next(static_cast<std::size_t>(t.r),
                                                  std::vector<double>(static_cast<std::size_t>(t.d), 0.0));
            for (int i = 0; i < t.r; ++i) {
                const double a = subnet[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(i)];
                const double da = a * (1.0 - a);
                for (int j = 0; j < t.r; ++j) {
                    const double wij = w.at({k, l - 1, i, j + 1});
                    if (wij == 0.0) continue;
                    for (int s = 0; s < t.d; ++s)
                        next[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] +=
                            da * wij * d_layer[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
                }
            }
            d_layer = std::move(next);
        }
        const double w_out = w.output_weight(k);
        for (int s = 0; s < t.d; ++s)
            result[static_cast<std::size_t>(s)] += w_out * d_layer[0][static_cast<std::size_t>(s)];
    }
    return result;
}

}  // namespace parnet
