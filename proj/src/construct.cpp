#include "parnet/construct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parnet/network.hpp"
#include "parnet/sigmoid.hpp"

namespace parnet {

double MonomialNetSpec::eval(double x) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < betas.size(); ++j)
        sum += alphas[j] * sigmoid(betas[j] * x + t_sigma);
    return scale * sum;
}

double MonomialNetSpec::moment_residual() const {
    double worst = 0.0;
    for (int l = 0; l < N; ++l) {
        double s = 0.0;
        for (std::size_t j = 0; j < betas.size(); ++j) s += alphas[j] * std::pow(betas[j], l);
        const double target = (l == k) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(s - target));
    }
    return worst;
}

std::vector<double> solve_moment_system(int k, int N, const std::vector<double>& betas) {
    if (N <= k) throw std::invalid_argument("solve_moment_system: need N > k");
    if (static_cast<int>(betas.size()) != N)
        throw std::invalid_argument("solve_moment_system: betas must have length N");
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            if (std::abs(betas[static_cast<std::size_t>(a)] - betas[static_cast<std::size_t>(b)]) < 1e-6)
                throw std::invalid_argument("solve_moment_system: betas not pairwise distinct");

    // Row l of the system: sum_j beta_j^l alpha_j = [l == k].
    std::vector<std::vector<double>> m(static_cast<std::size_t>(N),
                                       std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));
    for (int l = 0; l < N; ++l) {
        for (int j = 0; j < N; ++j)
            m[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] =
                std::pow(betas[static_cast<std::size_t>(j)], l);
        m[static_cast<std::size_t>(l)][static_cast<std::size_t>(N)] = (l == k) ? 1.0 : 0.0;
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < N; ++col) {
        int pivot = col;
        for (int row = col + 1; row < N; ++row)
            if (std::abs(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
                std::abs(m[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
                pivot = row;
        std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
        const double diag = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        if (diag == 0.0) throw std::invalid_argument("solve_moment_system: singular system");
        for (int row = 0; row < N; ++row) {
            if (row == col) continue;
            const double factor =
                m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / diag;
            if (factor == 0.0) continue;
            for (int c2 = col; c2 <= N; ++c2)
                m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)] -=
                    factor * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
        }
    }
    std::vector<double> alphas(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j)
        alphas[static_cast<std::size_t>(j)] =
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(N)] /
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];

    // The residual is the contract: substitute back rather than estimating condition.
    double residual = 0.0;
    for (int l = 0; l < N; ++l) {
        double s = 0.0;
        for (int j = 0; j < N; ++j)
            s += alphas[static_cast<std::size_t>(j)] * std::pow(betas[static_cast<std::size_t>(j)], l);
        residual = std::max(residual, std::abs(s - ((l == k) ? 1.0 : 0.0)));
    }
    if (residual > 1e-9) {
        std::ostringstream msg;
        msg << "solve_moment_system: ill-conditioned (residual " << residual << " > 1e-9)";
        throw std::invalid_argument(msg.str());
    }
    return alphas;
}

double choose_t_sigma(int k) {
    if (k < 1) throw std::invalid_argument("choose_t_sigma: k must be >= 1");
    const SigmaDerivTable table(k);
    double best_t = 0.0;
    double best_v = -1.0;
    for (int i = 0; i <= 800; ++i) {
        const double t = static_cast<double>(i - 400) * 0.01;
        const double v = std::abs(table.eval(k, t));
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    return best_t;
}

MonomialNetSpec build_monomial_net(int k, int N, double A) {
    if (A > 1.0) throw std::invalid_argument("build_monomial_net: requires A <= 1");
    MonomialNetSpec spec;
    spec.k = k;
    spec.N = N;
    spec.half_width = A;
    spec.t_sigma = choose_t_sigma(k);
    spec.betas.resize(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j)
        spec.betas[static_cast<std::size_t>(j)] =
            static_cast<double>(j + 1) / static_cast<double>(N);
    spec.alphas = solve_moment_system(k, N, spec.betas);
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
    spec.scale = factorial / sigma_deriv(k, spec.t_sigma);
    return spec;
}

double Mult2Net::eval(double x, double y) const {
    return 0.25 * (square.eval(x + y) - square.eval(x - y));
}

Mult2Net build_mult2(int N, double A) {
    if (N <= 2) throw std::invalid_argument("build_mult2: need N > 2");
    Mult2Net net;
    net.half_width = A;
    net.square = build_monomial_net(2, N, std::min(1.0, 2.0 * A));
    return net;
}

int MultDNet::mult_layers() const {
    int q = 0;
    while ((1 << q) < d_in) ++q;
    return std::max(q, 1);
}

int MultDNet::max_neurons_per_layer() const { return 2 * N * d_in; }

double MultDNet::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_in)
        throw std::invalid_argument("MultDNet: input size mismatch");
    // Pair wires level by level; an odd wire is carried by the identity net so
    // that every block's error vanishes like A^N (a pad-by-one multiplier would
    // leave an error floor independent of A).
    std::vector<double> values(x.begin(), x.end());
    while (values.size() > 1) {
        std::vector<double> next;
        next.reserve(values.size() / 2 + 1);
        std::size_t i = 0;
        for (; i + 1 < values.size(); i += 2) next.push_back(mult.eval(values[i], values[i + 1]));
        if (i < values.size()) next.push_back(identity.eval(values[i]));
        values = std::move(next);
    }
    return values.front();
}

MultDNet build_mult_d(int d_in, int N, double A, double c_range) {
    if (d_in < 1) throw std::invalid_argument("build_mult_d: d_in must be >= 1");
    if (N <= 2) throw std::invalid_argument("build_mult_d: need N > 2");
    if (A > 1.0) throw std::invalid_argument("build_mult_d: requires A <= 1");
    const double condition =
        c_range * std::pow(4.0, static_cast<double>(d_in) * N) * std::pow(A, N - 1);
    if (condition > 1.0) {
        std::ostringstream msg;
        msg << "build_mult_d: range condition violated, c * 4^(d*N) * A^(N-1) = " << condition
            << " > 1";
        throw std::invalid_argument(msg.str());
    }
    MultDNet net;
    net.d_in = d_in;
    net.N = N;
    net.half_width = A;
    // Intermediate products live on a slightly larger range than the inputs.
    net.mult = build_mult2(N, std::min(1.0, 2.0 * A));
    net.identity = build_monomial_net(1, N, A);
    return net;
}

double SubnetBlueprint::eval(std::span<const double> x) const { return forward(weights, x); }

double eval_blueprints(const std::vector<SubnetBlueprint>& blueprints,
                       std::span<const double> x) {
    double sum = 0.0;
    for (const auto& b : blueprints) sum += b.eval(x);
    return sum;
}

namespace {

// ----- summand compilation -------------------------------------------------
//
// Each summand of the smoothed surrogate is
//     coeff * prod_s (x^(i_s) - u^(i_s)) * prod_j sigmoid(M (x^(j) - u^(j)))
// (indicator factors only for non-origin cells). All factor values are scaled
// to a common small range, multiplied by a binary tree of polarization
// multipliers, carried by identity blocks where depth alignment demands, and
// the scaling is undone in the output coefficients.

struct LinearForm {
    // Over previous-layer units; index -1 encodes the constant term.
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;
};

struct StackNeuron {
    LinearForm pre;  // pre-activation over previous layer (or over x for layer 1)
};

struct Stack {
    int d = 1;
    std::vector<std::vector<StackNeuron>> layers;
};

struct Wire {
    std::vector<std::pair<int, double>> combo;  // over current top-layer units
};

LinearForm scaled_form(const Wire& w, double factor, double shift) {
    LinearForm f;
    f.constant = shift;
    for (const auto& [idx, c] : w.combo) f.terms.emplace_back(idx, factor * c);
    return f;
}

LinearForm combined_form(const Wire& a, const Wire& b, double fa, double fb, double shift) {
    LinearForm f;
    f.constant = shift;
    for (const auto& [idx, c] : a.combo) f.terms.emplace_back(idx, fa * c);
    for (const auto& [idx, c] : b.combo) f.terms.emplace_back(idx, fb * c);
    return f;
}

// Appends an identity block reading wire `in` from the previous layer.
Wire push_identity(std::vector<StackNeuron>& layer, const Wire& in,
                   const MonomialNetSpec& id) {
    Wire out;
    for (int m = 0; m < id.N; ++m) {
        StackNeuron n;
        n.pre = scaled_form(in, id.betas[static_cast<std::size_t>(m)], id.t_sigma);
        layer.push_back(std::move(n));
        out.combo.emplace_back(static_cast<int>(layer.size()) - 1,
                               id.scale * id.alphas[static_cast<std::size_t>(m)]);
    }
    return out;
}

// Appends a polarization multiplier block computing approximately a*b.
Wire push_mult(std::vector<StackNeuron>& layer, const Wire& a, const Wire& b,
               const MonomialNetSpec& sq) {
    Wire out;
    for (int m = 0; m < sq.N; ++m) {
        const double beta = sq.betas[static_cast<std::size_t>(m)];
        const double alpha = sq.alphas[static_cast<std::size_t>(m)];
        StackNeuron plus;
        plus.pre = combined_form(a, b, beta, beta, sq.t_sigma);
        layer.push_back(std::move(plus));
        out.combo.emplace_back(static_cast<int>(layer.size()) - 1, 0.25 * sq.scale * alpha);
        StackNeuron minus;
        minus.pre = combined_form(a, b, beta, -beta, sq.t_sigma);
        layer.push_back(std::move(minus));
        out.combo.emplace_back(static_cast<int>(layer.size()) - 1, -0.25 * sq.scale * alpha);
    }
    return out;
}

struct Summand {
    double coeff = 0.0;
    std::vector<int> z_axes;       // monomial factors (with multiplicity), axis per factor
    std::vector<double> u;         // cell corner
    bool with_indicators = false;  // append one sigmoid factor per axis
};

// Compiles one summand into a stack plus the final wire over its top layer.
std::pair<Stack, Wire> compile_summand(const Summand& s, int d, double scale_s, double M,
                                       const MonomialNetSpec& id, const MonomialNetSpec& sq) {
    Stack stack;
    stack.d = d;
    std::vector<StackNeuron> layer1;
    std::vector<Wire> wires;

    for (int axis : s.z_axes) {
        // Identity block on the scaled factor (x_axis - u_axis) * scale_s; the
        // layer-1 pre-activation absorbs the affine input form.
        Wire w;
        for (int m = 0; m < id.N; ++m) {
            const double beta = id.betas[static_cast<std::size_t>(m)];
            StackNeuron n;
            n.pre.terms.emplace_back(axis, beta * scale_s);
            n.pre.constant = -beta * scale_s * s.u[static_cast<std::size_t>(axis)] + id.t_sigma;
            layer1.push_back(std::move(n));
            w.combo.emplace_back(static_cast<int>(layer1.size()) - 1,
                                 id.scale * id.alphas[static_cast<std::size_t>(m)]);
        }
        wires.push_back(std::move(w));
    }
    if (s.with_indicators) {
        for (int j = 0; j < d; ++j) {
            StackNeuron n;
            n.pre.terms.emplace_back(j, M);
            n.pre.constant = -M * s.u[static_cast<std::size_t>(j)];
            layer1.push_back(std::move(n));
            Wire w;
            w.combo.emplace_back(static_cast<int>(layer1.size()) - 1, scale_s);
            wires.push_back(std::move(w));
        }
    }
    if (wires.empty()) {
        // Constant summand: carry the constant value scale_s through the stack.
        Wire w;
        for (int m = 0; m < id.N; ++m) {
            const double beta = id.betas[static_cast<std::size_t>(m)];
            StackNeuron n;
            n.pre.constant = beta * scale_s + id.t_sigma;
            layer1.push_back(std::move(n));
            w.combo.emplace_back(static_cast<int>(layer1.size()) - 1,
                                 id.scale * id.alphas[static_cast<std::size_t>(m)]);
        }
        wires.push_back(std::move(w));
    }
    stack.layers.push_back(std::move(layer1));

    // Product tree: pair wires level by level, carrying odd wires by identity.
    while (wires.size() > 1) {
        std::vector<StackNeuron> layer;
        std::vector<Wire> next;
        std::size_t i = 0;
        for (; i + 1 < wires.size(); i += 2)
            next.push_back(push_mult(layer, wires[i], wires[i + 1], sq));
        if (i < wires.size()) next.push_back(push_identity(layer, wires[i], id));
        stack.layers.push_back(std::move(layer));
        wires = std::move(next);
    }
    return {std::move(stack), std::move(wires.front())};
}

// Pads the stack with identity stages until it has exactly `depth` layers.
Wire pad_to_depth(Stack& stack, Wire wire, int depth, const MonomialNetSpec& id) {
    while (static_cast<int>(stack.layers.size()) < depth) {
        std::vector<StackNeuron> layer;
        wire = push_identity(layer, wire, id);
        stack.layers.push_back(std::move(layer));
    }
    return wire;
}

// Splits the final linear combination across blueprints sharing the lower layers.
void emit_blueprints(const Stack& stack, const Wire& wire, double out_scale, int d, int L,
                     int r, std::vector<SubnetBlueprint>& out) {
    const Topology topo(d, 1, L, r);
    // Shared layers 1..L-1.
    WeightVector base(topo);
    for (int l = 1; l < L; ++l) {
        const auto& layer = stack.layers[static_cast<std::size_t>(l - 1)];
        for (std::size_t i = 0; i < layer.size(); ++i) {
            const LinearForm& pre = layer[i].pre;
            base.at({0, l - 1, static_cast<int>(i), 0}) = pre.constant;
            for (const auto& [idx, c] : pre.terms)
                base.at({0, l - 1, static_cast<int>(i), idx + 1}) = c;
        }
    }
    const auto& top_layer = stack.layers.back();
    for (const auto& [unit, combo_coeff] : wire.combo) {
        if (combo_coeff == 0.0) continue;
        SubnetBlueprint bp;
        bp.weights = base;
        const LinearForm& pre = top_layer[static_cast<std::size_t>(unit)].pre;
        bp.weights.at({0, L - 1, 0, 0}) = pre.constant;
        for (const auto& [idx, c] : pre.terms) bp.weights.at({0, L - 1, 0, idx + 1}) = c;
        bp.weights.output_weight(0) = out_scale * combo_coeff;
        out.push_back(std::move(bp));
    }
}

std::vector<Summand> collect_summands(const PiecewiseTaylor& pw) {
    std::vector<Summand> summands;
    const TaylorGrid& g = pw.grid;
    std::vector<int> cell(static_cast<std::size_t>(g.d), 0);
    bool origin = true;
    bool more = true;
    while (more) {
        const auto& piece = pw.pieces[pw.piece_index(cell)];
        const std::vector<double> u = g.corner_point(cell);
        for (std::size_t m = 0; m < piece.term_count(); ++m) {
            const double c = piece.coefficient(m);
            if (c == 0.0) continue;
            Summand s;
            s.coeff = c;
            s.u = u;
            s.with_indicators = !origin;
            const MultiIndex& alpha = piece.monomials()[m];
            for (int j = 0; j < g.d; ++j)
                for (int a = 0; a < alpha[static_cast<std::size_t>(j)]; ++a) s.z_axes.push_back(j);
            summands.push_back(std::move(s));
        }
        origin = false;
        more = false;
        for (std::size_t j = cell.size(); j-- > 0;) {
            if (++cell[j] < g.K) {
                more = true;
                break;
            }
            cell[j] = 0;
        }
    }
    return summands;
}

int tree_depth(int wire_count) {
    int depth = 0;
    while ((1 << depth) < wire_count) ++depth;
    return depth;
}

}  // namespace

AssemblyRequirements assembly_requirements(const SmoothTarget& f, int K, int N) {
    const int q = f.q();
    const int d = f.d;
    AssemblyRequirements req;
    // Widest summand: q monomial factors plus d indicator factors.
    const int wires = std::max(1, q + d);
    req.min_depth = 1 + tree_depth(wires);
    int layer1 = q * N + d;
    if (q == 0 && d == 0) layer1 = N;
    req.min_width = std::max(N, layer1);
    // Each multiplier consumes two wires and occupies 2N neurons, carries N.
    int level = wires;
    while (level > 1) {
        const int pairs = level / 2;
        const int carries = level % 2;
        req.min_width = std::max(req.min_width, pairs * 2 * N + carries * N);
        level = pairs + carries;
    }
    (void)K;
    return req;
}

std::vector<SubnetBlueprint> assemble_taylor_net(const SmoothTarget& f, int K, int L, int r,
                                                 int N) {
    if (K < 1) throw std::invalid_argument("assemble_taylor_net: K must be >= 1");
    const AssemblyRequirements req = assembly_requirements(f, K, N);
    if (L < req.min_depth || r < req.min_width) {
        std::ostringstream msg;
        msg << "assemble_taylor_net: topology too small, need depth >= " << req.min_depth
            << " and width >= " << req.min_width << " (got L=" << L << ", r=" << r << ")";
        throw std::invalid_argument(msg.str());
    }
    TaylorGrid grid;
    grid.A = f.A;
    grid.K = K;
    grid.d = f.d;
    const PiecewiseTaylor pw = build_pieces(f, grid);

    // Common factor scale: |(x - u) * s| <= 1/K and sigmoid * s <= s.
    const double scale_s = 1.0 / (2.0 * f.A * static_cast<double>(K));
    const MonomialNetSpec id = build_monomial_net(1, N, 1.0 / static_cast<double>(K));
    const MonomialNetSpec sq = build_monomial_net(2, N, std::min(1.0, 2.0 / static_cast<double>(K)));

    std::vector<SubnetBlueprint> blueprints;
    for (const Summand& s : collect_summands(pw)) {
        auto [stack, wire] = compile_summand(s, f.d, scale_s, pw.M, id, sq);
        wire = pad_to_depth(stack, std::move(wire), L, id);
        const int factor_count =
            static_cast<int>(s.z_axes.size()) + (s.with_indicators ? f.d : 0);
        const double out_scale =
            s.coeff / std::pow(scale_s, static_cast<double>(std::max(factor_count, 1)));
        emit_blueprints(stack, wire, out_scale, f.d, L, r, blueprints);
    }
    return blueprints;
}

WeightVector embed_blueprints(const std::vector<SubnetBlueprint>& blueprints,
                              const Topology& topology, const std::vector<int>& slots) {
    if (slots.size() != blueprints.size())
        throw std::invalid_argument("embed_blueprints: slots/blueprints length mismatch");
    std::vector<bool> used(static_cast<std::size_t>(topology.K), false);
    WeightVector w(topology);
    for (std::size_t b = 0; b < blueprints.size(); ++b) {
        const int slot = slots[b];
        if (slot < 0 || slot >= topology.K)
            throw std::invalid_argument("embed_blueprints: slot out of range");
        if (used[static_cast<std::size_t>(slot)])
            throw std::invalid_argument("embed_blueprints: duplicate slot");
        used[static_cast<std::size_t>(slot)] = true;
        const Topology& bt = blueprints[b].weights.topology();
        if (bt.d != topology.d || bt.L != topology.L || bt.r > topology.r)
            throw std::invalid_argument("embed_blueprints: blueprint does not fit topology");
        const WeightVector& bw = blueprints[b].weights;
        // Layer 0 block.
        for (int i = 0; i < bt.r; ++i)
            for (int j = 0; j <= bt.d; ++j)
                w.at({slot, 0, i, j}) = bw.at({0, 0, i, j});
        for (int l = 1; l < bt.L; ++l)
            for (int i = 0; i < bt.r; ++i)
                for (int j = 0; j <= bt.r; ++j)
                    w.at({slot, l, i, j}) = bw.at({0, l, i, j});
        w.output_weight(slot) = bw.output_weight(0);
    }
    return w;
}

}  // namespace parnet
