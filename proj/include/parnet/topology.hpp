#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace parnet {

// Structural parameters of the parallel-subnetwork architecture:
// K independent fully connected networks of depth L and width r on inputs in R^d,
// combined by a linear output layer with one weight per subnetwork.
struct Topology {
    int d = 1;  // input dimension
    int K = 1;  // number of parallel subnetworks
    int L = 1;  // hidden layers per subnetwork
    int r = 1;  // neurons per hidden layer

    Topology() = default;
    Topology(int d_, int K_, int L_, int r_) : d(d_), K(K_), L(L_), r(r_) {
        if (d < 1 || K < 1 || L < 1 || r < 1)
            throw std::invalid_argument("Topology: d, K, L, r must be >= 1");
    }

    // Weights inside one subnetwork: layer 0 is r x (d+1), layers 1..L-1 are r x (r+1).
    std::size_t subnet_weight_count() const {
        return static_cast<std::size_t>(r) * (d + 1) +
               static_cast<std::size_t>(L - 1) * r * (r + 1);
    }

    std::size_t total_weight_count() const {
        return static_cast<std::size_t>(K) * (subnet_weight_count() + 1);
    }

    bool operator==(const Topology&) const = default;
};

// Coordinates of one weight. l in 0..L-1 addresses w_{k,i,j}^{(l)} with neuron row
// i in 0..r-1 and input column j (j == 0 is the bias). l == L addresses the output
// weight of subnet k (i and j are then 0).
struct WeightCoord {
    int k = 0;
    int l = 0;
    int i = 0;
    int j = 0;

    bool operator==(const WeightCoord&) const = default;
};

// All weights in a canonical flat ordering: for each subnet k its layer blocks in
// order l = 0..L-1 (row-major, bias column first), then the K output weights
// appended last. Norms and differences over this flat vector are the Euclidean
// weight-vector norms the optimization analysis quantifies over.
class WeightVector {
  public:
    WeightVector() = default;
    explicit WeightVector(const Topology& topo)
        : topo_(topo), values_(topo.total_weight_count(), 0.0) {}
    WeightVector(const Topology& topo, std::vector<double> values)
        : topo_(topo), values_(std::move(values)) {
        if (values_.size() != topo_.total_weight_count())
            throw std::invalid_argument("WeightVector: value count does not match topology");
    }

    const Topology& topology() const { return topo_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double operator[](std::size_t idx) const { return values_[idx]; }
    double& operator[](std::size_t idx) { return values_[idx]; }

    std::size_t flat_index(const WeightCoord& c) const {
        check_coord(c);
        if (c.l == topo_.L)
            return static_cast<std::size_t>(topo_.K) * topo_.subnet_weight_count() +
                   static_cast<std::size_t>(c.k);
        const std::size_t base = static_cast<std::size_t>(c.k) * topo_.subnet_weight_count();
        std::size_t offset;
        int cols;
        if (c.l == 0) {
            offset = 0;
            cols = topo_.d + 1;
        } else {
            offset = static_cast<std::size_t>(topo_.r) * (topo_.d + 1) +
                     static_cast<std::size_t>(c.l - 1) * topo_.r * (topo_.r + 1);
            cols = topo_.r + 1;
        }
        return base + offset + static_cast<std::size_t>(c.i) * cols + c.j;
    }

    WeightCoord coord_of(std::size_t idx) const {
        if (idx >= size()) throw std::invalid_argument("WeightVector: flat index out of range");
        const std::size_t subnet_size = topo_.subnet_weight_count();
        const std::size_t inner_total = static_cast<std::size_t>(topo_.K) * subnet_size;
        if (idx >= inner_total)
            return WeightCoord{static_cast<int>(idx - inner_total), topo_.L, 0, 0};
        WeightCoord c;
        c.k = static_cast<int>(idx / subnet_size);
        std::size_t rest = idx % subnet_size;
        const std::size_t layer0_size = static_cast<std::size_t>(topo_.r) * (topo_.d + 1);
        if (rest < layer0_size) {
            c.l = 0;
            c.i = static_cast<int>(rest / (topo_.d + 1));
            c.j = static_cast<int>(rest % (topo_.d + 1));
        } else {
            rest -= layer0_size;
            const std::size_t layer_size = static_cast<std::size_t>(topo_.r) * (topo_.r + 1);
            c.l = 1 + static_cast<int>(rest / layer_size);
            rest %= layer_size;
            c.i = static_cast<int>(rest / (topo_.r + 1));
            c.j = static_cast<int>(rest % (topo_.r + 1));
        }
        return c;
    }

    double at(const WeightCoord& c) const { return values_[flat_index(c)]; }
    double& at(const WeightCoord& c) { return values_[flat_index(c)]; }

    double output_weight(int k) const { return at({k, topo_.L, 0, 0}); }
    double& output_weight(int k) { return at({k, topo_.L, 0, 0}); }

    double norm() const {
        double s = 0.0;
        for (double v : values_) s += v * v;
        return std::sqrt(s);
    }

    double distance(const WeightVector& other) const {
        if (other.size() != size()) throw std::invalid_argument("WeightVector: size mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double diff = values_[i] - other.values_[i];
            s += diff * diff;
        }
        return std::sqrt(s);
    }

  private:
    void check_coord(const WeightCoord& c) const {
        if (c.k < 0 || c.k >= topo_.K) throw std::invalid_argument("WeightCoord: k out of range");
        if (c.l < 0 || c.l > topo_.L) throw std::invalid_argument("WeightCoord: l out of range");
        if (c.l == topo_.L) {
            if (c.i != 0 || c.j != 0)
                throw std::invalid_argument("WeightCoord: output weight requires i = j = 0");
            return;
        }
        if (c.i < 0 || c.i >= topo_.r) throw std::invalid_argument("WeightCoord: i out of range");
        const int cols = (c.l == 0) ? topo_.d + 1 : topo_.r + 1;
        if (c.j < 0 || c.j >= cols) throw std::invalid_argument("WeightCoord: j out of range");
    }

    Topology topo_;
    std::vector<double> values_;
};

}  // namespace parnet
