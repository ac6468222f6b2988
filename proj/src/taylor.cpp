#include "parnet/taylor.hpp"

#include <cmath>
#include <stdexcept>

#include "parnet/sigmoid.hpp"

namespace parnet {

std::vector<double> TaylorGrid::corner_point(const std::vector<int>& cell) const {
    std::vector<double> u(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) u[static_cast<std::size_t>(j)] = corner(cell[static_cast<std::size_t>(j)]);
    return u;
}

std::vector<int> TaylorGrid::cell_of(std::span<const double> x) const {
    std::vector<int> cell(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        int c = static_cast<int>(std::floor((x[static_cast<std::size_t>(j)] + A) / delta()));
        if (c < 0) c = 0;
        if (c >= K) c = K - 1;
        cell[static_cast<std::size_t>(j)] = c;
    }
    return cell;
}

CenteredPolynomial taylor_polynomial(const SmoothTarget& f, std::span<const double> u) {
    const int q = f.q();
    CenteredPolynomial poly(std::vector<double>(u.begin(), u.end()), q);
    const auto& monos = poly.monomials();
    for (std::size_t m = 0; m < monos.size(); ++m)
        poly.coefficient(m) = f.partial(monos[m], u) / multi_index_factorial(monos[m]);
    return poly;
}

double taylor_at(const SmoothTarget& f, std::span<const double> u, std::span<const double> x) {
    return taylor_polynomial(f, u).evaluate(x);
}

std::size_t PiecewiseTaylor::piece_index(const std::vector<int>& cell) const {
    std::size_t idx = 0;
    for (int j = 0; j < grid.d; ++j) {
        const int c = cell[static_cast<std::size_t>(j)];
        if (c < 0 || c >= grid.K) throw std::invalid_argument("piece_index: cell out of range");
        idx = idx * static_cast<std::size_t>(grid.K) + static_cast<std::size_t>(c);
    }
    return idx;
}

namespace {

// Row-major iteration over {0..K-1}^d; any cell coordinatewise below another one
// is visited first, so the recursion over the partial order is well defined.
bool next_cell(std::vector<int>& cell, int K) {
    for (std::size_t j = cell.size(); j-- > 0;) {
        if (++cell[j] < K) return true;
        cell[j] = 0;
    }
    return false;
}

bool strictly_below(const std::vector<int>& a, const std::vector<int>& b) {
    bool all_le = true, any_lt = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) all_le = false;
        if (a[j] < b[j]) any_lt = true;
    }
    return all_le && any_lt;
}

bool coordinatewise_le(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

}  // namespace

PiecewiseTaylor build_pieces(const SmoothTarget& f, const TaylorGrid& grid) {
    if (grid.K < 1) throw std::invalid_argument("build_pieces: K must be >= 1");
    if (grid.d != f.d) throw std::invalid_argument("build_pieces: dimension mismatch");
    PiecewiseTaylor pw;
    pw.grid = grid;
    pw.q = f.q();
    const double lk = std::log(static_cast<double>(grid.K));
    pw.M = std::max(1.0, static_cast<double>(grid.K) * lk * lk);
    std::size_t total = 1;
    for (int j = 0; j < grid.d; ++j) total *= static_cast<std::size_t>(grid.K);
    pw.pieces.reserve(total);

    std::vector<std::vector<int>> cells;
    cells.reserve(total);
    std::vector<int> cell(static_cast<std::size_t>(grid.d), 0);
    do {
        cells.push_back(cell);
    } while (next_cell(cell, grid.K));

    for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::vector<double> u = grid.corner_point(cells[c]);
        CenteredPolynomial piece = taylor_polynomial(f, u);
        // Subtract the degree-q Taylor expansion of every earlier piece below u_k.
        // A degree-q polynomial is its own Taylor polynomial, re-centered exactly.
        for (std::size_t e = 0; e < c; ++e)
            if (strictly_below(cells[e], cells[c])) piece -= pw.pieces[e].recentered(u);
        pw.pieces.push_back(std::move(piece));
    }
    return pw;
}

double eval_P(const PiecewiseTaylor& pw, std::span<const double> x) {
    const TaylorGrid& g = pw.grid;
    for (int j = 0; j < g.d; ++j) {
        const double xj = x[static_cast<std::size_t>(j)];
        if (xj < -g.A || xj >= g.A)
            throw std::invalid_argument("eval_P: point outside [-A, A)^d");
    }
    const std::vector<int> r = g.cell_of(x);
    double sum = 0.0;
    std::vector<int> cell(static_cast<std::size_t>(g.d), 0);
    do {
        if (coordinatewise_le(cell, r)) sum += pw.pieces[pw.piece_index(cell)].evaluate(x);
    } while (next_cell(cell, g.K));
    return sum;
}

double eval_Pbar(const PiecewiseTaylor& pw, std::span<const double> x) {
    const TaylorGrid& g = pw.grid;
    double sum = 0.0;
    std::vector<int> cell(static_cast<std::size_t>(g.d), 0);
    bool first = true;
    do {
        const std::size_t idx = pw.piece_index(cell);
        if (first) {
            sum += pw.pieces[idx].evaluate(x);
            first = false;
            continue;
        }
        double weight = 1.0;
        for (int j = 0; j < g.d; ++j)
            weight *= sigmoid(pw.M * (x[static_cast<std::size_t>(j)] -
                                      g.corner(cell[static_cast<std::size_t>(j)])));
        sum += pw.pieces[idx].evaluate(x) * weight;
    } while (next_cell(cell, g.K));
    return sum;
}

double slab_sum(const PiecewiseTaylor& pw, const std::vector<int>& r, int j,
                std::span<const double> x) {
    const TaylorGrid& g = pw.grid;
    if (j < 0 || j >= g.d) throw std::invalid_argument("slab_sum: axis out of range");
    double sum = 0.0;
    std::vector<int> cell(static_cast<std::size_t>(g.d), 0);
    do {
        if (cell[static_cast<std::size_t>(j)] != r[static_cast<std::size_t>(j)]) continue;
        if (!coordinatewise_le(cell, r)) continue;
        sum += pw.pieces[pw.piece_index(cell)].evaluate(x);
    } while (next_cell(cell, g.K));
    return sum;
}

}  // namespace parnet
