#include "morsedyn/persistence.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mdyn {

void PersistenceModule::validate() const {
    if (!dims.empty() && arrows.size() != dims.size() - 1)
        throw std::invalid_argument("persistence module: arrow count mismatch");
    if (forward.size() != arrows.size())
        throw std::invalid_argument("persistence module: orientation count mismatch");
    for (size_t k = 0; k < arrows.size(); ++k) {
        size_t src = forward[k] ? dims[k] : dims[k + 1];
        size_t dst = forward[k] ? dims[k + 1] : dims[k];
        if (arrows[k].cols != src || arrows[k].rows != dst)
            throw std::invalid_argument("persistence module: arrow " +
                                        std::to_string(k) + " has wrong shape");
    }
}

namespace {

// Column echelon basis over Z/2 with pivot bookkeeping; returns the basis
// columns (in place) and drops zero columns.
struct Echelon {
    std::vector<std::vector<uint8_t>> cols;
    std::vector<int> pivot;  // per column

    // Reduces v against the basis; returns true (and absorbs v) when v was
    // independent.
    bool add(std::vector<uint8_t> v) {
        while (true) {
            int p = -1;
            for (size_t r = 0; r < v.size(); ++r)
                if (v[r]) { p = static_cast<int>(r); break; }
            if (p < 0) return false;
            bool hit = false;
            for (size_t j = 0; j < cols.size(); ++j)
                if (pivot[j] == p) {
                    for (size_t r = 0; r < v.size(); ++r) v[r] ^= cols[j][r];
                    hit = true;
                    break;
                }
            if (!hit) {
                cols.push_back(std::move(v));
                pivot.push_back(p);
                return true;
            }
        }
    }
};

// Nullspace basis of m (combinations of input columns reducing to zero).
std::vector<std::vector<uint8_t>> nullspace(const MatZ2& m) {
    std::vector<std::vector<uint8_t>> echelon, combos, kernel;
    std::vector<int> pivots;
    for (size_t j = 0; j < m.cols; ++j) {
        std::vector<uint8_t> v = m.col[j];
        std::vector<uint8_t> combo(m.cols, 0);
        combo[j] = 1;
        while (true) {
            int p = -1;
            for (size_t r = 0; r < v.size(); ++r)
                if (v[r]) { p = static_cast<int>(r); break; }
            if (p < 0) { kernel.push_back(std::move(combo)); break; }
            bool hit = false;
            for (size_t c = 0; c < echelon.size(); ++c)
                if (pivots[c] == p) {
                    for (size_t r = 0; r < v.size(); ++r) v[r] ^= echelon[c][r];
                    for (size_t r = 0; r < m.cols; ++r) combo[r] ^= combos[c][r];
                    hit = true;
                    break;
                }
            if (!hit) {
                echelon.push_back(std::move(v));
                pivots.push_back(p);
                combos.push_back(std::move(combo));
                break;
            }
        }
    }
    return kernel;
}

}  // namespace

size_t generalized_rank(const PersistenceModule& m, int i, int j) {
    int n = static_cast<int>(m.length());
    if (i < 1 || j > n || i > j) throw std::out_of_range("generalized_rank: bad segment");
    size_t lo = static_cast<size_t>(i - 1), hi = static_cast<size_t>(j - 1);
    if (lo == hi) return m.dims[lo];

    // Offsets of each space inside the direct sum over [lo, hi].
    std::vector<size_t> off(hi - lo + 2, 0);
    for (size_t k = lo; k <= hi; ++k) off[k - lo + 1] = off[k - lo] + m.dims[k];
    size_t total = off[hi - lo + 1];

    // Limit: tuples (x_lo..x_hi) with x_dst = A x_src per arrow. Constraint
    // rows stacked per arrow.
    size_t crows = 0;
    for (size_t k = lo; k < hi; ++k) crows += m.arrows[k].rows;
    MatZ2 cons = MatZ2::zero(crows, total);
    size_t row0 = 0;
    for (size_t k = lo; k < hi; ++k) {
        const MatZ2& a = m.arrows[k];
        size_t src = m.forward[k] ? k : k + 1;
        size_t dst = m.forward[k] ? k + 1 : k;
        for (size_t c = 0; c < a.cols; ++c)
            for (size_t r = 0; r < a.rows; ++r)
                if (a.col[c][r]) cons.col[off[src - lo] + c][row0 + r] ^= 1;
        for (size_t r = 0; r < a.rows; ++r)
            cons.col[off[dst - lo] + r][row0 + r] ^= 1;
        row0 += a.rows;
    }
    std::vector<std::vector<uint8_t>> lim = nullspace(cons);

    // Colimit relations: inj_src(v) + inj_dst(A v) for every arrow and basis
    // vector of the source.
    Echelon rel;
    for (size_t k = lo; k < hi; ++k) {
        const MatZ2& a = m.arrows[k];
        size_t src = m.forward[k] ? k : k + 1;
        size_t dst = m.forward[k] ? k + 1 : k;
        for (size_t c = 0; c < a.cols; ++c) {
            std::vector<uint8_t> v(total, 0);
            v[off[src - lo] + c] ^= 1;
            for (size_t r = 0; r < a.rows; ++r)
                if (a.col[c][r]) v[off[dst - lo] + r] ^= 1;
            rel.add(std::move(v));
        }
    }
    // Rank of limit -> colimit: inject each limit tuple through its first
    // coordinate (all coordinates agree in the colimit) and count the images
    // independent modulo the relation subspace.
    size_t rank = 0;
    for (const auto& t : lim) {
        std::vector<uint8_t> v(total, 0);
        for (size_t c = 0; c < m.dims[lo]; ++c) v[c] = t[c];
        if (rel.add(std::move(v))) ++rank;
    }
    return rank;
}

namespace {

std::vector<Interval> decompose_by_rank(
    const PersistenceModule& m,
    const std::function<size_t(int, int)>& rk) {
    int n = static_cast<int>(m.length());
    auto N = [&](int b, int d) -> long {
        if (b < 1 || d > n || b > d) return 0;
        return static_cast<long>(rk(b, d));
    };
    std::vector<Interval> out;
    for (int b = 1; b <= n; ++b)
        for (int d = b; d <= n; ++d) {
            long mult = N(b, d) - N(b - 1, d) - N(b, d + 1) + N(b - 1, d + 1);
            if (mult < 0) throw std::logic_error("negative interval multiplicity");
            for (long c = 0; c < mult; ++c) out.push_back({b, d});
        }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return out;
}

}  // namespace

std::vector<Interval> filtration_persistence(const PersistenceModule& m) {
    m.validate();
    for (uint8_t f : m.forward)
        if (!f) throw std::invalid_argument("filtration_persistence: backward arrow");
    if (m.dims.empty()) return {};
    int n = static_cast<int>(m.length());
    // rank(i,j) = rank of the composition A_{j-1} ... A_i; precompute rows of
    // the composition table by carrying the product rightward.
    std::vector<std::vector<size_t>> rk(static_cast<size_t>(n) + 1,
                                        std::vector<size_t>(static_cast<size_t>(n) + 1, 0));
    for (int i = 1; i <= n; ++i) {
        rk[i][i] = m.dims[static_cast<size_t>(i - 1)];
        MatZ2 comp = MatZ2::identity(m.dims[static_cast<size_t>(i - 1)]);
        for (int j = i + 1; j <= n; ++j) {
            comp = mat_mul(m.arrows[static_cast<size_t>(j - 2)], comp);
            rk[i][j] = mat_rank(comp);
        }
    }
    return decompose_by_rank(m, [&](int i, int j) { return rk[i][j]; });
}

std::vector<Interval> zigzag_decompose(const PersistenceModule& m) {
    m.validate();
    if (m.dims.empty()) return {};
    return decompose_by_rank(
        m, [&](int i, int j) { return generalized_rank(m, i, j); });
}

bool pointwise_check(const PersistenceModule& m, const std::vector<Interval>& iv) {
    for (int t = 1; t <= static_cast<int>(m.length()); ++t) {
        size_t c = 0;
        for (const Interval& x : iv)
            if (x.birth <= t && t <= x.death) ++c;
        if (c != m.dims[static_cast<size_t>(t - 1)]) return false;
    }
    return true;
}

std::vector<Bar> to_bars(const std::vector<Interval>& iv, int hom_dim, int steps) {
    std::vector<Bar> out;
    out.reserve(iv.size());
    for (const Interval& x : iv)
        out.push_back({hom_dim, x.birth, x.death == steps ? kInfDeath : x.death});
    return out;
}

void write_barcode(std::ostream& out, const Barcode& b) {
    std::vector<Bar> bars = b.bars;
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        if ((a.death == kInfDeath) != (b.death == kInfDeath))
            return b.death == kInfDeath;
        return a.death < b.death;
    });
    for (const Bar& x : bars) {
        out << x.dim << "," << x.birth << ",";
        if (x.death == kInfDeath) out << "inf";
        else out << x.death;
        out << "\n";
    }
}

Barcode read_barcode(std::istream& in) {
    Barcode b;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f0, f1, f2;
        if (!std::getline(ls, f0, ',') || !std::getline(ls, f1, ',') ||
            !std::getline(ls, f2))
            throw std::invalid_argument("barcode: malformed row '" + line + "'");
        Bar x;
        x.dim = std::stoi(f0);
        x.birth = std::stoi(f1);
        x.death = f2 == "inf" ? kInfDeath : std::stoi(f2);
        b.bars.push_back(x);
    }
    return b;
}

}  // namespace mdyn
