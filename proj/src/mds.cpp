#include "mds.hpp"

#include <algorithm>

#include "errors.hpp"

namespace strelay {

Symbol cauchy_parity_entry(const Field& f, std::size_t k, std::size_t row, std::size_t col) {
    const Symbol x = static_cast<Symbol>(row);
    const Symbol y = static_cast<Symbol>(k + col);
    return f.inv(f.sub(x, y));
}

Matrix make_systematic_mds_generator(const Field& f, std::size_t n, std::size_t k) {
    if (k < 1 || k > n) throw DimensionError("need 1 <= k <= n");
    if (n >= f.size())
        throw CodeLengthExceedsFieldError("code length " + std::to_string(n) +
                                          " exceeds field of order " + std::to_string(f.size()));
    Matrix g(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        g.at(i, i) = 1;
        for (std::size_t j = k; j < n; ++j) g.at(i, j) = cauchy_parity_entry(f, k, i, j - k);
    }
    return g;
}

SymbolVec mds_encode(const Field& f, const Matrix& g, const SymbolVec& message) {
    if (message.size() != g.rows) throw DimensionError("message length does not match k");
    SymbolVec cw(g.cols, 0);
    std::copy(message.begin(), message.end(), cw.begin());
    for (std::size_t j = g.rows; j < g.cols; ++j) {
        Symbol acc = 0;
        for (std::size_t i = 0; i < g.rows; ++i)
            acc = f.add(acc, f.mul(message[i], g.at(i, j)));
        cw[j] = acc;
    }
    return cw;
}

SymbolVec mds_decode_from_subset(const Field& f, const Matrix& g,
                                 const std::vector<std::size_t>& positions,
                                 const SymbolVec& values) {
    const std::size_t k = g.rows;
    if (positions.size() != values.size())
        throw DimensionError("positions/values length mismatch");
    if (positions.size() < k)
        throw InsufficientSymbolsError("need at least " + std::to_string(k) +
                                       " coordinates, got " + std::to_string(positions.size()));
    std::vector<std::size_t> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DimensionError("positions must be distinct");
    if (sorted.back() >= g.cols) throw DimensionError("position out of range");

    Matrix a(k, k);
    SymbolVec b(k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t i = 0; i < k; ++i) a.at(r, i) = g.at(i, positions[r]);
        b[r] = values[r];
    }
    SymbolVec msg = solve_linear_system(f, a, b);
    for (std::size_t r = k; r < positions.size(); ++r) {
        Symbol acc = 0;
        for (std::size_t i = 0; i < k; ++i)
            acc = f.add(acc, f.mul(msg[i], g.at(i, positions[r])));
        if (acc != values[r])
            throw DecodeInconsistencyError("surplus coordinate disagrees with decoded message");
    }
    return msg;
}

namespace {

// Solves sum_u z_u / (x_u - y_b) = rhs_b for the missing coordinates and
// writes them back into msg. Rational interpolation, O(m^2): with N(X)
// interpolated through (y_b, -rhs_b * prod_u (y_b - x_u)), the solution is
// z_u = N(x_u) / prod_{l != u} (x_u - x_l).
void cauchy_fill_missing(const Field& f, SymbolVec& msg,
                         const std::vector<std::size_t>& missing, const SymbolVec& ys,
                         const SymbolVec& rhs) {
    const std::size_t m = missing.size();
    SymbolVec xs(m);
    for (std::size_t i = 0; i < m; ++i) xs[i] = static_cast<Symbol>(missing[i]);

    if (f.is_binary()) {
        const std::uint16_t* log = f.log_table();
        const std::uint16_t* exp = f.exp_table();
        const std::uint32_t order = f.size() - 1;
        // log-domain products; every x_u - y_b is nonzero by construction.
        // lxy[b*m+u] = log(y_b - x_u) is reused three times below.
        std::vector<std::uint16_t> lxy(m * m);
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t u = 0; u < m; ++u) lxy[b * m + u] = log[ys[b] ^ xs[u]];
        std::vector<std::uint32_t> wlog(m);
        std::vector<char> wzero(m);
        for (std::size_t b = 0; b < m; ++b) {
            std::uint64_t acc = 0;
            const std::uint16_t* row = lxy.data() + b * m;
            for (std::size_t u = 0; u < m; ++u) acc += row[u];
            for (std::size_t l = 0; l < m; ++l)
                if (l != b) acc += order - log[ys[b] ^ ys[l]];
            wzero[b] = rhs[b] == 0;
            wlog[b] = static_cast<std::uint32_t>((acc + (wzero[b] ? 0 : log[rhs[b]])) %
                                                 order);
        }
        for (std::size_t u = 0; u < m; ++u) {
            std::uint64_t front = 0;
            for (std::size_t b = 0; b < m; ++b) front += lxy[b * m + u];
            for (std::size_t l = 0; l < m; ++l)
                if (l != u) front += order - log[xs[u] ^ xs[l]];
            const std::uint32_t flog = static_cast<std::uint32_t>(front % order);
            Symbol acc = 0;
            // index stays below 2*(q-1), which the doubled exp table covers
            for (std::size_t b = 0; b < m; ++b) {
                if (wzero[b]) continue;
                acc ^= exp[wlog[b] + order - lxy[b * m + u]];
            }
            msg[missing[u]] = acc ? exp[log[acc] + flog] : 0;
        }
        return;
    }

    SymbolVec w(m);
    for (std::size_t b = 0; b < m; ++b) {
        Symbol dxy = 1;
        for (std::size_t u = 0; u < m; ++u) dxy = f.mul(dxy, f.sub(ys[b], xs[u]));
        Symbol qden = 1;
        for (std::size_t l = 0; l < m; ++l)
            if (l != b) qden = f.mul(qden, f.sub(ys[b], ys[l]));
        w[b] = f.mul(f.neg(rhs[b]), f.mul(dxy, f.inv(qden)));
    }
    for (std::size_t u = 0; u < m; ++u) {
        Symbol gy = 1;
        for (std::size_t b = 0; b < m; ++b) gy = f.mul(gy, f.sub(xs[u], ys[b]));
        Symbol px = 1;
        for (std::size_t l = 0; l < m; ++l)
            if (l != u) px = f.mul(px, f.sub(xs[u], xs[l]));
        Symbol acc = 0;
        for (std::size_t b = 0; b < m; ++b)
            acc = f.add(acc, f.mul(w[b], f.inv(f.sub(xs[u], ys[b]))));
        msg[missing[u]] = f.mul(f.mul(gy, f.inv(px)), acc);
    }
}

struct CauchySplit {
    SymbolVec msg;
    std::vector<char> have;
    std::vector<std::size_t> missing;
    std::vector<std::pair<std::size_t, Symbol>> parity;  // (column, value)
};

CauchySplit split_received(std::size_t k,
                           const std::vector<std::pair<std::size_t, Symbol>>& received) {
    if (received.size() < k)
        throw InsufficientSymbolsError("need at least " + std::to_string(k) +
                                       " coordinates, got " + std::to_string(received.size()));
    CauchySplit s;
    s.msg.assign(k, 0);
    s.have.assign(k, 0);
    for (const auto& [pos, val] : received) {
        if (pos < k) {
            s.msg[pos] = val;
            s.have[pos] = 1;
        } else {
            s.parity.emplace_back(pos - k, val);
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        if (!s.have[i]) s.missing.push_back(i);
    if (s.parity.size() < s.missing.size())
        throw InsufficientSymbolsError("not enough parity coordinates to fill erasures");
    s.parity.resize(s.missing.size());
    return s;
}

}  // namespace

SymbolVec cauchy_decode(const Field& f, std::size_t k,
                        const std::vector<std::pair<std::size_t, Symbol>>& received) {
    CauchySplit s = split_received(k, received);
    const std::size_t m = s.missing.size();
    if (m == 0) return s.msg;
    SymbolVec& msg = s.msg;

    SymbolVec ys(m), rhs(m);
    for (std::size_t b = 0; b < m; ++b) {
        ys[b] = static_cast<Symbol>(k + s.parity[b].first);
        Symbol acc = s.parity[b].second;
        for (std::size_t a = 0; a < k; ++a) {
            if (!s.have[a]) continue;
            if (msg[a] == 0) continue;
            acc = f.sub(acc, f.mul(msg[a], f.inv(f.sub(static_cast<Symbol>(a), ys[b]))));
        }
        rhs[b] = acc;
    }
    cauchy_fill_missing(f, msg, s.missing, ys, rhs);
    return msg;
}

SymbolVec cauchy_decode_logtab(const Field& f, std::size_t k,
                               const std::vector<std::pair<std::size_t, Symbol>>& received,
                               const std::uint16_t* parity_log, std::size_t parity_stride) {
    if (!f.is_binary()) return cauchy_decode(f, k, received);
    CauchySplit s = split_received(k, received);
    const std::size_t m = s.missing.size();
    if (m == 0) return s.msg;
    SymbolVec& msg = s.msg;

    const std::uint16_t* log = f.log_table();
    const std::uint16_t* exp = f.exp_table();
    SymbolVec ys(m), rhs(m), acc(m);
    std::vector<std::size_t> cols(m);
    for (std::size_t b = 0; b < m; ++b) {
        cols[b] = s.parity[b].first;
        ys[b] = static_cast<Symbol>(k + cols[b]);
        acc[b] = 0;
    }
    for (std::size_t a = 0; a < k; ++a) {
        if (!s.have[a] || msg[a] == 0) continue;
        const std::uint16_t la = log[msg[a]];
        const std::uint16_t* row = parity_log + a * parity_stride;
        for (std::size_t b = 0; b < m; ++b) acc[b] ^= exp[la + row[cols[b]]];
    }
    for (std::size_t b = 0; b < m; ++b) rhs[b] = s.parity[b].second ^ acc[b];
    cauchy_fill_missing(f, msg, s.missing, ys, rhs);
    return msg;
}

SymbolVec cauchy_decode_slab(const Field& f, std::size_t k,
                             const std::vector<std::pair<std::size_t, Symbol>>& received,
                             const std::uint16_t* slab, std::size_t slab_width) {
    if (!f.is_binary()) return cauchy_decode(f, k, received);
    CauchySplit s = split_received(k, received);
    const std::size_t m = s.missing.size();
    if (m == 0) return s.msg;
    SymbolVec& msg = s.msg;

    std::vector<std::size_t> cols(m);
    for (std::size_t b = 0; b < m; ++b) cols[b] = s.parity[b].first;
    if (!std::is_sorted(cols.begin(), cols.end())) {
        std::sort(s.parity.begin(), s.parity.end());
        for (std::size_t b = 0; b < m; ++b) cols[b] = s.parity[b].first;
    }

    std::vector<std::uint16_t> acc(m, 0);
    Gf16Tables tb;
    for (std::size_t a = 0; a < k; ++a) {
        if (!s.have[a] || msg[a] == 0) continue;
        gf16_build_tables(f, msg[a], tb);
        // sweep each contiguous run of columns, split at slab boundaries
        std::size_t b = 0;
        while (b < m) {
            std::size_t e = b + 1;
            while (e < m && cols[e] == cols[e - 1] + 1) ++e;
            std::size_t c = cols[b], off = b;
            while (off < e) {
                const std::size_t in_slab = c % slab_width;
                const std::size_t len = std::min(e - off, slab_width - in_slab);
                gf16_muladd_row(tb, acc.data() + off,
                                slab + (c / slab_width * k + a) * slab_width + in_slab, len);
                off += len;
                c += len;
            }
            b = e;
        }
    }
    SymbolVec ys(m), rhs(m);
    for (std::size_t b = 0; b < m; ++b) {
        ys[b] = static_cast<Symbol>(k + cols[b]);
        rhs[b] = s.parity[b].second ^ acc[b];
    }
    cauchy_fill_missing(f, msg, s.missing, ys, rhs);
    return msg;
}

}  // namespace strelay
