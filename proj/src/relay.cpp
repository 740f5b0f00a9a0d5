#include "relay.hpp"

#include <algorithm>

#include "errors.hpp"

namespace strelay {

RelayNode::RelayNode(const CodeSuite& suite)
    : suite_(suite), p_(suite.params), f_(suite.field) {}

void RelayNode::ingest(int t, const SymbolVec* x) {
    if (t != next_) throw SequencingError("relay ingest out of order");
    ++next_;
    flags_.push_back(x == nullptr);
    xs_.emplace_back();
    msgs_.emplace_back();
    subpar_.emplace_back();
    const FlagsView fv{flags_.data(), static_cast<int>(flags_.size())};

    if (x == nullptr) {
        pending_.emplace(t, Pending{});
        return;
    }
    if (x->size() != static_cast<std::size_t>(p_.n1))
        throw DimensionError("source packet length does not match n1");
    xs_[t] = *x;
    msgs_[t] = message_from_source_packet(p_, *x);

    // Parities of this message's sub-packet diagonals (used by emit for the
    // next N2 parity slots of each diagonal).
    SymbolVec& par = subpar_[t];
    par.assign(static_cast<std::size_t>(p_.layers_relay) * p_.n2_erasures, 0);
    const SymbolVec& m = msgs_[t];
    if (f_.is_binary()) {
        const std::uint16_t* log = f_.log_table();
        const std::uint16_t* exp = f_.exp_table();
        const std::uint16_t* glog = suite_.grelay_parity_log.data();
        for (std::int64_t i = 0; i < p_.layers_relay; ++i) {
            const Symbol* sub = m.data() + i * p_.k_dprime;
            Symbol* out_row = par.data() + i * p_.n2_erasures;
            for (int a = 0; a < p_.k_dprime; ++a) {
                if (sub[a] == 0) continue;
                const std::uint16_t la = log[sub[a]];
                const std::uint16_t* row = glog + a * p_.n2_erasures;
                for (int b = 0; b < p_.n2_erasures; ++b) out_row[b] ^= exp[la + row[b]];
            }
        }
    } else {
        for (std::int64_t i = 0; i < p_.layers_relay; ++i)
            for (int b = 0; b < p_.n2_erasures; ++b) {
                Symbol acc = 0;
                for (int a = 0; a < p_.k_dprime; ++a)
                    acc = f_.add(acc, f_.mul(m[i * p_.k_dprime + a],
                                             suite_.grelay.at(a, p_.k_dprime + b)));
                par[i * p_.n2_erasures + b] = acc;
            }
    }

    // Every incomplete erased slot gains one batch of layers_source estimates.
    // The solve structure is shared by all layers; only coordinates differ.
    for (auto& [t0, pd] : pending_) {
        if (pd.batches >= p_.k_prime) continue;
        if (t0 + p_.delay < t) continue;  // past its emission window, leave as is
        const int j = pd.batches + 1;
        DiagonalStep step = compute_diagonal_step(f_, p_, suite_.gsrc, fv, t0, j);
        for (std::int64_t layer = 0; layer < p_.layers_source; ++layer) {
            Symbol acc = 0;
            for (const auto& rt : step.recipe) {
                const std::size_t coord = rt.role == CoordRole::Systematic
                                              ? source_coord_sys(p_, layer, rt.index)
                                              : source_coord_par(p_, layer, rt.index);
                acc = f_.add(acc, f_.mul(rt.coeff, xs_[rt.time][coord]));
            }
            pd.values.push_back(acc);
        }
        pd.steps.push_back(std::move(step));
        pd.batches = j;
    }
}

void RelayNode::append_long_code_symbols(Pending& pd, std::int64_t first, std::int64_t count,
                                         Symbol* out) {
    const std::int64_t k = p_.k;
    std::int64_t pos = first;
    std::int64_t left = count;
    // Estimates (systematic part of the long code), in recovery order.
    while (left > 0 && pos < k) {
        if (pos >= static_cast<std::int64_t>(pd.values.size()))
            throw InternalFault("segment schedule ran ahead of recovered estimates");
        *out++ = pd.values[pos++];
        --left;
    }
    if (left == 0) return;
    // MDS parities over the k estimate values.
    if (static_cast<std::int64_t>(pd.values.size()) != k)
        throw InternalFault("long-code parity requested before all estimates exist");
    const std::size_t c0 = static_cast<std::size_t>(pos - k);
    const std::size_t width = static_cast<std::size_t>(left);
    if (c0 + width > suite_.plong.cols)
        throw InternalFault("long-code schedule exceeds parity table");
    if (f_.is_binary()) {
        if (pd.split.empty()) {
            pd.split.resize(pd.values.size());
            for (std::size_t i = 0; i < pd.values.size(); ++i)
                if (pd.values[i]) gf16_build_tables(f_, pd.values[i], pd.split[i]);
        }
        scratch16_.assign(width, 0);
        std::size_t done = 0;
        while (done < width) {
            const std::size_t c = c0 + done;
            const std::size_t slab = c / CodeSuite::kSlab;
            const std::size_t in_slab = c % CodeSuite::kSlab;
            const std::size_t len = std::min(width - done, CodeSuite::kSlab - in_slab);
            for (std::int64_t i = 0; i < k; ++i) {
                if (pd.values[i] == 0) continue;
                gf16_muladd_row(pd.split[i], scratch16_.data() + done,
                                suite_.slab_row(slab, i) + in_slab, len);
            }
            done += len;
        }
        for (std::size_t c = 0; c < width; ++c) out[c] = scratch16_[c];
    } else {
        for (std::size_t c = c0; c < c0 + width; ++c) {
            Symbol acc = 0;
            for (std::int64_t i = 0; i < k; ++i)
                acc = f_.add(acc, f_.mul(pd.values[i], suite_.plong.at(i, c)));
            out[c - c0] = acc;
        }
    }
}

RelayPacket RelayNode::emit(int t) {
    if (t != next_ - 1) throw SequencingError("emit must follow ingest of the same slot");
    const FlagsView fv{flags_.data(), static_cast<int>(flags_.size())};
    RelayPacket pkt;
    pkt.time = t;
    pkt.payload.assign(static_cast<std::size_t>(p_.n2), 0);

    std::int64_t pos = 0;
    for (int tp = std::max(0, t - p_.delay); tp <= t; ++tp) {
        if (flags_[tp]) continue;
        const int d = t - tp;
        for (std::int64_t i = 0; i < p_.layers_relay; ++i)
            pkt.payload[pos + i] = d < p_.k_dprime
                                       ? msgs_[tp][i * p_.k_dprime + d]
                                       : subpar_[tp][i * p_.n2_erasures + (d - p_.k_dprime)];
        pos += p_.layers_relay;
    }
    for (int t0 = std::max(0, t - p_.delay); t0 < t; ++t0) {
        if (!flags_[t0]) continue;
        Pending& pd = pending_.at(t0);
        const std::int64_t a = alpha_step(p_, fv, t0, t - t0, pd.emitted);
        if (a > 0) {
            if (pos + a > p_.n2) throw InternalFault("relay packet overflows n2");
            append_long_code_symbols(pd, pd.emitted, a, pkt.payload.data() + pos);
            pos += a;
            pd.emitted += a;
        }
    }
    if (pos > p_.n2) throw InternalFault("relay packet overflows n2");
    pkt.fill = pos;
    max_fill_ = std::max(max_fill_, pos);

    pkt.header.assign(p_.delay + 1, 0);
    for (int d = 0; d <= p_.delay; ++d) {
        const int s = t - p_.delay + d;
        if (s >= 0 && flags_[s]) pkt.header[d] = 1;
    }
    return pkt;
}

std::int64_t RelayNode::kappa_at(int t0, int t) const {
    const FlagsView fv{flags_.data(), static_cast<int>(flags_.size())};
    return kappa(p_, fv, t0, t);
}

bool RelayNode::recovery_complete(int t0) const {
    auto it = pending_.find(t0);
    return it != pending_.end() && it->second.batches == p_.k_prime;
}

const std::vector<Estimate>& RelayNode::estimates_for(int t0) const {
    static const std::vector<Estimate> kEmpty;
    auto it = pending_.find(t0);
    if (it == pending_.end()) return kEmpty;
    const Pending& pd = it->second;
    if (pd.ledger.size() != pd.values.size()) {
        pd.ledger.clear();
        pd.ledger.reserve(pd.values.size());
        for (int b = 0; b < pd.batches; ++b) {
            const DiagonalStep& step = pd.steps[b];
            for (std::int64_t layer = 0; layer < p_.layers_source; ++layer) {
                Estimate est;
                est.source_time = t0;
                est.symbol_index = layer * p_.k_prime + step.target_local;
                est.value = pd.values[b * p_.layers_source + layer];
                for (const auto& ref : step.interference)
                    est.interference.push_back(
                        {ref.time, layer * p_.k_prime + ref.local_index, ref.coeff});
                pd.ledger.push_back(std::move(est));
            }
        }
    }
    return pd.ledger;
}

}  // namespace strelay
