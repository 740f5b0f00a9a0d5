#include "decoder.hpp"

#include <algorithm>

#include "errors.hpp"
#include "mds.hpp"

namespace strelay {

DestinationDecoder::DestinationDecoder(const CodeSuite& suite, BudgetMode mode)
    : suite_(suite), p_(suite.params), f_(suite.field), mode_(mode) {}

bool DestinationDecoder::flags_known(int from, int to) const {
    for (int t = std::max(0, from); t <= to; ++t)
        if (t >= static_cast<int>(known_view_.size()) || known_view_[t] < 0) return false;
    return true;
}

void DestinationDecoder::merge_header(int t, const std::vector<std::uint8_t>& header) {
    if (header.size() != static_cast<std::size_t>(p_.delay) + 1)
        throw DimensionError("header length must be T+1");
    for (int d = 0; d <= p_.delay; ++d) {
        const int s = t - p_.delay + d;
        if (s < 0) {
            if (header[d]) throw InternalFault("header marks a negative slot erased");
            continue;
        }
        const std::int8_t bit = header[d] ? 1 : 0;
        if (known_view_[s] >= 0 && known_view_[s] != bit)
            throw InternalFault("conflicting first-link headers for slot " + std::to_string(s));
        known_view_[s] = bit;
        src_flags_[s] = header[d];
    }
}

void DestinationDecoder::check_relay_budget(int t) {
    const int a = t - p_.delay;
    if (a < 0) return;
    int cnt = 0;
    for (int u = a; u <= t; ++u) cnt += rel_erased_[u];
    if (cnt <= p_.n2_erasures) return;
    if (mode_ == BudgetMode::Lemma2Extended && cnt == p_.n2_erasures + 1 && rel_erased_[a]) {
        if (known_view_[a] < 0)
            throw InternalFault("anchor flag unknown while budget-checking");
        if (known_view_[a] == 1) return;  // erased-source anchor: slot a is free
    }
    throw ChannelContractViolation("second-link erasures exceed the budget in window [" +
                                   std::to_string(a) + ":" + std::to_string(t) + "]");
}

std::vector<int> DestinationDecoder::ingest(int t, const RelayPacket* pkt) {
    if (t != next_) throw SequencingError("decoder ingest out of order");
    ++next_;
    src_flags_.push_back(0);
    known_view_.push_back(-1);
    rel_erased_.push_back(pkt == nullptr);
    rx_.emplace_back();
    long_rx_.emplace_back();
    decoded_.emplace_back();
    finalized_at_.push_back(-1);

    if (pkt != nullptr) {
        if (pkt->payload.size() != static_cast<std::size_t>(p_.n2))
            throw DimensionError("relay packet payload length does not match n2");
        merge_header(t, pkt->header);

        // Parse the payload with the relay's layout rules; the packet's own
        // header covers every flag the layout depends on.
        auto rp = std::make_unique<ReceivedPacket>();
        rp->payload = pkt->payload;
        const FlagsView fv{src_flags_.data(), static_cast<int>(src_flags_.size())};
        std::int64_t pos = 0;
        for (int tp = std::max(0, t - p_.delay); tp <= t; ++tp) {
            if (fv.erased(tp)) continue;
            rp->contribs.emplace_back(tp, pos);
            pos += p_.layers_relay;
        }
        for (int t0 = std::max(0, t - p_.delay); t0 < t; ++t0) {
            if (!fv.erased(t0)) continue;
            std::int64_t first = 0;
            for (int i = 1; i < t - t0; ++i) first += alpha_step(p_, fv, t0, i, first);
            const std::int64_t a = alpha_step(p_, fv, t0, t - t0, first);
            for (std::int64_t idx = 0; idx < a; ++idx)
                long_rx_[t0].emplace_back(static_cast<std::size_t>(first + idx),
                                          rp->payload[pos + idx]);
            pos += a;
        }
        if (pos > p_.n2) throw InternalFault("parsed layout overflows n2");
        rx_[t] = std::move(rp);
    }
    check_relay_budget(t);

    std::vector<int> done;
    while (next_fin_ < next_ && try_finalize(next_fin_, t)) {
        done.push_back(next_fin_);
        ++next_fin_;
    }
    return done;
}

bool DestinationDecoder::try_finalize(int tm, int now) {
    if (known_view_[tm] < 0) return false;
    const int last = std::min(now, tm + p_.delay);

    if (known_view_[tm] == 0) {
        // Non-erased branch: every received packet in [tm : tm+T] carries one
        // symbol of each of the layers_relay sub-packet diagonals. All the
        // diagonals share one erasure geometry, so the small missing-symbol
        // system is inverted once and applied per sub-packet.
        const int kd = p_.k_dprime;
        std::vector<std::int64_t> sys_base(kd, -1);
        std::vector<std::pair<int, std::int64_t>> par;  // (parity column, payload base)
        int got = 0;
        for (int u = tm; u <= last; ++u) {
            if (!rx_[u]) continue;
            for (const auto& [tp, off] : rx_[u]->contribs)
                if (tp == tm) {
                    ++got;
                    if (u - tm < kd)
                        sys_base[u - tm] = off;
                    else
                        par.emplace_back(u - tm - kd, off);
                    break;
                }
        }
        if (got < kd) return false;
        std::vector<int> missing;
        for (int a = 0; a < kd; ++a)
            if (sys_base[a] < 0) missing.push_back(a);
        const std::size_t mu = missing.size();
        par.resize(mu);

        Matrix inv;
        if (mu > 0) {
            Matrix a(mu, mu), id(mu, mu);
            for (std::size_t r = 0; r < mu; ++r) {
                id.at(r, r) = 1;
                for (std::size_t c = 0; c < mu; ++c)
                    a.at(r, c) = suite_.grelay.at(missing[c], kd + par[r].first);
            }
            inv = solve_linear_system_multi(f_, a, id);
        }
        SymbolVec m(static_cast<std::size_t>(p_.k));
        SymbolVec rhs(mu);
        for (std::int64_t i = 0; i < p_.layers_relay; ++i) {
            Symbol* sub = m.data() + i * kd;
            for (int a = 0; a < kd; ++a)
                if (sys_base[a] >= 0) sub[a] = rx_[tm + a]->payload[sys_base[a] + i];
            for (std::size_t r = 0; r < mu; ++r) {
                Symbol acc = rx_[tm + kd + par[r].first]->payload[par[r].second + i];
                for (int a = 0; a < kd; ++a)
                    if (sys_base[a] >= 0)
                        acc = f_.sub(acc,
                                     f_.mul(sub[a], suite_.grelay.at(a, kd + par[r].first)));
                rhs[r] = acc;
            }
            for (std::size_t c = 0; c < mu; ++c) {
                Symbol acc = 0;
                for (std::size_t r = 0; r < mu; ++r)
                    acc = f_.add(acc, f_.mul(inv.at(c, r), rhs[r]));
                sub[missing[c]] = acc;
            }
        }
        decoded_[tm] = std::move(m);
        finalized_at_[tm] = now;
        return true;
    }

    // Erased branch: decode the estimate vector from the long code, then
    // cancel interference with already-finalized messages.
    if (static_cast<std::int64_t>(long_rx_[tm].size()) < p_.k) return false;
    // The schedule replay needs the first-link flags around tm; make sure the
    // merged history covers them before committing.
    {
        int seen = 0;
        for (int u = tm + 1; u <= tm + p_.delay && seen < p_.k_prime; ++u) {
            if (u >= static_cast<int>(known_view_.size()) || known_view_[u] < 0) return false;
            if (!src_flags_[u]) ++seen;
        }
        if (seen < p_.k_prime) return false;
        if (!flags_known(tm - p_.k_prime + 1, tm - 1)) return false;
    }

    SymbolVec est =
        suite_.plong_slab.empty()
            ? cauchy_decode(f_, static_cast<std::size_t>(p_.k), long_rx_[tm])
            : cauchy_decode_slab(f_, static_cast<std::size_t>(p_.k), long_rx_[tm],
                                 suite_.plong_slab.data(), CodeSuite::kSlab);
    SymbolVec m(static_cast<std::size_t>(p_.k));
    const FlagsView fv{src_flags_.data(), static_cast<int>(src_flags_.size())};
    for (int j = 1; j <= p_.k_prime; ++j) {
        const DiagonalStep step = compute_diagonal_step(f_, p_, suite_.gsrc, fv, tm, j);
        for (std::int64_t layer = 0; layer < p_.layers_source; ++layer) {
            Symbol v = est[(j - 1) * p_.layers_source + layer];
            for (const auto& it : step.interference) {
                if (it.time < 0) continue;
                if (it.time >= next_fin_) throw InternalFault("interference not yet finalized");
                const Symbol prev = decoded_[it.time][layer * p_.k_prime + it.local_index];
                v = f_.sub(v, f_.mul(it.coeff, prev));
            }
            m[layer * p_.k_prime + step.target_local] = v;
        }
    }
    decoded_[tm] = std::move(m);
    finalized_at_[tm] = now;
    return true;
}

}  // namespace strelay
