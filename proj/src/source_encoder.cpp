#include "source_encoder.hpp"

#include "errors.hpp"
#include "mds.hpp"

namespace strelay {

CodeSuite::CodeSuite(const CodeParams& p) : field(p.field_order), params(p) {
    gsrc = make_systematic_mds_generator(field, p.n_prime, p.k_prime);
    grelay = make_systematic_mds_generator(field, p.n_dprime, p.k_dprime);
    if (field.is_binary()) {
        const int kd = p.k_dprime;
        grelay_parity_log.assign(std::size_t(kd) * p.n2_erasures, 0);
        for (int a = 0; a < kd; ++a)
            for (int b = 0; b < p.n2_erasures; ++b)
                grelay_parity_log[a * p.n2_erasures + b] =
                    field.log_table()[grelay.at(a, kd + b)];
    }

    const std::int64_t n_long_max = std::int64_t(p.delay) * p.layers_source;
    if (n_long_max >= field.size())
        throw CodeLengthExceedsFieldError(
            "field order must exceed the longest erased-branch code length " +
            std::to_string(n_long_max));
    const std::size_t k = static_cast<std::size_t>(p.k);
    const std::size_t rmax = static_cast<std::size_t>(n_long_max - p.k);
    plong = Matrix(k, rmax);
    if (field.is_binary()) {
        plong_log.assign(k * rmax, 0);
        plong_slab.assign((rmax + kSlab - 1) / kSlab * kSlab * k, 0);
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < rmax; ++j) {
            const Symbol e = cauchy_parity_entry(field, k, i, j);
            plong.at(i, j) = e;
            if (field.is_binary()) {
                plong_log[i * rmax + j] = field.log_table()[e];
                plong_slab[(j / kSlab * k + i) * kSlab + j % kSlab] =
                    static_cast<std::uint16_t>(e);
            }
        }
    }
}

std::size_t source_coord_sys(const CodeParams& p, std::int64_t layer, int a) {
    return static_cast<std::size_t>(layer * p.n_prime + (p.k_prime - 1 - a));
}

std::size_t source_coord_par(const CodeParams& p, std::int64_t layer, int b) {
    return static_cast<std::size_t>(layer * p.n_prime + p.k_prime +
                                    (p.n1_erasures - 1 - b));
}

SymbolVec message_from_source_packet(const CodeParams& p, const SymbolVec& x) {
    if (x.size() != static_cast<std::size_t>(p.n1))
        throw DimensionError("source packet length does not match n1");
    SymbolVec m(static_cast<std::size_t>(p.k));
    for (std::int64_t layer = 0; layer < p.layers_source; ++layer)
        for (int a = 0; a < p.k_prime; ++a)
            m[layer * p.k_prime + a] = x[source_coord_sys(p, layer, a)];
    return m;
}

SourceEncoder::SourceEncoder(const CodeSuite& suite) : suite_(suite) {}

Symbol SourceEncoder::message_symbol(int t, std::int64_t index) const {
    if (t < 0) return 0;
    if (t >= static_cast<int>(history_.size()))
        throw IncompleteHistoryError("message slot " + std::to_string(t) + " not yet pushed");
    return history_[t][index];
}

SymbolVec SourceEncoder::encode_next(const SymbolVec& message) {
    const CodeParams& p = suite_.params;
    if (message.size() != static_cast<std::size_t>(p.k))
        throw DimensionError("message length does not match k");
    history_.push_back(message);
    const int t = static_cast<int>(history_.size()) - 1;

    SymbolVec x(static_cast<std::size_t>(p.n1), 0);
    const Field& f = suite_.field;
    const bool fast = f.is_binary();
    const std::uint16_t* log = fast ? f.log_table() : nullptr;
    const std::uint16_t* exp = fast ? f.exp_table() : nullptr;
    for (std::int64_t layer = 0; layer < p.layers_source; ++layer) {
        for (int a = 0; a < p.k_prime; ++a)
            x[source_coord_sys(p, layer, a)] = message[layer * p.k_prime + a];
        for (int b = 0; b < p.n1_erasures; ++b) {
            // Parity b of the diagonal that started at t - k' - b.
            const int tau = t - p.k_prime - b;
            Symbol acc = 0;
            for (int a = 0; a < p.k_prime; ++a) {
                const Symbol s = message_symbol(tau + a, layer * p.k_prime + a);
                if (s == 0) continue;
                const Symbol g = suite_.gsrc.at(a, p.k_prime + b);
                acc = fast ? acc ^ exp[log[s] + log[g]] : f.add(acc, f.mul(s, g));
            }
            x[source_coord_par(p, layer, b)] = acc;
        }
    }
    return x;
}

}  // namespace strelay
