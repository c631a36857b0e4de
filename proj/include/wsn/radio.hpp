#pragma once

#include <cstdint>

#include "wsn/model.hpp"

namespace wsn {

// Every joule spent anywhere in the simulator is computed by one of the
// functions below; the energy ledger is replayable against them.

enum class Action { TxData, RxData, TxCtrl, RxCtrl, Aggregate };

inline double tx_cost(const RadioParams& radio, std::int64_t bits, double d) {
    const double k = static_cast<double>(bits);
    if (d < radio.d0())
        return k * radio.e_elec + k * radio.eps_fs * d * d;
    return k * radio.e_elec + k * radio.eps_mp * d * d * d * d;
}

inline double rx_cost(const RadioParams& radio, std::int64_t bits) {
    return static_cast<double>(bits) * radio.e_elec;
}

// Fusing `signals` k-bit packets into one k-bit packet.
inline double aggregation_cost(const RadioParams& radio, std::int64_t bits,
                               std::int64_t signals) {
    return radio.e_da * static_cast<double>(bits) * static_cast<double>(signals);
}

// Ledger entries carry (action, bits, distance); for Aggregate the bits
// column holds the total fused bits (packet_bits * signals) so the cost
// stays recomputable from the entry alone.
inline double action_cost(const RadioParams& radio, Action action,
                          std::int64_t bits, double distance) {
    switch (action) {
        case Action::TxData:
        case Action::TxCtrl:
            return tx_cost(radio, bits, distance);
        case Action::RxData:
        case Action::RxCtrl:
            return rx_cost(radio, bits);
        case Action::Aggregate:
            return aggregation_cost(radio, bits, 1);
    }
    return 0.0;
}

const char* action_name(Action a);

}  // namespace wsn
