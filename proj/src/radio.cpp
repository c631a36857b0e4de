#include "wsn/radio.hpp"

namespace wsn {

const char* action_name(Action a) {
    switch (a) {
        case Action::TxData: return "TX_DATA";
        case Action::RxData: return "RX_DATA";
        case Action::TxCtrl: return "TX_CTRL";
        case Action::RxCtrl: return "RX_CTRL";
        case Action::Aggregate: return "AGGREGATE";
    }
    return "?";
}

}  // namespace wsn
