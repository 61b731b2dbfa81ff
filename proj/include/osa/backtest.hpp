#pragma once

#include <span>
#include <vector>

#include "osa/errors.hpp"

namespace osa {

enum class TradeAction { Buy, Sell };

struct TradeEvent {
    int round = 0;
    TradeAction action = TradeAction::Buy;
    double price = 0.0;
};

struct TradeLog {
    std::vector<TradeEvent> events;   // alternating buy/sell, starting with a buy
    double revenue = 0.0;             // realized, completed round trips only
    bool open_position = false;
    double open_mark = 0.0;           // unrealized value of an open position at series end
};

// Buy one unit when the portfolio value reaches the lower threshold, sell it
// back at the upper threshold. No transaction costs.
inline TradeLog threshold_backtest(std::span<const double> values, double lower = -1.0,
                                   double upper = 1.0) {
    if (!(upper > lower)) throw ParameterError("threshold_backtest: need upper > lower");

    TradeLog log;
    bool long_position = false;
    double entry = 0.0;
    for (std::size_t t = 0; t < values.size(); ++t) {
        const double v = values[t];
        if (!long_position && v <= lower) {
            log.events.push_back({static_cast<int>(t), TradeAction::Buy, v});
            entry = v;
            long_position = true;
        } else if (long_position && v >= upper) {
            log.events.push_back({static_cast<int>(t), TradeAction::Sell, v});
            log.revenue += v - entry;
            long_position = false;
        }
    }
    log.open_position = long_position;
    if (long_position && !values.empty()) log.open_mark = values.back() - entry;
    return log;
}

}  // namespace osa
