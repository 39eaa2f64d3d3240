#include <algorithm>

#include "decentral/econometrics.hpp"
#include "decentral/error.hpp"

namespace decentral {

namespace {

// Control column over the market's contiguous daily grid.
Column market_control(const MarketSeries& market, std::string_view name) {
    if (name == "ROI") {
        const Column* prices = market.find("PriceUSD");
        if (!prices) throw Error(ErrorCode::WindowNotCovered, "ROI needs PriceUSD in the asset market data");
        return returns(*prices, 1);
    }
    if (const Column* col = market.find(name)) {
        return *col;
    }
    if (name == "VtyDayRet30d") {
        if (const Column* prices = market.find("PriceUSD")) return volatility30(*prices);
    }
    throw Error(ErrorCode::WindowNotCovered, "asset market data has no " + std::string(name) + " column");
}

}  // namespace

std::string_view to_string(RddChannel channel) noexcept {
    return channel == RddChannel::Sma30 ? "SMA30" : "EMA";
}

std::vector<std::vector<std::string>> rdd_nested_controls() {
    return {{}, {"TxTfrValAdjUSD", "TxTfrCnt"}, {"TxTfrValAdjUSD", "TxTfrCnt", "ROI", "VtyDayRet30d"}};
}

void RddSpec::validate() const {
    if (!(window_start < event_date && event_date <= window_end)) {
        throw Error(ErrorCode::InvalidArgument, "RDD window must satisfy start < event <= end");
    }
    for (const auto& c : controls) {
        if (std::find(kRddControls.begin(), kRddControls.end(), c) == kRddControls.end()) {
            throw Error(ErrorCode::InvalidArgument, "unknown RDD control " + c);
        }
    }
}

DesignMatrix rdd_design(const RddSpec& spec, const IndexSeries& index, const MarketSeries& market) {
    spec.validate();
    std::vector<Date> days;
    for (Date d = spec.window_start; d <= spec.window_end; d += std::chrono::days{1}) days.push_back(d);

    std::vector<Column> controls;
    for (const auto& name : spec.controls) controls.push_back(market_control(market, name));

    Column y(days.size());
    Column eip(days.size());
    Column day(days.size());
    Column eip_day(days.size());
    std::vector<NamedColumn> regressors = {{"EIP", {}}, {"Day", {}}, {"EIP_Day", {}}};
    for (const auto& name : spec.controls) regressors.push_back({name, Column(days.size())});

    for (std::size_t i = 0; i < days.size(); ++i) {
        const Date d = days[i];
        const auto pos = index.position(d);
        std::optional<double> value;
        if (pos) value = spec.dependent == RddChannel::Sma30 ? index.sma30[*pos] : std::optional(index.ema[*pos]);
        if (!value) {
            throw Error(ErrorCode::WindowNotCovered,
                        "no " + std::string(to_string(spec.dependent)) + " index value on " + format_date(d));
        }
        y[i] = value;
        const double treated = d >= spec.event_date ? 1.0 : 0.0;
        const auto offset = static_cast<double>(days_between(spec.event_date, d));
        eip[i] = treated;
        day[i] = offset;
        eip_day[i] = treated * offset;

        const auto mpos = market.position(d);
        for (std::size_t c = 0; c < controls.size(); ++c) {
            const std::optional<double> v = mpos ? controls[c][*mpos] : std::nullopt;
            if (!v) {
                throw Error(ErrorCode::WindowNotCovered,
                            "no " + spec.controls[c] + " value on " + format_date(d));
            }
            regressors[3 + c].values[i] = v;
        }
    }
    regressors[0].values = std::move(eip);
    regressors[1].values = std::move(day);
    regressors[2].values = std::move(eip_day);
    return assemble_design(days, "index_" + std::string(to_string(spec.dependent)), y, regressors, "Intercept");
}

RegressionResult rdd(const RddSpec& spec, const IndexSeries& index, const MarketSeries& market,
                     std::size_t hac_lag) {
    return ols_newey_west(rdd_design(spec, index, market), hac_lag);
}

}  // namespace decentral
