#include "decentral/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "decentral/error.hpp"

namespace decentral {

namespace pt = boost::property_tree;

namespace {

std::string trimmed(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

Date require_date(const std::string& key, const std::string& text) {
    const auto d = parse_date(text);
    if (!d) throw Error(ErrorCode::ConfigError, key + ": '" + text + "' is not a YYYY-MM-DD date");
    return *d;
}

template <typename T>
T require_number(const std::string& key, const std::string& text) {
    T value{};
    const std::string t = trimmed(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw Error(ErrorCode::ConfigError, key + ": '" + text + "' is not a valid number");
    }
    return value;
}

bool require_bool(const std::string& key, const std::string& text) {
    const std::string t = trimmed(text);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    throw Error(ErrorCode::ConfigError, key + ": '" + text + "' is not a boolean");
}

template <typename T>
std::vector<T> require_list(const std::string& key, const std::string& text) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(require_number<T>(key, item));
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    const std::filesystem::path p(trimmed(value));
    return p.is_absolute() ? p : base / p;
}

}  // namespace

std::string_view to_string(DependentChannel channel) noexcept {
    switch (channel) {
        case DependentChannel::Raw: return "raw";
        case DependentChannel::Sma30: return "sma30";
        case DependentChannel::Ema: return "ema";
    }
    return "raw";
}

std::vector<TokenConfig> RunConfig::select_tokens(const std::vector<std::string>& names) const {
    if (names.empty()) return tokens;
    std::vector<TokenConfig> out;
    for (const auto& name : names) {
        const auto it = std::find_if(tokens.begin(), tokens.end(), [&](const TokenConfig& t) { return t.name == name; });
        if (it == tokens.end()) throw Error(ErrorCode::ConfigError, "unknown token '" + name + "'");
        out.push_back(*it);
    }
    return out;
}

void RunConfig::validate() const {
    auto must_exist = [](const std::filesystem::path& p, const std::string& what) {
        if (!std::filesystem::exists(p)) throw Error(ErrorCode::ConfigError, what + " not found: " + p.string());
    };
    for (const auto& t : tokens) {
        must_exist(t.transfers, "transfer file of token " + t.name);
        if (t.market) must_exist(*t.market, "market file of token " + t.name);
    }
    if (eth_market) must_exist(*eth_market, "ETH market file");
    if (btc_market) must_exist(*btc_market, "BTC market file");
    if (start && end && *start > *end) throw Error(ErrorCode::ConfigError, "start date is after end date");
    if (!(rdd.start < rdd.event && rdd.event <= rdd.end)) {
        throw Error(ErrorCode::ConfigError, "rdd window must satisfy window_start < event <= window_end");
    }
    if (!(ema_alpha > 0.0 && ema_alpha <= 1.0)) throw Error(ErrorCode::ConfigError, "ema_alpha must lie in (0, 1]");
    if (sma_window == 0) throw Error(ErrorCode::ConfigError, "sma_window must be >= 1");
    if (simulate.points < 2) throw Error(ErrorCode::ConfigError, "simulate.points must be >= 2");
}

RunConfig load_config(const std::filesystem::path& path) {
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
    const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    RunConfig cfg;
    cfg.base_dir = base;

    for (const auto& [section, body] : tree) {
        if (section == "run") {
            for (const auto& [key, node] : body) {
                const std::string v = node.data();
                const std::string where = "run." + key;
                if (key == "out") cfg.out_dir = resolve(base, v);
                else if (key == "seed") cfg.seed = require_number<std::uint64_t>(where, v);
                else if (key == "threads") cfg.threads = require_number<unsigned>(where, v);
                else if (key == "eth_market") cfg.eth_market = resolve(base, v);
                else if (key == "btc_market") cfg.btc_market = resolve(base, v);
                else if (key == "start") cfg.start = require_date(where, v);
                else if (key == "end") cfg.end = require_date(where, v);
                else if (key == "sma_window") cfg.sma_window = require_number<std::size_t>(where, v);
                else if (key == "ema_alpha") cfg.ema_alpha = require_number<double>(where, v);
                else if (key == "nw_lag") cfg.nw_lag = require_number<std::size_t>(where, v);
                else if (key == "pacf_lags") cfg.pacf_lags = require_number<std::size_t>(where, v);
                else if (key == "error_budget") cfg.error_budget = require_number<std::size_t>(where, v);
                else if (key == "drop_self_transfers") cfg.filter.drop_self_transfers = require_bool(where, v);
                else if (key == "drop_mint_burn") cfg.filter.drop_mint_burn = require_bool(where, v);
                else if (key == "dependent") {
                    const std::string t = trimmed(v);
                    if (t == "raw") cfg.dependent = DependentChannel::Raw;
                    else if (t == "sma30") cfg.dependent = DependentChannel::Sma30;
                    else if (t == "ema") cfg.dependent = DependentChannel::Ema;
                    else throw Error(ErrorCode::ConfigError, where + ": expected raw, sma30 or ema");
                } else {
                    throw Error(ErrorCode::ConfigError, "unknown key " + where);
                }
            }
        } else if (section == "rdd") {
            for (const auto& [key, node] : body) {
                const std::string where = "rdd." + key;
                if (key == "event") cfg.rdd.event = require_date(where, node.data());
                else if (key == "window_start") cfg.rdd.start = require_date(where, node.data());
                else if (key == "window_end") cfg.rdd.end = require_date(where, node.data());
                else throw Error(ErrorCode::ConfigError, "unknown key " + where);
            }
        } else if (section == "simulate") {
            for (const auto& [key, node] : body) {
                const std::string v = node.data();
                const std::string where = "simulate." + key;
                if (key == "points") cfg.simulate.points = require_number<std::size_t>(where, v);
                else if (key == "n_max") cfg.simulate.n_max = require_number<std::size_t>(where, v);
                else if (key == "lambda_max") cfg.simulate.lambda_max = require_number<double>(where, v);
                else if (key == "fixed_lambdas") cfg.simulate.fixed_lambdas = require_list<double>(where, v);
                else if (key == "fixed_ns") cfg.simulate.fixed_ns = require_list<std::size_t>(where, v);
                else throw Error(ErrorCode::ConfigError, "unknown key " + where);
            }
        } else if (section.rfind("token.", 0) == 0) {
            TokenConfig token;
            token.name = section.substr(6);
            if (token.name.empty()) throw Error(ErrorCode::ConfigError, "token section without a name");
            bool has_transfers = false;
            for (const auto& [key, node] : body) {
                const std::string v = node.data();
                const std::string where = section + "." + key;
                if (key == "transfers") {
                    token.transfers = resolve(base, v);
                    has_transfers = true;
                } else if (key == "market") token.market = resolve(base, v);
                else if (key == "genesis") token.genesis = require_date(where, v);
                else if (key == "address") token.address = trimmed(v);
                else throw Error(ErrorCode::ConfigError, "unknown key " + where);
            }
            if (!has_transfers) throw Error(ErrorCode::ConfigError, section + " has no transfers file");
            cfg.tokens.push_back(std::move(token));
        } else {
            throw Error(ErrorCode::ConfigError, "unknown section [" + section + "]");
        }
    }
    return cfg;
}

}  // namespace decentral
