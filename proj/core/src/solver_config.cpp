#include <csplab/error.hpp>
#include <csplab/solver_config.hpp>

#include <charconv>

namespace csplab {

namespace {

int parse_level(std::string_view digits, std::string_view token)
{
    int k = 0;
    const auto* end = digits.data() + digits.size();
    const auto [ptr, ec] = std::from_chars(digits.data(), end, k);
    if (digits.empty() || ec != std::errc{} || ptr != end || k < 1) {
        throw ParseError("expected a positive level in '" + std::string(token) + "'");
    }
    return k;
}

} // namespace

void parse_lookahead_token(std::string_view token, SolverConfig& cfg)
{
    if (token == "bc") {
        cfg.lookahead = LookaheadKind::BC;
    } else if (token == "gac") {
        cfg.lookahead = LookaheadKind::GAC;
    } else if (token.starts_with("mc:")) {
        cfg.lookahead = LookaheadKind::MC;
        cfg.mc_level = parse_level(token.substr(3), token);
    } else {
        throw ParseError("unknown look-ahead '" + std::string(token) + "' (bc | mc:<k> | gac)");
    }
}

void parse_lookback_token(std::string_view token, SolverConfig& cfg)
{
    if (token == "chrono") {
        cfg.lookback = LookbackKind::Chrono;
    } else if (token == "cbj") {
        cfg.lookback = LookbackKind::CBJ;
    } else if (token.starts_with("bj:")) {
        cfg.lookback = LookbackKind::BJ;
        cfg.bj_cap = parse_level(token.substr(3), token);
    } else {
        throw ParseError("unknown look-back '" + std::string(token) + "' (chrono | bj:<k> | cbj)");
    }
}

SolverConfig parse_algorithm_token(std::string_view token)
{
    const auto slash = token.find('/');
    if (slash == std::string_view::npos) {
        throw ParseError("algorithm token must look like <lookahead>/<lookback>, got '" + std::string(token) + "'");
    }
    SolverConfig cfg;
    parse_lookahead_token(token.substr(0, slash), cfg);
    parse_lookback_token(token.substr(slash + 1), cfg);
    return cfg;
}

std::string SolverConfig::algorithm_token() const
{
    std::string out;
    switch (lookahead) {
    case LookaheadKind::BC:
        out = "bc";
        break;
    case LookaheadKind::MC:
        out = "mc:" + std::to_string(mc_level);
        break;
    case LookaheadKind::GAC:
        out = "gac";
        break;
    }
    out += '/';
    switch (lookback) {
    case LookbackKind::Chrono:
        out += "chrono";
        break;
    case LookbackKind::BJ:
        out += "bj:" + std::to_string(bj_cap);
        break;
    case LookbackKind::CBJ:
        out += "cbj";
        break;
    }
    return out;
}

std::string_view mode_name(SearchMode mode)
{
    switch (mode) {
    case SearchMode::First:
        return "first";
    case SearchMode::All:
        return "all";
    case SearchMode::Count:
        return "count";
    }
    return "?";
}

SearchMode parse_mode(std::string_view token)
{
    if (token == "first") {
        return SearchMode::First;
    }
    if (token == "all") {
        return SearchMode::All;
    }
    if (token == "count") {
        return SearchMode::Count;
    }
    throw ParseError("unknown mode '" + std::string(token) + "' (first | all | count)");
}

} // namespace csplab
