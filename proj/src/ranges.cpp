#include "qnl/ranges.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace qnl {

namespace {

double parse_number(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_range: not a number: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("parse_range: trailing junk in '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

std::vector<double> parse_range(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("parse_range: empty specification");

    if (spec.find(',') != std::string::npos) {
        std::vector<double> out;
        for (const auto& tok : split(spec, ',')) out.push_back(parse_number(tok));
        return out;
    }

    const auto parts = split(spec, ':');
    if (parts.size() == 1) return {parse_number(parts[0])};

    bool log_spaced = false;
    std::string count_tok;
    if (parts.size() == 3) {
        count_tok = parts[2];
    } else if (parts.size() == 4 && parts[2] == "log") {
        log_spaced = true;
        count_tok = parts[3];
    } else {
        throw std::invalid_argument("parse_range: expected start:stop[:log]:count, got '" +
                                    spec + "'");
    }

    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double count_d = parse_number(count_tok);
    const auto count = static_cast<long long>(count_d);
    if (count < 1 || static_cast<double>(count) != count_d)
        throw std::invalid_argument("parse_range: count must be a positive integer");
    if (count == 1) return {start};
    if (log_spaced && !(start > 0.0 && stop > 0.0))
        throw std::invalid_argument("parse_range: log spacing needs positive endpoints");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (log_spaced) {
        const double la = std::log(start), lb = std::log(stop);
        for (long long i = 0; i < count; ++i)
            out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) /
                                            static_cast<double>(count - 1)));
    } else {
        for (long long i = 0; i < count; ++i)
            out.push_back(start + (stop - start) * static_cast<double>(i) /
                                      static_cast<double>(count - 1));
    }
    return out;
}

}  // namespace qnl
