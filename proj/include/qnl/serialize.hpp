#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "qnl/fields.hpp"
#include "qnl/spectra.hpp"

namespace qnl {

/// CSV with columns x,value.
void write_csv(std::ostream& os, const Grid1D& g, std::span<const double> values);

/// JSON {"grid":{"x_min":..,"dx":..,"count":..},"values":[..]}.
std::string to_json(const Grid1D& g, std::span<const double> values);

/// JSON {"n":..,"energy":..,"grid":{..},"values":[..]} (real part).
std::string to_json(const spectra::EigenPair& pair);

/// Inverse of to_json for real-valued fields.
std::pair<Grid1D, std::vector<double>> field_from_json(const std::string& text);

}  // namespace qnl
