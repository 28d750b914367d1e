#include "qnl/serialize.hpp"

#include <json.hpp>

#include <ostream>

namespace qnl {

namespace {
nlohmann::json grid_json(const Grid1D& g) {
    return {{"x_min", g.x_min}, {"dx", g.dx}, {"count", g.count}};
}
}  // namespace

void write_csv(std::ostream& os, const Grid1D& g, std::span<const double> values) {
    os << "x,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) os << g.x(i) << ',' << values[i] << '\n';
}

std::string to_json(const Grid1D& g, std::span<const double> values) {
    nlohmann::json j;
    j["grid"] = grid_json(g);
    j["values"] = std::vector<double>(values.begin(), values.end());
    return j.dump();
}

std::string to_json(const spectra::EigenPair& pair) {
    nlohmann::json j;
    j["n"] = pair.n;
    j["energy"] = pair.energy;
    j["grid"] = grid_json(pair.psi.grid);
    std::vector<double> re(pair.psi.values.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = pair.psi.values[i].real();
    j["values"] = re;
    return j.dump();
}

std::pair<Grid1D, std::vector<double>> field_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Grid1D g;
    g.x_min = j.at("grid").at("x_min").get<double>();
    g.dx = j.at("grid").at("dx").get<double>();
    g.count = j.at("grid").at("count").get<std::size_t>();
    auto values = j.at("values").get<std::vector<double>>();
    return {g, std::move(values)};
}

}  // namespace qnl
