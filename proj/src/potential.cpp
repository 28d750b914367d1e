#include "qnl/potential.hpp"

#include <stdexcept>

namespace qnl {

std::vector<double> potential_values(const PotentialSpec& V, const Grid1D& g,
                                     const ModelParams& params) {
    if (const auto* h = std::get_if<Harmonic>(&V)) {
        std::vector<double> out(g.count);
        const double k = 0.5 * params.mass * h->omega * h->omega;
        for (std::size_t i = 0; i < g.count; ++i) {
            const double x = g.x(i);
            out[i] = k * x * x;
        }
        return out;
    }
    const auto& t = std::get<Tabulated>(V);
    if (t.values.size() != g.count)
        throw std::invalid_argument("potential_values: tabulated length != grid count");
    return t.values;
}

bool is_harmonic(const PotentialSpec& V) { return std::holds_alternative<Harmonic>(V); }

}  // namespace qnl
