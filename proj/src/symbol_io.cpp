#include "focklab/symbol_io.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

namespace focklab {

TaylorSymbol exp_quadratic_symbol(double c, int max_degree) {
    TaylorSymbol b(1, 1);
    double ck = 1.0;  // c^k / k!
    for (int k = 0; 2 * k <= max_degree; ++k) {
        if (k > 0) ck *= c / k;
        Mat coeff(1, 1);
        coeff(0, 0) = ck;
        b.set_coeff(MultiIndex({2 * k}), coeff);
    }
    return b;
}

TaylorSymbol random_decay_symbol(int d, int n, std::uint64_t seed, double decay,
                                 int max_degree) {
    if (decay <= 0.0) throw DomainError("random_decay_symbol: decay must be > 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    TaylorSymbol b(d, n);
    for (const auto& nu : multi_indices_up_to(d, max_degree)) {
        Mat coeff(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                coeff(i, j) = Complex(gauss(rng), gauss(rng));
        b.set_coeff(nu, coeff * std::pow(decay, nu.degree()));
    }
    return b;
}

TaylorSymbol symbol_from_json(const nlohmann::json& j) {
    if (j.contains("family")) {
        const std::string fam = j.at("family").get<std::string>();
        if (fam == "exp_quadratic") {
            const double c = j.at("c").get<double>();
            const int deg = j.value("max_degree", 48);
            return exp_quadratic_symbol(c, deg);
        }
        if (fam == "monomial") {
            const auto nu = j.at("nu").get<std::vector<int>>();
            return TaylorSymbol::scalar_monomial(MultiIndex(nu));
        }
        if (fam == "random_decay") {
            const auto seed = j.at("seed").get<std::uint64_t>();
            const double decay = j.at("decay").get<double>();
            const int deg = j.at("max_degree").get<int>();
            const int d = j.value("d", 1);
            const int n = j.value("n", 1);
            return random_decay_symbol(d, n, seed, decay, deg);
        }
        throw ConfigError("symbol_from_json: unknown family '" + fam + "'");
    }
    const int d = j.at("d").get<int>();
    const int n = j.at("n").get<int>();
    TaylorSymbol b(d, n);
    for (const auto& entry : j.at("coeffs")) {
        const auto nu = entry.at("nu").get<std::vector<int>>();
        const auto& rows = entry.at("matrix");
        if (static_cast<int>(rows.size()) != n)
            throw ConfigError("symbol_from_json: matrix row count != n");
        Mat coeff(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw ConfigError("symbol_from_json: matrix column count != n");
            for (int jj = 0; jj < n; ++jj) {
                const auto& pair = rows[i][jj];
                coeff(i, jj) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
        }
        b.set_coeff(MultiIndex(nu), std::move(coeff));
    }
    return b;
}

nlohmann::json symbol_to_json(const TaylorSymbol& b) {
    nlohmann::json j;
    j["d"] = b.d();
    j["n"] = b.n();
    auto& coeffs = j["coeffs"] = nlohmann::json::array();
    for (const auto& [nu, c] : b.coeffs()) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < b.n(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int jj = 0; jj < b.n(); ++jj)
                row.push_back({c(i, jj).real(), c(i, jj).imag()});
            rows.push_back(row);
        }
        coeffs.push_back({{"nu", nu.exponents()}, {"matrix", rows}});
    }
    return j;
}

TaylorSymbol load_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_symbol: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return symbol_from_json(j);
}

void save_symbol(const TaylorSymbol& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("save_symbol: cannot open " + path);
    out << symbol_to_json(b).dump(2) << "\n";
}

} // namespace focklab
