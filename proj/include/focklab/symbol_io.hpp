#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "focklab/symbol.hpp"

namespace focklab {

/// Symbol file format (JSON), either explicit coefficients
///   { "d": int, "n": int, "m": float, "alpha": float,
///     "coeffs": [ { "nu": [int...], "matrix": [[[re,im], ...] ...] } ] }
/// or a named family
///   { "family": "exp_quadratic", "c": float, "max_degree": int }
///   { "family": "monomial", "nu": [int...] }
///   { "family": "random_decay", "seed": int, "decay": float, "max_degree": int }
TaylorSymbol symbol_from_json(const nlohmann::json& j);
nlohmann::json symbol_to_json(const TaylorSymbol& b);

TaylorSymbol load_symbol(const std::string& path);
void save_symbol(const TaylorSymbol& b, const std::string& path);

/// e^{c z^2} truncated at max_degree (d = 1, scalar)
TaylorSymbol exp_quadratic_symbol(double c, int max_degree = 48);

/// deterministic scalar symbol with coefficients of size decay^{|nu|}
TaylorSymbol random_decay_symbol(int d, int n, std::uint64_t seed, double decay,
                                 int max_degree);

} // namespace focklab
