#pragma once

// JSON forms of the library's values. Complex numbers are [re, im] pairs.

#include <json.hpp>

#include "matnorm/hat_space.hpp"
#include "matnorm/optimizer.hpp"
#include "matnorm/spaces.hpp"

namespace matnorm::io {

using json = nlohmann::json;

json to_json(linalg::Complex z);
json to_json(const linalg::ComplexMatrix& a);
json to_json(const spaces::LeveledElement& u);
json to_json(const Couple& couple);
json to_json(const hat::NormBounds& bounds);
json to_json(const spaces::AxiomReport& report);
json to_json(const optimizer::OptimizerConfig& config);

linalg::Complex complex_from_json(const json& j);
linalg::ComplexMatrix matrix_from_json(const json& j);

/// {n, m, blocks}: m x m grid of n x n matrices. Throws InvalidInput on any
/// shape mismatch or non-finite number.
linalg::BlockGrid block_grid_from_json(const json& j);

/// Element of `space` from either {m, coords} (coords[k][l] is a list of dim
/// [re, im] pairs) or a {n, m, blocks} grid whose n x n blocks are flattened
/// row-major into coordinates.
spaces::LeveledElement element_from_json(const json& j, const spaces::MatricialSpace& space);

/// Overrides the fields present in `j` (restarts, iterations, initial_step,
/// decay, seed, tolerance).
optimizer::OptimizerConfig config_from_json(const json& j, optimizer::OptimizerConfig base = {});

}  // namespace matnorm::io
