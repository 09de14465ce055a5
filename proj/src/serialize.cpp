#include "matnorm/serialize.hpp"

#include <cmath>
#include <string>

#include "matnorm/errors.hpp"

namespace matnorm::io {

using linalg::BlockGrid;
using linalg::Complex;
using linalg::ComplexMatrix;

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const spaces::LeveledElement& u) {
  json coords = json::array();
  for (int k = 0; k < u.level(); ++k) {
    json row = json::array();
    for (int l = 0; l < u.level(); ++l) {
      json entry = json::array();
      for (int c = 0; c < u.dim(); ++c) entry.push_back(to_json(u.entry(k, l)(c)));
      row.push_back(std::move(entry));
    }
    coords.push_back(std::move(row));
  }
  return json{{"space_id", u.space_id()}, {"m", u.level()}, {"coords", std::move(coords)}};
}

json to_json(const Couple& couple) {
  return json{{"space_id", couple.space.id}, {"v_coords", to_json(couple.v)["coords"]}};
}

json to_json(const hat::NormBounds& bounds) {
  return json{{"n", bounds.n},
              {"m", bounds.m},
              {"lower", bounds.lower},
              {"upper", bounds.upper},
              {"rule", hat::to_string(bounds.rule)},
              {"certificate", to_json(bounds.certificate)}};
}

namespace {

json sample_json(const std::optional<spaces::AxiomSample>& sample) {
  if (!sample) return nullptr;
  json j{{"u", to_json(sample->u)}};
  if (sample->extra > 0) j["extra"] = sample->extra;
  if (sample->s) j["S"] = to_json(*sample->s);
  if (sample->t) j["T"] = to_json(*sample->t);
  return j;
}

[[noreturn]] void bad(const std::string& why) { throw InvalidInput("malformed JSON input: " + why); }

int positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
    bad(std::string("'") + key + "' must be a positive integer");
  }
  return j[key].get<int>();
}

}  // namespace

json to_json(const spaces::AxiomReport& report) {
  return json{{"trials", report.trials},
              {"axiom1_max_violation", report.axiom1_max_violation},
              {"axiom2_max_violation", report.axiom2_max_violation},
              {"worst_case_inputs",
               {{"axiom1", sample_json(report.worst_axiom1)}, {"axiom2", sample_json(report.worst_axiom2)}}}};
}

json to_json(const optimizer::OptimizerConfig& config) {
  return json{{"restarts", config.restarts},         {"iterations", config.iterations},
              {"initial_step", config.initial_step}, {"decay", config.decay},
              {"seed", config.seed},                 {"tolerance", config.tolerance}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad("complex numbers must be [re, im] pairs");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) bad("non-finite number");
  return z;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) bad("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) bad("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) a(i, c) = complex_from_json(j[i][c]);
  }
  return a;
}

BlockGrid block_grid_from_json(const json& j) {
  if (!j.is_object()) bad("expected an object with n, m, blocks");
  const int n = positive_int(j, "n");
  const int m = positive_int(j, "m");
  if (!j.contains("blocks") || !j["blocks"].is_array() || static_cast<int>(j["blocks"].size()) != m) {
    bad("'blocks' must have m rows");
  }
  BlockGrid grid(m);
  for (int k = 0; k < m; ++k) {
    const json& row = j["blocks"][k];
    if (!row.is_array() || static_cast<int>(row.size()) != m) bad("'blocks' rows must have m entries");
    for (int l = 0; l < m; ++l) {
      ComplexMatrix b = matrix_from_json(row[l]);
      if (b.rows() != n || b.cols() != n) {
        bad("block " + std::to_string(k) + "," + std::to_string(l) + " is not " + std::to_string(n) +
            "x" + std::to_string(n));
      }
      grid[k].push_back(std::move(b));
    }
  }
  return grid;
}

spaces::LeveledElement element_from_json(const json& j, const spaces::MatricialSpace& space) {
  if (!j.is_object()) bad("expected an object");
  if (j.contains("coords")) {
    const int m = positive_int(j, "m");
    const json& coords = j["coords"];
    if (!coords.is_array() || static_cast<int>(coords.size()) != m) bad("'coords' must have m rows");
    spaces::LeveledElement u(space.id, m, space.dim);
    for (int k = 0; k < m; ++k) {
      if (!coords[k].is_array() || static_cast<int>(coords[k].size()) != m) bad("'coords' rows must have m entries");
      for (int l = 0; l < m; ++l) {
        const json& entry = coords[k][l];
        if (!entry.is_array() || static_cast<int>(entry.size()) != space.dim) {
          bad("each entry needs " + std::to_string(space.dim) + " coordinates for " + space.id);
        }
        for (int c = 0; c < space.dim; ++c) u.entry(k, l)(c) = complex_from_json(entry[c]);
      }
    }
    return u;
  }
  const BlockGrid grid = block_grid_from_json(j);
  const int n = static_cast<int>(grid[0][0].rows());
  if (n * n != space.dim) {
    bad("blocks of size " + std::to_string(n) + " do not match " + space.id + " (dimension " +
        std::to_string(space.dim) + ")");
  }
  const int m = static_cast<int>(grid.size());
  spaces::LeveledElement u(space.id, m, space.dim);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < n; ++c) u.entry(k, l)(i * n + c) = grid[k][l](i, c);
      }
    }
  }
  return u;
}

optimizer::OptimizerConfig config_from_json(const json& j, optimizer::OptimizerConfig base) {
  if (!j.is_object()) bad("optimizer config must be an object");
  try {
    if (j.contains("restarts")) base.restarts = j["restarts"].get<int>();
    if (j.contains("iterations")) base.iterations = j["iterations"].get<int>();
    if (j.contains("initial_step")) base.initial_step = j["initial_step"].get<double>();
    if (j.contains("decay")) base.decay = j["decay"].get<double>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance")) base.tolerance = j["tolerance"].get<double>();
  } catch (const json::exception& e) {
    bad(std::string("optimizer config: ") + e.what());
  }
  optimizer::validate(base);
  return base;
}

}  // namespace matnorm::io
