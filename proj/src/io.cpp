/*
Copyright (c) 2026 The usd developers.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "usd/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace usd {

namespace {

using nlohmann::json;

json complex_to_json(const Complex &z) {
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const CMat &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

Complex parse_complex(const json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(where + ": complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CMat parse_matrix(const json &j, int rows, int cols, const std::string &where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    std::ostringstream msg;
    msg << where << ": expected " << rows << " rows";
    throw ValidationError(msg.str());
  }
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json &row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      std::ostringstream msg;
      msg << where << ": row " << i << " must have " << cols << " entries";
      throw ValidationError(msg.str());
    }
    for (int k = 0; k < cols; ++k) {
      std::ostringstream cell;
      cell << where << "[" << i << "][" << k << "]";
      m(i, k) = parse_complex(row[k], cell.str());
    }
  }
  return m;
}

DensityOperator parse_density(const json &j, int dim, const std::string &name) {
  try {
    if (j.is_array()) {
      return DensityOperator::from_matrix(parse_matrix(j, dim, dim, name));
    }
    if (j.is_object() && j.contains("values") && j.contains("vectors")) {
      const json &jv = j.at("values");
      if (!jv.is_array() || jv.empty()) {
        throw ValidationError(name + ".values: expected a nonempty number array");
      }
      const int k = static_cast<int>(jv.size());
      RVec values(k);
      for (int i = 0; i < k; ++i) {
        if (!jv[i].is_number()) {
          throw ValidationError(name + ".values: entries must be numbers");
        }
        values(i) = jv[i].get<double>();
      }
      const json &jw = j.at("vectors");
      if (!jw.is_array() || static_cast<int>(jw.size()) != k) {
        throw ValidationError(name + ".vectors: expected one vector per value");
      }
      CMat vectors(dim, k);
      for (int i = 0; i < k; ++i) {
        const json &col = jw[i];
        if (!col.is_array() || static_cast<int>(col.size()) != dim) {
          std::ostringstream msg;
          msg << name << ".vectors[" << i << "]: expected " << dim << " entries";
          throw ValidationError(msg.str());
        }
        for (int row = 0; row < dim; ++row) {
          std::ostringstream cell;
          cell << name << ".vectors[" << i << "][" << row << "]";
          vectors(row, i) = parse_complex(col[row], cell.str());
        }
      }
      return DensityOperator::from_eigensystem(values, vectors);
    }
    throw ValidationError(name + ": expected a dense matrix or a {values, vectors} object");
  } catch (const ValidationError &) {
    throw;
  } catch (const Error &e) {
    throw ValidationError(name + ": " + e.what());
  }
}

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace

json problem_to_json(const DiscriminationProblem &problem) {
  return json{{"dim", problem.dim()},
              {"eta1", problem.eta1()},
              {"rho1", matrix_to_json(problem.rho1().matrix())},
              {"rho2", matrix_to_json(problem.rho2().matrix())}};
}

DiscriminationProblem parse_problem(const json &j) {
  if (!j.is_object()) {
    throw ValidationError("problem: expected a JSON object");
  }
  for (const char *key : {"dim", "eta1", "rho1", "rho2"}) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("problem: missing field ") + key);
    }
  }
  if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 1) {
    throw ValidationError("dim: expected a positive integer");
  }
  if (!j.at("eta1").is_number()) {
    throw ValidationError("eta1: expected a number");
  }
  const int dim = j.at("dim").get<int>();
  const double eta1 = j.at("eta1").get<double>();
  DensityOperator rho1 = parse_density(j.at("rho1"), dim, "rho1");
  DensityOperator rho2 = parse_density(j.at("rho2"), dim, "rho2");
  return DiscriminationProblem(std::move(rho1), std::move(rho2), eta1);
}

DiscriminationProblem load_problem(const std::string &path) {
  return parse_problem(read_json_file(path));
}

json povm_to_json(const Povm &povm) {
  return json{{"dim", povm.dim()},
              {"pi0", matrix_to_json(povm.pi0)},
              {"pi1", matrix_to_json(povm.pi1)},
              {"pi2", matrix_to_json(povm.pi2)},
              {"alpha", matrix_to_json(povm.alpha)},
              {"beta", matrix_to_json(povm.beta)}};
}

Povm parse_povm(const json &j) {
  if (!j.is_object()) {
    throw ValidationError("povm: expected a JSON object");
  }
  for (const char *key : {"dim", "pi0", "pi1", "pi2"}) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("povm: missing field ") + key);
    }
  }
  if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 1) {
    throw ValidationError("povm.dim: expected a positive integer");
  }
  const int dim = j.at("dim").get<int>();
  try {
    return Povm::from_operators(parse_matrix(j.at("pi0"), dim, dim, "pi0"),
                                parse_matrix(j.at("pi1"), dim, dim, "pi1"),
                                parse_matrix(j.at("pi2"), dim, dim, "pi2"));
  } catch (const ValidationError &) {
    throw;
  } catch (const Error &e) {
    throw ValidationError(std::string("povm: ") + e.what());
  }
}

Povm load_povm(const std::string &path) {
  return parse_povm(read_json_file(path));
}

json bounds_report_to_json(double eta1, const BoundsReport &report) {
  json window;
  if (report.eta_window) {
    window = json::array({report.eta_window->first, report.eta_window->second});
  }
  return json{{"eta1", eta1},
              {"fidelity", report.fidelity},
              {"overlap12", report.overlap12},
              {"overlap21", report.overlap21},
              {"regime", to_string(report.regime)},
              {"lower_bound", report.lower_bound},
              {"saturation_possible", report.saturation_possible},
              {"eta_window", window}};
}

json optimization_result_to_json(const OptimizationResult &result, bool emit_povm,
                                 const std::optional<OracleComparison> &oracle) {
  json out{{"q_min", result.q_min},
           {"selective_failures",
            json::array({result.selective_failures.first, result.selective_failures.second})},
           {"iterations", result.iterations},
           {"converged", result.converged},
           {"measurement_kind", to_string(result.measurement_kind)}};
  if (emit_povm) {
    out["povm"] = povm_to_json(result.povm);
  }
  if (oracle) {
    out["oracle"] =
        json{{"q", oracle->q}, {"gap", oracle->gap}, {"grid_density", oracle->grid_density}};
  }
  return out;
}

json sample_report_to_json(const SampleReport &report) {
  return json{{"shots", report.shots},
              {"counts", json::array({report.counts[0], report.counts[1], report.counts[2]})},
              {"empirical_q", report.empirical_q},
              {"predicted_q", report.predicted_q},
              {"error_count", report.error_count},
              {"seed", report.seed},
              {"rng", report.rng}};
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_region_csv(std::ostream &out, const std::vector<RegionPoint> &points) {
  out << "r,s,F2,cond1\n";
  for (const RegionPoint &p : points) {
    out << format_float(p.r) << ',' << format_float(p.s) << ',' << format_float(p.f2) << ','
        << (p.cond1 ? 1 : 0) << '\n';
  }
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << "eta1,q_min,lower_bound,regime,kind\n";
  for (const SweepRow &row : rows) {
    out << format_float(row.eta1) << ',' << format_float(row.q_min) << ','
        << format_float(row.lower_bound) << ',' << to_string(row.regime) << ','
        << to_string(row.kind) << '\n';
  }
}

}  // namespace usd
