#pragma once

#include <string>

#include "json.hpp"
#include "ustad/interp/analyze.hpp"
#include "ustad/psm/psm.hpp"

namespace ustad {

// -inf encodes as null; every document carries "schema": 1.
nlohmann::json json_number(double v);
nlohmann::json json_vector(const Eigen::VectorXd& v);
nlohmann::json json_matrix(const Eigen::MatrixXd& m);

nlohmann::json invariants_json(const Program& prog, const AnalysisResult& res);
nlohmann::json psm_json(const Psm& psm, const VarTable* vars = nullptr);
nlohmann::json agg_epoch_json(const AggEpoch& e);

}  // namespace ustad
