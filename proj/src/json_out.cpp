#include "ustad/support/json_out.hpp"

namespace ustad {

using nlohmann::json;

json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json json_vector(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
  return a;
}

json json_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json invariants_json(const Program& prog, const AnalysisResult& res) {
  json out;
  out["schema"] = 1;
  out["template"] = template_kind_name(res.tpl.kind);
  out["variables"] = prog.vars.names();
  json rows = json::array();
  for (int i = 0; i < res.tpl.rows(); ++i)
    rows.push_back(row_expression(res.tpl, i, prog.vars));
  out["rows"] = std::move(rows);

  json blocks = json::array();
  for (int b = 0; b < prog.nblocks(); ++b) {
    json jb;
    jb["block"] = b;
    jb["reachable"] = res.entry[b].has_value();
    jb["bounds"] =
        res.entry[b] ? json_vector(res.entry[b]->c) : json(nullptr);
    blocks.push_back(std::move(jb));
  }
  out["blocks"] = std::move(blocks);

  json asserts = json::array();
  for (const auto& a : res.asserts) {
    json ja;
    ja["block"] = a.block;
    ja["line"] = a.line;
    ja["text"] = a.text;
    ja["reachable"] = a.reachable;
    ja["proved"] = a.proved;
    asserts.push_back(std::move(ja));
  }
  out["asserts"] = std::move(asserts);
  out["transfers"] = res.transfers;
  out["stabilized"] = res.stabilized;
  return out;
}

json psm_json(const Psm& psm, const VarTable* vars) {
  auto vname = [&](int j) {
    return vars ? vars->name(j) : "v" + std::to_string(j);
  };
  json out;
  out["schema"] = 1;
  out["params"] = psm.dim();

  json layout;
  layout["multipliers"] = psm.layout.m_lambda;
  json shifts = json::array();
  for (int v : psm.layout.shift_vars) shifts.push_back(vname(v));
  layout["shifts"] = std::move(shifts);
  json pairs = json::array();
  for (const auto& [i, k] : psm.layout.pair_vars)
    pairs.push_back(json::array({vname(i), vname(k)}));
  layout["pairs"] = std::move(pairs);
  out["layout"] = std::move(layout);

  json adm;
  adm["M"] = json_matrix(psm.theta.M);
  adm["h"] = json_vector(psm.theta.h);
  adm["notes"] = psm.theta.row_notes;
  adm["contradictory"] = psm.theta.contradictory;
  out["admissible"] = std::move(adm);

  json box;
  box["lo"] = json_vector(psm.box.lo);
  box["hi"] = json_vector(psm.box.hi);
  out["box"] = std::move(box);

  json reduced;
  reduced["A"] = json_matrix(psm.reduced.A);
  reduced["b"] = json_vector(psm.reduced.b);
  out["reduced"] = std::move(reduced);

  out["objective"] = psm.objective.to_string(vars);
  return out;
}

json agg_epoch_json(const AggEpoch& e) {
  json out;
  out["epoch"] = e.epoch;
  out["theta"] = json_vector(e.theta);
  out["feasible"] = e.feasible;
  out["bound"] = json_number(e.bound);
  out["score"] = json_number(e.score);
  return out;
}

}  // namespace ustad
