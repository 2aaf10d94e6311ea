#include "ustad/eum/update_map.hpp"

namespace ustad {

QuadPoly substitute(const QuadPoly& p, const EffectiveUpdateMap& sigma,
                    const VarTable* names) {
  const int n = p.nvars();
  PolyAccum acc(n);
  acc.add(QuadPoly::constant(n, p.constant_term()));

  auto image = [&](int v) {
    const QuadPoly* e = sigma.find(v);
    return e ? *e : QuadPoly::variable(n, v);
  };

  for (int i = 0; i < n; ++i) {
    const double c = p.coeff_linear(i);
    if (c != 0.0) acc.add(image(i), c);
  }
  for (const auto& [key, c] : p.quad()) {
    if (c == 0.0) continue;
    acc.add_product(image(key.first), image(key.second), c);
  }
  return acc.to_quad(names);
}

EffectiveUpdateMap compute_eum(const std::vector<AssignStep>& seq, int nvars,
                               const VarTable* names) {
  EffectiveUpdateMap sigma;
  sigma.nvars = nvars;
  for (size_t j = 0; j < seq.size(); ++j) {
    QuadPoly over_entry;
    try {
      over_entry = substitute(seq[j].rhs, sigma, names);
    } catch (const DegreeError& e) {
      throw DegreeError(std::string(e.what()) + " at step " +
                            std::to_string(j + 1),
                        e.degree, e.monomial, static_cast<int>(j + 1));
    }
    sigma.exprs[seq[j].var] = std::move(over_entry);
  }
  return sigma;
}

QuadPoly effective_objective(const Eigen::RowVectorXd& row,
                             const EffectiveUpdateMap& sigma,
                             const VarTable* names) {
  QuadPoly p(static_cast<int>(row.size()));
  for (int i = 0; i < row.size(); ++i)
    if (row(i) != 0.0) p.add_linear(i, row(i));
  return substitute(p, sigma, names);
}

}  // namespace ustad
