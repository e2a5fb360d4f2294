#include "bksat/solvers.hpp"

namespace bksat {

SpineReport spine_set(CnfView f, std::int32_t limit) {
  DpllSolver solver(f, limit);
  auto witness = solver.solve();
  if (!witness)
    throw InvalidParameters("spine set is only defined for satisfiable formulas");
  return spine_set(solver, *witness);
}

// A variable is a spine variable iff flipping it away from a known solution
// is unsatisfiable. Every solution found along the way rules out all variables
// on which it differs from the witness, so at most n + 1 solver calls happen.
SpineReport spine_set(DpllSolver &solver, const Assignment &witness) {
  const auto n = solver.num_vars();
  std::vector<std::uint8_t> ruled_out(static_cast<std::size_t>(n) + 1, 0);
  SpineReport out;
  for (std::int32_t v = 1; v <= n; ++v) {
    if (ruled_out[static_cast<std::size_t>(v)])
      continue;
    const Literal flip{v, static_cast<std::int8_t>(-witness.at(v))};
    auto other = solver.solve(std::span<const Literal>(&flip, 1));
    if (!other) {
      (witness.at(v) > 0 ? out.s_plus : out.s_minus).push_back(v);
      continue;
    }
    for (std::int32_t u = v; u <= n; ++u)
      if (other->at(u) != witness.at(u))
        ruled_out[static_cast<std::size_t>(u)] = 1;
  }
  return out;
}

} // namespace bksat
