#include <algorithm>

#include "bksat/solvers.hpp"

namespace bksat {

// Literal node: 2(v-1) for x_v, 2(v-1)+1 for not x_v.
std::optional<Assignment> two_sat_solve(CnfView f) {
  const auto n = static_cast<std::uint32_t>(f.n);
  const std::uint32_t nodes = 2 * n;
  auto node = [](const Literal &l) {
    return 2 * static_cast<std::uint32_t>(l.var - 1) + (l.sign > 0 ? 0u : 1u);
  };

  // Clause (a or b) gives edges not a -> b and not b -> a; a unit (a) gives
  // not a -> a.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(2 * f.clauses.size());
  for (const auto &c : f.clauses) {
    if (c.width() > 2)
      throw InvalidParameters("2-SAT solver got a clause of width " + std::to_string(c.width()));
    if (c.width() == 0)
      return std::nullopt;
    if (c.max_var() > f.n)
      throw InvalidParameters("clause variable exceeds n");
    if (c.width() == 1) {
      auto a = node(c[0]);
      edges.emplace_back(a ^ 1u, a);
    } else {
      auto a = node(c[0]), b = node(c[1]);
      edges.emplace_back(a ^ 1u, b);
      edges.emplace_back(b ^ 1u, a);
    }
  }
  std::vector<std::uint32_t> head(nodes + 1, 0), adj(edges.size());
  for (const auto &e : edges)
    ++head[e.first + 1];
  for (std::uint32_t v = 0; v < nodes; ++v)
    head[v + 1] += head[v];
  {
    auto fill = head;
    for (const auto &e : edges)
      adj[fill[e.first]++] = e.second;
  }

  // Iterative Tarjan. Components are numbered in reverse topological order.
  constexpr std::uint32_t kUnvisited = 0xFFFFFFFFu;
  std::vector<std::uint32_t> index(nodes, kUnvisited), low(nodes), comp(nodes, kUnvisited);
  std::vector<std::uint32_t> stack, call, edge_it(nodes);
  std::vector<std::uint8_t> on_stack(nodes, 0);
  std::uint32_t counter = 0, components = 0;
  for (std::uint32_t root = 0; root < nodes; ++root) {
    if (index[root] != kUnvisited)
      continue;
    call.push_back(root);
    index[root] = low[root] = counter++;
    edge_it[root] = head[root];
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto v = call.back();
      if (edge_it[v] < head[v + 1]) {
        auto w = adj[edge_it[v]++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          edge_it[w] = head[w];
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty())
        low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }

  Assignment a(n, -1);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1])
      return std::nullopt;
    if (comp[2 * v] < comp[2 * v + 1])
      a.set(static_cast<std::int32_t>(v + 1), 1);
  }
  return a;
}

} // namespace bksat
