#include <algorithm>
#include <charconv>
#include <optional>

#include "bksat/formula.hpp"

namespace bksat {
namespace {

template <class T> std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    return std::nullopt;
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Metadata {
  std::optional<std::int32_t> k;
  double p = 0.5;
  std::uint64_t seed = 0;
  SampleMode mode = SampleMode::discrete;
};

void parse_metadata(const std::vector<std::string_view> &tokens, std::size_t lineno,
                    Metadata &meta) {
  for (std::size_t t = 2; t < tokens.size(); ++t) {
    auto tok = tokens[t];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(lineno, "metadata token without '=': " + std::string(tok));
    auto key = tok.substr(0, eq);
    auto val = tok.substr(eq + 1);
    auto bad = [&] { return ParseError(lineno, "bad metadata value: " + std::string(tok)); };
    if (key == "k") {
      auto v = parse_number<std::int32_t>(val);
      if (!v || *v < 0)
        throw bad();
      meta.k = *v;
    } else if (key == "p") {
      auto v = parse_number<double>(val);
      if (!v || !(*v >= 0.0 && *v <= 1.0))
        throw bad();
      meta.p = *v;
    } else if (key == "seed") {
      auto v = parse_number<std::uint64_t>(val);
      if (!v)
        throw bad();
      meta.seed = *v;
    } else if (key == "mode") {
      if (val == "discrete")
        meta.mode = SampleMode::discrete;
      else if (val == "poisson")
        meta.mode = SampleMode::poisson;
      else
        throw bad();
    } else {
      throw ParseError(lineno, "unknown metadata key: " + std::string(key));
    }
  }
}

} // namespace

std::string write_dimacs(const Formula &f) {
  std::string out;
  out.reserve(64 + f.clauses.size() * static_cast<std::size_t>(f.k + 1) * 6);
  out += "c biased-ksat k=" + std::to_string(f.k) + " p=" + format_double(f.bias.p()) +
         " seed=" + std::to_string(f.seed) + " mode=" + std::string(to_string(f.mode)) + "\n";
  out += "p cnf " + std::to_string(f.n) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto &c : f.clauses) {
    for (const auto &lit : c.literals()) {
      out += std::to_string(lit.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

Formula read_dimacs(std::string_view text) {
  Metadata meta;
  std::optional<std::int32_t> n;
  std::int64_t declared = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t lineno = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;

    auto tokens = split_ws(line);
    if (tokens.empty())
      continue;
    if (tokens[0] == "c") {
      if (tokens.size() >= 2 && tokens[1] == "biased-ksat")
        parse_metadata(tokens, lineno, meta);
      continue;
    }
    if (tokens[0][0] == 'c')
      continue;
    if (tokens[0] == "p") {
      if (n)
        throw ParseError(lineno, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "cnf")
        throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
      auto nv = parse_number<std::int32_t>(tokens[2]);
      auto mv = parse_number<std::int64_t>(tokens[3]);
      if (!nv || !mv || *nv < 0 || *mv < 0)
        throw ParseError(lineno, "malformed problem line counts");
      n = *nv;
      declared = *mv;
      clauses.reserve(static_cast<std::size_t>(declared));
      continue;
    }
    if (!n)
      throw ParseError(lineno, "clause data before the problem line");
    for (auto tok : tokens) {
      auto v = parse_number<std::int32_t>(tok);
      if (!v)
        throw ParseError(lineno, "malformed literal '" + std::string(tok) + "'");
      if (*v == 0) {
        try {
          clauses.emplace_back(std::move(pending));
        } catch (const InvalidParameters &e) {
          throw ParseError(lineno, e.what());
        }
        pending.clear();
        continue;
      }
      if (*v > *n || -*v > *n)
        throw ParseError(lineno, "literal " + std::to_string(*v) + " exceeds variable count");
      if (pending.empty())
        pending_line = lineno;
      pending.push_back(Literal::from_dimacs(*v));
    }
  }
  if (!n)
    throw ParseError(std::max<std::size_t>(lineno, 1), "missing problem line");
  if (!pending.empty())
    throw ParseError(pending_line, "clause not terminated by 0");
  if (static_cast<std::int64_t>(clauses.size()) != declared)
    throw ParseError(lineno, "problem line declares " + std::to_string(declared) +
                                 " clauses, found " + std::to_string(clauses.size()));

  Formula f;
  f.n = *n;
  f.k = meta.k ? *meta.k
               : (clauses.empty() ? 0 : static_cast<std::int32_t>(clauses.front().width()));
  f.bias = BiasParams::from_p(meta.p);
  f.seed = meta.seed;
  f.mode = meta.mode;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (clauses[i].width() != static_cast<std::size_t>(f.k))
      throw ParseError(lineno, "clause " + std::to_string(i + 1) + " has width " +
                                   std::to_string(clauses[i].width()) + ", expected " +
                                   std::to_string(f.k));
  f.clauses = std::move(clauses);
  return f;
}

} // namespace bksat
