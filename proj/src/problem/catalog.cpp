#include "nsbench/catalog.hpp"

#include <charconv>
#include <optional>

#include "nsbench/errors.hpp"
#include "nsbench/piecewise.hpp"
#include "nsbench/problems.hpp"
#include "nsbench/relu_net.hpp"

namespace nsbench {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool parse_positive(std::string_view s, long& out) {
  if (s.empty() || s.size() > 9) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out > 0;
}

struct ParsedName {
  enum class Kind { maxq, abs, cb_pl, relunet } kind;
  long a = 0, b = 0, c = 0;
};

std::optional<ParsedName> parse_name(std::string_view name) {
  if (name == "abs") return ParsedName{ParsedName::Kind::abs};
  if (name == "cb-pl") return ParsedName{ParsedName::Kind::cb_pl};
  const auto parts = split(name, '-');
  if (parts.size() == 2 && parts[0] == "maxq") {
    ParsedName p{ParsedName::Kind::maxq};
    if (parse_positive(parts[1], p.a)) return p;
  }
  if (parts.size() == 4 && parts[0] == "relunet") {
    ParsedName p{ParsedName::Kind::relunet};
    if (parse_positive(parts[1], p.a) && parse_positive(parts[2], p.b) && parse_positive(parts[3], p.c)) return p;
  }
  return std::nullopt;
}

}  // namespace

ObjectivePtr make_cb_pl() {
  const Vector sum = Vector{{1.0, 1.0}};
  const Vector diff = Vector{{1.0, -1.0}};
  PiecewisePieces far;
  far.combiner = Combiner::max;
  far.pieces = {{Vector::Zero(2), 0.0}, {2.0 * diff, -20.0}, {-2.0 * diff, -20.0}};
  return std::make_shared<PiecewiseLinear>(
      std::vector<PiecewisePieces>{abs_term(sum, 0.0, 2.0), abs_term(diff, 0.0, -1.0), far});
}

Problem make_problem(std::string_view name, std::uint64_t seed) {
  const auto parsed = parse_name(name);
  if (!parsed) throw ConfigError("unknown problem '" + std::string(name) + "'");
  Problem p;
  p.name = std::string(name);
  switch (parsed->kind) {
    case ParsedName::Kind::maxq:
      p.objective = as_batch(std::make_shared<MaxQ>(parsed->a), true);
      p.x0 = MaxQ::standard_start(parsed->a);
      break;
    case ParsedName::Kind::abs:
      p.objective = as_batch(std::make_shared<PiecewiseLinear>(
                                 std::vector<PiecewisePieces>{abs_term(Vector::Ones(1), 0.0)}),
                             true);
      p.x0 = Vector::Ones(1);
      break;
    case ParsedName::Kind::cb_pl:
      p.objective = as_batch(make_cb_pl(), false);
      p.x0 = Vector::Zero(2);
      break;
    case ParsedName::Kind::relunet: {
      SyntheticReluOptions options;
      options.width = parsed->a;
      options.layers = parsed->b;
      options.batches = static_cast<std::size_t>(parsed->c);
      options.samples_per_batch = kRelunetSamplesPerBatch;
      options.seed = derive_seed(seed, {hash_name(name)});
      p.objective = build_relu_net(make_synthetic_relu_spec(options));
      p.x0 = relu_initial_point(synthetic_widths(options.width, options.layers), options.seed);
      break;
    }
  }
  return p;
}

bool is_known_problem(std::string_view name) { return parse_name(name).has_value(); }

std::vector<std::string> problem_patterns() {
  return {"maxq-<n>", "abs", "cb-pl", "relunet-<width>-<layers>-<batches>"};
}

}  // namespace nsbench
