#include "myopic/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "myopic/errors.hpp"
#include "myopic/random.hpp"

namespace myopic {

// ---------------------------------------------------------------------------
// MoveRule

MoveRule::MoveRule(std::string name, Displacement fx, Displacement fy)
    : name_(std::move(name)), fx_(std::move(fx)), fy_(std::move(fy)) {
  if (!fx_ || !fy_) throw UsageError("move rule needs both displacement functions");
}

MoveRule MoveRule::move_to_middle() {
  MoveRule rule("mm", [](double d) { return d / 2.0; }, [](double) { return 0.0; });
  rule.midpoint_ = true;
  return rule;
}

MoveRule MoveRule::linear(double along, double across) {
  if (!std::isfinite(along) || !std::isfinite(across)) throw UsageError("linear rule needs finite factors");
  std::ostringstream name;
  name << "linear:" << along << "," << across;
  return MoveRule(
      name.str(), [along](double d) { return along * d; }, [across](double d) { return across * d; });
}

MoveRule MoveRule::parse(const std::string& spec) {
  if (spec == "mm") return move_to_middle();
  const std::string prefix = "linear:";
  if (spec.rfind(prefix, 0) == 0) {
    const auto body = spec.substr(prefix.size());
    const auto comma = body.find(',');
    if (comma != std::string::npos) {
      try {
        std::size_t used_a = 0, used_b = 0;
        const std::string a = body.substr(0, comma), b = body.substr(comma + 1);
        const double along = std::stod(a, &used_a);
        const double across = std::stod(b, &used_b);
        if (used_a == a.size() && used_b == b.size()) return linear(along, across);
      } catch (const std::logic_error&) {
      }
    }
  }
  throw UsageError("unknown move rule '" + spec + "' (expected mm or linear:<along>,<across>)");
}

// ---------------------------------------------------------------------------
// Scripts and policies

AdversaryScript::AdversaryScript(const std::vector<ScriptEntry>& entries) : entries_(entries) {
  for (const auto& e : entries_) {
    if (!index_.emplace(std::make_pair(e.t, e.rank), e.choice).second) {
      std::ostringstream msg;
      msg << "duplicate script entry for t=" << e.t << " rank=" << e.rank;
      throw UsageError(msg.str());
    }
  }
}

std::optional<std::size_t> AdversaryScript::lookup(std::size_t t, std::size_t rank) const {
  const auto it = index_.find({t, rank});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TiePolicy TiePolicy::scripted(AdversaryScript script) {
  return {Kind::scripted, 0, std::make_shared<const AdversaryScript>(std::move(script))};
}

std::string TiePolicy::name() const {
  switch (kind) {
    case Kind::order_based: return "order";
    case Kind::scripted: return "script";
    case Kind::seeded_random: return "random";
    case Kind::lowest_id: return "lowest-id";
    case Kind::cyclic: return "cyclic";
  }
  return "?";
}

OrthogonalChoice OrthogonalChoice::scripted(AdversaryScript script) {
  return {Kind::scripted, 0, std::make_shared<const AdversaryScript>(std::move(script))};
}

std::string OrthogonalChoice::name() const {
  switch (kind) {
    case Kind::fixed_positive: return "positive";
    case Kind::fixed_negative: return "negative";
    case Kind::scripted: return "script";
    case Kind::seeded_random: return "random";
  }
  return "?";
}

namespace {

// Lowest process id located in `cluster` (candidates are sorted).
std::size_t first_in_cluster(const NeighborView& view, std::size_t cluster) {
  for (const auto& c : view.candidates)
    if (c.cluster == cluster) return c.process;
  throw UsageError("cluster is not among the candidates");
}

}  // namespace

std::size_t select_neighbor(const NeighborView& view, const TiePolicy& policy,
                            const ChoiceContext& context) {
  if (view.empty()) throw UsageError("select_neighbor: process sees no neighbor");
  const auto clusters = view.candidate_clusters();
  switch (policy.kind) {
    case TiePolicy::Kind::order_based:
      return first_in_cluster(view, clusters.back());
    case TiePolicy::Kind::lowest_id: {
      std::size_t best = view.candidates.front().process;
      for (const auto& c : view.candidates) best = std::min(best, c.process);
      return best;
    }
    case TiePolicy::Kind::seeded_random: {
      CounterRng rng(derive_seed(policy.seed, context.time, view.process));
      return first_in_cluster(view, clusters[rng.below(clusters.size())]);
    }
    case TiePolicy::Kind::scripted: {
      const auto choice = policy.script ? policy.script->lookup(context.time, context.rank) : std::nullopt;
      if (!choice) return first_in_cluster(view, clusters.back());
      if (*choice >= clusters.size()) {
        std::ostringstream msg;
        msg << "script choice " << *choice << " at t=" << context.time << " rank=" << context.rank
            << " exceeds " << clusters.size() << " candidate positions";
        throw UsageError(msg.str());
      }
      return first_in_cluster(view, clusters[*choice]);
    }
    case TiePolicy::Kind::cyclic:
      break;
  }
  throw UsageError("select_neighbor: the cyclic adversary chooses through decide()");
}

OrthogonalSelector resolve_orthogonal(const OrthogonalChoice& choice, const ChoiceContext& context,
                                      std::size_t process) {
  switch (choice.kind) {
    case OrthogonalChoice::Kind::fixed_positive: return OrthogonalSelector::positive();
    case OrthogonalChoice::Kind::fixed_negative: return OrthogonalSelector::negative();
    case OrthogonalChoice::Kind::seeded_random:
      return OrthogonalSelector::seeded(derive_seed(choice.seed, context.time, process));
    case OrthogonalChoice::Kind::scripted: {
      const auto c = choice.script ? choice.script->lookup(context.time, context.rank) : std::nullopt;
      if (!c) return OrthogonalSelector::positive();
      return OrthogonalSelector::basis_vector(*c / 2, *c % 2 == 1);
    }
  }
  return OrthogonalSelector::positive();
}

Point next_position(const Point& self, const Point& neighbor, const MoveRule& rule,
                    const OrthogonalSelector& ortho) {
  require_same_dimension(self, neighbor);
  if (self == neighbor) throw UsageError("next_position: process and neighbor coincide");
  if (rule.is_move_to_middle()) return midpoint(self, neighbor);

  const double d = distance(self, neighbor);
  const Vector x = (1.0 / d) * (neighbor - self);
  Point out = self + rule.fx(d) * x;
  const double across = self.dimension() >= 2 ? rule.fy(d) : 0.0;
  if (across != 0.0) out = out + across * orthonormal_complement_sample(x, ortho);
  return out;
}

// ---------------------------------------------------------------------------
// Equilateral adversary

std::optional<AdversaryMove> cyclic_move(const SwarmView& swarm, std::size_t p, const MoveRule& rule) {
  const auto& config = swarm.configuration();
  if (config.dimension() < 2) return std::nullopt;
  const auto& view = swarm.view(p);
  const auto clusters = view.candidate_clusters();
  if (clusters.size() != 2) return std::nullopt;

  const auto& occ = swarm.occupancy();
  const std::size_t own = swarm.rank_of(p);
  const double side = distance(occ.positions[clusters[0]], occ.positions[clusters[1]]);
  const double d = view.closest_distance;
  if (std::abs(side - d) > swarm.tie_tolerance() * std::max(side, d)) return std::nullopt;

  // Cluster indices follow position order, so sorting them orders the vertices.
  std::array<std::size_t, 3> vertex{own, clusters[0], clusters[1]};
  std::sort(vertex.begin(), vertex.end());
  const auto at = std::find(vertex.begin(), vertex.end(), own) - vertex.begin();
  const std::size_t successor = vertex[static_cast<std::size_t>((at + 1) % 3)];
  const std::size_t neighbor = first_in_cluster(view, successor);

  const Point& self = config.position(p);
  const Vector x = (1.0 / distance(self, config.position(neighbor))) * (config.position(neighbor) - self);
  Vector to_center = Vector::zero(config.dimension());
  for (std::size_t v : vertex) to_center = to_center + (1.0 / 3.0) * (occ.positions[v] - self);
  // Away from the barycenter, within the triangle's plane.
  const Vector away = -(to_center - dot(to_center, x) * x);
  if (!(away.norm() > 0.0)) return std::nullopt;
  Vector y = away.normalized();
  if (rule.fy(d) < 0.0) y = -y;
  return AdversaryMove{neighbor, std::move(y)};
}

std::vector<std::optional<AdversaryMove>> equilateral_adversary(const Configuration& config,
                                                                const MoveRule& rule, double eps_tie) {
  if (config.dimension() < 2) throw ScenarioError("equilateral adversary needs d >= 2");
  const SwarmView swarm(config, eps_tie);
  const auto& occ = swarm.occupancy();
  if (occ.count() != 3) throw ScenarioError("equilateral adversary needs exactly three occupied positions");
  const double a = distance(occ.positions[0], occ.positions[1]);
  const double b = distance(occ.positions[1], occ.positions[2]);
  const double c = distance(occ.positions[2], occ.positions[0]);
  const double hi = std::max({a, b, c}), lo = std::min({a, b, c});
  if (hi - lo > eps_tie * hi) throw ScenarioError("occupied positions are not an equilateral triangle");

  std::vector<std::optional<AdversaryMove>> out(config.size());
  for (std::size_t p = 0; p < config.size(); ++p) {
    if (config.crashed(p)) continue;
    out[p] = cyclic_move(swarm, p, rule);
    if (!out[p]) throw ScenarioError("equilateral adversary could not act for process " + std::to_string(p));
  }
  return out;
}

Decision decide(const SwarmView& swarm, std::size_t p, const MoveRule& rule, const TiePolicy& tie,
                const OrthogonalChoice& ortho) {
  const ChoiceContext context{swarm.configuration().time(), swarm.rank_of(p)};
  if (tie.kind == TiePolicy::Kind::cyclic) {
    if (auto move = cyclic_move(swarm, p, rule)) {
      return {move->neighbor, OrthogonalSelector::along(std::move(move->ortho)), false};
    }
    return {select_neighbor(swarm.view(p), TiePolicy::order_based(), context),
            resolve_orthogonal(ortho, context, p), true};
  }
  return {select_neighbor(swarm.view(p), tie, context), resolve_orthogonal(ortho, context, p), false};
}

}  // namespace myopic
