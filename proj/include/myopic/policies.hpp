#pragma once

// Movement rules and the adversary's choices: which tied neighbor a process
// observes and which orthogonal direction it drifts along.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "myopic/geometry.hpp"
#include "myopic/swarm.hpp"

namespace myopic {

/// An oblivious rule: the displacement depends only on the distance D to the
/// observed neighbor. The next position is M_p + fx(D) x + fy(D) y, with x the
/// unit vector toward the neighbor and y an adversarial unit vector
/// orthogonal to x (ignored in one dimension).
class MoveRule {
 public:
  using Displacement = std::function<double(double)>;

  MoveRule(std::string name, Displacement fx, Displacement fy);

  /// fx(D) = D/2, fy(D) = 0. next_position returns the exact midpoint.
  static MoveRule move_to_middle();
  /// fx(D) = along * D, fy(D) = across * D.
  static MoveRule linear(double along, double across);
  /// "mm" or "linear:<along>,<across>". Throws UsageError otherwise.
  static MoveRule parse(const std::string& spec);

  const std::string& name() const { return name_; }
  double fx(double d) const { return fx_(d); }
  double fy(double d) const { return fy_(d); }
  bool is_move_to_middle() const { return midpoint_; }

 private:
  std::string name_;
  Displacement fx_;
  Displacement fy_;
  bool midpoint_ = false;
};

/// Replayable adversary decisions keyed by (step, rank of the acting
/// process's position in Omega). `choice` indexes the candidate positions in
/// position order (or, for orthogonal scripts, the signed complement basis:
/// basis vector choice/2, negated when choice is odd).
struct ScriptEntry {
  std::size_t t = 0;
  std::size_t rank = 0;
  std::size_t choice = 0;
};

class AdversaryScript {
 public:
  AdversaryScript() = default;
  explicit AdversaryScript(const std::vector<ScriptEntry>& entries);

  std::optional<std::size_t> lookup(std::size_t t, std::size_t rank) const;
  const std::vector<ScriptEntry>& entries() const { return entries_; }

 private:
  std::vector<ScriptEntry> entries_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
};

struct TiePolicy {
  enum class Kind {
    order_based,    // largest candidate position in lexicographic order
    scripted,       // script entry, else order_based
    seeded_random,  // uniform over candidate positions, keyed by (seed, t, process)
    lowest_id,      // smallest process id (engine-internal, for testing)
    cyclic          // equilateral-triangle adversary; also decides y
  };

  Kind kind = Kind::order_based;
  std::uint64_t seed = 0;
  std::shared_ptr<const AdversaryScript> script;

  static TiePolicy order_based() { return {}; }
  static TiePolicy lowest_id() { return {Kind::lowest_id, 0, nullptr}; }
  static TiePolicy seeded_random(std::uint64_t seed) { return {Kind::seeded_random, seed, nullptr}; }
  static TiePolicy scripted(AdversaryScript script);
  static TiePolicy cyclic() { return {Kind::cyclic, 0, nullptr}; }

  std::string name() const;
};

struct OrthogonalChoice {
  enum class Kind { fixed_positive, fixed_negative, scripted, seeded_random };

  Kind kind = Kind::fixed_positive;
  std::uint64_t seed = 0;
  std::shared_ptr<const AdversaryScript> script;

  static OrthogonalChoice fixed_positive() { return {}; }
  static OrthogonalChoice fixed_negative() { return {Kind::fixed_negative, 0, nullptr}; }
  static OrthogonalChoice seeded_random(std::uint64_t seed) { return {Kind::seeded_random, seed, nullptr}; }
  static OrthogonalChoice scripted(AdversaryScript script);

  std::string name() const;
};

/// Where in the execution a choice is made.
struct ChoiceContext {
  std::size_t time = 0;
  std::size_t rank = 0;
};

/// C(p) among the candidates of a nonempty view. Co-located candidates are
/// interchangeable; the lowest id among them is returned.
/// Throws UsageError for an empty view, a cyclic policy (see decide) or a
/// script choice out of range.
std::size_t select_neighbor(const NeighborView& view, const TiePolicy& policy,
                            const ChoiceContext& context = {});

OrthogonalSelector resolve_orthogonal(const OrthogonalChoice& choice, const ChoiceContext& context,
                                      std::size_t process);

/// M_p + fx(D) x + fy(D) y. Throws UsageError when the positions coincide.
Point next_position(const Point& self, const Point& neighbor, const MoveRule& rule,
                    const OrthogonalSelector& ortho = OrthogonalSelector::positive());

struct AdversaryMove {
  std::size_t neighbor;
  Vector ortho;
};

/// Cyclic choice for p when p and its two tied neighbors form an equilateral
/// triangle within the tie band: p follows the next vertex in position order
/// (smallest -> middle -> largest -> smallest) and y points away from the
/// triangle's barycenter (toward it when fy(D) < 0). nullopt otherwise.
std::optional<AdversaryMove> cyclic_move(const SwarmView& swarm, std::size_t p, const MoveRule& rule);

/// The equilateral adversary for a whole three-position configuration.
/// Entry p is nullopt for crashed processes. Throws ScenarioError unless
/// Omega is an equilateral triangle within the tie band and d >= 2.
std::vector<std::optional<AdversaryMove>> equilateral_adversary(
    const Configuration& config, const MoveRule& rule, double eps_tie = kDefaultTieTolerance);

struct Decision {
  std::size_t neighbor;
  OrthogonalSelector ortho;
  /// The cyclic adversary could not act and order-based selection was used.
  bool fallback = false;
};

/// Full adversary decision for process p (view must be nonempty).
Decision decide(const SwarmView& swarm, std::size_t p, const MoveRule& rule, const TiePolicy& tie,
                const OrthogonalChoice& ortho);

}  // namespace myopic
