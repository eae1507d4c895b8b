#pragma once

// Böhm trees explored on demand, and the two-token game that follows the
// head reduction of M[z := N] by moving through the trees of M and N.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "seqalg/lambda.hpp"

namespace seqalg {

struct BohmNode {
  std::vector<std::string> binders;
  std::string head;
  std::size_t child_count = 0;
  bool divergent = false;
  bool operator==(const BohmNode&) const = default;
};

inline std::string show_node(const BohmNode& n) {
  if (n.divergent) return "⊥";
  std::string s;
  if (!n.binders.empty()) {
    s = "λ";
    for (std::size_t i = 0; i < n.binders.size(); ++i) s += (i ? " " : "") + n.binders[i];
    s += ". ";
  }
  return s + n.head + " [" + std::to_string(n.child_count) + "]";
}

/// Caches head normal forms by path; delivered nodes never change.
class BohmExplorer {
 public:
  explicit BohmExplorer(Term root, std::size_t fuel = kDefaultFuel) : root_(std::move(root)), fuel_(fuel) {}

  /// The node at `path` (1-based child indices). A node whose head
  /// reduction runs out of fuel is returned as divergent; a path through a
  /// divergent node or past the last child is a bad path.
  BohmNode expand(const std::vector<int>& path) {
    if (auto it = cache_.find(path); it != cache_.end()) return it->second.node;
    Term t = root_;
    if (!path.empty()) {
      std::vector<int> parent(path.begin(), path.end() - 1);
      expand(parent);
      const Cached& p = cache_.at(parent);
      const int i = path.back();
      if (p.node.divergent) throw Error(ErrorCode::bad_path, "path passes through a divergent node");
      if (i < 1 || static_cast<std::size_t>(i) > p.args.size())
        throw Error(ErrorCode::bad_path, "child " + std::to_string(i) + " of a node with " +
                                             std::to_string(p.args.size()) + " children");
      t = p.args[static_cast<std::size_t>(i - 1)];
    }
    Cached c;
    try {
      HeadNormalForm h = head_normalize(t, fuel_);
      c.node = BohmNode{h.binders, h.head, h.args.size(), false};
      c.args = std::move(h.args);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::fuel_exhausted) throw;
      c.node.divergent = true;
    }
    cache_[path] = c;
    return c.node;
  }

  const Term& root() const { return root_; }

 private:
  struct Cached {
    BohmNode node;
    std::vector<Term> args;
  };
  Term root_;
  std::size_t fuel_;
  std::map<std::vector<int>, Cached> cache_;
};

/// Head-normalizes the subterm addressed by `path`.
inline BohmNode bohm_expand(const Term& t, const std::vector<int>& path, std::size_t fuel = kDefaultFuel) {
  BohmExplorer e(t, fuel);
  return e.expand(path);
}

// ---------------------------------------------------------------------------
// The token game.

enum class Side { M, N };
enum class MoveSort { variable, binders };

struct GameMove {
  Side side;
  MoveSort sort;
  std::string text;  // the head variable, or the bunch "λx y." ("λ." if empty)
  bool operator==(const GameMove&) const = default;
};

struct GameTrace {
  std::vector<GameMove> moves;
  enum class Ending { free_head, blocked } ending = Ending::free_head;
  std::string final_head;  // the free head variable reached, or the blocked one
};

inline std::string show_trace(const GameTrace& t) {
  std::string s;
  for (std::size_t i = 0; i < t.moves.size(); ++i)
    s += (i ? "; " : "") + std::string(t.moves[i].side == Side::M ? "M:" : "N:") + t.moves[i].text;
  return s;
}

namespace detail {

// A term in normal form as a tree of head forms.
struct GameNode {
  std::vector<std::string> binders;
  std::string head;
  std::vector<GameNode> args;
  std::set<std::string> outer;  // variables bound by strict ancestors
};

inline GameNode game_tree(const Term& t, std::size_t fuel, std::set<std::string> outer = {}) {
  HeadNormalForm h = head_normalize(t, fuel);
  GameNode n{h.binders, h.head, {}, outer};
  outer.insert(h.binders.begin(), h.binders.end());
  for (const auto& a : h.args) n.args.push_back(game_tree(a, fuel, outer));
  return n;
}

inline std::string bunch(const GameNode& n) {
  std::string s = "λ";
  for (std::size_t i = 0; i < n.binders.size(); ++i) s += (i ? " " : "") + n.binders[i];
  return s + ".";
}

}  // namespace detail

/// The alternating trace of the two tokens for M[z := N]. Each head
/// variable must be bound by its own node's binder bunch or be free; other
/// bindings need pointers and are rejected.
inline GameTrace token_game_trace(const Term& m, const Term& n, const std::string& z = "z",
                                  std::size_t fuel = kDefaultFuel) {
  using detail::GameNode;
  const GameNode tm = detail::game_tree(m, fuel);
  const GameNode tn = detail::game_tree(n, fuel);
  if (!tm.binders.empty())
    throw Error(ErrorCode::unsupported_case, "M must not start with an abstraction");
  if (free_vars(n).count(z))
    throw Error(ErrorCode::unsupported_case, "N mentions the substituted variable " + z);
  GameTrace trace;
  trace.moves.push_back({Side::M, MoveSort::variable, tm.head});
  if (tm.head != z) {
    trace.final_head = tm.head;
    return trace;
  }

  // Leftover arguments would be applied to a head variable, which the
  // two-token picture cannot follow.
  auto enter = [](const GameNode& next, const GameNode& args) {
    if (next.binders.size() < args.args.size())
      throw Error(ErrorCode::unsupported_case, "bunch " + detail::bunch(next) + " receives " +
                                                   std::to_string(args.args.size()) + " arguments");
  };
  enter(tn, tm);
  Side side = Side::N;
  const GameNode* node = &tn;
  const GameNode* provider = &tm;  // the node whose arguments instantiate node's bunch
  for (std::size_t steps = 0;; ++steps) {
    if (steps > fuel) throw Error(ErrorCode::fuel_exhausted, "token game too long");
    trace.moves.push_back({side, MoveSort::binders, detail::bunch(*node)});
    const std::string& h = node->head;
    trace.moves.push_back({side, MoveSort::variable, h});
    const auto& bs = node->binders;
    auto own = std::find(bs.rbegin(), bs.rend(), h);
    if (own != bs.rend()) {
      const auto i = static_cast<std::size_t>(bs.rend() - own - 1);
      if (i >= provider->args.size()) {
        trace.ending = GameTrace::Ending::blocked;
        trace.final_head = h;
        return trace;
      }
      const GameNode* next = &provider->args[i];
      enter(*next, *node);
      provider = node;
      node = next;
      side = side == Side::M ? Side::N : Side::M;
      continue;
    }
    if (node->outer.count(h))
      throw Error(ErrorCode::unsupported_case, "variable " + h + " is bound by an enclosing bunch");
    if (side == Side::M && h == z) {
      enter(tn, *node);
      provider = node;
      node = &tn;
      side = Side::N;
      continue;
    }
    trace.ending = GameTrace::Ending::free_head;
    trace.final_head = h;
    return trace;
  }
}

// ---------------------------------------------------------------------------
// Corpus of simple-case pairs.

struct GamePair {
  Term m;
  Term n;
};

namespace detail {

// A random normal form in which each head variable is one of the node's own
// binders or one of `free`.
inline Term random_simple(std::mt19937& rng, const std::string& prefix, int& counter, int depth,
                          const std::vector<std::string>& free, bool force_binders = false) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int nb = force_binders ? pick(1, 3) : pick(0, 2);
  std::vector<std::string> binders;
  for (int i = 0; i < nb; ++i) binders.push_back(prefix + std::to_string(++counter));
  std::string head;
  if (!binders.empty() && pick(0, 3) != 0)
    head = binders[static_cast<std::size_t>(pick(0, nb - 1))];
  else
    head = free[static_cast<std::size_t>(pick(0, static_cast<int>(free.size()) - 1))];
  std::vector<Term> args;
  const int na = depth <= 0 ? 0 : pick(0, 3);
  for (int i = 0; i < na; ++i) args.push_back(random_simple(rng, prefix, counter, depth - 1, free));
  return rebuild(binders, Term::var(head), args);
}

}  // namespace detail

/// `count` pairs (M, N) with M = z M₁…Mₚ, all within the simple case;
/// random candidates outside it are discarded.
inline std::vector<GamePair> simple_corpus(std::size_t count, unsigned seed = 1) {
  std::mt19937 rng(seed);
  const std::vector<std::string> free_m{"z", "a", "b"};
  const std::vector<std::string> free_n{"c", "d"};
  std::vector<GamePair> out;
  while (out.size() < count) {
    int cm = 0, cn = 0;
    std::vector<Term> args;
    const int na = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < na; ++i) args.push_back(detail::random_simple(rng, "m", cm, 3, free_m));
    Term m = rebuild({}, Term::var("z"), args);
    Term n = detail::random_simple(rng, "n", cn, 3, free_n, true);
    try {
      token_game_trace(m, n);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::unsupported_case) continue;
      throw;
    }
    out.push_back({m, n});
  }
  return out;
}

}  // namespace seqalg
