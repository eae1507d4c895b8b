#pragma once

// Affine algorithms: strategies of an arrow S -o T, the functions they
// compute, and composition of sequential algorithms via the exponential.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqalg/constructors.hpp"

namespace seqalg {

struct AffineAlgorithm {
  SdsPtr arrow;
  Strategy strategy;

  const Sds& sds() const { return *arrow; }
  const SdsPtr& source() const { return arrow_origin(*arrow).source; }
  const SdsPtr& target() const { return arrow_origin(*arrow).target; }

  /// The unique response move of the algorithm at query node q, if any.
  NodeId response_at(NodeId q) const {
    for (NodeId c : arrow->children(q))
      if (strategy.contains(c)) return c;
    return kAbsent;
  }
  std::vector<Word> words() const {
    std::vector<Word> out;
    for (NodeId r : strategy.responses) out.push_back(arrow->word(r));
    return out;
  }
};

/// Equal when both arrows have the same positions and the algorithms the
/// same responses, regardless of which arrow instance they point into.
inline bool same_algorithm(const AffineAlgorithm& a, const AffineAlgorithm& b) {
  if (a.arrow == b.arrow) return a.strategy == b.strategy;
  if (!a.arrow->same_positions(*b.arrow)) return false;
  auto wa = a.words(), wb = b.words();
  std::sort(wa.begin(), wa.end());
  std::sort(wb.begin(), wb.end());
  return wa == wb;
}

/// Label of the component move carried by arrow node n.
inline const std::string& inner_label(const Sds& arrow, NodeId n) {
  const auto& o = arrow_origin(arrow);
  const Sds& comp = is_source_tag(o.tag.at(n)) ? *o.source : *o.target;
  return comp.label(o.inner.at(n));
}

inline ArrowTag tag_of(const Sds& arrow, NodeId n) { return arrow_origin(arrow).tag.at(n); }

/// The copycat word of p: every cell c becomes "req c valof c" and every
/// value v becomes "is v out v".
inline Word copycat_word(const Sds& s, NodeId p) {
  Word w;
  for (const auto& m : s.word(p)) {
    if (*s.label_kind(m) == MoveKind::cell) {
      w.push_back(arrow_label(ArrowTag::request, m));
      w.push_back(arrow_label(ArrowTag::valof, m));
    } else {
      w.push_back(arrow_label(ArrowTag::is, m));
      w.push_back(arrow_label(ArrowTag::output, m));
    }
  }
  return w;
}

/// id = { copycat(p) | p a position of S }.
inline AffineAlgorithm copycat_id(const SdsPtr& s) {
  auto arrow = affine_arrow(s, s);
  std::vector<NodeId> rs;
  for (NodeId p = 0; p < static_cast<NodeId>(s->size()); ++p) rs.push_back(arrow->at(copycat_word(*s, p)));
  return AffineAlgorithm{arrow, validate_strategy(*arrow, rs).value()};
}

/// Validates a set of arrow words as an affine algorithm. Words that are not
/// positions are diagnosed against the arrow's defining clauses.
inline Checked<AffineAlgorithm> validate_affine(const SdsPtr& arrow, const std::vector<Word>& words) {
  const auto& o = arrow_origin(*arrow);
  std::vector<NodeId> rs;
  for (const auto& w : words) {
    NodeId n = arrow->find(w);
    if (n == kAbsent || n == kEpsilon) {
      if (auto v = arrow_word_violation(*o.source, *o.target, w)) return *v;
      return Violation{"position", join_word(w), "not generated"};
    }
    rs.push_back(n);
  }
  auto st = validate_strategy(*arrow, rs);
  if (!st) return st.violation();
  return AffineAlgorithm{arrow, st.value()};
}

/// f(x) = { tgt(s) | s in φ ends in an output, src(s) in x ∪ {ε} }.
inline Strategy apply(const AffineAlgorithm& phi, const Strategy& x) {
  const auto& o = arrow_origin(*phi.arrow);
  std::vector<NodeId> out;
  for (NodeId s : phi.strategy.responses) {
    if (o.tag[s] != ArrowTag::output) continue;
    const NodeId sp = o.source_proj[s];
    if (sp == kEpsilon || x.contains(sp)) out.push_back(o.target_proj[s]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Strategy{out};
}

/// g(α') = { src(s) | s in φ ends in a valof, tgt(s) in α' }; nullopt when
/// empty (the algorithm asks nothing of the source).
inline std::optional<CounterStrategy> coapply(const AffineAlgorithm& phi, const CounterStrategy& a) {
  const auto& o = arrow_origin(*phi.arrow);
  std::vector<NodeId> out;
  for (NodeId s : phi.strategy.responses)
    if (o.tag[s] == ArrowTag::valof && a.contains(o.target_proj[s])) out.push_back(o.source_proj[s]);
  if (out.empty()) return std::nullopt;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return CounterStrategy{out};
}

/// The point of !S determined by x: every response of !S whose accumulated
/// strategy lies inside x.
inline Strategy promote_point(const Sds& bang_sds, const Strategy& x) {
  const auto& o = bang_origin(bang_sds);
  std::vector<NodeId> out;
  for (NodeId r : bang_sds.responses())
    if (is_subset(o.accumulated[r], x)) out.push_back(r);
  std::sort(out.begin(), out.end());
  return Strategy{out};
}

/// Applies a sequential algorithm !S -o T to a strategy of S.
inline Strategy apply_sequential(const AffineAlgorithm& phi, const Strategy& x) {
  return apply(phi, promote_point(*phi.source(), x));
}

// ---------------------------------------------------------------------------
// Kleisli composition of sequential algorithms.

namespace detail {

// Replays one query of the composite against ψ and threads of φ. The
// composite history h supplies the opponent's moves; source answers already
// given in h are replayed, new source questions are emitted.
class KleisliRun {
 public:
  KleisliRun(const AffineAlgorithm& phi, const AffineAlgorithm& psi, const Sds& out,
             std::size_t step_cap)
      : phi_(phi), psi_(psi), out_(out), cap_(step_cap) {}

  /// The composite's move label at query node h of `out`, or nullopt.
  std::optional<std::string> answer(NodeId h) {
    moves_ = out_.word(h);
    idx_ = 0;
    known_.clear();
    steps_ = 0;
    result_.reset();
    run();
    return result_;
  }

 private:
  struct Done {};

  const std::string& read() {
    if (idx_ >= moves_.size()) throw Error(ErrorCode::violation, "composite history exhausted");
    return moves_[idx_++];
  }
  // Emits a player move: either it is already in the history, or it is the answer.
  void emit(const std::string& m) {
    if (idx_ == moves_.size()) {
      result_ = m;
      throw Done{};
    }
    if (moves_[idx_] != m) throw Error(ErrorCode::violation, "composite history diverges at " + m);
    ++idx_;
    // Opponent answers to source questions become known.
    if (auto sp = split_arrow_label(m); sp && sp->first == ArrowTag::valof) {
      const std::string& reply = read();
      known_[sp->second] = reply;
    }
  }
  void tick() {
    if (++steps_ > cap_) throw Error(ErrorCode::step_cap, "composition exceeded the step cap");
  }

  // Runs φ on the query q' of S' (given as a word) and returns the value it
  // outputs for q''s last cell, or nullopt if φ stalls.
  std::optional<std::string> thread(const Word& qword) {
    const Sds& a = phi_.sds();
    NodeId p = kEpsilon;
    for (std::size_t i = 0; i < qword.size(); i += 2) {
      p = a.child(p, arrow_label(ArrowTag::request, qword[i]));
      if (p == kAbsent) throw Error(ErrorCode::violation, "thread left the arrow");
      for (;;) {
        tick();
        NodeId r = phi_.response_at(p);
        if (r == kAbsent) return std::nullopt;
        const auto& inner = inner_label(a, r);
        if (tag_of(a, r) == ArrowTag::output) {
          if (i + 1 == qword.size()) return inner;
          if (inner != qword[i + 1]) throw Error(ErrorCode::violation, "thread output diverges");
          p = r;
          break;
        }
        // valof [q] on !S
        std::string valof = a.label(r);
        auto it = known_.find(inner);
        if (it == known_.end()) {
          emit(valof);
          it = known_.find(inner);
        }
        p = a.child(r, it->second);
        if (p == kAbsent) throw Error(ErrorCode::violation, "source answer outside φ's arrow");
      }
    }
    return std::nullopt;
  }

  void run() {
    try {
      const Sds& b = psi_.sds();
      const auto& bang_mid = bang_origin(*psi_.source());
      const Sds& mid = *bang_mid.base;
      NodeId p = b.child(kEpsilon, read());
      if (p == kAbsent) throw Error(ErrorCode::violation, "composite request outside ψ's arrow");
      for (;;) {
        tick();
        NodeId r = psi_.response_at(p);
        if (r == kAbsent) return;
        if (tag_of(b, r) == ArrowTag::output) {
          emit(b.label(r));
          p = b.child(r, read());
          if (p == kAbsent) throw Error(ErrorCode::violation, "composite request outside ψ's arrow");
          continue;
        }
        const NodeId q = bang_mid.base_node.at(arrow_origin(b).inner.at(r));
        Word qword = mid.word(q);
        auto v = thread(qword);
        if (!v) return;
        qword.push_back(*v);
        p = b.child(r, arrow_label(ArrowTag::is, word_label(qword)));
        if (p == kAbsent) throw Error(ErrorCode::violation, "ψ cannot receive " + word_label(qword));
      }
    } catch (Done&) {
    }
  }

  const AffineAlgorithm& phi_;
  const AffineAlgorithm& psi_;
  const Sds& out_;
  std::size_t cap_;
  Word moves_;
  std::size_t idx_ = 0;
  std::map<std::string, std::string> known_;  // !S cell label -> "is <...>" label
  std::size_t steps_ = 0;
  std::optional<std::string> result_;
};

}  // namespace detail

inline constexpr std::size_t kStepCap = 100'000;

/// ψ ∘ φ for φ : !S -o S' and ψ : !S' -o S''.
inline AffineAlgorithm kleisli_compose(const AffineAlgorithm& phi, const AffineAlgorithm& psi,
                                       std::size_t step_cap = kStepCap) {
  const auto* b1 = phi.source()->origin_as<BangOrigin>();
  const auto* b2 = psi.source()->origin_as<BangOrigin>();
  if (!b1 || !b2) throw Error(ErrorCode::type_mismatch, "both algorithms must have an exponential source");
  if (!b2->base->same_positions(*phi.target()))
    throw Error(ErrorCode::type_mismatch,
                "target " + phi.target()->name() + " does not match " + b2->base->name());
  auto arrow = affine_arrow(phi.source(), psi.target());
  detail::KleisliRun run(phi, psi, *arrow, step_cap);
  std::vector<NodeId> rs;
  std::vector<NodeId> stack(arrow->roots().rbegin(), arrow->roots().rend());
  while (!stack.empty()) {
    NodeId h = stack.back();
    stack.pop_back();
    auto m = run.answer(h);
    if (!m) continue;
    NodeId r = arrow->child(h, *m);
    if (r == kAbsent) throw Error(ErrorCode::violation, "composite move " + *m + " is not legal");
    rs.push_back(r);
    for (auto it = arrow->children(r).rbegin(); it != arrow->children(r).rend(); ++it) stack.push_back(*it);
  }
  return AffineAlgorithm{arrow, validate_strategy(*arrow, rs).value()};
}

}  // namespace seqalg
