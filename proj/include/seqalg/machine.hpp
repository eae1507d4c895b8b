#pragma once

// The abstract machine composing two affine algorithms φ : S -o S' and
// ψ : S' -o S''. Its state is a triple of positions, one per arrow, each
// possibly empty.

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqalg/affine.hpp"

namespace seqalg {

enum class Phase : std::uint8_t {
  awaiting_observer,  // initial, every component empty or a response
  running,
  final_response,     // ψ answered the observer
  input_needed,       // φ asked the source; the observer must answer
  stuck,              // no rule applies: the composite is undefined here
};

inline std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::awaiting_observer: return "awaiting-observer";
    case Phase::running: return "running";
    case Phase::final_response: return "final-response";
    case Phase::input_needed: return "stuck-on-input";
    case Phase::stuck: return "stuck";
  }
  return "?";
}

struct MachineState {
  NodeId s = kEpsilon;   // in φ's arrow
  NodeId s1 = kEpsilon;  // in ψ's arrow
  NodeId s2 = kEpsilon;  // in the composite arrow
  Phase phase = Phase::awaiting_observer;
  bool operator==(const MachineState&) const = default;
};

struct TraceEntry {
  std::string rule;
  std::string s, s1, s2;
  Phase phase;
};

class Machine {
 public:
  Machine(AffineAlgorithm phi, AffineAlgorithm psi, std::size_t step_cap = kStepCap)
      : phi_(std::move(phi)), psi_(std::move(psi)), cap_(step_cap) {
    if (!phi_.target()->same_positions(*psi_.source()))
      throw Error(ErrorCode::type_mismatch, "cannot compose: target " + phi_.target()->name() +
                                                " differs from source " + psi_.source()->name());
    composite_ = affine_arrow(phi_.source(), psi_.target());
  }

  const AffineAlgorithm& phi() const { return phi_; }
  const AffineAlgorithm& psi() const { return psi_; }
  const SdsPtr& composite() const { return composite_; }

  /// True when every component is empty or a response.
  bool observer_turn(const MachineState& st) const {
    return st.phase != Phase::running && st.phase != Phase::stuck &&
           !phi_.sds().is_query(st.s) && !psi_.sds().is_query(st.s1) &&
           !composite_->is_query(st.s2);
  }

  /// Cell moves the observer may play, as composite labels.
  std::vector<std::string> legal_observer_moves(const MachineState& st) const {
    std::vector<std::string> out;
    if (!observer_turn(st)) return out;
    for (NodeId c : composite_->children(st.s2)) out.push_back(composite_->label(c));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// One transition. `observer` is required exactly when it is the observer's turn.
  MachineState step(const MachineState& st, const std::optional<std::string>& observer,
                    std::string* rule = nullptr) const {
    const Sds& a1 = phi_.sds();
    const Sds& a2 = psi_.sds();
    const Sds& a3 = *composite_;
    MachineState next = st;
    next.phase = Phase::running;
    auto name = [&](const char* r) {
      if (rule) *rule = r;
    };
    auto need = [](NodeId n, const std::string& what) {
      if (n == kAbsent) throw Error(ErrorCode::violation, "machine left the arrow at " + what);
      return n;
    };

    if (observer_turn(st)) {
      if (!observer) throw Error(ErrorCode::illegal_move, "the observer must move");
      NodeId m = a3.child(st.s2, *observer);
      if (m == kAbsent || a3.kind(m) != MoveKind::cell)
        throw Error(ErrorCode::illegal_move, "'" + *observer + "' is not a legal observer move");
      if (tag_of(a3, m) == ArrowTag::request) {
        next.s1 = need(a2.child(st.s1, *observer), *observer);
        name("observer-request");
      } else {
        next.s = need(a1.child(st.s, *observer), *observer);
        name("observer-answer");
      }
      next.s2 = m;
      return next;
    }
    if (observer) throw Error(ErrorCode::illegal_move, "the observer cannot move now");
    if (st.phase == Phase::stuck) return st;

    if (a2.is_query(st.s1)) {
      NodeId r = psi_.response_at(st.s1);
      if (r == kAbsent) {
        next.phase = Phase::stuck;
        name("none");
        return next;
      }
      const std::string& inner = inner_label(a2, r);
      next.s1 = r;
      if (tag_of(a2, r) == ArrowTag::output) {
        next.s2 = need(a3.child(st.s2, a2.label(r)), a2.label(r));
        next.phase = Phase::final_response;
        name("psi-output");
      } else {
        next.s = need(a1.child(st.s, arrow_label(ArrowTag::request, inner)), inner);
        name("psi-valof");
      }
      return next;
    }
    if (a1.is_query(st.s)) {
      NodeId r = phi_.response_at(st.s);
      if (r == kAbsent) {
        next.phase = Phase::stuck;
        name("none");
        return next;
      }
      const std::string& inner = inner_label(a1, r);
      next.s = r;
      if (tag_of(a1, r) == ArrowTag::output) {
        next.s1 = need(a2.child(st.s1, arrow_label(ArrowTag::is, inner)), inner);
        name("phi-output");
      } else {
        next.s2 = need(a3.child(st.s2, a1.label(r)), a1.label(r));
        next.phase = Phase::input_needed;
        name("phi-valof");
      }
      return next;
    }
    next.phase = Phase::stuck;
    name("none");
    return next;
  }

  TraceEntry entry(const std::string& rule, const MachineState& st) const {
    return TraceEntry{rule, phi_.sds().show(st.s), psi_.sds().show(st.s1), composite_->show(st.s2),
                      st.phase};
  }

  /// Plays an observer move and runs until the machine is quiescent.
  MachineState run_query(const MachineState& st, const std::string& observer,
                         std::vector<TraceEntry>* trace = nullptr) const {
    std::string rule;
    MachineState cur = step(st, observer, &rule);
    if (trace) trace->push_back(entry(rule, cur));
    for (std::size_t n = 0; cur.phase == Phase::running; ++n) {
      if (n >= cap_) throw Error(ErrorCode::step_cap, "machine exceeded the step cap");
      cur = step(cur, std::nullopt, &rule);
      if (trace) trace->push_back(entry(rule, cur));
    }
    return cur;
  }

  /// The composite algorithm: all composite responses reachable by observer
  /// moves, explored breadth first.
  AffineAlgorithm compose() const {
    std::set<NodeId> found;
    std::deque<MachineState> queue{MachineState{}};
    while (!queue.empty()) {
      MachineState st = queue.front();
      queue.pop_front();
      for (const auto& m : legal_observer_moves(st)) {
        MachineState done = run_query(st, m);
        if (done.phase == Phase::stuck) continue;
        if (found.insert(done.s2).second) queue.push_back(done);
      }
    }
    std::vector<NodeId> rs(found.begin(), found.end());
    return AffineAlgorithm{composite_, validate_strategy(*composite_, rs).value()};
  }

 private:
  AffineAlgorithm phi_;
  AffineAlgorithm psi_;
  SdsPtr composite_;
  std::size_t cap_;
};

/// ψ ∘ φ computed by the machine.
inline AffineAlgorithm machine_compose(const AffineAlgorithm& phi, const AffineAlgorithm& psi,
                                       std::size_t step_cap = kStepCap) {
  return Machine(phi, psi, step_cap).compose();
}

}  // namespace seqalg
