#pragma once

// Named definitions: sds's, strategies, counter-strategies, algorithms and
// function tables. A store may extend a read-only parent.

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqalg/affine.hpp"
#include "seqalg/table.hpp"
#include "seqalg/types.hpp"

namespace seqalg {

enum class EntryKind { sds, strategy, counter, algorithm, table };

inline std::string_view kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::sds: return "sds";
    case EntryKind::strategy: return "strategy";
    case EntryKind::counter: return "counter";
    case EntryKind::algorithm: return "algorithm";
    case EntryKind::table: return "table";
  }
  return "?";
}

struct Entry {
  std::string name;
  EntryKind kind = EntryKind::sds;
  std::string anchor;            // one-line description
  SdsPtr sds;                    // the sds itself, or the type of a strategy/algorithm
  std::optional<TypeExpr> type;  // defining or declared type; absent for literal forests
  Strategy strategy;
  CounterStrategy counter;
  FunctionTable table;

  AffineAlgorithm algorithm() const { return AffineAlgorithm{sds, strategy}; }
};

class Store {
 public:
  explicit Store(std::shared_ptr<const Store> parent = nullptr)
      : parent_(std::move(parent)), resolver_([this](const std::string& n) { return sds_named(n); }) {}
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const Entry* find(const std::string& name) const {
    if (auto it = index_.find(name); it != index_.end()) return &entries_[it->second];
    return parent_ ? parent_->find(name) : nullptr;
  }
  const Entry& get(const std::string& name) const {
    if (const Entry* e = find(name)) return *e;
    throw Error(ErrorCode::unknown_name, "'" + name + "'");
  }
  const Entry& get(const std::string& name, EntryKind kind) const {
    const Entry& e = get(name);
    if (e.kind != kind)
      throw Error(ErrorCode::type_mismatch,
                  "'" + name + "' is a " + std::string(kind_name(e.kind)) + ", not a " +
                      std::string(kind_name(kind)));
    return e;
  }
  SdsPtr sds_named(const std::string& name) const { return get(name, EntryKind::sds).sds; }

  void add(Entry e) {
    if (find(e.name)) throw Error(ErrorCode::violation, "duplicate name '" + e.name + "'");
    index_[e.name] = entries_.size();
    entries_.push_back(std::move(e));
  }

  /// Entries of this layer, in definition order.
  const std::deque<Entry>& own() const { return entries_; }
  /// Entries of every layer, parents first.
  std::vector<const Entry*> all() const {
    std::vector<const Entry*> out = parent_ ? parent_->all() : std::vector<const Entry*>{};
    for (const auto& e : entries_) out.push_back(&e);
    return out;
  }

  SdsPtr resolve(const TypeExpr& t) { return resolver_(t); }

 private:
  std::shared_ptr<const Store> parent_;
  std::deque<Entry> entries_;
  std::map<std::string, std::size_t> index_;
  TypeResolver resolver_;
};

}  // namespace seqalg
