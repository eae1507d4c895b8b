#pragma once

// The observer session protocol. Requests and replies are JSON objects
//
//   {"session": ID, "verb": VERB, "payload": {...}}
//
// and every reply also carries "revision", which strictly increases per
// session. Errors reply with verb "error" and payload {code, message, legal}.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqalg/bohm.hpp"
#include "seqalg/dsl.hpp"
#include "seqalg/machine.hpp"

namespace seqalg {

using json = nlohmann::json;

/// The catalog with every *.sds file of `dir` loaded on top, in name order.
inline std::shared_ptr<const Store> load_catalog_dir(const std::filesystem::path& dir) {
  auto s = std::make_shared<Store>(catalog());
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".sds") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream text;
    text << in.rdbuf();
    try {
      load_definitions(text.str(), *s);
    } catch (const Error& e) {
      throw Error(e.code(), f.filename().string() + ": " + e.what());
    }
  }
  return s;
}

/// The catalog, extended by the directory named in SEQALG_CATALOG if set.
inline std::shared_ptr<const Store> default_store() {
  if (const char* dir = std::getenv("SEQALG_CATALOG"); dir && *dir) return load_catalog_dir(dir);
  return catalog();
}

inline json trace_json(const TraceEntry& t) {
  return {{"rule", t.rule}, {"s", t.s}, {"s1", t.s1}, {"s2", t.s2}, {"phase", phase_name(t.phase)}};
}

inline json node_json(const BohmNode& n) {
  return {{"binders", n.binders},
          {"head", n.head},
          {"children", n.child_count},
          {"divergent", n.divergent},
          {"text", show_node(n)}};
}

/// One session: a store layer over the shared base, and at most one
/// composition or Böhm exploration.
class Session {
 public:
  explicit Session(std::shared_ptr<const Store> base) : store_(std::make_shared<Store>(std::move(base))) {}

  json handle(const std::string& verb, const json& payload) {
    if (verb == "load") return load(payload);
    if (verb == "list") return list();
    if (verb == "start-compose") return start_compose(payload);
    if (verb == "observer-move") return observer_move(payload);
    if (verb == "state") return view();
    if (verb == "start-bohm") return start_bohm(payload);
    if (verb == "bohm-query") return bohm_query(payload);
    throw Error(ErrorCode::illegal_verb, "unknown verb '" + verb + "'");
  }

  /// Legal observer moves in the current state; empty outside compose mode.
  std::vector<std::string> legal() const {
    if (!machine_ || !machine_->observer_turn(state_)) return {};
    return machine_->legal_observer_moves(state_);
  }

  std::uint64_t next_revision() { return ++revision_; }

 private:
  static std::string text(const json& p, const char* key) {
    if (!p.is_object() || !p.contains(key) || !p[key].is_string())
      throw Error(ErrorCode::parse, std::string("payload needs a string '") + key + "'");
    return p[key].get<std::string>();
  }

  json load(const json& p) { return {{"names", load_definitions(text(p, "text"), *store_)}}; }

  json list() const {
    json out = json::array();
    for (const Entry* e : store_->all()) {
      json j{{"name", e->name}, {"kind", kind_name(e->kind)}, {"anchor", e->anchor}};
      if (e->type) j["type"] = print_type(*e->type);
      out.push_back(j);
    }
    return {{"entries", out}};
  }

  json start_compose(const json& p) {
    const std::string phi = text(p, "phi"), psi = text(p, "psi");
    auto m = std::make_unique<Machine>(store_->get(phi, EntryKind::algorithm).algorithm(),
                                       store_->get(psi, EntryKind::algorithm).algorithm());
    machine_ = std::move(m);
    names_ = {phi, psi};
    state_ = MachineState{};
    history_.clear();
    explorer_.reset();
    return view();
  }

  json observer_move(const json& p) {
    if (!machine_) throw Error(ErrorCode::illegal_verb, "no composition in progress");
    const std::string move = text(p, "move");
    const auto ok = legal();
    if (std::find(ok.begin(), ok.end(), move) == ok.end())
      throw Error(ErrorCode::illegal_move, "'" + move + "' is not a legal observer move");
    std::vector<TraceEntry> trace;
    state_ = machine_->run_query(state_, move, &trace);
    json steps = json::array();
    for (const auto& t : trace) steps.push_back(trace_json(t));
    history_.insert(history_.end(), steps.begin(), steps.end());
    json v = view();
    v["steps"] = steps;
    return v;
  }

  json start_bohm(const json& p) {
    const std::string t = text(p, "term");
    explorer_ = std::make_unique<BohmExplorer>(parse_term(t));
    term_ = t;
    expanded_ = json::array();
    machine_.reset();
    return bohm_query(json{{"path", json::array()}});
  }

  json bohm_query(const json& p) {
    if (!explorer_) throw Error(ErrorCode::illegal_verb, "no Böhm exploration in progress");
    if (!p.is_object() || !p.contains("path") || !p["path"].is_array())
      throw Error(ErrorCode::parse, "payload needs an array 'path'");
    std::vector<int> path;
    for (const auto& i : p["path"]) {
      if (!i.is_number_integer()) throw Error(ErrorCode::bad_path, "path entries are integers");
      path.push_back(i.get<int>());
    }
    json node = node_json(explorer_->expand(path));
    expanded_.push_back({{"path", path}, {"node", node}});
    json v = view();
    v["path"] = path;
    v["node"] = node;
    return v;
  }

  json view() const {
    if (machine_) {
      const auto& c = *machine_->composite();
      return {{"mode", "compose"},
              {"phi", names_[0]},
              {"psi", names_[1]},
              {"s", machine_->phi().sds().show(state_.s)},
              {"s1", machine_->psi().sds().show(state_.s1)},
              {"s2", c.show(state_.s2)},
              {"phase", phase_name(state_.phase)},
              {"trace", history_},
              {"legal", legal()}};
    }
    if (explorer_) return {{"mode", "bohm"}, {"term", term_}, {"expanded", expanded_}};
    return {{"mode", "idle"}};
  }

  std::shared_ptr<Store> store_;
  std::unique_ptr<Machine> machine_;
  std::vector<std::string> names_;
  MachineState state_;
  json history_ = json::array();
  std::unique_ptr<BohmExplorer> explorer_;
  std::string term_;
  json expanded_ = json::array();
  std::uint64_t revision_ = 0;
};

/// Routes messages to sessions, creating them on first use. Messages of one
/// session are serialized; distinct sessions run in parallel.
class SessionManager {
 public:
  explicit SessionManager(std::shared_ptr<const Store> base = default_store()) : base_(std::move(base)) {}

  json handle(const json& msg) {
    std::string id;
    if (msg.is_object() && msg.contains("session") && msg["session"].is_string())
      id = msg["session"].get<std::string>();
    if (id.empty()) return error_reply(json(nullptr), 0, ErrorCode::parse, "message needs a string 'session'", {});
    Slot& slot = slot_for(id);
    std::lock_guard lock(slot.mutex);
    Session& s = *slot.session;
    const std::uint64_t rev = s.next_revision();
    try {
      if (!msg.contains("verb") || !msg["verb"].is_string())
        throw Error(ErrorCode::parse, "message needs a string 'verb'");
      const std::string verb = msg["verb"].get<std::string>();
      const json payload = msg.value("payload", json::object());
      json reply = s.handle(verb, payload);
      return {{"session", id}, {"verb", verb}, {"revision", rev}, {"payload", reply}};
    } catch (const Error& e) {
      return error_reply(id, rev, e.code(), e.what(), s.legal());
    } catch (const std::exception& e) {
      return error_reply(id, rev, ErrorCode::violation, e.what(), s.legal());
    }
  }

  /// Parses one wire line and handles it; malformed JSON gets an error reply.
  std::string handle_line(const std::string& line) {
    json msg;
    try {
      msg = json::parse(line);
    } catch (const json::parse_error& e) {
      return error_reply(json(nullptr), 0, ErrorCode::parse, e.what(), {}).dump();
    }
    return handle(msg).dump();
  }

 private:
  struct Slot {
    std::mutex mutex;
    std::unique_ptr<Session> session;
  };

  static json error_reply(const json& id, std::uint64_t rev, ErrorCode code, const std::string& message,
                          const std::vector<std::string>& legal) {
    return {{"session", id},
            {"verb", "error"},
            {"revision", rev},
            {"payload", {{"code", to_string(code)}, {"message", message}, {"legal", legal}}}};
  }

  Slot& slot_for(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto& slot = slots_[id];
    if (!slot) {
      slot = std::make_unique<Slot>();
      slot->session = std::make_unique<Session>(base_);
    }
    return *slot;
  }

  std::shared_ptr<const Store> base_;
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
};

}  // namespace seqalg
