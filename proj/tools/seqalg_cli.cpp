// seqalg: command-line front end. Exit status 0 on success, 1 when the
// input violates a definition or a check fails, 2 on usage errors.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqalg/acceptance.hpp"
#include "seqalg/server.hpp"

using namespace seqalg;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::unknown_name, "cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

/// The sds of a named entry (an algorithm's arrow), or of a type expression.
SdsPtr sds_of(Store& store, const std::string& spec) {
  if (const Entry* e = store.find(spec); e && e->sds) return e->sds;
  return store.resolve(parse_type(spec));
}

std::vector<int> parse_path(const std::string& text) {
  std::vector<int> path;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, '.');) {
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      path.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::bad_path, "'" + text + "' is not a dotted path");
    }
  }
  return path;
}

void print_strategies(const Sds& s, const std::vector<Strategy>& xs) {
  for (const auto& x : xs) std::cout << format_set(s, x) << "\n";
  std::cout << xs.size() << " strategies\n";
}

void print_table(const FunctionTable& t) {
  for (const auto& [args, r] : t.rows) std::cout << show_tuple(args) << " -> " << show_flat(r) << "\n";
}

void print_trace(const std::vector<TraceEntry>& trace) {
  for (const auto& t : trace)
    std::cout << t.rule << "  s=[" << t.s << "]  s'=[" << t.s1 << "]  s''=[" << t.s2 << "]  "
              << phase_name(t.phase) << "\n";
}

int verify() {
  int failed = 0;
  for (const auto& c : acceptance_checks()) {
    const auto r = run_check(c);
    std::printf("%s %s (%.3fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.empty() ? "" : ": ", r.detail.c_str());
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}

// Shorthand: compose PHI PSI | move MOVE... | state | list | load FILE |
// bohm TERM... | query PATH. Lines starting with '{' are sent as they are.
std::string explore_line(const std::string& line) {
  if (!line.empty() && line.front() == '{') return line;
  std::stringstream in(line);
  std::string verb;
  in >> verb;
  std::string rest;
  std::getline(in, rest);
  rest.erase(0, rest.find_first_not_of(' '));
  json msg{{"session", "explore"}};
  if (verb == "compose") {
    std::stringstream r(rest);
    std::string phi, psi;
    r >> phi >> psi;
    msg["verb"] = "start-compose";
    msg["payload"] = {{"phi", phi}, {"psi", psi}};
  } else if (verb == "move") {
    msg["verb"] = "observer-move";
    msg["payload"] = {{"move", rest}};
  } else if (verb == "state" || verb == "list") {
    msg["verb"] = verb;
  } else if (verb == "load") {
    msg["verb"] = "load";
    msg["payload"] = {{"text", read_file(rest)}};
  } else if (verb == "bohm") {
    msg["verb"] = "start-bohm";
    msg["payload"] = {{"term", rest}};
  } else if (verb == "query") {
    msg["verb"] = "bohm-query";
    msg["payload"] = {{"path", parse_path(rest)}};
  } else {
    msg["verb"] = verb;
  }
  return msg.dump();
}

int explore() {
  SessionManager sessions;
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line.empty()) continue;
    if (line == "quit" || line == "exit") break;
    try {
      std::cout << json::parse(sessions.handle_line(explore_line(line))).dump(2) << "\n";
    } catch (const Error& e) {
      std::cout << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqalg: sequential algorithms on sequential data structures"};
  app.require_subcommand(1);
  std::vector<std::string> defs;
  app.add_option("--defs", defs, "definition files loaded before the command")->check(CLI::ExistingFile);

  std::string file, name, x, alpha, phi, psi, table, type, term, path;
  std::vector<std::string> queries;
  bool exhaustive = false;
  int port = 7878;

  auto* check = app.add_subcommand("check", "parse and validate a definition file");
  check->add_option("FILE", file)->required();
  auto* en = app.add_subcommand("enum", "list the strategies of an sds or type");
  en->add_option("NAME", name)->required();
  auto* pl = app.add_subcommand("play", "play a strategy against a counter-strategy");
  pl->add_option("X", x)->required();
  pl->add_option("ALPHA", alpha)->required();
  auto* co = app.add_subcommand("compose", "compose two algorithms with the abstract machine");
  co->add_option("PHI", phi)->required();
  co->add_option("PSI", psi)->required();
  co->add_option("--query", queries, "observer moves, played in order");
  co->add_flag("--exhaustive", exhaustive, "print the whole composite");
  auto* ta = app.add_subcommand("table", "the function table of an algorithm");
  ta->add_option("ALG", name)->required();
  auto* se = app.add_subcommand("search", "all algorithms of a type computing a table");
  se->add_option("TABLE", table)->required();
  se->add_option("TYPE", type)->required();
  auto* bo = app.add_subcommand("bohm", "explore the Böhm tree of a term");
  bo->add_option("TERM", term)->required();
  bo->add_option("--path", path, "dotted path of 1-based child indices");
  auto* ex = app.add_subcommand("explore", "interactive session in the terminal");
  auto* sv = app.add_subcommand("serve", "serve the session protocol on 127.0.0.1");
  sv->add_option("--port", port, "TCP port (0 picks one)");
  auto* ve = app.add_subcommand("verify", "run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Store store(default_store());
    for (const auto& d : defs) load_definitions(read_file(d), store);

    if (*check) {
      for (const auto& n : load_definitions(read_file(file), store))
        std::cout << kind_name(store.get(n).kind) << " " << n << "\n";
      std::cout << "ok\n";
    } else if (*en) {
      const auto s = sds_of(store, name);
      print_strategies(*s, enumerate_strategies(*s));
    } else if (*pl) {
      const Entry& ex_ = store.get(x, EntryKind::strategy);
      const Entry& ea = store.get(alpha, EntryKind::counter);
      if (!ex_.sds->same_positions(*ea.sds))
        throw Error(ErrorCode::type_mismatch, x + " and " + alpha + " live in different sds's");
      const auto r = play(*ex_.sds, ex_.strategy, ea.counter);
      std::cout << "play: " << ex_.sds->show(r.maximal) << "\nwinner: "
                << (r.winner == Winner::player ? "player" : "opponent") << "\n";
    } else if (*co) {
      Machine m(store.get(phi, EntryKind::algorithm).algorithm(), store.get(psi, EntryKind::algorithm).algorithm());
      MachineState st;
      for (const auto& q : queries) {
        std::vector<TraceEntry> trace;
        st = m.run_query(st, q, &trace);
        std::cout << "query " << q << "\n";
        print_trace(trace);
      }
      if (!queries.empty()) {
        std::cout << "legal:";
        for (const auto& l : m.observer_turn(st) ? m.legal_observer_moves(st) : std::vector<std::string>{})
          std::cout << " [" << l << "]";
        std::cout << "\n";
      }
      if (exhaustive || queries.empty()) {
        const auto c = m.compose();
        for (NodeId r : c.strategy.responses) std::cout << c.sds().show(r) << "\n";
      }
    } else if (*ta) {
      print_table(function_table(store.get(name, EntryKind::algorithm).algorithm(), name));
    } else if (*se) {
      const auto arrow = store.resolve(parse_type(type));
      arrow_origin(*arrow);
      print_strategies(*arrow, search_by_table(store.get(table, EntryKind::table).table, arrow));
    } else if (*bo) {
      BohmExplorer e(parse_term(term));
      const auto p = parse_path(path);
      for (std::size_t k = 0; k <= p.size(); ++k) {
        const std::vector<int> prefix(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
        std::string label;
        for (int i : prefix) label += (label.empty() ? "" : ".") + std::to_string(i);
        std::cout << (label.empty() ? "root" : label) << ": " << show_node(e.expand(prefix)) << "\n";
      }
    } else if (*ex) {
      return explore();
    } else if (*sv) {
      SessionManager sessions;
      SessionServer server(sessions);
      const int bound = server.listen(port);
      std::cout << "listening on 127.0.0.1:" << bound << std::endl;
      std::signal(SIGPIPE, SIG_IGN);
      server.serve();
    } else if (*ve) {
      return verify();
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
