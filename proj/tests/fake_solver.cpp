// Stand-in for an external SAT/QBF solver, used by the bridge tests.
//
//   fake_solver MODE FILE
//
// MODE: exit (answer via exit code 10/20), text (print `s SATISFIABLE` /
// `s UNSATISFIABLE`), short (print SAT / UNSAT), garbage, sleep, fail.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Problem {
  int vars = 0;
  // Quantifier prefix: (existential?, variable), outermost first.
  std::vector<std::pair<bool, int>> prefix;
  std::vector<std::vector<int>> clauses;
};

Problem read(const std::string& path) {
  std::ifstream in(path);
  Problem p;
  std::string line;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    if (first == "p") {
      std::string fmt;
      int nclauses;
      ls >> fmt >> p.vars >> nclauses;
      continue;
    }
    if (first == "a" || first == "e") {
      int v;
      while (ls >> v && v != 0) p.prefix.emplace_back(first == "e", v);
      continue;
    }
    std::istringstream all(line);
    int lit;
    while (all >> lit) {
      if (lit == 0) {
        p.clauses.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(lit);
      }
    }
  }
  // Unquantified variables are existential at the outermost level.
  std::vector<bool> bound(static_cast<std::size_t>(p.vars) + 1, false);
  for (auto [e, v] : p.prefix) bound[static_cast<std::size_t>(v)] = true;
  std::vector<std::pair<bool, int>> free;
  for (int v = 1; v <= p.vars; ++v)
    if (!bound[static_cast<std::size_t>(v)]) free.emplace_back(true, v);
  p.prefix.insert(p.prefix.begin(), free.begin(), free.end());
  return p;
}

// 1 true, 0 false, -1 undecided.
int status(const Problem& p, const std::vector<int>& val) {
  bool all_sat = true;
  for (const auto& c : p.clauses) {
    bool sat = false, open = false;
    for (int l : c) {
      int v = val[static_cast<std::size_t>(std::abs(l))];
      if (v < 0) open = true;
      else if ((v == 1) == (l > 0)) sat = true;
    }
    if (sat) continue;
    if (!open) return 0;
    all_sat = false;
  }
  return all_sat ? 1 : -1;
}

// Unit clauses: an open existential literal is forced; an open universal
// one means the adversary falsifies the clause. Returns false on conflict.
bool propagate(const Problem& p, const std::vector<bool>& universal, std::vector<int>& val,
               std::vector<int>& trail) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : p.clauses) {
      int open = 0, last = 0;
      bool sat = false;
      for (int l : c) {
        int v = val[static_cast<std::size_t>(std::abs(l))];
        if (v < 0) {
          ++open;
          last = l;
        } else if ((v == 1) == (l > 0)) {
          sat = true;
          break;
        }
      }
      if (sat || open > 1) continue;
      if (open == 0 || universal[static_cast<std::size_t>(std::abs(last))]) return false;
      val[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : 0;
      trail.push_back(std::abs(last));
      changed = true;
    }
  }
  return true;
}

bool solve(const Problem& p, const std::vector<bool>& universal, std::vector<int>& val, std::size_t depth) {
  std::vector<int> trail;
  auto undo = [&] {
    for (int v : trail) val[static_cast<std::size_t>(v)] = -1;
  };
  if (!propagate(p, universal, val, trail)) {
    undo();
    return false;
  }
  int s = status(p, val);
  while (s < 0 && val[static_cast<std::size_t>(p.prefix[depth].second)] >= 0) ++depth;
  if (s >= 0) {
    undo();
    return s == 1;
  }
  auto [exists, v] = p.prefix[depth];
  bool result = !exists;
  for (int b : {1, 0}) {
    val[static_cast<std::size_t>(v)] = b;
    bool r = solve(p, universal, val, depth + 1);
    if (exists && r) result = true;
    if (!exists && !r) result = false;
    if (result == exists) break;
  }
  val[static_cast<std::size_t>(v)] = -1;
  undo();
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: fake_solver MODE FILE\n";
    return 2;
  }
  std::string mode = argv[1];
  if (mode == "garbage") {
    std::cout << "hello there\n";
    return 0;
  }
  if (mode == "fail") return 1;
  if (mode == "sleep") std::this_thread::sleep_for(std::chrono::seconds(30));
  Problem p = read(argv[2]);
  std::vector<int> val(static_cast<std::size_t>(p.vars) + 1, -1);
  std::vector<bool> universal(val.size(), false);
  for (auto [e, v] : p.prefix) universal[static_cast<std::size_t>(v)] = !e;
  bool sat = solve(p, universal, val, 0);
  if (mode == "text") {
    std::cout << (sat ? "s SATISFIABLE" : "s UNSATISFIABLE") << "\n";
    return 0;
  }
  if (mode == "short") {
    std::cout << (sat ? "SAT" : "UNSAT") << "\n";
    return 0;
  }
  return sat ? 10 : 20;
}
