#include "elimkit/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>

#include "elimkit/error.hpp"
#include "elimkit/sat.hpp"

namespace elimkit {

DimacsEncoding emit_dimacs(const ClauseSet& c) {
  DimacsEncoding enc;
  auto sig = c.signature();
  enc.atoms.assign(sig.begin(), sig.end());
  std::map<Atom, std::size_t> index;
  for (std::size_t i = 0; i < enc.atoms.size(); ++i) index.emplace(enc.atoms[i], i + 1);
  std::ostringstream out;
  out << "p cnf " << enc.atoms.size() << " " << c.size() << "\n";
  for (const auto& cl : c.clauses) {
    for (const auto& l : cl) out << (l.positive ? "" : "-") << index.at(l.atom) << " ";
    out << "0\n";
  }
  enc.text = out.str();
  return enc;
}

ClauseSet parse_dimacs(const std::string& text, const std::vector<Atom>& atoms) {
  std::istringstream in(text);
  std::string line;
  ClauseSet out;
  std::vector<Literal> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == 'p') continue;
    std::istringstream ls(line);
    long v = 0;
    while (ls >> v) {
      if (v == 0) {
        out.clauses.insert(make_clause(std::move(current)));
        current.clear();
        continue;
      }
      std::size_t idx = static_cast<std::size_t>(v < 0 ? -v : v);
      if (idx == 0 || idx > atoms.size()) throw SolverError("DIMACS variable out of range: " + std::to_string(v));
      current.push_back(Literal{atoms[idx - 1], v > 0});
    }
  }
  if (!current.empty()) throw SolverError("DIMACS clause not terminated by 0");
  return out;
}

namespace {

// Quantified NNF over integer variables, used to prenex closed formulas.
struct QNode {
  enum class Kind { Lit, And, Or, Exists, ForAll, True, False };
  Kind kind = Kind::True;
  int lit = 0;  // DIMACS literal for Lit
  std::vector<int> vars;
  std::vector<QNode> kids;
};

class QBuilder {
 public:
  explicit QBuilder(const AtomSet& sig) : sig_(sig) {}

  QNode build(const Formula& f, bool positive, const std::map<Atom, int>& env) {
    using K = Formula::Kind;
    auto bin = [&](QNode::Kind k, QNode a, QNode b) {
      QNode n;
      n.kind = k;
      n.kids = {std::move(a), std::move(b)};
      return n;
    };
    const auto conj = positive ? QNode::Kind::And : QNode::Kind::Or;
    const auto disj = positive ? QNode::Kind::Or : QNode::Kind::And;
    switch (f.kind()) {
      case K::True:
      case K::False: {
        QNode n;
        n.kind = (f.is(K::True) == positive) ? QNode::Kind::True : QNode::Kind::False;
        return n;
      }
      case K::Atom: {
        auto it = env.find(f.atom());
        if (it == env.end()) throw PreconditionError("emit_qdimacs: atom '" + f.atom().name() + "' is free");
        QNode n;
        n.kind = QNode::Kind::Lit;
        n.lit = positive ? it->second : -it->second;
        return n;
      }
      case K::Not:
        return build(f.child(), !positive, env);
      case K::And:
        return bin(conj, build(f.lhs(), positive, env), build(f.rhs(), positive, env));
      case K::Or:
        return bin(disj, build(f.lhs(), positive, env), build(f.rhs(), positive, env));
      case K::Implies:
        return bin(disj, build(f.lhs(), !positive, env), build(f.rhs(), positive, env));
      case K::ImpliedBy:
        return bin(disj, build(f.lhs(), positive, env), build(f.rhs(), !positive, env));
      case K::Equiv:
        if (positive)
          return bin(QNode::Kind::And,
                     bin(QNode::Kind::Or, build(f.lhs(), true, env), build(f.rhs(), false, env)),
                     bin(QNode::Kind::Or, build(f.lhs(), false, env), build(f.rhs(), true, env)));
        return bin(QNode::Kind::And,
                   bin(QNode::Kind::Or, build(f.lhs(), true, env), build(f.rhs(), true, env)),
                   bin(QNode::Kind::Or, build(f.lhs(), false, env), build(f.rhs(), false, env)));
      case K::Forg: {
        auto lits = ground_scope(f.scope(), sig_);
        Formula body = f.child();
        // Single-sign literals: forg(+p, G) == G | (~p & G[p\T]).
        for (const auto& l : lits) {
          if (lits.count(l.complement())) continue;
          Formula p = Formula::atom(l.atom);
          Formula repl = l.positive ? Formula::top() : Formula::bottom();
          Formula guard = l.positive ? Formula::negation(p) : p;
          body = Formula::disj(body, Formula::conj(guard, substitute_any(body, l.atom, repl)));
        }
        std::map<Atom, int> inner = env;
        QNode n;
        n.kind = positive ? QNode::Kind::Exists : QNode::Kind::ForAll;
        for (const auto& l : lits)
          if (l.positive && lits.count(l.complement())) {
            int v = ++vars_;
            inner[l.atom] = v;
            n.vars.push_back(v);
          }
        n.kids.push_back(build(body, positive, inner));
        return n;
      }
      default:
        throw PreconditionError("emit_qdimacs: only forgetting may occur in closed formulas");
    }
  }

  int fresh() { return ++vars_; }
  int var_count() const { return vars_; }

 private:
  // Substitution that tolerates nested Forg nodes (atoms bound inside are
  // renamed apart later by fresh variables, so a plain replacement is fine
  // as long as the atom is not rebound; rebinding shadows it).
  static Formula substitute_any(const Formula& f, const Atom& a, const Formula& r) {
    if (f.is(Formula::Kind::Atom)) return f.atom() == a ? r : f;
    if (f.is(Formula::Kind::Forg)) {
      AtomSet scope_atoms;
      f.scope().collect_atoms(scope_atoms);
      if (scope_atoms.count(a)) return f;
    }
    if (f.children().empty()) return f;
    std::vector<Formula> kids;
    for (const auto& c : f.children()) kids.push_back(substitute_any(c, a, r));
    return f.with_children(std::move(kids));
  }

  const AtomSet& sig_;
  int vars_ = 0;
};

void collect_prefix(const QNode& n, std::vector<std::pair<bool, std::vector<int>>>& prefix) {
  if (n.kind == QNode::Kind::Exists || n.kind == QNode::Kind::ForAll) {
    bool universal = n.kind == QNode::Kind::ForAll;
    if (!n.vars.empty()) {
      if (!prefix.empty() && prefix.back().first == universal)
        prefix.back().second.insert(prefix.back().second.end(), n.vars.begin(), n.vars.end());
      else
        prefix.emplace_back(universal, n.vars);
    }
  }
  for (const auto& k : n.kids) collect_prefix(k, prefix);
}

// Plaisted-Greenbaum encoding of the quantifier-free matrix.
int encode_matrix(const QNode& n, QBuilder& b, std::vector<std::vector<int>>& clauses, std::vector<int>& aux) {
  switch (n.kind) {
    case QNode::Kind::Lit:
      return n.lit;
    case QNode::Kind::Exists:
    case QNode::Kind::ForAll:
      return encode_matrix(n.kids[0], b, clauses, aux);
    case QNode::Kind::True:
    case QNode::Kind::False: {
      int v = b.fresh();
      aux.push_back(v);
      clauses.push_back({n.kind == QNode::Kind::True ? v : -v});
      return v;
    }
    default: {
      std::vector<int> kids;
      for (const auto& k : n.kids) kids.push_back(encode_matrix(k, b, clauses, aux));
      int d = b.fresh();
      aux.push_back(d);
      if (n.kind == QNode::Kind::And) {
        for (int k : kids) clauses.push_back({-d, k});
      } else {
        std::vector<int> c{-d};
        c.insert(c.end(), kids.begin(), kids.end());
        clauses.push_back(std::move(c));
      }
      return d;
    }
  }
}

}  // namespace

std::string emit_qdimacs(const Formula& closed) {
  if (!is_closed(closed)) throw PreconditionError("emit_qdimacs: formula is not closed");
  AtomSet sig = atoms_of(closed);
  QBuilder b(sig);
  QNode root = b.build(closed, true, {});
  std::vector<std::pair<bool, std::vector<int>>> prefix;
  collect_prefix(root, prefix);
  std::vector<std::vector<int>> clauses;
  std::vector<int> aux;
  int top = encode_matrix(root, b, clauses, aux);
  clauses.push_back({top});
  if (!aux.empty()) {
    if (!prefix.empty() && !prefix.back().first)
      prefix.back().second.insert(prefix.back().second.end(), aux.begin(), aux.end());
    else
      prefix.emplace_back(false, aux);
  }
  std::ostringstream out;
  out << "p cnf " << b.var_count() << " " << clauses.size() << "\n";
  for (const auto& [universal, vars] : prefix) {
    out << (universal ? "a" : "e");
    for (int v : vars) out << " " << v;
    out << " 0\n";
  }
  for (const auto& c : clauses) {
    for (int l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

bool parse_solver_output(const std::string& stdout_text, int exit_code) {
  if (exit_code == 10) return true;
  if (exit_code == 20) return false;
  std::istringstream in(stdout_text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line == "s SATISFIABLE" || line == "SATISFIABLE" || line == "SAT") return true;
    if (line == "s UNSATISFIABLE" || line == "UNSATISFIABLE" || line == "UNSAT") return false;
    if (line.rfind("s cnf 1", 0) == 0) return true;
    if (line.rfind("s cnf 0", 0) == 0) return false;
  }
  throw SolverError("solver produced no verdict (exit code " + std::to_string(exit_code) + ")");
}

ProcessResult run_solver_process(const std::string& command, const std::string& input, int timeout_ms) {
  char path[] = "/tmp/elimkit-XXXXXX";
  int fd = ::mkstemp(path);
  if (fd < 0) throw SolverError("cannot create temporary solver input");
  std::size_t written = 0;
  while (written < input.size()) {
    auto n = ::write(fd, input.data() + written, input.size() - written);
    if (n <= 0) {
      ::close(fd);
      ::unlink(path);
      throw SolverError("cannot write solver input");
    }
    written += static_cast<std::size_t>(n);
  }
  ::close(fd);

  int pipe_fds[2];
  if (::pipe(pipe_fds) != 0) {
    ::unlink(path);
    throw SolverError("cannot create pipe");
  }
  const std::string full = command + " " + path;
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    ::unlink(path);
    throw SolverError("fork failed");
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(pipe_fds[1], STDOUT_FILENO);
    int devnull = ::open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      ::dup2(devnull, STDIN_FILENO);
      ::dup2(devnull, STDERR_FILENO);
    }
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    ::execl("/bin/sh", "sh", "-c", full.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(pipe_fds[1]);

  ProcessResult result;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{pipe_fds[0], POLLIN, 0};
    int r = ::poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) {
      timed_out = true;
      break;
    }
    if (r < 0) break;
    auto n = ::read(pipe_fds[0], buf, sizeof buf);
    if (n <= 0) break;
    result.stdout_text.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipe_fds[0]);
  if (timed_out) ::kill(-pid, SIGKILL);
  int status = 0;
  ::waitpid(pid, &status, 0);
  ::unlink(path);
  if (timed_out) throw SolverError("solver '" + command + "' timed out after " + std::to_string(timeout_ms) + " ms");
  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else
    throw SolverError("solver '" + command + "' terminated abnormally");
  return result;
}

bool solve_with(const SolverConfig& cfg, const ClauseSet& c, std::string* diagnostic) {
  if (!cfg.external_sat_cmd.empty()) {
    try {
      auto enc = emit_dimacs(c);
      auto r = run_solver_process(cfg.external_sat_cmd, enc.text, cfg.timeout_ms);
      return parse_solver_output(r.stdout_text, r.exit_code);
    } catch (const SolverError& e) {
      if (diagnostic) *diagnostic = std::string("external SAT solver failed, using internal solver: ") + e.what();
    }
  }
  return solve_cnf(c).satisfiable;
}

bool decide_closed_with(const SolverConfig& cfg, const Formula& closed, std::string* diagnostic) {
  if (!cfg.external_qbf_cmd.empty()) {
    try {
      auto r = run_solver_process(cfg.external_qbf_cmd, emit_qdimacs(closed), cfg.timeout_ms);
      return parse_solver_output(r.stdout_text, r.exit_code);
    } catch (const SolverError& e) {
      if (diagnostic) *diagnostic = std::string("external QBF solver failed, using internal procedure: ") + e.what();
    }
  }
  return decide_closed(closed);
}

}  // namespace elimkit
