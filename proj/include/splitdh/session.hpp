#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/split_tree.hpp"

namespace splitdh {

// ---- edit scripts -----------------------------------------------------------------------------

enum class ScriptOp { AddVertex, DeleteVertex, AddEdge, DeleteEdge, Expect, Rebuild };

// One script line.  Grammar, one command per line, '#' starts a comment:
//   addv <x> : <neighbours...>
//   delv <x>
//   adde <x> <y>
//   dele <x> <y>
//   expect <dh|cograph|3lp> yes|no     (refers to the preceding mutation)
//   rebuild                            (re-derives every tracked class)
struct ScriptCommand {
  ScriptOp op = ScriptOp::AddVertex;
  std::string x;
  std::string y;
  std::vector<std::string> neighbors;
  std::string cls;
  bool expect_yes = false;
  int line = 0;
  std::string text;  // the command as written, trimmed
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::vector<ScriptCommand> parse_script(std::istream& in);
std::vector<ScriptCommand> parse_script_file(const std::string& path);

bool is_class_name(const std::string& cls);

// ---- tree text round trip ---------------------------------------------------------------------

// Rebuilds the graph encoded by SplitForest::write_text: two leaves are
// adjacent iff every star on the tree path between them is entered or left
// through its centre.
Graph graph_from_tree_text(std::istream& in);

// Loads either a graph file or a tree text dump (first token "component").
Graph load_graph_or_tree(const std::string& path);

// ---- sessions ---------------------------------------------------------------------------------

struct ClassVerdict {
  std::string cls;
  bool in_class = true;   // false: tracking was downgraded before this step
  bool accept = false;    // meaningful only when in_class
  std::optional<bool> oracle;
  int touched = 0;
  int marked = 0;
  std::string detail;     // path word, rejection reason or downgrade note
};

struct StepReport {
  int line = 0;
  std::string command;
  bool mutation = false;
  std::vector<ClassVerdict> verdicts;
  std::vector<std::string> failures;
  const ClassVerdict* verdict(const std::string& cls) const;
};

struct RunReport {
  std::vector<StepReport> steps;
  int failures() const;
  bool ok() const { return failures() == 0; }
};

struct SessionStats {
  int steps = 0;
  int accepted = 0;
  int rejected = 0;
  int max_touched = 0;
  long long total_touched = 0;
  int root_recomputations = 0;  // cograph roots found by a full tree scan
};

// Replays modifications on a distance-hereditary graph.  The DH split tree is
// always maintained; the cograph and 3-leaf power layers each keep their own
// tree while the graph stays in their class.  A rejected modification leaves
// every structure unchanged.  When a modification is accepted for DH but
// leaves a tracked class, that class is marked out-of-class until rebuild().
class Session {
 public:
  // Throws std::invalid_argument when g is not distance hereditary or a
  // class name is unknown.  "dh" is always tracked.
  Session(const Graph& g, std::vector<std::string> classes, bool oracle = false);

  StepReport apply(const ScriptCommand& cmd);
  void rebuild();

  const Graph& graph() const { return shadow_; }
  const SplitForest& forest() const { return dh_; }
  const std::vector<std::string>& classes() const { return classes_; }
  bool in_class(const std::string& cls) const;
  const SessionStats& stats() const { return stats_; }

 private:
  struct Layer {
    std::string cls;
    std::optional<SplitForest> forest;  // empty when out of class
    std::map<ComponentId, TreeRoot> roots;  // cograph only
  };

  void add_vertex(const ScriptCommand& cmd, StepReport& rep);
  void delete_vertex(const ScriptCommand& cmd, StepReport& rep);
  void modify_edge(const ScriptCommand& cmd, StepReport& rep);
  void check_expect(const ScriptCommand& cmd, StepReport& rep);
  void check_oracle(const Graph& after, StepReport& rep) const;
  void init_layer(Layer& layer);
  std::optional<TreeRoot> root_for(Layer& layer, std::optional<Vertex> v);
  void refresh_roots(Layer& layer, const std::vector<ComponentId>& fresh);
  void record(const StepReport& rep);

  std::vector<std::string> classes_;
  bool oracle_ = false;
  Graph shadow_;
  SplitForest dh_;
  std::vector<Layer> layers_;
  std::optional<StepReport> last_mutation_;
  SessionStats stats_;
};

RunReport run_script(const Graph& g, const std::vector<ScriptCommand>& script,
                     const std::vector<std::string>& classes, bool oracle = false);

void write_report(std::ostream& out, const RunReport& report, bool stats);

}  // namespace splitdh
