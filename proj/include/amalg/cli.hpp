#pragma once

// Line-oriented input documents and the task runner behind `amalg run`.
//
//   field Q | F2 | F<p>
//   maxdeg <N>
//   algebra <name>            zring <name>
//     gen <name> <degree>       gen <name> <degree>
//     rel <poly>                rel <poly>
//   map <name> : <src> -> <tgt>    zmap <name> : <src> -> <tgt>
//     send <gen> = <poly>            send <gen> = <poly>
//   diagram <name> = amalgam(<base>, <left>, <right>, <map1>, <map2>)
//   task <kind> <object> [args]
//
// `#` starts a comment.  Blocks end at the next top-level keyword.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalg/field.hpp"

namespace amalg::cli {

inline constexpr int kMaxDegreeGuard = 32;
inline constexpr int kDefaultMaxDegree = 12;

enum class Format { table, records };

struct GenLine {
  std::string name;
  int degree;
  int line;
};

struct TextLine {
  std::string text;
  int line;
  int column;
};

struct BlockDef {
  std::string name;
  int line = 0;
  std::vector<GenLine> gens;
  std::vector<TextLine> rels;
};

struct SendLine {
  std::string gen;
  TextLine poly;
};

struct MapDef {
  std::string name, source, target;
  int line = 0;
  std::vector<SendLine> sends;
};

struct DiagramDef {
  std::string name, base, left, right, map1, map2;
  int line = 0;
};

struct TaskDef {
  std::string kind;
  std::string object;
  std::vector<std::string> args;
  int line = 0;
};

struct Document {
  std::optional<CoefficientField> field;
  std::optional<int> max_degree;
  std::vector<BlockDef> algebras, zrings;
  std::vector<MapDef> maps, zmaps;
  std::vector<DiagramDef> diagrams;
  std::vector<TaskDef> tasks;
};

/// Syntax only.  Throws InputError("line L, column C: ...").
Document parse_document(const std::string& text);
inline Document parse_input(const std::string& text) { return parse_document(text); }

struct RunOptions {
  std::optional<int> max_degree;
  Format format = Format::table;
};

struct RunResult {
  int exit_code = 0;  ///< 0 pass, 1 check failure, 2 input error
  std::string out;
  std::string err;
};

/// Parses, resolves and validates every object, then runs the tasks in order.
/// The exit code is the worst over all tasks.
RunResult run_document(const std::string& text, const RunOptions& options);

const std::vector<std::string>& task_kinds();
const std::vector<std::string>& preset_names();

}  // namespace amalg::cli
