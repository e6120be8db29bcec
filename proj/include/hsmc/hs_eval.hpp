#pragma once

// Bounded evaluation of HS formulas under the state-based (st),
// computation-tree-based (ct) and trace-based (lin) semantics.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"

namespace hsmc {

enum class Semantics { st, ct, lin };
const char* semantics_name(Semantics s);
std::optional<Semantics> semantics_from_name(std::string_view s);

enum class VerdictValue { holds, fails, holds_in_bound };
const char* verdict_name(VerdictValue v);

struct Verdict {
  VerdictValue value = VerdictValue::holds_in_bound;
  std::optional<Trace> trace;  // st: initial trace; ct: node with start 0
  std::optional<Lasso> lasso;  // lin
  int interval_end = -1;       // lin: failing interval [0, interval_end]
  bool bound_hit = false;      // some domain or the initial universe was cut
  bool pure = false;           // the failing evaluation never relied on a cut domain
};

struct EvalContext {
  KripkeStructure structure;
  Semantics semantics = Semantics::st;
  int bound = 1;     // st/ct: max initial trace length; lin: max |stem|+|loop| and interval end
  int universe = 0;  // st/ct: max trace length inside modal domains, 0 = bound
  int horizon = 0;   // lin: 0 = exact periodic evaluation, else cut right endpoints at horizon
  int jobs = 1;

  int domain_limit() const { return universe > bound ? universe : bound; }
};

// Value plus whether a cut domain could have changed it.
struct Truth {
  bool value = false;
  bool truncated = false;
};

// Memoizing evaluators; one per check, not thread-safe.
class StEvaluator {
 public:
  explicit StEvaluator(const EvalContext& ctx);
  ~StEvaluator();
  StEvaluator(StEvaluator&&) noexcept;
  Truth eval(const Trace& t, const Hs& f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class CtEvaluator {
 public:
  explicit CtEvaluator(const EvalContext& ctx);
  ~CtEvaluator();
  CtEvaluator(CtEvaluator&&) noexcept;
  Truth eval(const CtNode& n, const Hs& f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Throws std::invalid_argument if t is not a trace or is longer than the bound.
bool eval_st(const EvalContext& ctx, const Trace& t, const Hs& f);
Verdict check_st(const EvalContext& ctx, const Hs& f);

bool eval_ct(const EvalContext& ctx, const CtNode& n, const Hs& f);
Verdict check_ct(const EvalContext& ctx, const Hs& f);

// exact: the full interval structure of the lasso, folded by periodicity.
// prefix: positions 0..horizon only (a finite linear order).
enum class IntervalMode { exact, prefix };

// Truth of f at every interval [i,j] of one lasso.
class IntervalTable {
 public:
  IntervalTable(const KripkeStructure& k, const Lasso& pi, const Hs& f, IntervalMode mode, int horizon = 0);
  bool at(long long i, long long j) const;
  // Folding thresholds of the exact mode (start rows, length columns).
  long long rows() const { return rows_; }
  long long cols() const { return cols_; }

 private:
  struct Norm {
    long long i, l;
  };
  Norm norm(long long i, long long j) const;

  IntervalMode mode_;
  long long period_ = 1, rows_ = 0, cols_ = 0, window_ = 0;
  std::vector<unsigned char> root_;
};

// Extra periods of slack in the exact fold; exposed for the stability tests.
void set_interval_fold_slack(int periods);
int interval_fold_slack();

bool eval_interval(const KripkeStructure& k, const Lasso& pi, long long i, long long j, const Hs& f,
                   int horizon = 0, IntervalMode mode = IntervalMode::exact);
Verdict check_lin(const EvalContext& ctx, const Hs& f);

Verdict check(const EvalContext& ctx, const Hs& f);

}  // namespace hsmc
