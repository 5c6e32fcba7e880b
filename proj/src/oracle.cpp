#include "drtomo/oracle.hpp"

#include <array>
#include <numeric>
#include <stdexcept>

namespace drtomo {
namespace {

class Search {
 public:
  Search(const Instance& inst, const SearchBudget& budget, bool keep)
      : inst_(inst), budget_(budget), keep_(keep) {
    const int m = inst.m, n = inst.n;
    const std::size_t cells = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    value_.assign(cells, -1);
    member_.resize(cells);
    for (int q = 1; q <= n; ++q) add_constraint(inst.row_sums[q - 1], inst.row_sums[q - 1]);
    for (int p = 1; p <= m; ++p) add_constraint(inst.col_sums[p - 1], inst.col_sums[p - 1]);
    const int col_base = n;
    const int block_base = n + m;
    for (std::size_t b = 0; b < inst.block_count(); ++b) {
      const Corner c = inst.corner_at(b);
      add_constraint(inst.window_lo(c), inst.window_hi(c));
    }
    for (int q = 1; q <= n; ++q)
      for (int p = 1; p <= m; ++p) {
        const int cell = index(p, q);
        const int block = block_base + static_cast<int>(inst.block_index({p, q}));
        member_[static_cast<std::size_t>(cell)] = {q - 1, col_base + p - 1, block};
        for (int c : member_[static_cast<std::size_t>(cell)]) {
          cons_[static_cast<std::size_t>(c)].cells.push_back(cell);
          ++cons_[static_cast<std::size_t>(c)].free;
        }
      }
    queued_.assign(cons_.size(), 0);
  }

  OracleResult run(const OracleOptions& options) {
    bool ok = true;
    for (const auto& f : options.fixed) {
      if (f.p < 1 || f.p > inst_.m || f.q < 1 || f.q > inst_.n)
        throw std::invalid_argument("fixed cell outside the grid");
      ok = ok && assign(index(f.p, f.q), f.value ? 1 : 0);
    }
    if (options.candidates) {
      const BinaryImage& mask = *options.candidates;
      if (mask.width() != inst_.m || mask.height() != inst_.n)
        throw std::invalid_argument("candidate mask size differs from the instance");
      for (int q = 1; q <= inst_.n && ok; ++q)
        for (int p = 1; p <= inst_.m && ok; ++p)
          if (!mask.at(p, q)) ok = assign(index(p, q), 0);
    }
    for (std::size_t c = 0; c < cons_.size(); ++c) enqueue(static_cast<int>(c));
    if (ok && propagate()) dfs(0);
    result_.count = count_;
    return std::move(result_);
  }

 private:
  struct Constraint {
    int lo;
    int hi;
    int ones = 0;
    int free = 0;
    std::vector<int> cells;
  };

  int index(int p, int q) const { return (q - 1) * inst_.m + (p - 1); }

  void add_constraint(int lo, int hi) { cons_.push_back({lo, hi, 0, 0, {}}); }

  void enqueue(int c) {
    if (!queued_[static_cast<std::size_t>(c)]) {
      queued_[static_cast<std::size_t>(c)] = 1;
      queue_.push_back(c);
    }
  }

  bool assign(int cell, int v) {
    auto& slot = value_[static_cast<std::size_t>(cell)];
    if (slot >= 0) return slot == v;
    slot = static_cast<std::int8_t>(v);
    trail_.push_back(cell);
    for (int c : member_[static_cast<std::size_t>(cell)]) {
      auto& con = cons_[static_cast<std::size_t>(c)];
      --con.free;
      con.ones += v;
      enqueue(c);
    }
    return true;
  }

  void clear_queue() {
    for (int c : queue_) queued_[static_cast<std::size_t>(c)] = 0;
    queue_.clear();
  }

  bool propagate() {
    while (!queue_.empty()) {
      const int c = queue_.back();
      queue_.pop_back();
      queued_[static_cast<std::size_t>(c)] = 0;
      const auto& con = cons_[static_cast<std::size_t>(c)];
      if (con.ones > con.hi || con.ones + con.free < con.lo) {
        clear_queue();
        return false;
      }
      if (con.free == 0) continue;
      int forced = -1;
      if (con.ones == con.hi) forced = 0;
      else if (con.ones + con.free == con.lo) forced = 1;
      if (forced < 0) continue;
      for (int cell : con.cells)
        if (value_[static_cast<std::size_t>(cell)] < 0 && !assign(cell, forced)) {
          clear_queue();
          return false;
        }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int cell = trail_.back();
      trail_.pop_back();
      const int v = value_[static_cast<std::size_t>(cell)];
      for (int c : member_[static_cast<std::size_t>(cell)]) {
        auto& con = cons_[static_cast<std::size_t>(c)];
        ++con.free;
        con.ones -= v;
      }
      value_[static_cast<std::size_t>(cell)] = -1;
    }
  }

  void record() {
    ++count_;
    if (keep_) {
      BinaryImage img(inst_.m, inst_.n);
      for (int q = 1; q <= inst_.n; ++q)
        for (int p = 1; p <= inst_.m; ++p) img.set(p, q, value_[static_cast<std::size_t>(index(p, q))] == 1);
      result_.solutions.push_back(std::move(img));
    }
    if (count_ >= budget_.max_solutions) stop();
  }

  void stop() {
    stopped_ = true;
    result_.exhausted = false;
  }

  void dfs(std::size_t from) {
    while (from < value_.size() && value_[from] >= 0) ++from;
    if (from == value_.size()) {
      record();
      return;
    }
    for (int v = 0; v <= 1 && !stopped_; ++v) {
      if (result_.nodes >= budget_.max_nodes) {
        stop();
        return;
      }
      ++result_.nodes;
      const std::size_t mark = trail_.size();
      if (assign(static_cast<int>(from), v) && propagate()) dfs(from + 1);
      undo(mark);
    }
  }

  const Instance& inst_;
  SearchBudget budget_;
  bool keep_;
  std::vector<std::int8_t> value_;
  std::vector<std::array<int, 3>> member_;
  std::vector<Constraint> cons_;
  std::vector<int> trail_;
  std::vector<int> queue_;
  std::vector<std::uint8_t> queued_;
  std::size_t count_ = 0;
  bool stopped_ = false;
  OracleResult result_;
};

OracleResult run_search(const Instance& inst, const SearchBudget& budget, const OracleOptions& options,
                        bool keep) {
  if (!is_well_formed(inst)) {
    for (const auto& e : validate_instance(inst))
      if (e.kind != ValidationError::Kind::SumMismatch) throw std::invalid_argument(e.message);
  }
  const long long rows = std::accumulate(inst.row_sums.begin(), inst.row_sums.end(), 0LL);
  const long long cols = std::accumulate(inst.col_sums.begin(), inst.col_sums.end(), 0LL);
  if (rows != cols || budget.max_solutions == 0) {
    OracleResult r;
    r.exhausted = rows != cols;
    return r;
  }
  return Search(inst, budget, keep).run(options);
}

}  // namespace

OracleResult oracle_solve(const Instance& inst, const SearchBudget& budget, const OracleOptions& options) {
  return run_search(inst, budget, options, true);
}

OracleResult oracle_count(const Instance& inst, const SearchBudget& budget, const OracleOptions& options) {
  return run_search(inst, budget, options, false);
}

}  // namespace drtomo
