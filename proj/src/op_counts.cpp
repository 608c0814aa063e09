#include "sphdec/op_counts.hpp"

#include <algorithm>
#include <atomic>

namespace sphdec {

OpCounts merge(const OpCounts& a, const OpCounts& b) {
  OpCounts out;
  out.real_mults = a.real_mults + b.real_mults;
  out.real_divs = a.real_divs + b.real_divs;
  out.real_adds = a.real_adds + b.real_adds;
  out.nodes_visited = a.nodes_visited + b.nodes_visited;
  out.queue_peak = std::max(a.queue_peak, b.queue_peak);
  out.leaves_found = a.leaves_found + b.leaves_found;
  return out;
}

void reset(OpCounts& counts) { counts = OpCounts{}; }

namespace audit {

namespace {
thread_local int t_depth = 0;
std::atomic<std::uint64_t> g_violations{0};
}  // namespace

bool active() noexcept { return t_depth > 0; }

void flag_violation() noexcept {
  g_violations.fetch_add(1, std::memory_order_relaxed);
}

Scope::Scope() { ++t_depth; }
Scope::~Scope() { --t_depth; }

std::uint64_t violations() noexcept {
  return g_violations.load(std::memory_order_relaxed);
}

void reset_violations() noexcept {
  g_violations.store(0, std::memory_order_relaxed);
}

}  // namespace audit

}  // namespace sphdec
