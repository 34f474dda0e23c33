#include "cfreal/trace.hpp"

#include <atomic>

namespace cfr {
namespace {

TraceSink& sink_slot() {
  static TraceSink sink;
  return sink;
}
std::atomic<bool> g_tracing{false};
std::atomic<std::uint64_t> g_ingests{0};
std::atomic<std::uint64_t> g_produces{0};
std::atomic<std::uint64_t> g_emits{0};

}  // namespace

void set_trace_sink(TraceSink sink) {
  g_tracing = static_cast<bool>(sink);
  sink_slot() = std::move(sink);
}

bool tracing() { return g_tracing.load(std::memory_order_relaxed); }

void trace(const TraceEvent& event) {
  if (tracing()) sink_slot()(event);
}

EngineCounters engine_counters() {
  return {g_ingests.load(), g_produces.load(), g_emits.load()};
}

void reset_engine_counters() {
  g_ingests = 0;
  g_produces = 0;
  g_emits = 0;
}

void count_ingest() { g_ingests.fetch_add(1, std::memory_order_relaxed); }
void count_produce() { g_produces.fetch_add(1, std::memory_order_relaxed); }
void count_emit() { g_emits.fetch_add(1, std::memory_order_relaxed); }

}  // namespace cfr
