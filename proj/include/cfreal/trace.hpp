#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace cfr {

/// One engine step, reported to the trace sink when one is installed.
struct TraceEvent {
  const char* engine;  // "homographic", "bihomographic", "decimal"
  const char* action;  // "ingest_x", "ingest_y", "produce", "emit", ...
  std::string detail;  // term or bound involved
  std::string state;   // matrix after the step
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// Installs (or, with an empty function, removes) the process-wide sink.
/// Install before starting computations; the sink itself must be thread-safe
/// if engines run on several threads.
void set_trace_sink(TraceSink sink);
bool tracing();
void trace(const TraceEvent& event);

/// Process-wide counters of engine work, used for telemetry.
struct EngineCounters {
  std::uint64_t ingests = 0;
  std::uint64_t produces = 0;
  std::uint64_t emits = 0;
};
EngineCounters engine_counters();
void reset_engine_counters();
void count_ingest();
void count_produce();
void count_emit();

}  // namespace cfr
