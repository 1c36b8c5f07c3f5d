#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "fastice/config.hpp"
#include "fastice/diagnostics.hpp"
#include "fastice/icebergs.hpp"
#include "fastice/mesh.hpp"
#include "fastice/state.hpp"

namespace fastice {

/// Writes the CSV files of one run into a directory:
///   fields_<step>.csv     x_m,y_m,vx_ms,vy_ms        (one row per node)
///   tracers_<step>.csv    x_m,y_m,a,h                (one row per cell center)
///   particles.csv         t_s,id,x_m,y_m,vbx_ms,vby_ms,grounded
///   diagnostics.csv       t_s,phi_inc,phi_cum,bound_rhs,newton_iters
///   functional_modes.csv  both functional variants side by side
///   regions.csv           t_s followed by one column per named region
///   events.csv            t_s,id,event,x_m,y_m
///   config.cfg            the resolved configuration
/// Throws IoError naming the path on failure.
class OutputWriter {
 public:
  OutputWriter(const std::filesystem::path& dir, const ScenarioConfig& config);

  const std::filesystem::path& directory() const { return dir_; }

  void write_snapshot(int step, const Mesh& mesh, const SeaIceState& state);
  void append_particles(double t, std::span<const IcebergParticle> bergs);
  void append_diagnostics(const DiagnosticsRecord& record);
  void append_events(double t, std::span<const BergEvent> events);
  void flush();

 private:
  std::ofstream open(const std::string& name);
  void check(std::ofstream& out, const std::string& name);

  std::filesystem::path dir_;
  std::ofstream particles_;
  std::ofstream diagnostics_;
  std::ofstream modes_;
  std::ofstream regions_;
  std::ofstream events_;
};

/// Formats a double with 15 significant digits (deterministic across runs).
std::string format_number(double x);

}  // namespace fastice
