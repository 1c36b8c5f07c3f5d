#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "fastice/advection.hpp"
#include "fastice/config.hpp"
#include "fastice/diagnostics.hpp"
#include "fastice/icebergs.hpp"
#include "fastice/mesh.hpp"
#include "fastice/momentum.hpp"
#include "fastice/output.hpp"
#include "fastice/state.hpp"

namespace fastice {

/// Operator-splitting time loop.  Each step solves the momentum equation with
/// the tracers of the previous level, advects the tracers with the new
/// velocity, then moves the icebergs with the new sea-ice fields.
class Simulation {
 public:
  /// Validates the config and sets up the initial state (step 0).
  explicit Simulation(ScenarioConfig config);

  const ScenarioConfig& config() const { return config_; }
  const Mesh& mesh() const { return *mesh_; }
  const SeaIceState& state() const { return state_; }
  const std::vector<IcebergParticle>& bergs() const { return bergs_; }
  const std::vector<DiagnosticsRecord>& history() const { return diagnostics_.history(); }
  const NonlinearSolveReport& last_solve() const { return last_solve_; }
  const std::vector<BergEvent>& last_events() const { return last_events_; }

  int step_index() const { return step_; }
  int total_steps() const { return config_.num_steps(); }
  bool finished() const { return step_ >= total_steps(); }

  /// Advances one step.  Throws SolverError if the momentum solve fails.
  void step();

  /// Runs to the end, writing outputs when a writer is given.
  void run(OutputWriter* writer = nullptr);

 private:
  void record_diagnostics(double phi_discrete, double phi_continuous, int newton_iters);
  std::vector<double> region_values() const;
  void write(OutputWriter& writer, bool force_snapshot);

  ScenarioConfig config_;
  std::unique_ptr<Mesh> mesh_;
  std::unique_ptr<MomentumSolver> solver_;
  SeaIceState state_;
  std::vector<IcebergParticle> bergs_;
  DiagnosticsAccumulator diagnostics_;
  NonlinearSolveReport last_solve_;
  std::vector<BergEvent> last_events_;
  int step_ = 0;
};

struct RunResult {
  int steps = 0;
  std::filesystem::path directory;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<IcebergParticle> bergs;
};

/// Validates, runs and writes all outputs to out_dir.
RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

}  // namespace fastice
