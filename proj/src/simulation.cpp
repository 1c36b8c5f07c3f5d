#include "fastice/simulation.hpp"

#include <sstream>

#include "fastice/errors.hpp"

namespace fastice {

Simulation::Simulation(ScenarioConfig config)
    : config_(std::move(config)),
      diagnostics_(config_.phi_mode, 0.0) {
  validate_config(config_);
  mesh_ = std::make_unique<Mesh>(config_.extent.x(), config_.extent.y(), config_.resolution);
  solver_ = std::make_unique<MomentumSolver>(*mesh_, config_.momentum_params(), config_.solver);
  state_ = init_state(*mesh_, config_.a0, config_.h0);
  for (std::size_t k = 0; k < config_.bergs.size(); ++k) {
    const BergSpec& spec = config_.bergs[k];
    IcebergParticle b;
    b.id = static_cast<int>(k);
    b.position = spec.position;
    b.radius = spec.radius;
    b.height = spec.height;
    b.grounded = spec.grounded;
    bergs_.push_back(b);
  }
  diagnostics_ = DiagnosticsAccumulator(
      config_.phi_mode, initial_energy(*mesh_, state_, config_.drag.ice_density));
  record_diagnostics(
      phi_increment(*mesh_, state_, bergs_, config_.drag, FunctionalMode::discrete_point),
      phi_increment(*mesh_, state_, bergs_, config_.drag, FunctionalMode::continuous_norm), 0);
}

std::vector<double> Simulation::region_values() const {
  std::vector<double> values;
  for (const auto& r : config_.regions) values.push_back(region_integral(*mesh_, state_.a, r.rect));
  return values;
}

void Simulation::record_diagnostics(double phi_discrete, double phi_continuous, int newton_iters) {
  const double bound = stability_bound_increment(*mesh_, state_, config_.forcing, config_.drag);
  diagnostics_.record(state_.t, phi_discrete, phi_continuous, bound, newton_iters,
                      region_values());
}

void Simulation::step() {
  if (finished()) return;
  const Mesh& mesh = *mesh_;
  const double dt = config_.dt;

  auto [v, report] = solver_->solve(state_, state_.v, dt, config_.forcing, bergs_);
  last_solve_ = report;
  if (!report.converged) {
    std::ostringstream os;
    os << "momentum solve did not converge at step " << step_ + 1 << " (t = " << (step_ + 1) * dt
       << " s): residual " << report.final_residual << " > tolerance " << report.tolerance
       << " after " << report.iterations << " iterations";
    throw SolverError(os.str());
  }
  ++step_;
  state_.v = std::move(v);
  state_.t = step_ * dt;

  const double phi_d =
      phi_increment(mesh, state_, bergs_, config_.drag, FunctionalMode::discrete_point);
  const double phi_c =
      phi_increment(mesh, state_, bergs_, config_.drag, FunctionalMode::continuous_norm);

  if (config_.advection) {
    AdvectionResult adv = upwind_step(mesh, state_, state_.v, dt, config_.boundary_data());
    state_.a = std::move(adv.a);
    state_.h = std::move(adv.h);
  }

  const SeaIceSampler sample = [&](const Vec2& p) {
    return SeaIceSample{interp_node_field(mesh, state_.v, p), sample_cell_field(mesh, state_.a, p)};
  };
  const Rect domain{Vec2::Zero(), config_.extent};
  last_events_ = step_icebergs(bergs_, dt, sample, config_.forcing, config_.grounding,
                               config_.drag, config_.body, domain);

  record_diagnostics(phi_d, phi_c, report.iterations);
}

void Simulation::write(OutputWriter& writer, bool force_snapshot) {
  const bool cadence = config_.output_every > 0 && step_ % config_.output_every == 0;
  if (step_ == 0 || force_snapshot || cadence) writer.write_snapshot(step_, *mesh_, state_);
  writer.append_particles(state_.t, bergs_);
  writer.append_diagnostics(history().back());
  writer.append_events(state_.t, last_events_);
}

void Simulation::run(OutputWriter* writer) {
  if (writer && step_ == 0) write(*writer, total_steps() == 0);
  while (!finished()) {
    step();
    if (writer) write(*writer, finished());
  }
  if (writer) writer->flush();
}

RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  Simulation sim(config);
  OutputWriter writer(out_dir, sim.config());
  sim.run(&writer);
  RunResult result;
  result.steps = sim.step_index();
  result.directory = out_dir;
  result.diagnostics = sim.history();
  result.bergs = sim.bergs();
  return result;
}

}  // namespace fastice
