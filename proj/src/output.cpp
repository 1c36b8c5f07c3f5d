#include "fastice/output.hpp"

#include <cstdio>

#include "fastice/errors.hpp"

namespace fastice {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

OutputWriter::OutputWriter(const std::filesystem::path& dir, const ScenarioConfig& config)
    : dir_(dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());

  std::ofstream cfg = open("config.cfg");
  cfg << serialize_config(config);
  check(cfg, "config.cfg");

  particles_ = open("particles.csv");
  particles_ << "t_s,id,x_m,y_m,vbx_ms,vby_ms,grounded\n";
  diagnostics_ = open("diagnostics.csv");
  diagnostics_ << "t_s,phi_inc,phi_cum,bound_rhs,newton_iters\n";
  modes_ = open("functional_modes.csv");
  modes_ << "t_s,phi_inc_discrete,phi_cum_discrete,phi_inc_continuous,phi_cum_continuous\n";
  regions_ = open("regions.csv");
  regions_ << "t_s";
  for (const auto& r : config.regions) regions_ << ',' << r.name;
  regions_ << '\n';
  events_ = open("events.csv");
  events_ << "t_s,id,event,x_m,y_m\n";
}

std::ofstream OutputWriter::open(const std::string& name) {
  std::ofstream out(dir_ / name);
  if (!out) throw IoError("cannot open '" + (dir_ / name).string() + "' for writing");
  return out;
}

void OutputWriter::check(std::ofstream& out, const std::string& name) {
  if (!out) throw IoError("write to '" + (dir_ / name).string() + "' failed");
}

void OutputWriter::write_snapshot(int step, const Mesh& mesh, const SeaIceState& state) {
  const std::string fields_name = "fields_" + std::to_string(step) + ".csv";
  std::ofstream fields = open(fields_name);
  fields << "x_m,y_m,vx_ms,vy_ms\n";
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const Vec2& p = mesh.node(n);
    fields << format_number(p.x()) << ',' << format_number(p.y()) << ','
           << format_number(state.v[2 * n]) << ',' << format_number(state.v[2 * n + 1]) << '\n';
  }
  check(fields, fields_name);

  const std::string tracers_name = "tracers_" + std::to_string(step) + ".csv";
  std::ofstream tracers = open(tracers_name);
  tracers << "x_m,y_m,a,h\n";
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Vec2 p = mesh.cell_center(c);
    tracers << format_number(p.x()) << ',' << format_number(p.y()) << ','
            << format_number(state.a[c]) << ',' << format_number(state.h[c]) << '\n';
  }
  check(tracers, tracers_name);
}

void OutputWriter::append_particles(double t, std::span<const IcebergParticle> bergs) {
  for (const auto& b : bergs) {
    if (b.exited) continue;
    particles_ << format_number(t) << ',' << b.id << ',' << format_number(b.position.x()) << ','
               << format_number(b.position.y()) << ',' << format_number(b.velocity.x()) << ','
               << format_number(b.velocity.y()) << ',' << (b.grounded ? 1 : 0) << '\n';
  }
  check(particles_, "particles.csv");
}

void OutputWriter::append_diagnostics(const DiagnosticsRecord& r) {
  diagnostics_ << format_number(r.t) << ',' << format_number(r.phi_inc) << ','
               << format_number(r.phi_cum) << ',' << format_number(r.bound_rhs) << ','
               << r.newton_iters << '\n';
  check(diagnostics_, "diagnostics.csv");
  modes_ << format_number(r.t) << ',' << format_number(r.phi_inc_discrete) << ','
         << format_number(r.phi_cum_discrete) << ',' << format_number(r.phi_inc_continuous) << ','
         << format_number(r.phi_cum_continuous) << '\n';
  check(modes_, "functional_modes.csv");
  regions_ << format_number(r.t);
  for (double v : r.region_values) regions_ << ',' << format_number(v);
  regions_ << '\n';
  check(regions_, "regions.csv");
}

void OutputWriter::append_events(double t, std::span<const BergEvent> events) {
  for (const auto& e : events) {
    events_ << format_number(t) << ',' << e.id << ','
            << (e.kind == BergEvent::Kind::grounded ? "grounded" : "exited") << ','
            << format_number(e.position.x()) << ',' << format_number(e.position.y()) << '\n';
  }
  check(events_, "events.csv");
}

void OutputWriter::flush() {
  particles_.flush();
  diagnostics_.flush();
  modes_.flush();
  regions_.flush();
  events_.flush();
}

}  // namespace fastice
