#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qqs/dispersion.hpp"
#include "qqs/error.hpp"
#include "qqs/io.hpp"
#include "qqs/optics.hpp"
#include "qqs/polarimetry.hpp"
#include "qqs/qkd.hpp"
#include "qqs/scan.hpp"
#include "qqs/tomography.hpp"

#ifndef QQS_VERSION
#define QQS_VERSION "0.0.0"
#endif

namespace qqs::cli {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out;
  std::string manifest;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << content;
  if (!f) throw std::invalid_argument("write failed for " + path);
}

Polarization polarization_from_char(char c) {
  switch (c) {
    case 'H': return Polarization::H;
    case 'V': return Polarization::V;
    case 'D': return Polarization::D;
    case 'A': return Polarization::A;
    case 'R': return Polarization::R;
    case 'L': return Polarization::L;
  }
  throw std::invalid_argument(std::string("unknown polarization '") + c + "'");
}

struct StateSpec {
  QuquartState state;
  std::optional<std::pair<Basis, int>> basis_id;
};

// "III:1" (basis:index), "phi+"/"phi-"/"psi+"/"psi-", two-letter product
// labels like "HV" or "RL", or "@file.json".
StateSpec parse_state(const std::string& text, const FrequencyModePair& modes) {
  if (!text.empty() && text[0] == '@')
    return {state_from_json(Json::parse(read_file(text.substr(1)))), std::nullopt};
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const auto basis = parse_basis(text.substr(0, colon));
    if (!basis) throw std::invalid_argument("unknown basis in state id '" + text + "'");
    int s = -1;
    try {
      s = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
    }
    if (s < 0 || s > 3) throw std::invalid_argument("state index must be 0..3 in '" + text + "'");
    return {basis_state(*basis, s, modes), std::make_pair(*basis, s)};
  }
  for (const auto b : {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus})
    if (text == to_string(b)) return {bell_state(b, modes), std::nullopt};
  if (text.size() == 2) {
    const Vector4 v = kron(jones_vector(polarization_from_char(text[0])), jones_vector(polarization_from_char(text[1])));
    return {QuquartState::normalized(v, modes), std::nullopt};
  }
  throw std::invalid_argument("cannot parse state '" + text + "'");
}

std::vector<Basis> parse_bases(const std::string& text) {
  std::vector<Basis> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = parse_basis(item);
    if (!b) throw std::invalid_argument("unknown basis '" + item + "'");
    out.push_back(*b);
  }
  if (out.empty()) throw std::invalid_argument("empty basis list");
  return out;
}

Json option_parameters(const CLI::App& sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    const auto& results = opt->results();
    std::string value;
    if (results.empty()) {
      value = opt->get_default_str();
    } else {
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    }
    if (opt->get_type_size() == 0 && results.empty()) value = "false";
    params[name.substr(name.find_first_not_of('-'))] = value;
  }
  return params;
}

// Emits primary output and the run manifest.
class Emitter {
 public:
  Emitter(const GlobalOptions& g, std::ostream& out, std::vector<std::string> argv)
      : g_(g), out_(out), argv_(std::move(argv)) {}

  void primary(const std::string& content) {
    if (g_.out.empty()) {
      out_ << content;
    } else {
      write_file(g_.out, content);
      files_.insert(files_.begin(), g_.out);
    }
  }

  void extra_file(const std::string& path, const std::string& content) {
    write_file(path, content);
    files_.push_back(path);
  }

  void finish(const std::string& command, const Json& parameters) {
    std::string path = g_.manifest;
    if (path.empty() && !files_.empty()) path = files_.front() + ".manifest.json";  // primary output first
    if (path.empty()) return;
    Json m;
    m["tool"] = "qqs";
    m["tool_version"] = QQS_VERSION;
    m["command"] = command;
    m["argv"] = argv_;
    m["seed"] = g_.seed;
    m["parameters"] = parameters;
    m["outputs"] = files_;
    write_file(path, m.dump(2) + "\n");
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
  std::vector<std::string> argv_;
  std::vector<std::string> files_;
};

FrequencyModePair modes_from(double l1, double l2) {
  FrequencyModePair m{l1, l2};
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw std::invalid_argument(e.what());
  }
  return m;
}

// --flag value / --flag=value rewriting for replay.
void set_flag(std::vector<std::string>& argv, const std::string& flag, const std::string& value) {
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == flag && i + 1 < argv.size()) {
      argv[i + 1] = value;
      return;
    }
    if (argv[i].rfind(flag + "=", 0) == 0) {
      argv[i] = flag + "=" + value;
      return;
    }
  }
  argv.push_back(flag);
  argv.push_back(value);
}

void remove_flag(std::vector<std::string>& argv, const std::string& flag) {
  for (std::size_t i = 0; i < argv.size();) {
    if (argv[i] == flag && i + 1 < argv.size()) {
      argv.erase(argv.begin() + static_cast<std::ptrdiff_t>(i), argv.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (argv[i].rfind(flag + "=", 0) == 0) {
      argv.erase(argv.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biphoton ququart simulator: preparation, polarimetry, tomography and key exchange", "qqs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", QQS_VERSION);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Primary output file (default: stdout)");
  app.add_option("--manifest", g.manifest, "Run manifest path (default: <out>.manifest.json)");

  // scan-tilt
  auto* scan = app.add_subcommand("scan-tilt", "Sweep the plate tilt and emit singles/coincidence CSV");
  double scan_h = 3.401, scan_alpha = 45.0, scan_l1 = 702.0, scan_l2 = 605.0;
  double theta_start = 0.0, theta_stop = 25.0, theta_step = 0.1, scan_neff = 0.0;
  double scan_rate = 40.0, scan_acc = 0.0, scan_time = 30.0, scan_depol = 0.0;
  std::string scan_material = "quartz";
  scan->add_option("--thickness-mm", scan_h)->capture_default_str();
  scan->add_option("--alpha-deg", scan_alpha)->capture_default_str();
  scan->add_option("--material", scan_material)->capture_default_str();
  scan->add_option("--lambda1", scan_l1)->capture_default_str();
  scan->add_option("--lambda2", scan_l2)->capture_default_str();
  scan->add_option("--theta-start", theta_start)->capture_default_str();
  scan->add_option("--theta-stop", theta_stop)->capture_default_str();
  scan->add_option("--theta-step", theta_step)->capture_default_str();
  scan->add_option("--n-eff", scan_neff, "Index for refraction (0: material mean)")->capture_default_str();
  scan->add_option("--pair-rate", scan_rate, "Mean pair rate, 1/s")->capture_default_str();
  scan->add_option("--accidental-rate", scan_acc, "Accidental coincidences, 1/s")->capture_default_str();
  scan->add_option("--time", scan_time, "Acquisition time per angle, s")->capture_default_str();
  scan->add_option("--depolarization", scan_depol)->capture_default_str();

  // tomography
  auto* tomo = app.add_subcommand("tomography", "Simulate 16-setting tomography and reconstruct rho");
  std::string tomo_target = "I:1", tomo_records_in, tomo_model = "expected";
  double tomo_pairs = 1e6, tomo_time = 30.0, tomo_depol = 0.0, tomo_acc = 0.0;
  bool tomo_ml = false;
  tomo->add_option("--target", tomo_target, "Target state (III:1, phi+, HV, mixed, @file.json)")->capture_default_str();
  tomo->add_option("--records-in", tomo_records_in, "Reconstruct from recorded counts instead of simulating");
  tomo->add_option("--pairs", tomo_pairs, "Pairs per setting")->capture_default_str();
  tomo->add_option("--time", tomo_time, "Acquisition time per setting, s")->capture_default_str();
  tomo->add_option("--count-model", tomo_model, "expected | poisson")->capture_default_str();
  tomo->add_option("--depolarization", tomo_depol)->capture_default_str();
  tomo->add_option("--accidental-rate", tomo_acc)->capture_default_str();
  tomo->add_flag("--ml", tomo_ml, "Refine by maximum likelihood");

  // qkd
  auto* qkd = app.add_subcommand("qkd", "Run a simulated key-exchange session");
  std::int64_t qkd_rounds = 10000;
  std::string qkd_bases = "I,II,III", qkd_eve = "none", qkd_eve_bases = "I,II,III", qkd_records_out;
  double qkd_depol = 0.0;
  qkd->add_option("--rounds", qkd_rounds)->capture_default_str();
  qkd->add_option("--bases", qkd_bases)->capture_default_str();
  qkd->add_option("--depolarization", qkd_depol)->capture_default_str();
  qkd->add_option("--eve", qkd_eve, "none | intercept")->capture_default_str();
  qkd->add_option("--eve-bases", qkd_eve_bases)->capture_default_str();
  qkd->add_option("--records-out", qkd_records_out, "JSON-lines file, one record per round");

  // stokes
  auto* stk = app.add_subcommand("stokes", "Print S0..S3 and P4 of a state as CSV");
  std::string stokes_state = "I:3";
  double stk_l1 = 702.0, stk_l2 = 605.0;
  stk->add_option("--state", stokes_state)->capture_default_str();
  stk->add_option("--lambda1", stk_l1)->capture_default_str();
  stk->add_option("--lambda2", stk_l2)->capture_default_str();

  // prepare
  auto* prep = app.add_subcommand("prepare", "Apply a (tilted) dichroic plate to a state");
  double prep_h = 3.401, prep_alpha = 45.0, prep_tilt = 0.0, prep_neff = 0.0, prep_l1 = 702.0, prep_l2 = 605.0;
  std::optional<double> prep_d1, prep_d2;
  std::string prep_state = "I:3", prep_material = "quartz";
  prep->add_option("--thickness-mm", prep_h)->capture_default_str();
  prep->add_option("--alpha-deg", prep_alpha)->capture_default_str();
  prep->add_option("--tilt-deg", prep_tilt)->capture_default_str();
  prep->add_option("--n-eff", prep_neff)->capture_default_str();
  prep->add_option("--material", prep_material)->capture_default_str();
  prep->add_option("--input-state", prep_state)->capture_default_str();
  prep->add_option("--delta1", prep_d1, "Optical thickness at lambda1, rad (overrides the material)");
  prep->add_option("--delta2", prep_d2, "Optical thickness at lambda2, rad");
  prep->add_option("--lambda1", prep_l1)->capture_default_str();
  prep->add_option("--lambda2", prep_l2)->capture_default_str();

  // thickness
  auto* thick = app.add_subcommand("thickness", "Solve for the half-wave/full-wave dichroic plate thickness");
  std::string thick_material = "quartz";
  double thick_min = 3.2, thick_max = 3.6, thick_l1 = 702.0, thick_l2 = 605.0;
  thick->add_option("--material", thick_material)->capture_default_str();
  thick->add_option("--h-min", thick_min)->capture_default_str();
  thick->add_option("--h-max", thick_max)->capture_default_str();
  thick->add_option("--lambda1", thick_l1)->capture_default_str();
  thick->add_option("--lambda2", thick_l2)->capture_default_str();

  // replay
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string replay_manifest, replay_out, replay_records_out, replay_manifest_out;
  replay->add_option("manifest", replay_manifest, "Manifest JSON")->required();
  replay->add_option("--to", replay_out, "Override the primary output path");
  replay->add_option("--records-to", replay_records_out, "Override --records-out");
  replay->add_option("--manifest-to", replay_manifest_out, "Override the manifest path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << QQS_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgumentError;
  }

  try {
    Emitter emit(g, out, args);

    if (*scan) {
      if (!(theta_step > 0.0)) throw std::invalid_argument("--theta-step must be positive");
      if (theta_stop < theta_start) throw std::invalid_argument("--theta-stop is below --theta-start");
      if (!(scan_time > 0.0)) throw std::invalid_argument("--time must be positive");
      ScanConfig cfg;
      cfg.modes = modes_from(scan_l1, scan_l2);
      cfg.plate = PlateSpec{scan_h, scan_alpha, load_material(scan_material)};
      cfg.theta_start_deg = theta_start;
      cfg.theta_stop_deg = theta_stop;
      cfg.theta_step_deg = theta_step;
      cfg.n_eff = scan_neff;
      cfg.noise.mean_pair_rate = scan_rate;
      cfg.noise.accidental_rate = scan_acc;
      cfg.noise.depolarization = scan_depol;
      cfg.time_s = scan_time;
      cfg.seed = g.seed;
      std::ostringstream csv;
      write_scan_csv(csv, scan_tilt(cfg));
      emit.primary(csv.str());
      emit.finish("scan-tilt", option_parameters(*scan));
    } else if (*tomo) {
      const FrequencyModePair modes;
      const bool mixed_target = tomo_target == "mixed";
      std::optional<StateSpec> target;
      if (!mixed_target) target = parse_state(tomo_target, modes);
      const DensityMatrix rho_th = mixed_target ? DensityMatrix::maximally_mixed() : pure_density(target->state);

      std::vector<CoincidenceRecord> records;
      if (!tomo_records_in.empty()) {
        const Json j = Json::parse(read_file(tomo_records_in));
        for (const auto& r : j.is_array() ? j : j.at("records")) records.push_back(record_from_json(r));
      } else {
        if (!(tomo_pairs > 0.0) || !(tomo_time > 0.0))
          throw std::invalid_argument("--pairs and --time must be positive");
        if (tomo_model != "expected" && tomo_model != "poisson")
          throw std::invalid_argument("--count-model must be expected or poisson");
        NoiseModel noise;
        noise.mean_pair_rate = tomo_pairs / tomo_time;
        noise.accidental_rate = tomo_acc;
        noise.depolarization = tomo_depol;
        records = simulate_tomography(rho_th, noise, tomo_time, g.seed,
                                      tomo_model == "poisson" ? CountModel::Poisson : CountModel::Expected);
      }
      ReconstructOptions opts;
      opts.maximum_likelihood = tomo_ml;
      const DensityMatrix rho = reconstruct(records, opts);

      Json report;
      report["target"] = tomo_target;
      report["method"] = tomo_ml ? "linear-inversion+ml" : "linear-inversion";
      Json recs = Json::array();
      for (const auto& r : records) recs.push_back(to_json(r));
      report["records"] = recs;
      report["rho"] = to_json(rho);
      Json diag = Json::array();
      for (const double d : rho.diagonal()) diag.push_back(round_sig(d));
      report["diagonal"] = diag;
      if (target && target->basis_id) {
        Json tdiag = Json::array();
        for (const double d : rho.in_basis(basis_matrix(target->basis_id->first)).diagonal())
          tdiag.push_back(round_sig(d));
        report["diagonal_in_target_basis"] = tdiag;
      }
      report["fidelity"] = round_sig(fidelity(rho, rho_th));
      report["purity"] = round_sig(rho.purity());
      emit.primary(report.dump(2) + "\n");
      emit.finish("tomography", option_parameters(*tomo));
    } else if (*qkd) {
      if (qkd_rounds <= 0) throw std::invalid_argument("--rounds must be positive");
      if (qkd_eve != "none" && qkd_eve != "intercept") throw std::invalid_argument("--eve must be none or intercept");
      SessionConfig cfg;
      cfg.rounds = qkd_rounds;
      cfg.bases_in_use = parse_bases(qkd_bases);
      cfg.noise.depolarization = qkd_depol;
      cfg.seed = g.seed;
      if (!(qkd_depol >= 0.0 && qkd_depol <= 1.0)) throw std::invalid_argument("--depolarization must be in [0, 1]");
      const SessionResult result = qkd_eve == "intercept"
                                       ? run_intercept_resend(cfg, EveConfig{parse_bases(qkd_eve_bases)})
                                       : run_session(cfg);
      if (!qkd_records_out.empty()) {
        std::string lines;
        for (const auto& r : result.records) lines += to_json(r).dump() + "\n";
        emit.extra_file(qkd_records_out, lines);
      }
      emit.primary(to_json(result.summary).dump(2) + "\n");
      emit.finish("qkd", option_parameters(*qkd));
    } else if (*stk) {
      const StateSpec s = parse_state(stokes_state, modes_from(stk_l1, stk_l2));
      const StokesVector v = stokes(s.state);
      std::ostringstream csv;
      csv << "s0,s1,s2,s3,p4\n"
          << format_number(v.s0) << ',' << format_number(v.s1) << ',' << format_number(v.s2) << ','
          << format_number(v.s3) << ',' << format_number(polarization_degree_p4(s.state)) << '\n';
      emit.primary(csv.str());
      emit.finish("stokes", option_parameters(*stk));
    } else if (*prep) {
      const FrequencyModePair modes = modes_from(prep_l1, prep_l2);
      const StateSpec input = parse_state(prep_state, modes);
      if (prep_d1.has_value() != prep_d2.has_value())
        throw std::invalid_argument("--delta1 and --delta2 must be given together");
      Matrix4 g_plate;
      if (prep_d1) {
        g_plate = dichroic_unitary(*prep_d1, *prep_d2, prep_alpha);
      } else {
        if (!(prep_h > 0.0)) throw std::invalid_argument("--thickness-mm must be positive");
        if (!(std::abs(prep_tilt) < 60.0)) throw std::invalid_argument("--tilt-deg must satisfy |theta| < 60");
        const PlateSpec base{prep_h, prep_alpha, load_material(prep_material)};
        const double n_eff = prep_neff > 0.0 ? prep_neff : mean_index(base.material, modes);
        g_plate = dichroic_unitary(effective_spec_under_tilt(base, TiltConfig{prep_tilt, n_eff}), modes);
      }
      emit.primary(to_json(input.state.transformed(g_plate).canonical()).dump(2) + "\n");
      emit.finish("prepare", option_parameters(*prep));
    } else if (*thick) {
      const FrequencyModePair modes = modes_from(thick_l1, thick_l2);
      const ThicknessSolution s =
          solve_dichroic_thickness(load_material(thick_material), modes, thick_min, thick_max);
      Json j{{"material", thick_material},
             {"thickness_mm", round_sig(s.thickness_mm)},
             {"waves_lambda1", round_sig(s.waves1)},
             {"waves_lambda2", round_sig(s.waves2)},
             {"residual_lambda1_waves", round_sig(s.residual1)},
             {"residual_lambda2_waves", round_sig(s.residual2)}};
      emit.primary(j.dump(2) + "\n");
      emit.finish("thickness", option_parameters(*thick));
    } else if (*replay) {
      const Json m = Json::parse(read_file(replay_manifest));
      auto argv = m.at("argv").get<std::vector<std::string>>();
      if (!replay_out.empty()) {
        set_flag(argv, "--out", replay_out);
        remove_flag(argv, "--manifest");
      }
      if (!replay_records_out.empty()) set_flag(argv, "--records-out", replay_records_out);
      if (!replay_manifest_out.empty()) set_flag(argv, "--manifest", replay_manifest_out);
      return run(argv, out, err);
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgumentError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgumentError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgumentError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace qqs::cli
