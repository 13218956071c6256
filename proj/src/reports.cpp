#include "regimelab/reports.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "regimelab/textio.hpp"

namespace regimelab {

namespace {

void write_config_json(std::ostream& out, const FitConfig& cfg, const char* indent) {
  out << indent << "\"lambda\": " << format_g12(cfg.lambda) << ",\n"
      << indent << "\"beta_fixed\": " << format_g12(cfg.beta_fixed) << ",\n"
      << indent << "\"tau_a_hat\": " << format_g12(cfg.tau_a_hat) << ",\n"
      << indent << "\"tau_p_hat\": " << format_g12(cfg.tau_p_hat) << ",\n"
      << indent << "\"lam_alpha\": " << format_g12(cfg.lam_alpha) << ",\n"
      << indent << "\"lam_gamma\": " << format_g12(cfg.lam_gamma) << ",\n"
      << indent << "\"lam_kappa\": " << format_g12(cfg.lam_kappa) << ",\n"
      << indent << "\"gauge_w\": " << format_g12(cfg.gauge_w) << ",\n"
      << indent << "\"eps_p\": " << format_g12(cfg.eps_p) << ",\n"
      << indent << "\"max_iterations\": " << cfg.optimizer.max_iterations << ",\n"
      << indent << "\"gradient_tolerance\": " << format_g12(cfg.optimizer.gradient_tolerance)
      << ",\n"
      << indent << "\"seed\": " << cfg.optimizer.seed << "\n";
}

}  // namespace

void write_fit_json(std::ostream& out, const FitResult& fit) {
  out << "{\n  \"params_hat\": {\n    \"gap_trajectory\": [";
  for (std::size_t t = 0; t < fit.params_hat.gap_trajectory.size(); ++t) {
    if (t > 0) out << ", ";
    out << format_g12(fit.params_hat.gap_trajectory[t]);
  }
  out << "],\n"
      << "    \"alpha_hat\": " << format_g12(fit.params_hat.alpha_hat) << ",\n"
      << "    \"gamma_hat\": " << format_g12(fit.params_hat.gamma_hat) << ",\n"
      << "    \"kappa_hat\": " << format_g12(fit.params_hat.kappa_hat) << "\n  },\n";

  out << "  \"objective\": {\n"
      << "    \"neg_logpost\": " << format_g12(fit.objective.neg_logpost) << ",\n"
      << "    \"neg_loglik\": " << format_g12(fit.objective.neg_loglik) << ",\n"
      << "    \"pen_rw\": " << format_g12(fit.objective.pen_rw) << ",\n"
      << "    \"gauge_pen\": " << format_g12(fit.objective.gauge_pen) << ",\n"
      << "    \"pen_l2\": " << format_g12(fit.objective.pen_l2) << "\n  },\n";

  out << "  \"probs\": [\n";
  for (std::size_t t = 0; t < fit.probs.size(); ++t) {
    const RegimeProbs& p = fit.probs[t];
    out << "    {\"p_fr_lat\": " << format_g12(p.p_fr_lat)
        << ", \"p_mn_lat\": " << format_g12(p.p_mn_lat)
        << ", \"z_mn\": " << format_g12(p.z_mn) << ", \"p_mn\": " << format_g12(p.p_mn)
        << ", \"p_fr\": " << format_g12(p.p_fr) << ", \"p_np\": " << format_g12(p.p_np)
        << (t + 1 < fit.probs.size() ? "},\n" : "}\n");
  }
  out << "  ],\n";

  out << "  \"converged\": " << (fit.converged ? "true" : "false") << ",\n"
      << "  \"iterations\": " << fit.iterations << ",\n";

  out << "  \"labels\": [";
  for (std::size_t t = 0; t < fit.labels.size(); ++t) {
    if (t > 0) out << ", ";
    out << '"' << to_string(fit.labels[t]) << '"';
  }
  out << "],\n  \"turns\": [";
  for (std::size_t t = 0; t < fit.turn_indices.size(); ++t) {
    if (t > 0) out << ", ";
    out << fit.turn_indices[t];
  }
  out << "],\n  \"config\": {\n";
  write_config_json(out, fit.config, "    ");
  out << "  }\n}\n";
}

FitResult read_fit_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fit document is not valid JSON: ") + e.what());
  }
  try {
    FitResult fit;
    const auto& ph = doc.at("params_hat");
    fit.params_hat.gap_trajectory = ph.at("gap_trajectory").get<std::vector<double>>();
    fit.params_hat.alpha_hat = ph.at("alpha_hat").get<double>();
    fit.params_hat.gamma_hat = ph.at("gamma_hat").get<double>();
    fit.params_hat.kappa_hat = ph.at("kappa_hat").get<double>();

    const auto& obj = doc.at("objective");
    fit.objective.neg_logpost = obj.at("neg_logpost").get<double>();
    fit.objective.neg_loglik = obj.at("neg_loglik").get<double>();
    fit.objective.pen_rw = obj.at("pen_rw").get<double>();
    fit.objective.gauge_pen = obj.at("gauge_pen").get<double>();
    fit.objective.pen_l2 = obj.at("pen_l2").get<double>();

    for (const auto& item : doc.at("probs")) {
      RegimeProbs p;
      p.p_fr_lat = item.at("p_fr_lat").get<double>();
      p.p_mn_lat = item.at("p_mn_lat").get<double>();
      p.z_mn = item.at("z_mn").get<double>();
      p.p_mn = item.at("p_mn").get<double>();
      p.p_fr = item.at("p_fr").get<double>();
      p.p_np = item.at("p_np").get<double>();
      fit.probs.push_back(p);
    }

    fit.converged = doc.at("converged").get<bool>();
    fit.iterations = doc.at("iterations").get<int>();
    for (const auto& item : doc.at("labels")) {
      fit.labels.push_back(label_from_string(item.get<std::string>()));
    }
    fit.turn_indices = doc.at("turns").get<std::vector<int>>();

    const auto& cfg = doc.at("config");
    fit.config.lambda = cfg.at("lambda").get<double>();
    fit.config.beta_fixed = cfg.at("beta_fixed").get<double>();
    fit.config.tau_a_hat = cfg.at("tau_a_hat").get<double>();
    fit.config.tau_p_hat = cfg.at("tau_p_hat").get<double>();
    fit.config.lam_alpha = cfg.at("lam_alpha").get<double>();
    fit.config.lam_gamma = cfg.at("lam_gamma").get<double>();
    fit.config.lam_kappa = cfg.at("lam_kappa").get<double>();
    fit.config.gauge_w = cfg.at("gauge_w").get<double>();
    fit.config.eps_p = cfg.at("eps_p").get<double>();
    fit.config.optimizer.max_iterations = cfg.at("max_iterations").get<int>();
    fit.config.optimizer.gradient_tolerance = cfg.at("gradient_tolerance").get<double>();
    fit.config.optimizer.seed = cfg.at("seed").get<std::int64_t>();
    return fit;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("fit document missing required field: ") + e.what());
  }
}

FitResult read_fit_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open fit file: " + path);
  }
  return read_fit_json(in);
}

void write_trajectory_csv(std::ostream& out, const FitResult& fit) {
  const auto sens = trajectory_sensitivities(fit);
  out << "position,turn,label,G_hat,p_np,p_fr,p_mn,d_p_np,d_p_fr,d_p_mn,d2_p_fr\n";
  for (std::size_t t = 0; t < fit.params_hat.gap_trajectory.size(); ++t) {
    out << (t + 1) << ',' << fit.turn_indices[t] << ',' << to_string(fit.labels[t]) << ','
        << format_g12(fit.params_hat.gap_trajectory[t]) << ','
        << format_g12(fit.probs[t].p_np) << ',' << format_g12(fit.probs[t].p_fr) << ','
        << format_g12(fit.probs[t].p_mn) << ',' << format_g12(sens[t].d_p_np) << ','
        << format_g12(sens[t].d_p_fr) << ',' << format_g12(sens[t].d_p_mn) << ','
        << format_g12(sens[t].d2_p_fr) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "lambda,adj_rmse_prev,mn_calibration,neg_loglik,pen_rw,gauge_pen,pen_l2\n";
  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    out << format_g12(sweep.grid[i]) << ',';
    if (i > 0) out << format_g12(sweep.adj_rmse[i - 1]);
    out << ',';
    if (i < sweep.mn_calibration.size() && sweep.mn_calibration[i].has_value()) {
      out << format_g12(*sweep.mn_calibration[i]);
    }
    const ObjectiveParts& obj = sweep.fits[i].objective;
    out << ',' << format_g12(obj.neg_loglik) << ',' << format_g12(obj.pen_rw) << ','
        << format_g12(obj.gauge_pen) << ',' << format_g12(obj.pen_l2) << '\n';
  }
}

}  // namespace regimelab
