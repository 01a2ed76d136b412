// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: verification suites, optical scheme execution,
// and protocol Monte Carlo with machine-readable reports.
//
// Exit status: 0 full pass, 1 check failure, 2 usage or IO error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wsim/optics.hpp"
#include "wsim/protocols.hpp"
#include "wsim/report.hpp"
#include "wsim/rng.hpp"
#include "wsim/states.hpp"
#include "wsim/verify.hpp"

namespace {

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 2;
  }
  out << content;
  return out ? 0 : 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wsim: multiparticle W-state simulation and verification toolkit"};
  app.require_subcommand(1);

  wsim::VerifyParams params;
  std::string json_path;
  app.add_option("--seed", params.seed, "random seed (default 0)");
  app.add_option("--truncation", params.truncation, "total-photon truncation (default 6)");
  app.add_option("--tol-structural", params.tol_structural,
                 "structural tolerance (default 1e-10)");
  app.add_option("--tol-assert", params.tol_assert,
                 "equality assertion tolerance (default 1e-12)");
  app.add_option("--json", json_path, "write the machine-readable report here");

  // verify ------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify_cmd->add_option("suite", suite,
                         "states | entanglement | optics | dynamics | protocols | all");

  // optics-run ----------------------------------------------------------
  auto* optics_cmd = app.add_subcommand("optics-run", "execute an optical scheme file");
  std::string scheme_path;
  optics_cmd->add_option("scheme", scheme_path, "scheme file (JSON)")->required();

  // protocol ------------------------------------------------------------
  auto* protocol_cmd = app.add_subcommand("protocol", "run a protocol simulation");
  std::string protocol_name;
  int rounds = 100000;
  int trials = 100;
  std::string channel = "w";
  double coef_a = 0.0, coef_b = 0.0, coef_c = 0.0;
  protocol_cmd->add_option("name", protocol_name, "qkd | qss | teleport | distill")
      ->required();
  protocol_cmd->add_option("--rounds", rounds, "Monte-Carlo rounds");
  protocol_cmd->add_option("--trials", trials, "random input states for teleport");
  protocol_cmd->add_option("--channel", channel, "teleport channel: ghz | w");
  protocol_cmd->add_option("--a", coef_a, "distillation coefficient a");
  protocol_cmd->add_option("--b", coef_b, "distillation coefficient b");
  protocol_cmd->add_option("--c", coef_c, "distillation coefficient c");

  // schemes -------------------------------------------------------------
  auto* schemes_cmd = app.add_subcommand("schemes", "write the shipped scheme files");
  std::string out_dir = ".";
  schemes_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify_cmd->parsed()) {
      wsim::SuiteReport rep = wsim::verify::run_suite(suite, params);
      std::cout << rep.to_text();
      if (!json_path.empty()) {
        int rc = write_file(json_path, rep.to_json());
        if (rc != 0) return rc;
      }
      return rep.overall() ? 0 : 1;
    }

    if (optics_cmd->parsed()) {
      wsim::optics::OpticalScheme scheme =
          wsim::optics::parse_scheme_json(read_file(scheme_path));
      scheme.truncation = std::max(scheme.truncation, params.truncation);
      wsim::optics::SchemeReport rep = wsim::optics::run_scheme(scheme);
      std::cout << "scheme " << rep.name << ": probability "
                << wsim::format_significant(rep.probability, 12);
      if (rep.fidelity)
        std::cout << ", fidelity " << wsim::format_significant(*rep.fidelity, 12);
      std::cout << "\n";
      if (!json_path.empty()) {
        int rc = write_file(json_path, wsim::optics::report_to_json(rep));
        if (rc != 0) return rc;
      }
      return 0;
    }

    if (protocol_cmd->parsed()) {
      using namespace wsim::protocols;
      if (protocol_name == "qkd" || protocol_name == "qss") {
        if (rounds < 1) {
          std::cerr << "error: --rounds must be >= 1\n";
          return 2;
        }
        ProtocolTranscript t = protocol_name == "qkd" ? qkd_simulate(rounds, params.seed)
                                                      : qss_simulate(rounds, params.seed);
        std::cout << t.protocol << ": rounds " << t.rounds << ", accepted " << t.accepted
                  << ", success_rate " << wsim::format_significant(t.success_rate, 6)
                  << ", qubits_per_key_bit "
                  << wsim::format_significant(t.qubits_per_key_bit, 6) << "\n";
        if (!json_path.empty()) {
          int rc = write_file(json_path, t.to_json());
          if (rc != 0) return rc;
        }
        return 0;
      }
      if (protocol_name == "distill") {
        DistillResult r = distill_w(coef_a, coef_b, coef_c);
        double f = wsim::fidelity(r.output, wsim::states::w_state(3));
        std::cout << "distill: success "
                  << wsim::format_significant(r.success_probability, 12) << ", W3 fidelity "
                  << wsim::format_significant(f, 12) << "\n";
        if (!json_path.empty()) {
          std::ostringstream os;
          os << "{\n  \"success_probability\": \""
             << wsim::format_significant(r.success_probability) << "\",\n  \"w3_fidelity\": \""
             << wsim::format_significant(f) << "\"\n}\n";
          int rc = write_file(json_path, os.str());
          if (rc != 0) return rc;
        }
        return 0;
      }
      if (protocol_name == "teleport") {
        wsim::Rng rng = wsim::Rng::substream(params.seed, 1);
        double min_f = 1.0;
        for (int k = 0; k < trials; ++k) {
          wsim::cx alpha =
              std::polar(std::sqrt(rng.uniform()), 2.0 * M_PI * rng.uniform());
          wsim::cx beta = std::sqrt(1.0 - std::norm(alpha));
          wsim::Vector v = wsim::Vector::Zero(4);
          v(1) = alpha;
          v(2) = beta;
          TeleportReport rep = teleport(wsim::StateVector(v, {2, 2}), channel);
          min_f = std::min(min_f, rep.min_fidelity);
        }
        std::cout << "teleport (" << channel << " channel): trials " << trials
                  << ", min branch fidelity " << wsim::format_significant(min_f, 12)
                  << ", classical bits 3\n";
        if (!json_path.empty()) {
          std::ostringstream os;
          os << "{\n  \"channel\": \"" << channel << "\",\n  \"trials\": " << trials
             << ",\n  \"min_branch_fidelity\": \"" << wsim::format_significant(min_f)
             << "\",\n  \"classical_bits\": 3\n}\n";
          int rc = write_file(json_path, os.str());
          if (rc != 0) return rc;
        }
        return 0;
      }
      std::cerr << "error: unknown protocol '" << protocol_name
                << "' (expected qkd, qss, teleport or distill)\n";
      return 2;
    }

    if (schemes_cmd->parsed()) {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      auto emit = [&](const wsim::optics::OpticalScheme& s) {
        return write_file((fs::path(out_dir) / (s.name + ".scheme")).string(),
                          wsim::optics::scheme_to_json(s));
      };
      int rc = 0;
      rc |= emit(wsim::optics::scheme_multiport_w1(4));
      rc |= emit(wsim::optics::scheme_tritter_w3v());
      rc |= emit(wsim::optics::scheme_multiport_w4v());
      rc |= emit(wsim::optics::scheme_psi4_w3v('V'));
      if (rc == 0) std::cout << "wrote 4 scheme files to " << out_dir << "\n";
      return rc;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
