// quill: figure reproduction, sweeps and Monte Carlo validation.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "experiments/format.hpp"
#include "experiments/svg.hpp"
#include "experiments/sweep.hpp"
#include "experiments/validate.hpp"
#include "quill/errors.hpp"
#include "quill/illumination.hpp"

namespace fs = std::filesystem;
using namespace quill;
using namespace quill::experiments;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<double> N;
  std::optional<std::int64_t> M, M_beta, N_pix;
  std::optional<double> eta, eta_beta, tau;
  std::optional<double> n_twb, n_thb;

  void apply(SweepSpec& spec) const {
    for (Scenario* s : {&spec.twb, &spec.thb}) {
      if (N) s->N = *N;
      if (M) s->M = *M;
      if (M_beta) s->M_beta = *M_beta;
      if (N_pix) s->N_pix = *N_pix;
      if (eta) s->eta = *eta;
      if (eta_beta) s->eta_beta = *eta_beta;
      if (tau) s->tau = *tau;
    }
    if (n_twb) spec.twb.N = *n_twb;
    if (n_thb) spec.thb.N = *n_thb;
  }
};

void add_overrides(CLI::App* cmd, Overrides& o, bool per_source) {
  cmd->add_option("--N", o.N, "Detected photons per pixel (both sources)");
  cmd->add_option("--M", o.M, "Source modes per pixel");
  cmd->add_option("--M_beta", o.M_beta, "Bath modes per pixel");
  cmd->add_option("--eta", o.eta, "Detection efficiency");
  cmd->add_option("--eta_beta", o.eta_beta, "Bath detection efficiency");
  cmd->add_option("--tau", o.tau, "Object reflectivity");
  cmd->add_option("--N_pix", o.N_pix, "Pixel pairs per frame");
  if (per_source) {
    cmd->add_option("--n-twb", o.n_twb, "Detected TWB photons per pixel");
    cmd->add_option("--n-thb", o.n_thb, "Detected THB photons per pixel");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

std::string csv_of(const SweepTable& t) {
  std::ostringstream s;
  write_csv(s, t);
  return s.str();
}

Series column_series(const SweepTable& t, std::string_view col, std::string label,
                     bool dashed = false) {
  Series s{std::move(label), {}, {}, dashed};
  for (const auto& r : t.rows) {
    s.x.push_back(r.N_beta);
    s.y.push_back(r.column(col));
  }
  return s;
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw ParameterError("QUILL_SEED must be a 64-bit unsigned decimal, got '" +
                         std::string(text) + "'");
  }
  return v;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QUILL_SEED")) return parse_seed(env);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum illumination with twin and thermal beams: analytic curves and "
               "Monte Carlo validation"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::string format = "csv+svg";
  std::string grid_text;
  std::optional<std::uint64_t> seed_flag;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", format, "csv or csv+svg")
        ->check(CLI::IsMember({"csv", "csv+svg"}))
        ->capture_default_str();
    cmd->add_option("--grid", grid_text, "N_beta grid MIN:MAX:COUNT (log-spaced)");
    cmd->add_option("--seed", seed_flag, "Random seed (overrides QUILL_SEED)");
  };

  Overrides ov2, ov3, ovs;
  auto* fig2 = app.add_subcommand("figure2", "R_SNR and R_MI versus N_beta, equal photon numbers");
  common(fig2);
  add_overrides(fig2, ov2, false);

  auto* fig3 = app.add_subcommand("figure3", "SNR and MI curves, measured photon numbers");
  common(fig3);
  add_overrides(fig3, ov3, true);

  std::string spec_path;
  auto* sweep = app.add_subcommand("sweep", "Sweep driven by a JSON spec; CSV to stdout unless --out");
  sweep->add_option("spec", spec_path, "Sweep spec file")->required();
  common(sweep);
  add_overrides(sweep, ovs, true);

  std::uint64_t shots = 0;
  unsigned threads = 0;
  auto* validate = app.add_subcommand("validate", "Analytic versus Monte Carlo campaign");
  validate->add_option("--shots", shots, "Shots per instance (default: per-instance)");
  validate->add_option("--threads", threads, "Worker threads (0 = all cores)");
  validate->add_option("--seed", seed_flag, "Random seed (overrides QUILL_SEED)");
  validate->add_option("--out", out_dir, "Output directory")->capture_default_str();

  double n_twb = 0, n_thb = 0, eta = 0;
  std::int64_t m = 0;
  auto* asym = app.add_subcommand("asymptote", "Dominant-bath enhancement (mu_T^2 + mu_T)/mu_theta^2");
  asym->add_option("--n-twb", n_twb, "Detected TWB photons per pixel")->required();
  asym->add_option("--n-thb", n_thb, "Detected THB photons per pixel")->required();
  asym->add_option("--eta", eta, "Detection efficiency")->required();
  asym->add_option("--m", m, "Modes per pixel")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const bool svg = format == "csv+svg";
    const fs::path out(out_dir);

    if (*asym) {
      std::cout << format_double(illumination::asymptotic_ratio(n_twb, n_thb, eta, m)) << '\n';
      return kOk;
    }

    if (*fig2 || *fig3 || *sweep) {
      (void)resolve_seed(seed_flag); // analytic curves draw no random numbers
      SweepSpec spec;
      std::string stem;
      if (*fig2) {
        spec = figure2_spec();
        ov2.apply(spec);
        stem = "figure2";
      } else if (*fig3) {
        spec = figure3_spec();
        ov3.apply(spec);
        stem = "figure3";
      } else {
        std::ifstream f(spec_path, std::ios::binary);
        if (!f) throw IoError("cannot read sweep spec " + spec_path);
        std::stringstream buf;
        buf << f.rdbuf();
        spec = sweep_spec_from_json(buf.str());
        ovs.apply(spec);
        stem = fs::path(spec_path).stem().string();
      }
      if (!grid_text.empty()) spec.grid = parse_grid(grid_text);
      quill::validate(spec.twb);
      quill::validate(spec.thb);
      const auto table = run_sweep(spec);
      const std::string csv = csv_of(table);

      if (*sweep && sweep->count("--out") == 0) {
        std::cout << csv;
        return kOk;
      }
      write_file(out / (stem + ".csv"), csv);
      std::cout << "wrote " << (out / (stem + ".csv")).string() << '\n';

      const double asymptote = table.rows.front().asymptote;
      if (*fig2) {
        const auto& last = table.rows.back();
        std::cout << "asymptote " << format_double(asymptote) << "\n"
                  << "N_beta " << format_double(last.N_beta) << ": R_SNR "
                  << format_double(last.r_snr) << ", R_MI " << format_double(last.r_mi) << '\n';
        if (svg) {
          Plot p{"Enhancement versus bath photons", "N_beta", "TWB / THB", false,
                 {column_series(table, "R_SNR", "R_SNR"), column_series(table, "R_MI", "R_MI"),
                  column_series(table, "asymptote", "asymptote", true)}};
          write_file(out / "figure2.svg", render_svg(p));
        }
      } else if (*fig3) {
        std::ostringstream summary;
        summary << "Theory curves only; experimental points and confidence bands are not "
                   "reconstructed.\n"
                << "N_TWB " << format_double(spec.twb.N) << ", N_THB "
                << format_double(spec.thb.N) << ", M " << spec.twb.M << ", M_beta "
                << spec.twb.M_beta << ", eta " << format_double(spec.twb.eta) << ", eta_beta "
                << format_double(spec.twb.eta_beta) << '\n'
                << "asymptotic enhancement " << format_double(asymptote) << '\n';
        write_file(out / "figure3_summary.txt", summary.str());
        std::cout << summary.str();
        if (svg) {
          write_file(out / "figure3_snr.svg",
                     render_svg({"SNR per pixel pair", "N_beta", "SNR", true,
                                 {column_series(table, "SNR_TWB", "TWB"),
                                  column_series(table, "SNR_THB", "THB")}}));
          write_file(out / "figure3_mi.svg",
                     render_svg({"Mutual information", "N_beta", "MI (nats)", true,
                                 {column_series(table, "MI_TWB", "TWB"),
                                  column_series(table, "MI_THB", "THB")}}));
          write_file(out / "figure3_ratio.svg",
                     render_svg({"Enhancement", "N_beta", "TWB / THB", false,
                                 {column_series(table, "R_SNR", "R_SNR"),
                                  column_series(table, "R_MI", "R_MI"),
                                  column_series(table, "asymptote", "asymptote", true)}}));
        }
      } else if (svg) {
        Plot p{stem, "N_beta", "value", false, {}};
        for (const auto& col : table.columns) {
          if (col != "N_beta") p.series.push_back(column_series(table, col, col));
        }
        write_file(out / (stem + ".svg"), render_svg(p));
      }
      return kOk;
    }

    if (*validate) {
      ValidationOptions opt;
      opt.seed = resolve_seed(seed_flag);
      opt.threads = threads;
      const auto report = run_validation(standard_suite(shots), opt);
      std::cout << "seed " << opt.seed << '\n';
      print_report(std::cout, report);
      std::ostringstream csv;
      write_report_csv(csv, report);
      write_file(out / "validate_report.csv", csv.str());
      return report.passed ? kOk : kValidation;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
