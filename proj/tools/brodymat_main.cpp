#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "brodymat/cli.hpp"

namespace {

void add_model_options(CLI::App* app, brodymat::cli::ModelOptions& m) {
    app->add_option("--model", m.model, "catalogued model id (see `catalog`)");
    app->add_option("--q", m.q, "Brody parameter in [0,1]");
    app->add_option("--driver", m.driver, "driver distribution: exp|gamma2|normal-squares");
    app->add_option("--sigma-e", m.sigma_e, "exponential scale");
    app->add_option("--sigma-g", m.sigma_g, "gamma scale");
    app->add_option("--sigma-r", m.sigma_r, "normal-component scale");
    app->add_option("--config", m.config, "key=value config file (flags take precedence)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2x2 correlated random-matrix ensembles with Brody spacing statistics"};
    app.require_subcommand(1);

    brodymat::cli::SampleOptions sample;
    auto* cmd_sample = app.add_subcommand("sample", "run a simulation and write histogram/GOF files");
    add_model_options(cmd_sample, sample.model);
    cmd_sample->add_option("--n", sample.n, "number of realizations");
    cmd_sample->add_option("--seed", sample.seed, "random seed");
    cmd_sample->add_option("--bins", sample.bins, "histogram bin count");
    cmd_sample->add_option("--zmax", sample.zmax, "histogram upper edge");
    cmd_sample->add_option("--threads", sample.threads, "worker threads (0 = hardware)");
    cmd_sample->add_option("--out-dir", sample.out_dir, "output directory");
    cmd_sample->add_flag("--gate", sample.gate, "exit 5 when the GOF gate fails");

    brodymat::cli::ValidateOptions validate;
    auto* cmd_validate =
        app.add_subcommand("validate", "check model constraints and the discriminant identity");
    add_model_options(cmd_validate, validate.model);
    cmd_validate->add_option("--n", validate.n, "verification sample count");
    cmd_validate->add_option("--seed", validate.seed, "random seed");

    brodymat::cli::LlnOptions lln;
    auto* cmd_lln = app.add_subcommand("lln", "sample-mean convergence trace");
    add_model_options(cmd_lln, lln.model);
    cmd_lln->add_option("--seed", lln.seed, "random seed");
    cmd_lln->add_option("--max", lln.max_n, "largest checkpoint");
    cmd_lln->add_option("--threads", lln.threads, "worker threads (0 = hardware)");
    cmd_lln->add_option("--out-dir", lln.out_dir, "output directory");

    brodymat::cli::PdfOptions pdf;
    auto* cmd_pdf = app.add_subcommand("pdf", "evaluate a theoretical spacing law on a grid");
    cmd_pdf->add_option("--law", pdf.law,
                        "poisson|wigner|brody|semi-poisson|ginibre|brody2|weibull|gg");
    cmd_pdf->add_option("--q", pdf.q, "Brody parameter for brody/brody2");
    cmd_pdf->add_option("--sigma", pdf.sigma, "Weibull scale");
    cmd_pdf->add_option("--tau", pdf.tau, "Weibull shape");
    cmd_pdf->add_option("--ell", pdf.ell, "generalized gamma scale");
    cmd_pdf->add_option("--omega", pdf.omega, "generalized gamma first shape");
    cmd_pdf->add_option("--big-omega", pdf.bigomega, "generalized gamma second shape");
    cmd_pdf->add_option("--zmax", pdf.zmax, "grid upper edge");
    cmd_pdf->add_option("--points", pdf.points, "grid intervals");
    cmd_pdf->add_option("--out-dir", pdf.out_dir, "write pdf.csv here instead of stdout");

    auto* cmd_catalog = app.add_subcommand("catalog", "list catalogued models");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_sample->parsed()) return brodymat::cli::cmd_sample(sample, std::cout, std::cerr);
        if (cmd_validate->parsed())
            return brodymat::cli::cmd_validate(validate, std::cout, std::cerr);
        if (cmd_lln->parsed()) return brodymat::cli::cmd_lln(lln, std::cout, std::cerr);
        if (cmd_pdf->parsed()) return brodymat::cli::cmd_pdf(pdf, std::cout, std::cerr);
        if (cmd_catalog->parsed()) return brodymat::cli::cmd_catalog(std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return brodymat::cli::kExitUsage;
}
