// Command-line front end: argument parsing and config-file handling only;
// all behavior lives in the library's run_command.
#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mandel/cli.hpp"

namespace {

// Accepts "a", "a+bi", "a-bi", or "bi" (also with trailing 'j').
std::complex<double> parse_complex(const std::string& text) {
    std::string s = text;
    if (!s.empty() && (s.back() == 'i' || s.back() == 'j')) {
        s.pop_back();
        // split at the last +/- that is not a leading sign or exponent sign
        size_t split = std::string::npos;
        for (size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            if (s.empty() || s == "+" || s == "-") s += "1";
            return {0.0, std::stod(s)};
        }
        std::string im = s.substr(split);
        if (im == "+" || im == "-") im += "1";
        return {std::stod(s.substr(0, split)), std::stod(im)};
    }
    return {std::stod(s), 0.0};
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty() || text == "auto") return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructive parameter-window toolkit for z^2 + c"};
    app.set_config("--config")->expected(0, 1);
    app.require_subcommand(1);

    mandel::RunConfig cfg;
    std::string c_text, base_text, word_text, caps_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--c", c_text, "complex parameter, e.g. -2 or -0.1+0.7i");
        sub->add_option("--out", cfg.out, "primary artifact path");
        sub->add_option("--report", cfg.report, "secondary report path");
        sub->add_option("--threads", cfg.threads, "worker thread budget");
        sub->add_option("--tol", cfg.tol, "solver tolerance");
        sub->set_config("--config")->expected(0, 1);
        return sub;
    };

    auto* render_m = add_common(app.add_subcommand("render-mandel", "escape-time parameter plane"));
    render_m->add_option("--resolution", cfg.resolution);
    render_m->add_option("--iters", cfg.iters);

    auto* render_j = add_common(app.add_subcommand("render-julia", "escape-time dynamical plane"));
    render_j->add_option("--resolution", cfg.resolution);
    render_j->add_option("--iters", cfg.iters);

    auto* ray = add_common(app.add_subcommand("ray", "external ray trace"));
    ray->add_option("--theta", cfg.theta, "exact angle p/q");
    ray->add_option("--plane", cfg.plane, "dyn or param");
    ray->add_option("--gend", cfg.g_end, "terminal potential");

    auto* equi = add_common(app.add_subcommand("equipotential", "Green level curve"));
    equi->add_option("--plane", cfg.plane);
    equi->add_option("--level", cfg.level);
    equi->add_option("--samples", cfg.samples);

    auto* puz = add_common(app.add_subcommand("puzzle", "nested puzzle partition"));
    puz->add_option("--depth", cfg.depth);
    puz->add_option("--qmax", cfg.q_max);
    puz->add_option("--level", cfg.level);

    auto* mis = add_common(app.add_subcommand("misiurewicz", "preperiodic parameter catalog"));
    mis->add_option("--m", cfg.m);
    mis->add_option("--k", cfg.k);

    auto* win = add_common(app.add_subcommand("window", "one parameter window"));
    win->add_option("--n", cfg.n);
    win->add_option("--m", cfg.m);
    win->add_option("--k", cfg.k);

    auto* tow = add_common(app.add_subcommand("tower", "nested window tower"));
    tow->add_option("--base", base_text, "base parameter (default -2)");
    tow->add_option("--word", word_text, "comma list or 'auto'");
    tow->add_option("--levels", cfg.levels);
    tow->add_option("--caps", caps_text, "comma list of diameter caps");
    tow->add_option("--m", cfg.m);
    tow->add_option("--k", cfg.k);

    auto* ver = add_common(app.add_subcommand("verify-tower", "build and gate a tower"));
    ver->add_option("--base", base_text);
    ver->add_option("--word", word_text);
    ver->add_option("--levels", cfg.levels);
    ver->add_option("--caps", caps_text);
    ver->add_option("--m", cfg.m);
    ver->add_option("--k", cfg.k);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return 2;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!c_text.empty()) {
            cfg.c = parse_complex(c_text);
            cfg.have_c = true;
        }
        if (!base_text.empty()) {
            cfg.c = parse_complex(base_text);
            cfg.have_c = true;
        }
        cfg.word = parse_int_list(word_text);
        if (!caps_text.empty()) cfg.caps = parse_double_list(caps_text);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\":{\"kind\":\"usage\",\"what\":\"%s\"}}\n", e.what());
        return 2;
    }
    return mandel::run_command(cfg);
}
