// Command-line front door: limit analysis, Abel/Cesaro curve tabulation and
// MDP value computation.  One command runs one analysis; output is text plus
// an optional machine-readable record (JSON for reports, CSV for curves).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "summability/abel.hpp"
#include "summability/cesaro.hpp"
#include "summability/mdp.hpp"
#include "summability/specfile.hpp"
#include "summability/tauberian.hpp"

using namespace summability;
using bignum::Rational;
using json = nlohmann::json;

namespace {

struct CommonOpts {
    unsigned precision_bits = 256;
    double tol = 0x1p-60;
    double delta = 1e-3;
    unsigned k_min = 2;
    unsigned k_max = 14;
    std::string grid;       // comma-separated rational alphas
    std::string out;        // output path (JSON record or CSV)
    std::string preset;     // sequence preset token
    std::string spec_file;  // sequence or model spec file
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--precision-bits", o.precision_bits, "fixed-point fractional bits")
        ->check(CLI::Range(64u, 4096u));
    cmd->add_option("--tol", o.tol, "evaluation truncation tolerance");
    cmd->add_option("--delta", o.delta, "equality tolerance for classification");
    cmd->add_option("--k-min", o.k_min, "first schedule ordinal");
    cmd->add_option("--k-max", o.k_max, "last schedule ordinal");
    cmd->add_option("--grid", o.grid, "comma-separated rational alpha grid");
    cmd->add_option("--out", o.out, "write the machine-readable record here");
    cmd->add_option("--preset", o.preset,
                    "sequence preset: example1 | example2 | negated-example2 | "
                    "example1-majorant:K");
    cmd->add_option("--spec-file", o.spec_file, "sequence/model spec file");
}

seqcore::BlockSequence resolve_sequence(const CommonOpts& o) {
    if (!o.preset.empty() && !o.spec_file.empty())
        throw CLI::ValidationError("--preset and --spec-file are mutually exclusive");
    if (!o.preset.empty()) return specfile::sequence_from_preset(o.preset);
    if (!o.spec_file.empty()) return specfile::load_sequence_spec(o.spec_file);
    throw CLI::ValidationError("a sequence is required: --preset or --spec-file");
}

std::vector<Rational> parse_grid(const std::string& grid) {
    std::vector<Rational> out;
    std::stringstream ss(grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        Rational a = specfile::parse_rational(tok);
        if (!(a > 0 && a < 1))
            throw std::invalid_argument("grid alpha '" + tok + "' outside (0,1)");
        out.push_back(a);
    }
    if (out.empty()) throw std::invalid_argument("empty alpha grid");
    return out;
}

void write_text_or_file(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << content;
}

json estimate_json(const tauberian::Estimate& e) {
    return json{{"value", e.value}, {"radius", e.radius}};
}

const char* verdict_name(tauberian::GapVerdict v) {
    switch (v) {
        case tauberian::GapVerdict::Equal: return "equal";
        case tauberian::GapVerdict::Strict: return "strict";
        default: return "unresolved";
    }
}

int cmd_limits(const CommonOpts& o, bool grid_mode) {
    auto s = resolve_sequence(o);
    tauberian::AnalyzeConfig cfg;
    cfg.precision_bits = o.precision_bits;
    cfg.tol = o.tol;
    cfg.delta = o.delta;
    cfg.k_min = o.k_min;
    cfg.k_max = o.k_max;
    cfg.grid_mode = grid_mode;
    if (!o.grid.empty()) {
        cfg.alpha_grid = parse_grid(o.grid);
        cfg.grid_mode = true;
    }
    auto rep = tauberian::analyze(s, cfg);

    std::printf("sequence:        %s\n", s.description().c_str());
    std::printf("cesaro lower:    %.6f  (radius %.2e)\n", rep.c_lower.value,
                rep.c_lower.radius);
    std::printf("abel lower:      %.6f  (radius %.2e)\n", rep.a_lower.value,
                rep.a_lower.radius);
    std::printf("abel upper:      %.6f  (radius %.2e)\n", rep.a_upper.value,
                rep.a_upper.radius);
    std::printf("cesaro upper:    %.6f  (radius %.2e)\n", rep.c_upper.value,
                rep.c_upper.radius);
    std::printf("gap verdicts:    %s / %s / %s\n", verdict_name(rep.lower_gap),
                verdict_name(rep.middle_gap), verdict_name(rep.upper_gap));
    std::printf("relation class:  %s", tauberian::relation_name(rep.relation));
    if (tauberian::relation_number(rep.relation) != 0)
        std::printf(" (%d)", tauberian::relation_number(rep.relation));
    std::printf("\n");
    if (!rep.notes.empty()) std::printf("notes:           %s\n", rep.notes.c_str());
    if (rep.inconsistent) std::printf("status:          INCONSISTENT\n");

    if (!o.out.empty()) {
        json j{{"sequence", s.description()},
               {"cesaro_lower", estimate_json(rep.c_lower)},
               {"abel_lower", estimate_json(rep.a_lower)},
               {"abel_upper", estimate_json(rep.a_upper)},
               {"cesaro_upper", estimate_json(rep.c_upper)},
               {"relation_class", tauberian::relation_number(rep.relation)},
               {"relation_name", tauberian::relation_name(rep.relation)},
               {"gap_verdicts",
                {verdict_name(rep.lower_gap), verdict_name(rep.middle_gap),
                 verdict_name(rep.upper_gap)}},
               {"delta", rep.delta},
               {"inconsistent", rep.inconsistent},
               {"notes", rep.notes}};
        write_text_or_file(o.out, j.dump(2) + "\n");
    }
    return rep.inconsistent ? 2 : 0;
}

int cmd_abel_curve(const CommonOpts& o, const std::string& schedule_name) {
    auto s = resolve_sequence(o);
    auto cf = abel::closed_form(s);
    std::vector<abel::LogAlpha> schedule;
    if (schedule_name == "grid" || !o.grid.empty()) {
        for (const auto& a : parse_grid(o.grid))
            schedule.push_back(abel::alpha_from_rational(a, o.precision_bits));
    } else {
        abel::ScheduleKind kind;
        if (schedule_name == "ones-pairs")
            kind = abel::ScheduleKind::OnesPairs;
        else if (schedule_name == "zeros-pairs")
            kind = abel::ScheduleKind::ZerosPairs;
        else if (schedule_name == "dyadic-factorial")
            kind = abel::ScheduleKind::DyadicFactorial;
        else if (schedule_name == "factorial-sqrt")
            kind = abel::ScheduleKind::FactorialSqrt;
        else
            throw std::invalid_argument("unknown schedule '" + schedule_name + "'");
        schedule = abel::make_schedule(kind, &s, o.k_min, o.k_max, o.precision_bits);
    }

    std::string csv = "alpha_t,alpha_decimal,f_value,error_radius,schedule_index\n";
    char line[256];
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        auto r = abel::eval_closed(cf, schedule[i], o.tol);
        std::snprintf(line, sizeof line, "%.17e,%.12f,%.17e,%.3e,%zu\n",
                      schedule[i].t.to_double(), abel::alpha_to_double(schedule[i]),
                      r.to_double(), r.radius, i);
        csv += line;
    }
    write_text_or_file(o.out, csv);
    return 0;
}

int cmd_cesaro_curve(const CommonOpts& o) {
    auto s = resolve_sequence(o);
    auto est = cesaro::boundary_extremes(s, o.k_max);
    std::string csv = "boundary_index,n,average_num,average_den,average_decimal\n";
    for (std::size_t i = 0; i < est.schedule_indices.size(); ++i) {
        const auto& v = est.schedule_values[i];
        char tail[64];
        std::snprintf(tail, sizeof tail, ",%.12f\n", bignum::rational_to_double(v));
        csv += std::to_string(i + 1) + "," + est.schedule_indices[i].str() + "," +
               numerator(v).str() + "," + denominator(v).str() + tail;
    }
    write_text_or_file(o.out, csv);
    return 0;
}

int cmd_mdp(const CommonOpts& o, const std::string& model_name, std::size_t horizon) {
    std::optional<mdp::Construction> c;
    if (!o.spec_file.empty()) {
        c = specfile::load_model_spec(o.spec_file);
    } else if (model_name == "single-state") {
        c = mdp::single_state_construction(resolve_sequence(o));
    } else if (model_name == "chain") {
        c = mdp::chain_construction(resolve_sequence(o));
    } else {
        throw CLI::ValidationError(
            "a model is required: --spec-file or --model single-state|chain with a sequence");
    }

    mdp::QuadConfig cfg;
    cfg.horizon = horizon;
    cfg.delta = o.delta > 0 ? std::max(o.delta, 1e-6) : 1e-2;
    cfg.precision_bits = o.precision_bits;
    cfg.tagged.precision_bits = o.precision_bits;
    cfg.tagged.tol = o.tol;
    cfg.tagged.delta = o.delta;
    cfg.tagged.k_min = o.k_min;
    cfg.tagged.k_max = o.k_max;
    auto q = mdp::value_quadruple(*c, cfg);

    std::printf("cesaro lower value (w_*):  %.6f  (radius %.2e)\n", q.w_lowstar.value,
                q.w_lowstar.radius);
    std::printf("abel lower value:          %.6f  (radius %.2e)\n", q.w_lowbar.value,
                q.w_lowbar.radius);
    std::printf("abel upper value:          %.6f  (radius %.2e)\n", q.w_bar.value,
                q.w_bar.radius);
    std::printf("cesaro upper value (w*):   %.6f  (radius %.2e)\n", q.w_star.value,
                q.w_star.radius);
    std::printf("relation class:            %s", tauberian::relation_name(q.relation));
    if (tauberian::relation_number(q.relation) != 0)
        std::printf(" (%d)", tauberian::relation_number(q.relation));
    std::printf("\n");

    json j{{"w_lowstar", estimate_json(q.w_lowstar)},
           {"w_lowbar", estimate_json(q.w_lowbar)},
           {"w_bar", estimate_json(q.w_bar)},
           {"w_star", estimate_json(q.w_star)},
           {"relation_class", tauberian::relation_number(q.relation)},
           {"relation_name", tauberian::relation_name(q.relation)},
           {"inconsistent", q.inconsistent}};

    if (c->model.finite_states() && c->policy.is_stationary()) {
        auto rep = mdp::finite_stationary_equality_check(c->model, c->policy, c->start, cfg);
        std::printf("stationary equality check: %s (max gap %.2e, tolerance %.2e)\n",
                    rep.all_equal ? "all equal" : "NOT EQUAL", rep.max_gap, rep.tolerance);
        if (rep.all_equal) std::printf("common value:              %.6f\n", rep.common_value);
        j["equality_check"] = json{{"all_equal", rep.all_equal},
                                   {"common_value", rep.common_value},
                                   {"max_gap", rep.max_gap},
                                   {"tolerance", rep.tolerance}};
    }
    if (!o.out.empty()) write_text_or_file(o.out, j.dump(2) + "\n");
    return q.inconsistent ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"summability analysis toolkit: Cesaro/Abel limits of 0/1 block "
                 "sequences and their MDP counterparts"};
    app.require_subcommand(1);

    CommonOpts lim_o, abel_o, ces_o, mdp_o;
    bool grid_mode = false;
    std::string schedule_name = "dyadic-factorial";
    std::string model_name;
    std::size_t horizon = 4096;

    auto* lim = app.add_subcommand("limits", "four-limit report and relation class");
    add_common(lim, lim_o);
    lim->add_flag("--grid-mode", grid_mode,
                  "use naive grid evaluation instead of pair-critical schedules");

    auto* ab = app.add_subcommand("abel-curve", "tabulate f(alpha) along a schedule as CSV");
    add_common(ab, abel_o);
    ab->add_option("--schedule", schedule_name,
                   "ones-pairs | zeros-pairs | dyadic-factorial | factorial-sqrt | grid");

    auto* ce = app.add_subcommand("cesaro-curve", "tabulate boundary averages as CSV");
    add_common(ce, ces_o);

    auto* md = app.add_subcommand("mdp", "value quadruple for a Markov decision model");
    add_common(md, mdp_o);
    md->add_option("--model", model_name, "single-state | chain (with a sequence)");
    md->add_option("--horizon", horizon, "forward-recursion horizon");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lim->parsed()) return cmd_limits(lim_o, grid_mode);
        if (ab->parsed()) return cmd_abel_curve(abel_o, schedule_name);
        if (ce->parsed()) return cmd_cesaro_curve(ces_o);
        if (md->parsed()) return cmd_mdp(mdp_o, model_name, horizon);
    } catch (const specfile::ParseError& e) {
        std::cerr << "spec parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
