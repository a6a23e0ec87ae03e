#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algebraic.hpp"
#include "flagfile.hpp"
#include "format.hpp"
#include "parse.hpp"

namespace lexlaurent {

namespace detail {

struct CliOptions {
    int n = 0;
    long prec = 8;
    std::string flag_path;
    std::string measure = "log";
    std::string map;
    long ramify = 0;
    bool ramify_set = false;
    std::string expr;
};

inline void add_common_options(CLI::App* sc, CliOptions& o) {
    sc->add_option("--n", o.n, "rank (number of variables); defaults to the flag file's rank");
    sc->add_option("--prec", o.prec, "truncation window")->check(CLI::NonNegativeNumber);
    sc->add_option("--flag", o.flag_path, "flag file (JSON)");
    sc->add_option("expression", o.expr, "input expression")->required();
}

inline std::vector<std::string> split_map(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t semi = s.find(';', start);
        if (semi == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, semi - start));
        start = semi + 1;
    }
}

} // namespace detail

// Deterministic command driver. Exit codes: 0 success, 1 user error,
// 2 insufficient precision.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iterated Laurent series: expansion, residues, and Puiseux roots of lex-valued series"};
    app.require_subcommand(1);
    detail::CliOptions o;

    CLI::App* expand_cmd = app.add_subcommand("expand", "expand a rational expression into a series");
    CLI::App* valuation_cmd = app.add_subcommand("valuation", "leading exponent and coefficient");
    CLI::App* residue_cmd = app.add_subcommand("residue", "residue of a rational form");
    CLI::App* solve_cmd = app.add_subcommand("solve", "Puiseux roots of a polynomial in t");
    CLI::App* changevars_cmd = app.add_subcommand("changevars", "substitute a change of variables");
    CLI::App* membership_cmd = app.add_subcommand("membership", "is the expansion supported in the semigroup?");
    for (CLI::App* sc : {expand_cmd, valuation_cmd, residue_cmd, solve_cmd, changevars_cmd, membership_cmd})
        detail::add_common_options(sc, o);
    residue_cmd->add_option("--measure", o.measure, "log (against the torus volume form) or top (against dx)")
        ->check(CLI::IsMember({"log", "top"}));
    CLI::Option* ramify_opt =
        solve_cmd->add_option("--ramify", o.ramify, "ramification override")->check(CLI::PositiveNumber);
    changevars_cmd->add_option("--map", o.map, "semicolon-separated images f1;...;fn")->required();

    std::vector<const char*> argv;
    argv.push_back("lexlaurent");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    o.ramify_set = ramify_opt->count() > 0;

    try {
        std::optional<FlagOfLattices> flag;
        if (!o.flag_path.empty()) flag = load_flag_file(o.flag_path);
        int n = o.n;
        if (flag) {
            if (n != 0 && n != flag->rank()) throw argument_error("--n disagrees with the flag file's rank");
            n = flag->rank();
        }
        if (n < 1) throw argument_error("rank required: pass --n or --flag");
        const Int prec(o.prec);

        auto expand_scalar = [&](const std::string& text) {
            RationalFunction rf = evaluate_expression(parse_expression(text, n), n).scalar();
            return expand_rational(rf.num(), rf.den(), prec);
        };

        if (app.got_subcommand(expand_cmd)) {
            out << format_series(expand_scalar(o.expr)) << "\n";
        } else if (app.got_subcommand(valuation_cmd)) {
            Valuation v = valuation(expand_scalar(o.expr));
            out << v.exponent.str() << " : " << format_rat(v.coefficient) << "\n";
        } else if (app.got_subcommand(residue_cmd)) {
            RationalFunction rf = evaluate_expression(parse_expression(o.expr, n), n).scalar();
            Measure measure = o.measure == "top" ? Measure::TOP : Measure::LOG;
            out << format_rat(residue(expand_form(rf.num(), rf.den(), measure, prec))) << "\n";
        } else if (app.got_subcommand(solve_cmd)) {
            TPolynomial tp = evaluate_expression(parse_expression(o.expr, n, true), n);
            if (tp.degree() < 1) throw argument_error("solve needs an equation that depends on t");
            const Int margin = prec + Int(tp.degree()) + 2;
            std::vector<TruncatedSeries> coeffs;
            coeffs.reserve(tp.coefficients().size());
            for (const RationalFunction& c : tp.coefficients())
                coeffs.push_back(c.is_zero() ? TruncatedSeries::zero(n)
                                             : expand_rational(c.num(), c.den(), margin));
            SolveResult res = solve_roots(make_poly(std::move(coeffs)), prec,
                                          o.ramify_set ? std::optional<long>(o.ramify) : std::nullopt);
            out << "ramification " << res.ramification << "\n";
            const std::string var = res.ramification > 1 ? "z" : "x";
            for (const PuiseuxRoot& r : res.roots) out << format_series(r.series, var) << "\n";
            for (const UnresolvedSlope& u : res.unresolved)
                out << "unresolved slope " << detail::format_slope(u.slope) << ": " << u.reason << "\n";
        } else if (app.got_subcommand(changevars_cmd)) {
            std::vector<std::string> parts = detail::split_map(o.map);
            if (static_cast<int>(parts.size()) != n)
                throw argument_error("--map needs exactly " + std::to_string(n) + " images");
            std::vector<TruncatedSeries> images;
            images.reserve(parts.size());
            for (const std::string& p : parts) images.push_back(expand_scalar(p));
            ChangeOfVariables cv(std::move(images));
            TruncatedSeries g = expand_scalar(o.expr);
            out << format_series(substitute(g, cv, Precision::window(prec))) << "\n";
        } else if (app.got_subcommand(membership_cmd)) {
            const FlagOfLattices& fl = flag ? *flag : FlagOfLattices(n);
            out << (supported_in_semigroup(expand_scalar(o.expr), fl) ? "yes" : "no") << "\n";
        }
        return 0;
    } catch (const insufficient_precision& e) {
        err << "insufficient precision: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace lexlaurent
