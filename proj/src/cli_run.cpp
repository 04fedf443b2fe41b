#include "phibound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phibound/analysis.hpp"
#include "phibound/bounds.hpp"

namespace phibound::cli {
namespace {

enum class Format { csv, markdown, jsonlines };

// 17 significant digits: lossless for binary64, so CSV/JSON round-trip
// exactly. Markdown mirrors the 3-significant-digit table presentation.
std::string num_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num_short(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Field {
    std::string name;
    std::string full;     // csv / jsonlines payload
    std::string display;  // markdown payload
    bool quoted;          // jsonlines: string vs bare token
};

Field num_field(std::string name, double v) {
    return {std::move(name), num_full(v), num_short(v), false};
}

Field int_field(std::string name, long long v) {
    return {std::move(name), std::to_string(v), std::to_string(v), false};
}

Field bool_field(std::string name, bool v) {
    const char* s = v ? "true" : "false";
    return {std::move(name), s, s, false};
}

Field text_field(std::string name, std::string v) {
    return {std::move(name), v, v, true};
}

void emit_header(std::ostream& out, Format fmt,
                 const std::vector<Field>& fields) {
    if (fmt == Format::csv) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i ? "," : "") << fields[i].name;
        }
        out << "\n";
    } else if (fmt == Format::markdown) {
        for (const auto& f : fields) out << "| " << f.name << " ";
        out << "|\n";
        for (std::size_t i = 0; i < fields.size(); ++i) out << "| --- ";
        out << "|\n";
    }
}

void emit_row(std::ostream& out, Format fmt, const std::vector<Field>& fields) {
    if (fmt == Format::csv) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i ? "," : "") << fields[i].full;
        }
        out << "\n";
    } else if (fmt == Format::markdown) {
        for (const auto& f : fields) out << "| " << f.display << " ";
        out << "|\n";
    } else {
        out << "{";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& f = fields[i];
            out << (i ? "," : "") << "\"" << f.name << "\":";
            if (f.quoted) {
                out << "\"" << f.full << "\"";
            } else {
                out << f.full;
            }
        }
        out << "}\n";
    }
}

std::vector<Field> error_row_fields(BoundKind kind, const ErrorRow& row) {
    return {
        num_field("x", row.x),
        num_field("bound", row.bound_value),
        text_field("kind", std::string(bound_info(kind).name)),
        num_field("reference", row.reference_value),
        num_field("error", row.error),
        bool_field("out_of_validity", row.out_of_validity),
    };
}

std::vector<Field> extremum_fields(std::string kind_name,
                                   const ExtremumReport& rep) {
    return {
        text_field("kind", std::move(kind_name)),
        num_field("location", rep.location),
        num_field("value", rep.value),
        num_field("bracket_lo", rep.bracket.first),
        num_field("bracket_hi", rep.bracket.second),
        num_field("x_tolerance", rep.x_tolerance),
        int_field("iterations", rep.iterations),
        bool_field("converged", rep.converged),
    };
}

std::vector<std::string> bound_name_list() {
    std::vector<std::string> names;
    for (BoundKind kind : all_bound_kinds) {
        names.emplace_back(bound_info(kind).name);
    }
    return names;
}

struct Options {
    std::string bound;
    std::vector<std::string> table_bounds;
    double x = 0.0;
    double from = 0.0;
    double to = 40.0;
    bool to_given = false;
    std::size_t points = 100001;
    double x_tolerance = 1e-8;
    double slack = 1e-15;
    bool paper_abscissae = false;
    std::string format = "csv";
};

Format parse_format(const std::string& name) {
    if (name == "markdown") return Format::markdown;
    if (name == "jsonlines") return Format::jsonlines;
    return Format::csv;
}

int run_eval(const Options& opt, std::ostream& out) {
    const BoundKind kind = *bound_from_name(opt.bound);
    const ErrorRow row = error_at(kind, opt.x);
    const Format fmt = parse_format(opt.format);
    const auto fields = error_row_fields(kind, row);
    emit_header(out, fmt, fields);
    emit_row(out, fmt, fields);
    return 0;
}

int run_table(const Options& opt, bool custom_grid, std::ostream& out) {
    std::vector<double> xs;
    if (custom_grid) {
        const Grid grid = Grid::linear(opt.from, opt.to, opt.points);
        xs = grid.points();
    } else {
        const auto std_xs = comparison_abscissae();
        xs.assign(std_xs.begin(), std_xs.end());
    }

    std::vector<BoundKind> columns;
    if (opt.table_bounds.empty()) {
        const auto order = comparison_column_order();
        columns.assign(order.begin(), order.end());
    } else {
        for (const auto& name : opt.table_bounds) {
            columns.push_back(*bound_from_name(name));
        }
    }

    const Format fmt = parse_format(opt.format);
    bool header_done = false;
    for (double x : xs) {
        for (BoundKind kind : columns) {
            const auto fields = error_row_fields(kind, error_at(kind, x));
            if (!header_done) {
                emit_header(out, fmt, fields);
                header_done = true;
            }
            emit_row(out, fmt, fields);
        }
    }
    return 0;
}

int run_maxerr(const Options& opt, std::ostream& out) {
    const BoundKind kind = *bound_from_name(opt.bound);
    double hi = opt.to;
    if (!opt.to_given) {
        hi = std::min(40.0, bound_info(kind).validity_max);
    }
    const ExtremumReport rep =
        max_abs_error(kind, opt.from, hi, opt.x_tolerance);
    const Format fmt = parse_format(opt.format);
    const auto fields = extremum_fields(opt.bound, rep);
    emit_header(out, fmt, fields);
    emit_row(out, fmt, fields);
    return 0;
}

int run_verify(const Options& opt, std::ostream& out) {
    const BoundKind kind = *bound_from_name(opt.bound);
    const Grid grid = Grid::linear(opt.from, opt.to, opt.points);
    const VerificationReport rep = verify_upper_bound(kind, grid, opt.slack);
    const Format fmt = parse_format(opt.format);
    const std::vector<Field> fields = {
        text_field("kind", opt.bound),
        int_field("points", static_cast<long long>(rep.grid_points)),
        num_field("from", rep.grid_from),
        num_field("to", rep.grid_to),
        bool_field("passed", rep.passed),
        num_field("worst_violation", rep.worst_violation),
        num_field("worst_location", rep.worst_location),
        num_field("slack", rep.slack),
    };
    emit_header(out, fmt, fields);
    emit_row(out, fmt, fields);
    return rep.passed ? 0 : 1;
}

int run_crossover(const Options& opt, std::ostream& out) {
    const CrossoverCheck check = polya_crossover();
    const Format fmt = parse_format(opt.format);
    const std::vector<Field> fields = {
        num_field("exact", check.exact),
        num_field("published", check.published),
        bool_field("sign_verified", check.sign_verified),
        num_field("max_diff_below", check.max_diff_below),
        num_field("min_diff_above", check.min_diff_above),
        num_field("flip_lower", check.flip_lower),
        num_field("flip_upper", check.flip_upper),
    };
    emit_header(out, fmt, fields);
    emit_row(out, fmt, fields);
    return 0;
}

int run_ratio(const Options& opt, std::ostream& out) {
    const auto ei = max_abs_error(BoundKind::eidous, 0.0, 40.0, 1e-8);
    const auto star = max_abs_error(BoundKind::eidous_star, 0.0, 40.0, 1e-8);
    const double ratio = std::abs(ei.value) / std::abs(star.value);
    const Format fmt = parse_format(opt.format);
    const std::vector<Field> fields = {
        num_field("ratio", ratio),
        num_field("max_abs_eidous", std::abs(ei.value)),
        num_field("max_abs_eidous_star", std::abs(star.value)),
    };
    emit_header(out, fmt, fields);
    emit_row(out, fmt, fields);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Upper bounds for the standard normal CDF: evaluation, "
                 "error tables, extremum search, and verification against a "
                 "high-accuracy reference."};
    app.name("phibound");
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> names = bound_name_list();
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"csv", "markdown", "jsonlines"}))
            ->capture_default_str();
    };
    const auto add_bound = [&](CLI::App* cmd) {
        cmd->add_option("--bound", opt.bound, "Bound name")
            ->required()
            ->check(CLI::IsMember(names));
    };

    CLI::App* eval = app.add_subcommand("eval", "Evaluate one bound at one x");
    add_bound(eval);
    eval->add_option("--x", opt.x, "Abscissa")->required();
    add_format(eval);

    CLI::App* table = app.add_subcommand(
        "table", "Regenerate the error-comparison table");
    auto* opt_paper = table->add_flag("--paper-abscissae", opt.paper_abscissae,
                                      "Use the standard 31 abscissae (default)");
    table->add_option("--bound", opt.table_bounds,
                      "Restrict to these columns (repeatable)")
        ->check(CLI::IsMember(names));
    auto* opt_from = table->add_option("--from", opt.from, "Grid start");
    auto* opt_to = table->add_option("--to", opt.to, "Grid stop");
    auto* opt_points = table->add_option("--points", opt.points, "Grid size");
    opt_paper->excludes(opt_from)->excludes(opt_to)->excludes(opt_points);
    add_format(table);

    CLI::App* maxerr = app.add_subcommand(
        "maxerr", "Locate the maximum absolute error of a bound");
    add_bound(maxerr);
    maxerr->add_option("--from", opt.from, "Interval start")
        ->capture_default_str();
    maxerr->add_option("--to", opt.to, "Interval stop (default: validity cap)");
    maxerr->add_option("--tol", opt.x_tolerance, "Location tolerance")
        ->capture_default_str();
    add_format(maxerr);

    CLI::App* verify = app.add_subcommand(
        "verify", "Check bound >= reference over a uniform grid");
    add_bound(verify);
    verify->add_option("--points", opt.points, "Grid size")->required();
    verify->add_option("--from", opt.from, "Grid start")->capture_default_str();
    verify->add_option("--to", opt.to, "Grid stop")->capture_default_str();
    verify->add_option("--slack", opt.slack, "Violation slack")
        ->capture_default_str();
    add_format(verify);

    CLI::App* crossover = app.add_subcommand(
        "crossover", "Eidous/polya crossover with sign verification");
    add_format(crossover);

    CLI::App* ratio = app.add_subcommand(
        "ratio", "Max-error ratio of eidous vs eidous_star");
    add_format(ratio);

    // CLI11 wants argv-style input including the program name.
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("phibound");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    try {
        if (eval->parsed()) return run_eval(opt, out);
        if (table->parsed()) {
            const bool custom_grid = opt_points->count() > 0 ||
                                     opt_from->count() > 0 ||
                                     opt_to->count() > 0;
            return run_table(opt, custom_grid, out);
        }
        if (maxerr->parsed()) {
            Options o = opt;
            o.to_given = maxerr->get_option("--to")->count() > 0;
            return run_maxerr(o, out);
        }
        if (verify->parsed()) return run_verify(opt, out);
        if (crossover->parsed()) return run_crossover(opt, out);
        if (ratio->parsed()) return run_ratio(opt, out);
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    }
    return 2;  // unreachable with require_subcommand(1)
}

}  // namespace phibound::cli
