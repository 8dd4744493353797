#pragma once

// Command-line front end.  run() is the whole program minus process setup,
// so tests can drive it with in-memory streams.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "algrel/combinatorics.hpp"
#include "algrel/document.hpp"
#include "algrel/errors.hpp"
#include "algrel/mvt.hpp"
#include "algrel/oracle.hpp"
#include "algrel/parallel.hpp"
#include "algrel/reliability.hpp"
#include "algrel/report.hpp"
#include "algrel/systems.hpp"

namespace algrel::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kResource = 2, kCrossCheck = 3 };

struct Settings {
    io::Format format = io::Format::table;
    int precision = 6;
    std::uint64_t budget = kDefaultLatticeBudget;
    std::size_t threads = default_thread_count();
};

struct Request {
    std::string file;
    long level = -1;
    bool multigraded = false;
    bool compat = false;
    bool collapsed = false;
    bool no_timing = false;
    std::string kind = "lower";
    std::string law;
};

namespace detail {

using io::OrderedJson;

inline OrderedJson exponents_json(std::span<const Exponent> e) {
    OrderedJson out = OrderedJson::array();
    for (Exponent x : e) {
        out.push_back(x);
    }
    return out;
}

inline OrderedJson exponents_json(const Monomial& m) { return exponents_json(m.exponents()); }
inline OrderedJson exponents_json(const StateVector& s) { return exponents_json(std::span<const Exponent>(s.states)); }

inline std::vector<Level> pick_levels(long requested, Level lo, Level hi) {
    if (requested >= 0) {
        if (requested < static_cast<long>(lo) || requested > static_cast<long>(hi)) {
            throw ValidationError("--level must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return {static_cast<Level>(requested)};
    }
    std::vector<Level> out;
    for (Level j = lo; j <= hi; ++j) {
        out.push_back(j);
    }
    return out;
}

template <class Fn>
auto per_level(const std::vector<Level>& levels, const Settings& s, Fn&& fn) {
    return parallel_map(levels.size(), s.threads, [&](std::size_t i) { return fn(levels[i]); });
}

inline io::Report generators(const io::SystemDocument& doc, const Request& r, const Settings& s) {
    const auto levels = pick_levels(r.level, 1, doc.spec.max_level());
    const auto ideals = per_level(levels, s, [&](Level j) { return build_reliability_ideal(doc.spec, j); });
    io::Report rep{"generators", {}};
    auto& summary = rep.table("summary", {"level", "count"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        summary.add({levels[i], ideals[i].size()});
    }
    auto& gens = rep.table("generators", {"level", "index", "monomial", "exponents", "degree"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        std::size_t idx = 0;
        for (const auto& g : ideals[i].generators()) {
            gens.add({levels[i], ++idx, to_string(g), exponents_json(g), g.degree()});
        }
    }
    return rep;
}

inline io::Report betti(const io::SystemDocument& doc, const Request& r, const Settings& s) {
    const auto levels = pick_levels(r.level, 1, doc.spec.max_level());
    BettiOptions opts;
    opts.use_compatibility = r.compat;
    const auto sums = per_level(levels, s, [&](Level j) {
        return betti_bounds(build_reliability_ideal(doc.spec, j), opts);
    });
    io::Report rep{"betti", {}};
    auto& summary = rep.table("summary", {"level", "exact", "max_dimension"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        summary.add({levels[i], sums[i].exact, sums[i].upper.empty() ? 0 : sums[i].upper.size() - 1});
    }
    auto& graded = rep.table("graded", {"level", "dimension", "degree", "lower", "upper"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto up = sums[i].graded_upper();
        const auto lo = sums[i].graded_lower();
        for (std::size_t d = 0; d < up.size(); ++d) {
            for (const auto& [deg, count] : up[d]) {
                const auto it = lo[d].find(deg);
                graded.add({levels[i], d, deg, it == lo[d].end() ? 0 : it->second, count});
            }
        }
    }
    if (r.multigraded) {
        auto& multi = rep.table("multigraded", {"level", "dimension", "multidegree", "exponents", "lower", "upper"});
        for (std::size_t i = 0; i < levels.size(); ++i) {
            for (std::size_t d = 0; d < sums[i].upper.size(); ++d) {
                for (const auto& [mu, count] : sums[i].upper[d]) {
                    multi.add({levels[i], d, to_string(mu), exponents_json(mu), sums[i].lower_at(d, mu), count});
                }
            }
        }
    }
    return rep;
}

inline io::Report hilbert(const io::SystemDocument& doc, const Request& r, const Settings& s) {
    const auto levels = pick_levels(r.level, 1, doc.spec.max_level());
    const auto nums = per_level(levels, s, [&](Level j) { return hilbert_numerator(build_reliability_ideal(doc.spec, j)); });
    io::Report rep{"hilbert", {}};
    auto& summary = rep.table("summary", {"level", "num_terms", "max_dimension"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        summary.add({levels[i], nums[i].num_terms(), nums[i].max_dimension()});
    }
    if (r.collapsed) {
        auto& coef = rep.table("coefficients", {"level", "monomial", "exponents", "coefficient"});
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto map = nums[i].coefficients();
            std::vector<std::pair<Monomial, std::int64_t>> terms(map.begin(), map.end());
            std::stable_sort(terms.begin(), terms.end(),
                             [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
            for (const auto& [mu, c] : terms) {
                coef.add({levels[i], to_string(mu), exponents_json(mu), c});
            }
        }
        return rep;
    }
    auto& terms = rep.table("terms", {"level", "dimension", "sign", "monomial", "exponents"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t d = 0; d < nums[i].by_dimension.size(); ++d) {
            for (const auto& mu : nums[i].by_dimension[d]) {
                terms.add({levels[i], d, d % 2 == 0 ? "+" : "-", to_string(mu), exponents_json(mu)});
            }
        }
    }
    return rep;
}

inline io::Report reliability(const io::SystemDocument& doc, const Request&, const Settings& s) {
    EvaluationOptions opts;
    opts.threads = s.threads;
    const auto rows = level_reliabilities(doc.spec, doc.require_model(), opts);
    io::Report rep{"reliability", {}};
    auto& t = rep.table("levels", {"level", "R", "r"});
    for (const auto& row : rows) {
        t.add({row.level, row.at_least, row.exactly});
    }
    return rep;
}

inline io::Report bounds(const io::SystemDocument& doc, const Request& r, const Settings& s) {
    const auto& model = doc.require_model();
    check_model_fits(doc.spec, model);
    const auto levels = pick_levels(r.level, 1, doc.spec.max_level());
    struct Result {
        BoundSequence ladder;
        ClassicBounds classic;
    };
    const auto results = per_level(levels, s, [&](Level j) {
        return Result{evaluate(build_reliability_ideal(doc.spec, j), model),
                      classic_lower_bounds(doc.spec, model, j, s.budget)};
    });
    io::Report rep{"bounds", {}};
    auto& summary = rep.table("summary", {"level", "exact", "path_bound", "cut_bound"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        summary.add({levels[i], results[i].ladder.exact, results[i].classic.path_bound,
                     results[i].classic.cut_bound});
    }
    auto& ladder = rep.table("ladder", {"level", "t", "bound", "value"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& p = results[i].ladder.partial_sums;
        for (std::size_t t = 1; t <= p.size(); ++t) {
            ladder.add({levels[i], t, BoundSequence::label(t), p[t - 1]});
        }
    }
    return rep;
}

inline io::Report boundary(const io::SystemDocument& doc, const Request& r, const Settings& s) {
    const bool lower = r.kind == "lower";
    const Level top = doc.spec.max_level();
    const auto levels = lower ? pick_levels(r.level, 1, top) : pick_levels(r.level, 0, top - 1);
    const auto points = per_level(levels, s, [&](Level j) {
        return lower ? lower_boundary_points(doc.spec, j) : upper_boundary_points(doc.spec, j, s.budget);
    });
    io::Report rep{"boundary", {}};
    auto& summary = rep.table("summary", {"level", "kind", "count"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        summary.add({levels[i], r.kind, points[i].size()});
    }
    auto& t = rep.table("points", {"level", "index", "state"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        std::size_t idx = 0;
        for (const auto& p : points[i]) {
            t.add({levels[i], ++idx, exponents_json(p)});
        }
    }
    return rep;
}

inline io::Report cuts(const io::SystemDocument& doc, const Request& r, const Settings& s) {
    const auto levels = pick_levels(r.level, 1, doc.spec.max_level());
    const auto all = per_level(levels, s, [&](Level j) { return minimal_cuts(doc.spec, j, s.budget); });
    io::Report rep{"cuts", {}};
    auto& summary = rep.table("summary", {"level", "count"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        summary.add({levels[i], all[i].size()});
    }
    auto& t = rep.table("cuts", {"level", "index", "state"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        std::size_t idx = 0;
        for (const auto& c : all[i]) {
            t.add({levels[i], ++idx, exponents_json(c)});
        }
    }
    return rep;
}

inline io::Report oracle_check(const io::SystemDocument& doc, const Request& r, const Settings& s, bool& failed) {
    const auto levels = pick_levels(r.level, 1, doc.spec.max_level());
    io::Report rep{"oracle", {}};
    auto& t = rep.table("checks", {"level", "quantity", "algebraic", "oracle", "status"});
    failed = false;
    auto record = [&](Level j, const char* what, OrderedJson a, OrderedJson b, bool ok) {
        failed = failed || !ok;
        t.add({j, what, std::move(a), std::move(b), ok ? "pass" : "fail"});
    };
    for (Level j : levels) {
        const auto ideal = build_reliability_ideal(doc.spec, j);
        std::vector<StateVector> gens;
        for (const auto& g : ideal.generators()) {
            gens.emplace_back(g);
        }
        std::sort(gens.begin(), gens.end());
        const auto brute = oracle::brute_force_generators(doc.spec, j, s.budget);
        record(j, "generators", gens.size(), brute.size(), gens == brute);

        const auto upper = upper_boundary_points(doc.spec, j - 1, s.budget);
        const auto brute_upper = oracle::brute_force_upper_boundary(doc.spec, j - 1, s.budget);
        record(j, "upper_boundary", upper.size(), brute_upper.size(), upper == brute_upper);

        if (ideal.size() <= oracle::kMaxInclusionExclusionGenerators) {
            const auto mvt = hilbert_numerator(ideal).coefficients();
            const auto ie = oracle::inclusion_exclusion_numerator(ideal);
            record(j, "numerator_terms", mvt.size(), ie.size(), mvt == ie);
        }
        if (doc.model) {
            const double a = evaluate(ideal, *doc.model).exact;
            const double b = oracle::brute_force_reliability(doc.spec, *doc.model, j, s.budget);
            record(j, "reliability", a, b, std::abs(a - b) <= 1e-12);
        }
    }
    return rep;
}

inline io::Report tank_sweep(const io::TankDocument& tank, const Request& r, const Settings& s) {
    const std::size_t count = static_cast<std::size_t>(tank.level_hi - tank.level_lo + 1);
    struct Row {
        std::uint64_t level;
        BigInt generators;
        double probability;
        double seconds;
    };
    const auto rows = parallel_map(count, s.threads, [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t level = tank.level_lo + i;
        const auto room = static_cast<std::size_t>(level - tank.current_level_loads);
        const std::uint64_t k = tank.incoming_loads;
        Row row{level, sum_threshold_generator_count(room, tank.tanks, k), 0.0, 0.0};
        if (row.generators != 0) {
            row.probability = evaluate(sum_threshold_numerator(room, tank.tanks, k), io::tank_model(tank, room)).exact;
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return row;
    });
    io::Report rep{"tank-sweep", {}};
    std::vector<std::string> columns{"level", "num_generators", "probability"};
    if (!r.no_timing) {
        columns.emplace_back("runtime_seconds");
    }
    auto& t = rep.table("sweep", columns);
    for (const auto& row : rows) {
        std::vector<OrderedJson> cells{row.level, row.generators.convert_to<std::uint64_t>(), row.probability};
        if (!r.no_timing) {
            cells.emplace_back(row.seconds);
        }
        t.add(std::move(cells));
    }
    return rep;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reliability of multi-state coherent systems via monomial ideals", "algrel"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings settings;
    std::string format = "table";
    app.add_option("--format", format, "Output format: json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--precision", settings.precision, "Significant digits for probabilities")
        ->check(CLI::Range(1, 17));
    app.add_option("--budget", settings.budget, "Maximum number of lattice states to enumerate");
    app.add_option("--threads", settings.threads, "Worker threads")->check(CLI::PositiveNumber);

    Request req;
    auto system_command = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("system", req.file, "System document (JSON)")->required();
        return sub;
    };
    auto with_level = [&](CLI::App* sub) {
        sub->add_option("--level", req.level, "Single level j (default: every level)");
        return sub;
    };

    auto* gens_cmd = with_level(system_command("generators", "Minimal generators of the reliability ideals"));
    auto* betti_cmd = with_level(system_command("betti", "Betti number bounds from the Mayer-Vietoris tree"));
    betti_cmd->add_flag("--multigraded", req.multigraded, "Also list multigraded bounds");
    betti_cmd->add_flag("--compat", req.compat, "Refine lower bounds with the compatible-node criterion");
    auto* hilbert_cmd = with_level(system_command("hilbert", "Hilbert series numerators"));
    hilbert_cmd->add_flag("--collapsed", req.collapsed, "Print the cancelled coefficient map instead of the terms");
    auto* rel_cmd = system_command("reliability", "Per-level reliabilities R and r");
    auto* bounds_cmd = with_level(system_command("bounds", "Truncation bounds and classic path/cut bounds"));
    auto* boundary_cmd = with_level(system_command("boundary", "Lower or upper boundary points"));
    boundary_cmd->add_option("--kind", req.kind, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    auto* cuts_cmd = with_level(system_command("cuts", "Minimal cuts"));
    auto* oracle_cmd = with_level(system_command("oracle", "Cross-check against brute-force references"));
    auto* tank_cmd = app.add_subcommand("tank-sweep", "Storage sweep over tank levels");
    tank_cmd->add_option("tank", req.file, "Tank document (JSON)")->required();
    tank_cmd->add_option("--law", req.law, "Survival law \"1-(c*j)^e\" replacing survival_model");
    tank_cmd->add_flag("--no-timing", req.no_timing, "Omit the runtime column");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    try {
        settings.format = io::parse_format(format);
        io::Report report;
        int status = kSuccess;
        if (tank_cmd->parsed()) {
            const auto law = req.law.empty() ? std::nullopt : std::optional<std::string>(req.law);
            report = detail::tank_sweep(io::parse_tank_document(io::read_json_file(req.file), law), req, settings);
        } else {
            const auto doc = io::load_system_document(req.file);
            if (gens_cmd->parsed()) {
                report = detail::generators(doc, req, settings);
            } else if (betti_cmd->parsed()) {
                report = detail::betti(doc, req, settings);
            } else if (hilbert_cmd->parsed()) {
                report = detail::hilbert(doc, req, settings);
            } else if (rel_cmd->parsed()) {
                report = detail::reliability(doc, req, settings);
            } else if (bounds_cmd->parsed()) {
                report = detail::bounds(doc, req, settings);
            } else if (boundary_cmd->parsed()) {
                report = detail::boundary(doc, req, settings);
            } else if (cuts_cmd->parsed()) {
                report = detail::cuts(doc, req, settings);
            } else if (oracle_cmd->parsed()) {
                bool failed = false;
                report = detail::oracle_check(doc, req, settings, failed);
                status = failed ? kCrossCheck : kSuccess;
            }
        }
        io::render(report, settings.format, settings.precision, out);
        return status;
    } catch (const ResourceError& e) {
        err << "resource budget exceeded: " << e.what() << " (requested " << e.requested() << ", budget "
            << e.budget() << ")\n";
        return kResource;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const DimensionError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const nlohmann::json::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kCrossCheck;
    }
}

}  // namespace algrel::cli
