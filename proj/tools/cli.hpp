#ifndef BALLAST_TOOLS_CLI_HPP
#define BALLAST_TOOLS_CLI_HPP

// The `ballast` command line. Every command writes to the streams it is given
// so the whole front end can be driven in-process.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballast/ballast.hpp"

namespace ballast::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kVerdictFailed = 1, kInputError = 2, kPreconditionFailed = 3 };

// ---------------------------------------------------------------------------
// File formats

inline Json number(const Rational& r) { return Json{{"exact", to_string(r)}, {"decimal", to_decimal(r)}}; }

inline Json numbers(std::span<const Rational> values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(number(v));
    return out;
}

struct InstanceFile {
    InstanceKind kind = InstanceKind::Unload;
    std::vector<Rational> values;
    Json meta = Json::object();
};

inline Rational parse_number(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_object() && j.contains("exact")) return parse_number(j["exact"]);
    throw InputError("numbers must be strings like \"3/4\" or integers, got " + j.dump());
}

inline InstanceFile parse_instance(const Json& j) {
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    InstanceFile f;
    const std::string kind = j.value("kind", "");
    const char* key = nullptr;
    if (kind == "unload") {
        f.kind = InstanceKind::Unload;
        key = "points";
    } else if (kind == "load") {
        f.kind = InstanceKind::Load;
        key = "lengths";
    } else {
        throw InputError("instance kind must be \"unload\" or \"load\"");
    }
    if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("instance needs a \"") + key + "\" array");
    for (const auto& v : j[key]) f.values.push_back(parse_number(v));
    if (j.contains("meta")) f.meta = j["meta"];
    return f;
}

inline Json instance_json(const InstanceFile& f) {
    Json values = Json::array();
    for (const auto& v : f.values) values.push_back(to_string(v));
    Json j;
    j["kind"] = f.kind == InstanceKind::Unload ? "unload" : "load";
    j[f.kind == InstanceKind::Unload ? "points" : "lengths"] = std::move(values);
    j["meta"] = f.meta;
    return j;
}

inline std::vector<std::size_t> parse_order(const Json& j) {
    if (!j.is_object() || !j.contains("order") || !j["order"].is_array()) throw InputError("order file needs an \"order\" array");
    std::vector<std::size_t> order;
    for (const auto& v : j["order"]) {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError("order entries must be non-negative integers");
        order.push_back(v.get<std::size_t>());
    }
    return order;
}

inline Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// "a,b" -> {a, b}
inline std::array<Rational, 2> parse_window(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("window must be lo,hi");
    std::array<Rational, 2> w{parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
    if (w[0] > w[1]) throw InputError("window has lo > hi");
    return w;
}

template <class T> std::vector<T> split_list(const std::string& text, char sep, T (*convert)(const std::string&)) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(convert(item));
    return out;
}

inline long long to_integer(const std::string& s) {
    const Rational r = parse_rational(s);
    if (boost::multiprecision::denominator(r) != 1) throw InputError("expected an integer, got " + s);
    return boost::multiprecision::numerator(r).convert_to<long long>();
}

// ---------------------------------------------------------------------------
// Commands

inline Json unload_plan(const InstanceFile& f, const std::string& method, std::size_t max_exact_n) {
    if (f.kind != InstanceKind::Unload) throw InputError("unload-plan needs an instance of kind \"unload\"");
    const DiscreteInstance x(f.values);
    const OrderReport r = method == "exact" ? optimal_span(x, max_exact_n) : h_permutation(x);
    const Rational h_bound = h_lower_bound(x);

    Json j;
    j["method"] = method;
    j["n"] = x.size();
    j["order"] = r.order;
    j["trajectory"] = numbers(r.trajectory);
    j["lo"] = number(r.lo);
    j["hi"] = number(r.hi);
    j["span"] = number(r.span);
    j["naive_bound"] = number(naive_lower_bound(x));
    j["h_bound"] = number(h_bound);
    j["ratio"] = h_bound == 0 ? Json(nullptr) : number(r.span / h_bound);
    return j;
}

inline Json load_plan(const InstanceFile& f, const std::string& mode, std::size_t mu) {
    if (f.kind != InstanceKind::Load) throw InputError("load-plan needs an instance of kind \"load\"");
    if (f.values.empty()) throw InputError("instance has no lengths");

    Placement p;
    Rational optimum;
    if (mode == "stacked") {
        for (const auto& l : f.values)
            if (l != f.values.front()) throw PreconditionError("stacked loading needs identical lengths");
        const StackPlanParams params{f.values.size(), mu, f.values.front()};
        p = plan_stacked(params);
        optimum = stacked_optimum(params);
    } else if (mode == "connected") {
        p = plan_connected(f.values);
        optimum = connected_optimum(f.values);
    } else {
        const ExpSystem s = ExpSystem::from_lengths(f.values);
        p = plan_exponential(s);
        optimum = exponential_lower_bound(s);
    }

    Json items = Json::array();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto& iv = p.steps[k];
        items.push_back(Json{{"step", k + 1},
                             {"item", p.item_ids[k]},
                             {"midpoint", number(iv.midpoint)},
                             {"length", number(iv.length)},
                             {"layer", iv.layer},
                             {"left", number(iv.left())},
                             {"right", number(iv.right())}});
    }
    const Rational dev = deviation(p);
    Json j;
    j["mode"] = mode;
    if (mode == "stacked") j["mu"] = mu;
    j["n"] = p.size();
    j["placements"] = std::move(items);
    j["centers"] = numbers(centers(p));
    j["deviation"] = number(dev);
    j["optimum"] = number(optimum);
    j["optimal"] = dev == optimum;
    j["valid"] = !validate_placement(p).has_value();
    return j;
}

struct GenOptions {
    std::string family;
    std::size_t n = 10;
    long long range = 10;
    std::string ell = "1";
    std::string x = "2";
    std::optional<std::size_t> m;
    std::string y;
    std::optional<long long> big_m;
    bool perturb = false;
    std::string witness;
    std::uint64_t seed = 0;
};

inline InstanceFile generate(const GenOptions& o) {
    InstanceFile f;
    f.meta["family"] = o.family;
    if (o.family != "3partition") {
        const Family family = parse_family(o.family);
        RandomParams params{o.n, o.range, parse_rational(o.ell), parse_rational(o.x)};
        GeneratedInstance g = gen_random(family, params, o.seed);
        f.kind = g.kind;
        f.values = std::move(g.values);
        if (family == Family::Uniform || family == Family::TwoSided) {
            f.meta["seed"] = o.seed;
            f.meta["n"] = o.n;
            f.meta["range"] = o.range;
        } else if (family == Family::ExponentialLengths) {
            f.meta["ell"] = to_string(params.ell);
            f.meta["x"] = to_string(params.ratio);
        }
        return f;
    }

    ThreePartitionSpec spec{split_list<long long>(o.y, ',', to_integer), o.big_m};
    if (o.m && *o.m * 3 != spec.y.size()) throw InputError("--m " + std::to_string(*o.m) + " needs exactly " + std::to_string(*o.m * 3) + " values in --y");
    const ThreePartitionInstance inst = gen_3partition_instance(spec);
    f.kind = InstanceKind::Unload;
    f.meta["m"] = inst.triples;
    f.meta["B"] = inst.bound;
    f.meta["M"] = inst.origin_count;

    std::optional<std::vector<std::size_t>> witness;
    if (!o.witness.empty()) {
        std::vector<std::array<std::size_t, 3>> triples;
        for (const auto& group : split_list<std::string>(o.witness, ';', [](const std::string& s) { return s; })) {
            const auto idx = split_list<long long>(group, ',', to_integer);
            if (idx.size() != 3) throw InputError("each witness triple needs three indices into Y");
            triples.push_back({static_cast<std::size_t>(idx[0]), static_cast<std::size_t>(idx[1]), static_cast<std::size_t>(idx[2])});
        }
        witness = witness_order(inst, triples);
    }

    Rational lo = inst.lo, hi = inst.hi;
    if (o.perturb) {
        const Perturbed pert = perturb_distinct(inst.instance);
        f.values = pert.instance.points();
        const auto fixed = pert.fixed_window(lo, hi);
        const auto widened = pert.widened_window(lo, hi);
        lo = fixed[0];
        hi = fixed[1];
        f.meta["epsilon"] = to_string(pert.epsilon);
        f.meta["scale"] = to_string(1 / pert.gap);
        f.meta["widened_window"] = Json::array({to_string(widened[0]), to_string(widened[1])});
    } else {
        f.values = inst.instance.points();
    }
    f.meta["window"] = Json::array({to_string(lo), to_string(hi)});
    if (witness) f.meta["witness_order"] = *witness;
    return f;
}


/// CSV trajectory on `out`, verdict line on `err`.
inline int evaluate(const InstanceFile& f, std::span<const std::size_t> order, const std::optional<std::array<Rational, 2>>& window,
                    std::ostream& out, std::ostream& err) {
    if (f.kind != InstanceKind::Unload) throw InputError("evaluate needs an instance of kind \"unload\"");
    const DiscreteInstance x(f.values);
    const Rational lo = window ? (*window)[0] : Rational(0), hi = window ? (*window)[1] : Rational(0);
    const WindowVerdict v = verify_window(x, order, lo, hi);

    out << "step,center_exact,center_decimal\n";
    for (std::size_t k = 0; k < v.report.trajectory.size(); ++k)
        out << k + 1 << ',' << to_string(v.report.trajectory[k]) << ',' << to_decimal(v.report.trajectory[k]) << '\n';

    if (!window) {
        err << "span " << to_string(v.report.span) << '\n';
        return kOk;
    }
    if (v.ok) {
        err << "ok: all centers in [" << to_string(lo) << ", " << to_string(hi) << "]\n";
        return kOk;
    }
    const std::size_t step = *v.first_violation;
    err << "violated: step " << step << " center " << to_string(v.report.trajectory[step - 1]) << " outside [" << to_string(lo)
        << ", " << to_string(hi) << "]\n";
    return kVerdictFailed;
}

// ---------------------------------------------------------------------------
// Entry point

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("BALLAST_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError(std::string("BALLAST_SEED is not a number: ") + env);
        }
    }
    return 0;
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw InputError("cannot write " + path);
    file << text;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Balanced loading and unloading of intervals with exact arithmetic", "ballast"};
    app.require_subcommand(1);

    std::string instance_path, order_path, output_path, window_text;
    std::string method = "h", mode;
    std::size_t max_exact_n = kDefaultExactLimit, mu = 1;
    GenOptions gen;

    auto* unload = app.add_subcommand("unload-plan", "sequence a point instance (H heuristic or exact)");
    unload->add_option("instance", instance_path, "instance JSON")->required();
    unload->add_option("--method", method, "h or exact")->check(CLI::IsMember({"h", "exact"}));
    unload->add_option("--max-exact-n", max_exact_n, "largest n the exact solver accepts");

    auto* load = app.add_subcommand("load-plan", "place intervals around the origin");
    load->add_option("instance", instance_path, "lengths JSON")->required();
    load->add_option("--mode", mode, "stacked, connected or exponential")
        ->required()
        ->check(CLI::IsMember({"stacked", "connected", "exponential"}));
    load->add_option("--mu", mu, "maximum stack height (stacked mode)")->check(CLI::PositiveNumber);

    auto* gen_cmd = app.add_subcommand("gen", "write a generated instance");
    gen_cmd->add_option("--family", gen.family, "uniform, two-sided, exponential-lengths, paper-example or 3partition")->required();
    gen_cmd->add_option("--n", gen.n, "number of points or lengths");
    gen_cmd->add_option("--range", gen.range, "magnitude bound for random points");
    gen_cmd->add_option("--ell", gen.ell, "smallest length");
    gen_cmd->add_option("--x", gen.x, "growth factor");
    gen_cmd->add_option("--m", gen.m, "number of triples");
    gen_cmd->add_option("--y", gen.y, "comma-separated 3-Partition values");
    gen_cmd->add_option("--big-m", gen.big_m, "number of points at the origin (default 4mB+1)");
    gen_cmd->add_flag("--perturb", gen.perturb, "make points distinct and rescale to gap >= 1");
    gen_cmd->add_option("--witness", gen.witness, "triples as indices into Y, e.g. 0,1,2;3,4,5");
    std::optional<std::uint64_t> seed;
    gen_cmd->add_option("--seed", seed, "RNG seed (default: $BALLAST_SEED or 0)");
    gen_cmd->add_option("-o,--output", output_path, "output file (default stdout)");

    auto* eval = app.add_subcommand("evaluate", "trajectory CSV of a loading order, with an optional window check");
    eval->add_option("instance", instance_path, "instance JSON")->required();
    eval->add_option("order", order_path, "order JSON")->required();
    eval->add_option("--window", window_text, "lo,hi");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*unload) {
            out << unload_plan(parse_instance(read_json(instance_path)), method, max_exact_n).dump(2) << '\n';
        } else if (*load) {
            out << load_plan(parse_instance(read_json(instance_path)), mode, mu).dump(2) << '\n';
        } else if (*gen_cmd) {
            gen.seed = seed ? *seed : default_seed();
            write_output(output_path, instance_json(generate(gen)).dump(2) + "\n", out);
        } else if (*eval) {
            std::optional<std::array<Rational, 2>> window;
            if (!window_text.empty()) window = parse_window(window_text);
            const InstanceFile f = parse_instance(read_json(instance_path));
            const std::vector<std::size_t> order = parse_order(read_json(order_path));
            return evaluate(f, order, window, out, err);
        }
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionFailed;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

} // namespace ballast::cli

#endif // BALLAST_TOOLS_CLI_HPP
