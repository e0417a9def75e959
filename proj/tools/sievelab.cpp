// sievelab: command-line front end for the sieve experiments.
//
//   sievelab pattern      --preset figure1 --depth 8 --from 1 --to 38
//   sievelab total-sieve  --alpha 2 --kappa 1 --seed 7 --z 0 --n-max 2000
//   sievelab tuple        0,2,6 --m 17 --g 2 --survivors 2
//   sievelab reproduce    figure1
//   sievelab primes       --limit 168
//
// Exit status: 0 success, 1 validation error, 2 reproduce mismatch, 3 cap exceeded.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sievelab/experiments.hpp"

namespace {

using sievelab::RunConfig;

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad list item '" + item + "'");
        pos = comma + 1;
    }
    return out;
}

struct Flags {
    std::string config_path, output_path, manifest_path;
    std::optional<std::string> format;
    std::optional<std::string> primes, residues, preset, from, to, z, m, bound;
    std::optional<std::size_t> alpha, kappa, length, eratosthenes, depth, n_max, d, g, survivors;
    std::optional<std::uint64_t> seed, limit, period_cap, scan_cap;
    std::string positional;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config_path, "JSON config file; flags override its values");
    app->add_option("--format", f.format, "csv or json");
    app->add_option("--output,-o", f.output_path, "write data rows here instead of stdout");
    app->add_option("--manifest", f.manifest_path, "write a JSON run manifest here");
}

void add_prefix(CLI::App* app, Flags& f) {
    app->add_option("--primes", f.primes, "comma-separated prime sieving sequence");
    app->add_option("--residues", f.residues, "comma-separated residue sieving sequence");
    app->add_option("--alpha", f.alpha, "regular sequence: index of the first prime");
    app->add_option("--kappa", f.kappa, "regular sequence: classes per prime");
    app->add_option("--seed", f.seed, "draw residues for alpha/kappa from this seed");
    app->add_option("--length", f.length, "number of seeded classes");
    app->add_option("--eratosthenes", f.eratosthenes, "Eratosthenes prefix of this depth");
    app->add_option("--preset", f.preset, "named prefix (figure1)");
    app->add_option("--period-cap", f.period_cap, "maximum positions materialized");
    app->add_option("--scan-cap", f.scan_cap, "maximum positions scanned per expansion step");
}

RunConfig assemble(const std::string& command, const Flags& f) {
    RunConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw sievelab::SieveError(sievelab::ErrorKind::InvalidConfig, "cannot read " + f.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw sievelab::SieveError(sievelab::ErrorKind::InvalidConfig, e.what());
        }
        c = sievelab::config_from_json(j);
    }
    c.command = command;
    nlohmann::json over = nlohmann::json::object();
    if (f.format) over["format"] = *f.format;
    if (f.primes) over["primes"] = parse_list(*f.primes);
    if (f.residues) over["residues"] = parse_list(*f.residues);
    if (f.alpha) over["alpha"] = *f.alpha;
    if (f.kappa) over["kappa"] = *f.kappa;
    if (f.seed) over["seed"] = *f.seed;
    if (f.length) over["length"] = *f.length;
    if (f.eratosthenes) over["eratosthenes"] = *f.eratosthenes;
    if (f.preset) over["preset"] = *f.preset;
    if (f.depth) over["depth"] = *f.depth;
    if (f.from) over["from"] = *f.from;
    if (f.to) over["to"] = *f.to;
    if (f.z) over["z"] = *f.z;
    if (f.n_max) over["n_max"] = *f.n_max;
    if (f.bound) over["bound"] = *f.bound;
    if (f.d) over["d"] = *f.d;
    if (f.m) over["m"] = *f.m;
    if (f.g) over["g"] = *f.g;
    if (f.survivors) over["survivors"] = *f.survivors;
    if (f.limit) over["limit"] = *f.limit;
    if (f.period_cap) over["period_cap"] = *f.period_cap;
    if (f.scan_cap) over["scan_cap"] = *f.scan_cap;
    if (!f.positional.empty()) over[command == "tuple" ? "tuple" : "scenario"] = f.positional;
    return sievelab::config_from_json(over, c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sievelab: residue-class sieves, expanding total sieves and k-tuple patterns"};
    app.require_subcommand(1);
    Flags f;

    auto* pattern = app.add_subcommand("pattern", "pattern values over a window, period and density");
    add_common(pattern, f);
    add_prefix(pattern, f);
    pattern->add_option("--depth", f.depth, "active classes (default: whole prefix)");
    pattern->add_option("--from", f.from, "first position (default 1)");
    pattern->add_option("--to", f.to, "last position (default: one period)");

    auto* total = app.add_subcommand("total-sieve", "expanding total sieve growth series");
    add_common(total, f);
    add_prefix(total, f);
    total->add_option("--z", f.z, "center position (default 0)");
    total->add_option("--n-max", f.n_max, "last depth (default: prefix length)");
    total->add_option("--bound", f.bound, "crossing bound: gamma or beta_star");

    auto* tuple = app.add_subcommand("tuple", "tuple anchor, reduced classes and survivors");
    add_common(tuple, f);
    tuple->add_option("tuple", f.positional, "offsets, e.g. 0,2,6")->required();
    tuple->add_option("--d", f.d, "anchor d (default: smallest with p_d > diameter)");
    tuple->add_option("--m", f.m, "anchor m (default: smallest matching position)");
    tuple->add_option("--g", f.g, "primes p_d .. p_{d+g-1} to reduce (default 1)");
    tuple->add_option("--survivors", f.survivors, "report survivors for this n");

    auto* reproduce = app.add_subcommand("reproduce", "re-run a worked example and check its values");
    add_common(reproduce, f);
    reproduce->add_option("scenario", f.positional, "figure1 or guiding-example")->required();

    auto* primes = app.add_subcommand("primes", "primes up to a limit from the independent oracle");
    add_common(primes, f);
    primes->add_option("--limit", f.limit, "upper limit (default 100)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(sievelab::ExitStatus::validation);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const std::string started = sievelab::utc_timestamp();
    RunConfig config;
    try {
        config = assemble(command, f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(sievelab::ExitStatus::validation);
    }

    std::ofstream file;
    if (!f.output_path.empty()) {
        file.open(f.output_path);
        if (!file) {
            std::cerr << "error: cannot write " << f.output_path << '\n';
            return static_cast<int>(sievelab::ExitStatus::validation);
        }
    }
    std::ostream& out = f.output_path.empty() ? std::cout : file;
    const auto result = sievelab::run_command(config, out, std::cerr);
    out.flush();

    if (!f.manifest_path.empty()) {
        const auto manifest = sievelab::make_manifest(config, started, sievelab::utc_timestamp(), result);
        std::ofstream mf(f.manifest_path);
        mf << sievelab::manifest_json(manifest).dump(2) << '\n';
    }
    return static_cast<int>(result.status);
}
