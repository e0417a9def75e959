#include "sievelab/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "sievelab/parallel.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/tuples.hpp"
#include "sievelab/window.hpp"

namespace sievelab {

using nlohmann::json;

namespace {

SieveError config_error(const std::string& what) { return SieveError(ErrorKind::InvalidConfig, what); }

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& dst) {
    if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

template <class T>
void read(const json& j, const char* key, T& dst) {
    if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw config_error("format must be csv or json, got '" + s + "'");
}

BoundKind parse_bound(const std::string& s) {
    if (s == "gamma") return BoundKind::gamma;
    if (s == "beta_star") return BoundKind::beta_star;
    throw config_error("bound must be gamma or beta_star, got '" + s + "'");
}

// JSON accepts integers or their decimal strings for big values.
std::string integer_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    throw config_error("expected an integer, got " + v.dump());
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
    static const std::set<std::string> known = {
        "command", "primes", "residues", "alpha", "kappa", "seed", "length", "eratosthenes",
        "preset", "depth", "from", "to", "z", "n_max", "bound", "tuple", "d", "m", "g",
        "survivors", "scenario", "limit", "format", "period_cap", "scan_cap"};
    if (!j.is_object()) throw config_error("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw config_error("unknown config key '" + key + "'");
    }
    try {
        read(j, "command", c.command);
        read(j, "primes", c.prefix.primes);
        read(j, "residues", c.prefix.residues);
        read_opt(j, "alpha", c.prefix.alpha);
        read_opt(j, "kappa", c.prefix.kappa);
        read_opt(j, "seed", c.prefix.seed);
        read_opt(j, "length", c.prefix.length);
        read_opt(j, "eratosthenes", c.prefix.eratosthenes);
        read_opt(j, "preset", c.prefix.preset);
        read_opt(j, "depth", c.depth);
        if (j.contains("from")) c.from = integer_text(j["from"]);
        if (j.contains("to")) c.to = integer_text(j["to"]);
        if (j.contains("z")) c.z = integer_text(j["z"]);
        read_opt(j, "n_max", c.n_max);
        if (j.contains("bound")) c.bound = parse_bound(j["bound"].get<std::string>());
        if (j.contains("tuple")) {
            const auto& t = j["tuple"];
            if (t.is_array()) {
                std::string s;
                for (const auto& v : t) s += (s.empty() ? "" : ",") + std::to_string(v.get<std::int64_t>());
                c.tuple = s;
            } else {
                c.tuple = t.get<std::string>();
            }
        }
        read_opt(j, "d", c.d);
        if (j.contains("m")) c.m = integer_text(j["m"]);
        read(j, "g", c.g);
        read_opt(j, "survivors", c.survivors_n);
        read(j, "scenario", c.scenario);
        read(j, "limit", c.limit);
        if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
        read(j, "period_cap", c.period_cap);
        read(j, "scan_cap", c.scan_cap);
    } catch (const json::exception& e) {
        throw config_error(std::string("bad config value: ") + e.what());
    }
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    const auto& p = c.prefix;
    if (!p.primes.empty()) j["primes"] = p.primes;
    if (!p.residues.empty()) j["residues"] = p.residues;
    if (p.alpha) j["alpha"] = *p.alpha;
    if (p.kappa) j["kappa"] = *p.kappa;
    if (p.seed) j["seed"] = *p.seed;
    if (p.length) j["length"] = *p.length;
    if (p.eratosthenes) j["eratosthenes"] = *p.eratosthenes;
    if (p.preset) j["preset"] = *p.preset;
    if (c.depth) j["depth"] = *c.depth;
    if (c.from) j["from"] = *c.from;
    if (c.to) j["to"] = *c.to;
    j["z"] = c.z;
    if (c.n_max) j["n_max"] = *c.n_max;
    j["bound"] = std::string(bound_name(c.bound));
    if (!c.tuple.empty()) j["tuple"] = c.tuple;
    if (c.d) j["d"] = *c.d;
    if (c.m) j["m"] = *c.m;
    j["g"] = c.g;
    if (c.survivors_n) j["survivors"] = *c.survivors_n;
    if (!c.scenario.empty()) j["scenario"] = c.scenario;
    j["limit"] = c.limit;
    j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
    j["period_cap"] = c.period_cap;
    j["scan_cap"] = c.scan_cap;
    return j;
}

void validate_config(const RunConfig& c) {
    if (c.period_cap == 0 || c.scan_cap == 0) throw config_error("caps must be positive");
    const auto& p = c.prefix;
    const int sources = (!p.primes.empty() ? 1 : 0) + (p.alpha || p.kappa ? 1 : 0) +
                        (p.eratosthenes ? 1 : 0) + (p.preset ? 1 : 0);
    if (sources > 1) throw config_error("give exactly one of primes, alpha/kappa, eratosthenes, preset");
    if (p.alpha.has_value() != p.kappa.has_value()) throw config_error("alpha and kappa go together");
    if (p.seed && !p.alpha) throw config_error("seed needs alpha and kappa");
    if (p.seed && !p.residues.empty()) throw config_error("give residues or seed, not both");
}

SievingPrefix figure1_prefix() {
    const std::vector<std::int64_t> primes{3, 3, 5, 5, 7, 7, 11, 11};
    const std::vector<std::int64_t> residues{1, 2, 4, 0, 5, 6, 7, 10};
    return validate_prefix(primes, residues);
}

SievingPrefix build_prefix(const PrefixSpec& spec, std::size_t needed) {
    if (spec.preset) {
        if (*spec.preset == "figure1") return figure1_prefix();
        throw config_error("unknown preset '" + *spec.preset + "'");
    }
    if (spec.eratosthenes) return eratosthenes_prefix(std::max(*spec.eratosthenes, needed));
    if (spec.alpha) {
        const RegularParams params(*spec.alpha, *spec.kappa);
        if (spec.seed) return random_regular_prefix(params, std::max(spec.length.value_or(0), needed), *spec.seed);
        return regular_prefix(params, spec.residues);
    }
    return validate_prefix(spec.primes, spec.residues);
}

namespace {

Integer period_summary(const Pattern& pattern, std::ostream& log) {
    const Integer period = fundamental_period(pattern);
    log << "depth " << pattern.depth() << '\n';
    log << "period " << to_string(period) << '\n';
    log << "density " << to_string(average_density(pattern)) << '\n';
    return period;
}

}  // namespace

CommandResult cmd_pattern(const RunConfig& c, std::ostream& out, std::ostream& log) {
    validate_config(c);
    const SievingPrefix prefix = build_prefix(c.prefix, c.depth.value_or(0));
    const Pattern pattern(prefix, c.depth.value_or(prefix.size()));
    const Integer period = period_summary(pattern, log);

    const Integer from = c.from ? parse_integer(*c.from) : Integer(1);
    const Integer to = c.to ? parse_integer(*c.to) : from + period - 1;
    if (to < from) throw config_error("empty window: to < from");
    const Integer width = to - from + 1;
    if (width > make_integer_u(c.period_cap)) {
        throw SieveError(ErrorKind::CapExceeded,
                         "window of " + to_string(width) + " positions exceeds cap " + std::to_string(c.period_cap));
    }
    std::vector<std::uint8_t> bits(width.get_ui());
    WindowEvaluator(pattern, from).evaluate(0, bits);

    std::size_t ones = 0;
    for (auto b : bits) ones += b;
    log << "unsieved_in_window " << ones << '\n';

    if (c.format == OutputFormat::csv) {
        out << "z,bit\n";
        Integer z = from;
        for (auto b : bits) {
            out << to_string(z) << ',' << int(b) << '\n';
            ++z;
        }
    } else {
        using ojson = nlohmann::ordered_json;
        ojson rows = ojson::array();
        Integer z = from;
        for (auto b : bits) {
            ojson row;
            row["z"] = to_string(z);
            row["bit"] = int(b);
            rows.push_back(std::move(row));
            ++z;
        }
        ojson doc;
        doc["depth"] = pattern.depth();
        doc["period"] = to_string(period);
        doc["density"] = to_string(average_density(pattern));
        doc["rows"] = std::move(rows);
        out << doc.dump() << '\n';
    }
    return {ExitStatus::ok, bits.size()};
}

CommandResult cmd_total_sieve(const RunConfig& c, std::ostream& out, std::ostream& log) {
    validate_config(c);
    const SievingPrefix prefix = build_prefix(c.prefix, c.n_max.value_or(0));
    const std::size_t n_max = c.n_max.value_or(prefix.size());
    const Integer z = parse_integer(c.z);

    ExpandOptions options;
    options.scan_cap = c.scan_cap;
    options.crossing_bound = c.bound;

    CommandResult result;
    if (c.format == OutputFormat::csv && n_max > 0) write_growth_csv_header(out);
    auto sink = [&](const GrowthRow& row) {
        if (c.format == OutputFormat::csv) {
            write_growth_csv_row(out, row);
        } else {
            out << growth_row_json(row).dump() << '\n';
        }
        out.flush();
        ++result.rows;
    };
    try {
        const GrowthSeries series = expand_total_sieve(prefix, z, n_max, options, sink);
        const CrossingStats stats = crossing_stats(series, c.bound);
        log << "crossings vs " << bound_name(c.bound) << ": " << stats.crossings
            << " (last at n=" << stats.last_crossing_n << ")\n";
    } catch (const SieveError& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        log << "aborted after " << result.rows << " rows: " << e.what() << '\n';
        result.status = ExitStatus::cap_exceeded;
    }
    return result;
}

CommandResult cmd_tuple(const RunConfig& c, std::ostream& out, std::ostream& log) {
    validate_config(c);
    const KTuple tuple = parse_tuple(c.tuple);
    std::optional<Integer> m;
    if (c.m) m = parse_integer(*c.m);
    const TupleAnchor anchor = choose_anchor(tuple, c.d, m);
    if (c.g == 0) throw config_error("g must be >= 1");
    const ReducedClasses reduced = reduce_to_regular(anchor, c.g);
    std::vector<SurvivorRow> rows;
    if (c.survivors_n) rows = survivors(anchor, *c.survivors_n);

    if (c.format == OutputFormat::json) {
        using ojson = nlohmann::ordered_json;
        ojson surv = ojson::array();
        for (const auto& r : rows) {
            ojson row;
            row["z"] = to_string(r.z);
            row["position"] = to_string(r.position);
            row["all_prime"] = r.all_prime;
            surv.push_back(std::move(row));
        }
        ojson doc;
        doc["anchor"]["d"] = anchor.d();
        doc["anchor"]["m"] = to_string(anchor.m());
        doc["anchor"]["primorial"] = to_string(anchor.primorial());
        doc["g"] = c.g;
        doc["reduced"] = reduced_classes_json(reduced);
        if (c.survivors_n) {
            doc["survivors_n"] = *c.survivors_n;
            doc["survivors"] = surv;
        }
        out << doc.dump() << '\n';
    } else {
        out << "anchor d=" << anchor.d() << " m=" << to_string(anchor.m())
            << " primorial=" << to_string(anchor.primorial()) << '\n';
        out << "classes " << reduced_classes_json(reduced).dump() << '\n';
        if (c.survivors_n) {
            out << "survivors n=" << *c.survivors_n << '\n';
            out << "z,position,all_prime\n";
            for (const auto& r : rows) {
                out << to_string(r.z) << ',' << to_string(r.position) << ',' << (r.all_prime ? "true" : "false") << '\n';
            }
        }
    }
    std::size_t bad = 0;
    for (const auto& r : rows) bad += !r.all_prime;
    if (bad) log << "warning: " << bad << " survivor rows are not all prime\n";
    return {ExitStatus::ok, reduced.classes.size() + rows.size()};
}

CommandResult cmd_reproduce(const RunConfig& c, std::ostream& out, std::ostream& log) {
    const auto checks = reproduce_scenario(c.scenario);
    std::size_t failed = 0;
    if (c.format == OutputFormat::json) {
        json arr = json::array();
        for (const auto& ch : checks) {
            arr.push_back({{"name", ch.name}, {"pass", ch.pass}, {"expected", ch.expected}, {"actual", ch.actual}});
            failed += !ch.pass;
        }
        out << json{{"scenario", c.scenario}, {"pass", failed == 0}, {"checks", arr}}.dump() << '\n';
    } else {
        for (const auto& ch : checks) {
            if (ch.pass) {
                out << "PASS " << ch.name << ": " << ch.actual << '\n';
            } else {
                out << "FAIL " << ch.name << ": expected " << ch.expected << ", got " << ch.actual << '\n';
                ++failed;
            }
        }
        if (failed == 0) {
            out << "PASS, " << checks.size() << " checks\n";
        } else {
            out << "FAIL, " << failed << " of " << checks.size() << " checks\n";
        }
    }
    if (failed) log << c.scenario << ": " << failed << " mismatches\n";
    return {failed ? ExitStatus::mismatch : ExitStatus::ok, checks.size()};
}

CommandResult cmd_primes(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (c.limit < 2) throw config_error("limit must be >= 2");
    const auto primes = primes_oracle(c.limit);
    if (c.format == OutputFormat::csv) {
        out << "p\n";
        for (auto p : primes) out << p << '\n';
    } else {
        out << json(primes).dump() << '\n';
    }
    return {ExitStatus::ok, primes.size()};
}

CommandResult run_command(const RunConfig& c, std::ostream& out, std::ostream& log) {
    try {
        if (c.command == "pattern") return cmd_pattern(c, out, log);
        if (c.command == "total-sieve") return cmd_total_sieve(c, out, log);
        if (c.command == "tuple") return cmd_tuple(c, out, log);
        if (c.command == "reproduce") return cmd_reproduce(c, out, log);
        if (c.command == "primes") return cmd_primes(c, out, log);
        throw config_error("unknown command '" + c.command + "'");
    } catch (const SieveError& e) {
        log << "error: " << e.what() << '\n';
        return {e.kind() == ErrorKind::CapExceeded ? ExitStatus::cap_exceeded : ExitStatus::validation, 0};
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return {ExitStatus::validation, 0};
    }
}

std::vector<GrowthSeries> run_growth_batch(std::span<const GrowthJob> jobs) {
    return map_shards(jobs.size(), [&](std::size_t i) {
        const GrowthJob& job = jobs[i];
        return expand_total_sieve(job.prefix, job.z, job.n_max, job.options);
    });
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

RunManifest make_manifest(const RunConfig& config, const std::string& started_at,
                          const std::string& finished_at, const CommandResult& result) {
    RunManifest m;
    m.config = config_to_json(config);
    m.version = SIEVELAB_VERSION;
    m.started_at = started_at;
    m.finished_at = finished_at;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(m.config.dump())));
    m.input_hash = hex;
    m.rows = result.rows;
    m.exit_status = static_cast<int>(result.status);
    return m;
}

json manifest_json(const RunManifest& m) {
    return {{"tool", "sievelab"},      {"version", m.version},         {"config", m.config},
            {"input_hash", m.input_hash}, {"started_at", m.started_at}, {"finished_at", m.finished_at},
            {"rows", m.rows},          {"exit_status", m.exit_status}};
}

}  // namespace sievelab
