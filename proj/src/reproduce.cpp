#include <string>
#include <vector>


#include "sievelab/experiments.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {
namespace {

std::string join(const std::vector<Integer>& values) {
    std::string s = "{";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + to_string(values[i]);
    return s + "}";
}

std::string join(const std::vector<ResidueClass>& classes) {
    std::string s;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        s += (i ? " " : "") + ("[" + std::to_string(classes[i].residue) + "]_" + std::to_string(classes[i].modulus));
    }
    return s;
}

void check(std::vector<ReproduceCheck>& out, std::string name, const std::string& expected,
           const std::string& actual) {
    out.push_back({std::move(name), expected == actual, expected, actual});
}

std::vector<ReproduceCheck> figure1() {
    std::vector<ReproduceCheck> out;
    const SievingPrefix prefix = figure1_prefix();
    auto around = [&](std::size_t n, long z) { return total_sieve_around(Pattern(prefix, n), Integer(z)); };

    check(out, "S_3(23)", "[22,26]", around(3, 23).to_string());
    const auto s9 = around(5, 9), s12 = around(5, 12), s17 = around(5, 17);
    const bool same = s9 == s12 && s12 == s17;
    check(out, "S_5(9)=S_5(12)=S_5(17)", "[7,17]", same ? s9.to_string() : "differ: " + s9.to_string() + " " + s12.to_string() + " " + s17.to_string());
    check(out, "S_7(21)", "empty", around(7, 21).to_string());
    check(out, "S_8(7)", "[4,35]", around(8, 7).to_string());

    const GrowthSeries series = expand_total_sieve(prefix, Integer(7), 8);
    std::string sizes;
    for (const auto& r : series.rows) sizes += (sizes.empty() ? "" : ",") + to_string(r.size);
    check(out, "expanding sieve around 7, sizes n=1..8", "1,2,5,5,11,14,17,32", sizes);
    return out;
}

std::vector<ReproduceCheck> guiding_example() {
    std::vector<ReproduceCheck> out;
    const KTuple triplet({0, 2, 6});
    const Pattern p3 = eratosthenes_pattern(3);

    check(out, "(0,2,6) admissible", "true", is_admissible(triplet) ? "true" : "false");
    check(out, "matches of (0,2,6) in P_3 over [0,29]", "{11,17}",
          join(matching_positions(triplet, p3, Integer(0), Integer(29))));
    check(out, "matches of (0,2,6) in P_3 over [0,61]", "{11,17,41,47}",
          join(matching_positions(triplet, p3, Integer(0), Integer(61))));

    const TupleAnchor smallest = choose_anchor(triplet);
    check(out, "default anchor", "d=4 m=11",
          "d=" + std::to_string(smallest.d()) + " m=" + to_string(smallest.m()));

    const TupleAnchor anchor = choose_anchor(triplet, std::nullopt, Integer(17));
    check(out, "reduced classes, m=17, g=2", "[3]_7 [2]_7 [0]_7 [3]_11 [0]_11 [5]_11",
          join(reduce_to_regular(anchor, 2).classes));
    check(out, "mu^-1(47)", "2", to_string(mu_inverse(anchor, Integer(47))));

    const auto window = z_window(anchor, 2);
    check(out, "Z_2", "[1,5]", window ? "[" + to_string(window->lo) + "," + to_string(window->hi) + "]" : "empty");
    std::vector<Integer> m2;
    if (window) {
        for (Integer z = window->lo; z <= window->hi; ++z) m2.push_back(mu_map(anchor, z));
    }
    check(out, "M_2", "{17,47,77,107,137}", join(m2));

    const auto e5 = eratosthenes_window(5);
    check(out, "Eratosthenes window n=5", "[2,168]", "[" + to_string(e5.lo) + "," + to_string(e5.hi) + "]");
    return out;
}

}  // namespace

std::vector<ReproduceCheck> reproduce_scenario(std::string_view scenario) {
    if (scenario == "figure1") return figure1();
    if (scenario == "guiding-example") return guiding_example();
    throw SieveError(ErrorKind::InvalidConfig,
                     "unknown scenario '" + std::string(scenario) + "' (figure1, guiding-example)");
}

}  // namespace sievelab
