// halfcert: analyze finite set families, verify entropy certificates for
// half-abundant elements, decompose witness entropy, and search for
// witnesses. All commands read family JSON files and print a run report on
// stdout; diagnostics go to stderr.
//
// Exit codes: 0 pass/success, 1 definitive negative (failed certificate or
// exhausted search), 2 input error, 3 resource guard.

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "halfcert/certificate.hpp"
#include "halfcert/entropy.hpp"
#include "halfcert/errors.hpp"
#include "halfcert/family.hpp"
#include "halfcert/json_io.hpp"
#include "halfcert/search.hpp"

namespace {

using halfcert::Json;

constexpr int kExitPass = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceGuard = 3;
constexpr int kExitInternalError = 70;

void emit_report(const std::string& command, Json inputs, Json result,
                 std::chrono::steady_clock::time_point started) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    Json report{{"command", command},
                {"inputs", std::move(inputs)},
                {"result", std::move(result)},
                {"timing_ms",
                 std::chrono::duration<double, std::milli>(elapsed).count()}};
    std::cout << report.dump(2) << "\n";
}

std::vector<int> parse_order(const std::string& text) {
    std::vector<int> order;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            order.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad --order entry \"" + token + "\"");
        }
    }
    return order;
}

halfcert::RationalEpsilon parse_epsilon(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("--epsilon must look like p/q");
    try {
        halfcert::RationalEpsilon eps;
        eps.num = std::stoull(text.substr(0, slash));
        eps.den = std::stoull(text.substr(slash + 1));
        return eps;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad --epsilon value \"" + text + "\"");
    }
}

struct CommandContext {
    std::string name;
    Json inputs;
    std::chrono::steady_clock::time_point started =
        std::chrono::steady_clock::now();

    int finish(Json result, int exit_code) const {
        emit_report(name, inputs, std::move(result), started);
        return exit_code;
    }
};

int run_analyze(const std::string& family_file) {
    CommandContext ctx{"analyze", Json{{"family_file", family_file}}};
    halfcert::Family fam = halfcert::load_family(family_file);
    halfcert::FrequencyTable table = halfcert::frequencies(fam);
    std::vector<int> abundant;
    if (!fam.empty()) abundant = halfcert::abundant_elements(fam);
    Json result{{"n", fam.ground_size()},
                {"family_size", fam.size()},
                {"union_closed", halfcert::is_union_closed(fam)},
                {"absent_counts", table.absent_count},
                {"abundant", abundant}};
    return ctx.finish(std::move(result), kExitPass);
}

int run_closure(const std::string& generators_file, std::size_t cap) {
    CommandContext ctx{"closure",
                       Json{{"generators_file", generators_file}, {"cap", cap}}};
    halfcert::Family generators = halfcert::load_family(generators_file);
    halfcert::Family closed = halfcert::union_closure(generators, cap);
    Json result{{"input_size", generators.size()},
                {"closed_size", closed.size()},
                {"growth", closed.size() - generators.size()},
                {"family", halfcert::family_to_json(closed)}};
    return ctx.finish(std::move(result), kExitPass);
}

int run_verify(const std::string& family_file, const std::string& witness_file,
               bool corollary) {
    CommandContext ctx{"verify", Json{{"family_file", family_file},
                                      {"witness_file", witness_file},
                                      {"corollary", corollary}}};
    halfcert::Family fam = halfcert::load_family(family_file);
    halfcert::Family witness = halfcert::load_family(witness_file);
    halfcert::CertificateReport report =
        corollary ? halfcert::corollary_check(fam, witness)
                  : halfcert::verify_certificate(fam, witness);
    return ctx.finish(halfcert::to_json(report),
                      report.pass ? kExitPass : kExitNegative);
}

int run_decompose(const std::string& witness_file, const std::string& order_text,
                  const std::string& verify_text,
                  const std::optional<std::uint64_t>& seed) {
    CommandContext ctx{"decompose", Json{{"witness_file", witness_file},
                                         {"order", order_text},
                                         {"verify", verify_text}}};
    if (seed) ctx.inputs["seed"] = *seed;

    halfcert::Family fam = halfcert::load_family(witness_file);
    halfcert::SetDistribution dist = halfcert::SetDistribution::uniform_on(fam);

    halfcert::DecompositionVector vec;
    if (order_text.empty()) {
        vec = halfcert::decompose(dist);
    } else {
        std::vector<int> order = parse_order(order_text);
        vec = halfcert::decompose(dist, order);
    }

    halfcert::VerifyMode mode = halfcert::VerifyMode::exhaustive();
    if (verify_text.rfind("sample:", 0) == 0) {
        std::size_t count = 0;
        try {
            count = std::stoull(verify_text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad --verify sample count");
        }
        if (!seed)
            throw std::invalid_argument("--verify sample:k requires --seed");
        mode = halfcert::VerifyMode::sample(count, *seed);
    } else if (verify_text != "exhaustive") {
        throw std::invalid_argument("--verify must be exhaustive or sample:k");
    }
    halfcert::DecompositionCheck check =
        halfcert::verify_decomposition(dist, vec, mode);

    double sum_x = std::accumulate(vec.x.begin(), vec.x.end(), 0.0);
    Json result{{"decomposition", halfcert::to_json(vec)},
                {"sum_x", sum_x},
                {"sum_matches_entropy",
                 std::abs(sum_x - vec.source_entropy) <= 1e-9},
                {"verification", halfcert::to_json(check)}};
    return ctx.finish(std::move(result),
                      check.violations.empty() ? kExitPass : kExitNegative);
}

int run_search(const std::string& family_file, const std::string& mode,
               const std::string& universe, std::size_t min_size,
               std::size_t max_size, std::size_t budget,
               const std::optional<std::uint64_t>& seed) {
    CommandContext ctx{"search", Json{{"family_file", family_file},
                                      {"mode", mode},
                                      {"universe", universe},
                                      {"min_size", min_size},
                                      {"max_size", max_size},
                                      {"budget", budget}}};
    if (seed) ctx.inputs["seed"] = *seed;

    halfcert::Family fam = halfcert::load_family(family_file);
    halfcert::SearchConfig config;
    config.min_size = min_size;
    config.max_size = max_size;
    config.budget = budget;
    if (universe == "full")
        config.universe = halfcert::SearchUniverse::full_power_set;
    else if (universe == "subfamily")
        config.universe = halfcert::SearchUniverse::subfamilies;
    else
        throw std::invalid_argument("--universe must be full or subfamily");

    halfcert::SearchOutcome outcome;
    if (mode == "exhaustive") {
        outcome = halfcert::exhaustive_search(fam, config);
    } else if (mode == "greedy") {
        if (!seed)
            throw std::invalid_argument("greedy mode requires an explicit --seed");
        config.seed = *seed;
        outcome = halfcert::greedy_search(fam, config);
    } else {
        throw std::invalid_argument("--mode must be exhaustive or greedy");
    }

    int exit_code = kExitPass;
    if (!outcome.witness &&
        outcome.coverage == halfcert::SearchCoverage::exhausted)
        exit_code = kExitNegative;
    return ctx.finish(halfcert::to_json(outcome), exit_code);
}

int run_power_cert(const std::string& family_file, int copies,
                   const std::string& epsilon_text, std::uint64_t cap) {
    CommandContext ctx{"power-cert", Json{{"family_file", family_file},
                                          {"copies", copies},
                                          {"epsilon", epsilon_text},
                                          {"cap", cap}}};
    halfcert::Family fam = halfcert::load_family(family_file);
    halfcert::ThresholdConfig config;
    config.copies = copies;
    config.epsilon = parse_epsilon(epsilon_text);
    config.cap = cap;
    halfcert::ThresholdReport report =
        halfcert::threshold_power_witness(fam, config);
    return ctx.finish(halfcert::to_json(report),
                      report.certificate.pass ? kExitPass : kExitNegative);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy certificates for elements in at least half the sets "
                 "of a finite family"};
    app.require_subcommand(1);

    std::string family_file;
    std::string witness_file;
    std::string order_text;
    std::string verify_text = "exhaustive";
    std::string mode = "exhaustive";
    std::string universe = "subfamily";
    std::string epsilon_text = "1/4";
    std::size_t cap = 1u << 20;
    std::size_t min_size = 2;
    std::size_t max_size = std::numeric_limits<std::size_t>::max();
    std::size_t budget = 10'000;
    std::optional<std::uint64_t> seed;
    int copies = 3;
    bool corollary = false;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "frequencies, union-closedness, and abundant elements");
    analyze->add_option("family_file", family_file)->required();

    CLI::App* closure =
        app.add_subcommand("closure", "smallest union-closed superfamily");
    closure->add_option("generators_file", family_file)->required();
    closure->add_option("--cap", cap, "maximum closure size");

    CLI::App* verify = app.add_subcommand(
        "verify", "check the certificate inequality for a witness family");
    verify->add_option("family_file", family_file)->required();
    verify->add_option("witness_file", witness_file)->required();
    verify->add_flag("--corollary", corollary,
                     "also require witness ⊆ family and a union-closed family");

    CLI::App* decompose = app.add_subcommand(
        "decompose", "per-element entropy shares of the uniform distribution");
    decompose->add_option("witness_file", witness_file)->required();
    decompose->add_option("--order", order_text,
                          "elimination order, e.g. 3,1,2 (default n..1)");
    decompose->add_option("--verify", verify_text,
                          "exhaustive or sample:k (default exhaustive)");
    decompose->add_option("--seed", seed, "RNG seed for sample verification");

    CLI::App* search =
        app.add_subcommand("search", "find a witness family for the input");
    search->add_option("family_file", family_file)->required();
    search->add_option("--mode", mode, "exhaustive or greedy");
    search->add_option("--universe", universe, "full or subfamily");
    search->add_option("--min-size", min_size, "minimum witness size (>= 2)");
    search->add_option("--max-size", max_size, "maximum witness size");
    search->add_option("--budget", budget, "max candidates examined");
    search->add_option("--seed", seed, "RNG seed (required for greedy)");

    CLI::App* power = app.add_subcommand(
        "power-cert", "threshold witness on the N-fold power family");
    power->add_option("family_file", family_file)->required();
    power->add_option("--copies", copies, "number of power copies N")->required();
    power->add_option("--epsilon", epsilon_text, "rational p/q with 0 < p/q < 1/2")
        ->required();
    power->add_option("--cap", cap, "materialization bound for the power family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*analyze) return run_analyze(family_file);
        if (*closure) return run_closure(family_file, cap);
        if (*verify) return run_verify(family_file, witness_file, corollary);
        if (*decompose)
            return run_decompose(witness_file, order_text, verify_text, seed);
        if (*search)
            return run_search(family_file, mode, universe, min_size, max_size,
                              budget, seed);
        if (*power)
            return run_power_cert(family_file, copies, epsilon_text, cap);
        std::cerr << "no subcommand selected\n";
        return kExitInputError;
    } catch (const halfcert::ResourceLimitError& err) {
        std::cerr << "resource guard: " << err.what() << "\n";
        return kExitResourceGuard;
    } catch (const std::invalid_argument& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return kExitInternalError;
    }
}
