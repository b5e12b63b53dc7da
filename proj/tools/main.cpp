#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace qtoric;
using namespace qtoric::cli;

namespace {

json read_input(const std::string& path)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(path);
        if (!f)
            throw InputError("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum toric fans, calibrations, atlases, LVMB data and moduli"};
    std::string command;
    std::vector<std::string> files;
    Options opts;
    bool schema = false, affine = false, iso = false, pretty = false;
    unsigned jobs = 1;
    const std::pair<const char*, const char*> valued[] = {
        {"a", "scalar a (moduli-equiv-2d, p2-orbit, wps-weights)"},
        {"b", "scalar b (moduli-equiv-2d, p2-orbit, wps-weights)"},
        {"hbar", "d x k matrix of virtual images (moduli-act)"},
        {"H", "integer matrix (moduli-act, cal-morphism-check)"},
        {"l3", "complex [re, im] (hopf-equiv)"},
        {"l4", "complex [re, im] (hopf-equiv)"},
        {"m3", "complex [re, im] (hopf-equiv)"},
        {"m4", "complex [re, im] (hopf-equiv)"},
        {"witness", "parameter values, e.g. a=-1/3,b=2"},
        {"map", "linear map L as a JSON matrix (morphism checks)"},
        {"normalization", "gale: tail for the standard form"},
    };
    std::map<std::string, std::string> raw;

    app.add_option("command", command, "subcommand, see README");
    app.add_option("inputs", files, "input JSON files, '-' for stdin");
    app.add_flag("--schema", schema, "print the input JSON schema");
    app.add_flag("--affine", affine, "gale: affine transform of the balanced configuration");
    app.add_flag("--iso", iso, "morphism-check: require an isomorphism");
    app.add_flag("--pretty", pretty, "indent the JSON output");
    app.add_option("--jobs", jobs, "parallel workers over batch inputs")->check(CLI::PositiveNumber);
    for (auto [k, help] : valued)
        app.add_option(std::string("--") + k, raw[k], help);
    CLI11_PARSE(app, argc, argv);

    if (schema) {
        std::cout << fan_file_schema();
        return Ok;
    }
    for (const auto& [k, v] : raw)
        if (!v.empty())
            opts[k] = v;
    if (affine)
        opts["affine"] = "true";
    if (iso)
        opts["iso"] = "true";
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        std::cerr << "unknown command '" << command << "'\n";
        return BadInput;
    }

    std::vector<json> inputs;
    try {
        for (const auto& f : files)
            inputs.push_back(read_input(f));
    } catch (const InputError& e) {
        std::cout << json{{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}}.dump() << "\n";
        return BadInput;
    }

    static const std::set<std::string> pairwise = {"comb-equiv", "morphism-check", "cal-morphism-check"};
    Result result;
    if (inputs.size() <= 1 || pairwise.count(command)) {
        result = run(command, inputs, opts);
    } else {
        // batch: one report per input, exit code of the worst
        std::vector<Result> results(inputs.size());
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        for (unsigned t = 0; t < std::min<size_t>(jobs, inputs.size()); ++t)
            workers.emplace_back([&] {
                for (size_t i; (i = next++) < inputs.size();)
                    results[i] = run(command, {inputs[i]}, opts);
            });
        for (auto& w : workers)
            w.join();
        result.report = {{"results", json::array()}};
        for (const auto& r : results) {
            result.report["results"].push_back(r.report);
            result.code = std::max(result.code, r.code);
        }
    }
    std::cout << result.report.dump(pretty ? 2 : -1) << "\n";
    return result.code;
}
