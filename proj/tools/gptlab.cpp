// Command-line front end: model generation, postulate reports,
// distinguishability queries and the pinned-example suite.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>

#include "gptlab/errors.hpp"
#include "gptlab/golden.hpp"
#include "gptlab/io.hpp"
#include "gptlab/model.hpp"
#include "gptlab/postulates.hpp"
#include "gptlab/random.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGoldenFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

gptlab::ReportLimits limits_from_env()
{
    gptlab::ReportLimits limits;
    if (const char* env = std::getenv("GPTLAB_LIMIT_VERTICES"))
    {
        try
        {
            limits.discrimination_vertices = std::stoi(env);
        }
        catch (const std::exception&)
        {
            throw gptlab::UsageError("GPTLAB_LIMIT_VERTICES must be an integer");
        }
    }
    return limits;
}

std::vector<std::vector<gptlab::RatVec>> parse_groups(const gptlab::Model& model,
                                                      const std::string& spec)
{
    std::vector<std::vector<gptlab::RatVec>> groups;
    std::vector<gptlab::RatVec> current;
    std::string token;
    const auto flush_token = [&]() {
        if (token.empty())
            throw gptlab::UsageError("groups: empty vertex index");
        const int index = std::stoi(token);
        if (index < 1 || index > model.omega().vertex_count())
            throw gptlab::UsageError("groups: vertex index out of range (indices are 1-based)");
        current.push_back(model.omega().vertex(index - 1));
        token.clear();
    };
    for (char c : spec)
    {
        if (c >= '0' && c <= '9')
            token.push_back(c);
        else if (c == ',')
            flush_token();
        else if (c == '|')
        {
            flush_token();
            groups.push_back(std::move(current));
            current.clear();
        }
        else if (c != ' ')
            throw gptlab::UsageError(std::string("groups: unexpected character '") + c + "'");
    }
    flush_token();
    groups.push_back(std::move(current));
    return groups;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact-arithmetic toolbox for polytopic state spaces"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a state-space file");
    generate->require_subcommand(1);
    std::string out_path;
    int classical_d = 2;
    int polygon_n = 4;
    std::string polygon_eps = "1/1000000000";
    gptlab::RandomPolytopeSpec random_spec;

    auto* gen_classical = generate->add_subcommand("classical", "Classical d-level model");
    gen_classical->add_option("--d", classical_d, "Number of pure states")->required();
    gen_classical->add_option("--out", out_path, "Output file")->required();

    auto* gen_polygon = generate->add_subcommand("polygon", "Regular n-gon model");
    gen_polygon->add_option("--n", polygon_n, "Number of vertices")->required();
    gen_polygon->add_option("--eps", polygon_eps, "Rational approximation tolerance (p/q)");
    gen_polygon->add_option("--out", out_path, "Output file")->required();

    auto* gen_random = generate->add_subcommand("random", "Seeded random polytope model");
    gen_random->add_option("--dim", random_spec.dim, "Base polytope dimension (1..5)")->required();
    gen_random->add_option("--vertices", random_spec.vertex_target, "Target vertex count (3..12)")
        ->required();
    std::uint64_t seed = 0;
    gen_random->add_option("--seed", seed, "64-bit seed")->required();
    gen_random->add_option("--denom", random_spec.denom_bound, "Coordinate bound (default 6)");
    gen_random->add_option("--out", out_path, "Output file")->required();

    // report
    auto* report = app.add_subcommand("report", "Run postulate checks on a state-space file");
    std::string in_path;
    std::string which = "all";
    std::string format = "json";
    report->add_option("--in", in_path, "Input state-space JSON")->required();
    report->add_option("--which", which,
                       "all|classical|preservation|discrimination|subspace|effects|faces");
    report->add_option("--format", format, "json|text");

    // distinguish
    auto* distinguish = app.add_subcommand("distinguish", "Perfect distinguishability of vertex groups");
    std::string groups_spec;
    distinguish->add_option("--in", in_path, "Input state-space JSON")->required();
    distinguish->add_option("--groups", groups_spec, "1-based vertex groups, e.g. \"1,2|3|4\"")
        ->required();

    // golden
    auto* golden = app.add_subcommand("golden", "Run the pinned-example suite");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (gen_classical->parsed())
        {
            const gptlab::StateSpace space = gptlab::classical_model(classical_d);
            gptlab::save_json_file(out_path, gptlab::state_space_to_json(space));
            return kExitOk;
        }
        if (gen_polygon->parsed())
        {
            const gptlab::Rational eps = gptlab::parse_rational(polygon_eps);
            const gptlab::StateSpace space = gptlab::polygon_model(polygon_n, eps);
            gptlab::save_json_file(out_path, gptlab::state_space_to_json(space));
            return kExitOk;
        }
        if (gen_random->parsed())
        {
            random_spec.seed = seed;
            const gptlab::VPolytope base = gptlab::random_polytope(random_spec);
            const gptlab::StateSpace space = gptlab::StateSpace::from_base_polytope(base);
            gptlab::save_json_file(out_path, gptlab::state_space_to_json(space));
            return kExitOk;
        }
        if (report->parsed())
        {
            const gptlab::StateSpace space =
                gptlab::state_space_from_json(gptlab::load_json_file(in_path));
            const gptlab::Model model(space);
            const gptlab::Json j = gptlab::build_report(
                model, in_path, gptlab::ReportSelection::parse(which), limits_from_env());
            if (format == "json")
                std::cout << gptlab::dump_json(j);
            else if (format == "text")
                std::cout << gptlab::report_to_text(j);
            else
                throw gptlab::UsageError("unknown format: " + format);
            return kExitOk;
        }
        if (distinguish->parsed())
        {
            const gptlab::StateSpace space =
                gptlab::state_space_from_json(gptlab::load_json_file(in_path));
            const gptlab::Model model(space);
            const auto groups = parse_groups(model, groups_spec);
            const auto result = gptlab::perfectly_distinguishable(model, groups);
            std::cout << gptlab::dump_json(gptlab::distinguishability_to_json(result));
            return kExitOk;
        }
        if (golden->parsed())
        {
            const int failures = gptlab::run_golden_suite(std::cout);
            return failures == 0 ? kExitOk : kExitGoldenFailure;
        }
    }
    catch (const gptlab::InternalInconsistencyError& e)
    {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInternalError;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
