#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "catflat/comon.hpp"
#include "catflat/form_io.hpp"
#include "catflat/hankel.hpp"
#include "catflat/osculate.hpp"
#include "catflat/report.hpp"

namespace {

using namespace catflat;
using nlohmann::ordered_json;

// Seeds come from the flag or from entropy, never from the environment; the
// resolved value is echoed in every report so any run can be replayed.
std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

bool structured(const std::string& output) { return output != "human"; }

struct Options {
    unsigned n = 0, d = 0, h = 0, s = 0;
    std::string n_range;
    std::uint64_t seed = 0;
    long coeff_bound = 100;
    std::string field;
    unsigned retries = 0;
    std::string output = "human";
    bool confirm_exact = false;
    bool random_minor = false;
    unsigned jobs = 0;
    unsigned trials = 20;
    std::uint64_t prime = kDefaultPrime31;
    std::string form_path, g_path;
    std::size_t rank_f = 0, rank_g = 0;
    std::string z_text;
};

void add_output_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--output", o.output, "Report style")
        ->check(CLI::IsMember({"human", "json", "structured"}))
        ->capture_default_str();
}

std::uint64_t resolve_seed(const CLI::App* cmd, Options& o) {
    if (!cmd->count("--seed")) o.seed = entropy_seed();
    return o.seed;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const unsigned v = static_cast<unsigned>(std::stoul(text));
            return {v, v};
        }
        return {static_cast<unsigned>(std::stoul(text.substr(0, dots))),
                static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
    } catch (const std::exception&) {
        fail(errc::invalid_argument, "range must be <n> or <lo>..<hi>: " + text);
    }
}

ComonOptions build_comon_options(const Options& o, unsigned d, const std::string& default_field) {
    ComonOptions copt;
    const std::string spec = o.field.empty() ? default_field : o.field;
    copt.field = parse_field_spec(spec, d + 1);
    copt.retries = o.retries;
    copt.minor = o.random_minor ? MinorMode::random_rows_cols : MinorMode::upper_left;
    copt.confirm_exact = o.confirm_exact;
    return copt;
}

int run_comon(Options& o, const CLI::App* cmd) {
    const Sampler sampler(resolve_seed(cmd, o), o.coeff_bound);
    const ComonVerdict v = comon_check(o.n, o.d, o.h, sampler, build_comon_options(o, o.d, "qq"));
    std::cout << (structured(o.output) ? verdict_json(v) + "\n" : verdict_human(v));
    return 0;
}

int run_sweep(Options& o, const CLI::App* cmd) {
    const auto [lo, hi] = parse_range(o.n_range);
#ifdef _OPENMP
    if (o.jobs > 0) omp_set_num_threads(static_cast<int>(o.jobs));
#endif
    const Sampler sampler(resolve_seed(cmd, o), o.coeff_bound);
    const ComonOptions copt =
        build_comon_options(o, o.d, "fp:" + std::to_string(kDefaultPrime31));
    comon_sweep(o.d, lo, hi, sampler, copt, [&](const ComonVerdict& v) {
        if (structured(o.output)) {
            std::cout << verdict_json(v) << "\n" << std::flush;
        } else {
            std::cout << "n = " << v.n << "  h = " << v.h << "  " << to_string(v.branch)
                      << "  (threshold " << v.threshold << ", " << to_string(v.det_provenance)
                      << ", " << v.elapsed_ms << " ms)\n"
                      << std::flush;
        }
    });
    return 0;
}

int run_catalecticant(Options& o, const CLI::App* cmd) {
    const std::uint64_t seed = resolve_seed(cmd, o);
    const QForm f = read_form_file(o.form_path);
    const auto cat = catalecticant(f, o.s);
    const std::size_t r = rank(cat.matrix);
    if (structured(o.output)) {
        ordered_json j = ordered_json::parse(matrix_json(cat.matrix));
        j["order"] = o.s;
        j["rank"] = r;
        j["seed"] = seed;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "Cat_" << o.s << " of a degree " << f.degree() << " form in " << f.nvars()
                  << " variables (" << cat.matrix.rows() << "x" << cat.matrix.cols() << ")\n"
                  << matrix_human(cat.matrix) << "rank = " << r << "\nseed = " << seed << "\n";
    }
    return 0;
}

int run_strassen(Options& o, const CLI::App* cmd) {
    const std::uint64_t seed = resolve_seed(cmd, o);
    const QForm f = read_form_file(o.form_path);
    const QForm g = read_form_file(o.g_path);
    const StrassenWitness w = strassen_witness(f, g, o.s, o.rank_f, o.rank_g);
    std::cout << (structured(o.output) ? witness_json(w, seed) + "\n" : witness_human(w, seed));
    return 0;
}

HankelCoords<Rationals> load_z(const Options& o) {
    if (!o.z_text.empty()) {
        HankelCoords<Rationals> h;
        std::string item;
        std::istringstream in(o.z_text);
        while (std::getline(in, item, ',')) h.z.push_back(parse_rational(item));
        if (h.z.empty()) fail(errc::invalid_argument, "--z needs at least one coordinate");
        h.d = static_cast<unsigned>(h.z.size()) - 1;
        return h;
    }
    return to_z_coords(read_form_file(o.form_path));
}

ordered_json z_json(const HankelCoords<Rationals>& h) {
    ordered_json z = ordered_json::array();
    for (const auto& c : h.z) z.push_back(c.get_str());
    return z;
}

int run_hankel(Options& o, const CLI::App* cmd) {
    const std::uint64_t seed = resolve_seed(cmd, o);
    const auto h = load_z(o);
    const QMatrix m = hankel_matrix(Rationals{}, h);
    const std::size_t r = rank(m);
    if (structured(o.output)) {
        ordered_json j;
        j["d"] = h.d;
        j["z"] = z_json(h);
        ordered_json mat = ordered_json::parse(matrix_json(m));
        for (auto& [key, value] : mat.items()) j[key] = value;
        j["rank"] = r;
        j["seed"] = seed;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "Hankel matrix M_" << h.d << " (" << m.rows() << "x" << m.cols() << ")\n"
                  << matrix_human(m) << "rank = " << r << "\nseed = " << seed << "\n";
    }
    return 0;
}

int run_lift(Options& o, const CLI::App* cmd) {
    const std::uint64_t seed = resolve_seed(cmd, o);
    const auto h = load_z(o);
    const auto lifted = alpha_lift(Rationals{}, h);
    if (structured(o.output)) {
        ordered_json j;
        j["d"] = lifted.d;
        j["z"] = z_json(lifted);
        j["seed"] = seed;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "Lift to degree " << lifted.d << ": Z' = [";
        for (std::size_t i = 0; i < lifted.z.size(); ++i)
            std::cout << (i ? ", " : "") << lifted.z[i].get_str();
        std::cout << "]\nseed = " << seed << "\n";
    }
    return 0;
}

int run_osculate(Options& o, const CLI::App* cmd) {
    const Sampler sampler(resolve_seed(cmd, o), o.coeff_bound);
    const OsculationReport r = osculating_containment(o.n, o.d, o.s, o.trials, sampler, o.prime);
    std::cout << (structured(o.output) ? osculation_json(r) + "\n" : osculation_human(r));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact flattening-rank experiments for Comon's and Strassen's conjectures"};
    // --h is a domain flag (the Waring rank), so help lives on --help only.
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);
    Options o;
    const auto add_cmd = [&app](const std::string& name, const std::string& desc) {
        CLI::App* c = app.add_subcommand(name, desc);
        c->set_help_flag("--help", "Print help");
        return c;
    };

    CLI::App* comon = add_cmd("comon", "Decision tree for a general rank-h form");
    comon->add_option("--n", o.n, "Projective dimension (n+1 variables)")->required();
    comon->add_option("--d", o.d, "Degree of the form")->required();
    comon->add_option("--h", o.h, "Waring rank to certify")->required();
    comon->add_option("--seed", o.seed, "Replay seed (64-bit); drawn from entropy when absent");
    comon->add_option("--coeff-bound", o.coeff_bound, "Coefficient bound B for sampling")
        ->capture_default_str();
    comon->add_option("--field", o.field, "Coefficient field: qq or fp:<p> (default qq)");
    comon->add_option("--retries", o.retries, "Extra resamples after a vanished determinant")
        ->capture_default_str();
    comon->add_flag("--confirm-exact", o.confirm_exact,
                    "Upgrade modular determinant probes to exact rational values");
    comon->add_flag("--random-minor", o.random_minor,
                    "Use random rows/columns instead of the upper-left minor");
    add_output_flag(comon, o);
    comon->callback([&] { run_comon(o, comon); });

    CLI::App* sweep = add_cmd("sweep", "Comon checks at h = C(n+floor(d/2), n) over a range of n");
    sweep->add_option("--d", o.d, "Degree (odd)")->required();
    sweep->add_option("--n", o.n_range, "Range of n, e.g. 2..30")->required();
    sweep->add_option("--seed", o.seed, "Replay seed (64-bit); drawn from entropy when absent");
    sweep->add_option("--coeff-bound", o.coeff_bound, "Coefficient bound B for sampling")
        ->capture_default_str();
    sweep->add_option("--field", o.field,
                      "Coefficient field: qq or fp:<p> (default fp:" +
                          std::to_string(kDefaultPrime31) + ")");
    sweep->add_option("--retries", o.retries, "Extra resamples after a vanished determinant")
        ->capture_default_str();
    sweep->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
    sweep->add_flag("--confirm-exact", o.confirm_exact,
                    "Upgrade modular determinant probes to exact rational values");
    add_output_flag(sweep, o);
    sweep->callback([&] { run_sweep(o, sweep); });

    CLI::App* cat = add_cmd("catalecticant", "Catalecticant matrix and rank of a form file");
    cat->add_option("--form", o.form_path, "Form file (JSON)")->required();
    cat->add_option("--s", o.s, "Derivative order")->required();
    cat->add_option("--seed", o.seed, "Echoed in the report; this command is deterministic");
    add_output_flag(cat, o);
    cat->callback([&] { run_catalecticant(o, cat); });

    CLI::App* strassen = add_cmd("strassen", "Additivity witness for two disjoint-variable forms");
    strassen->add_option("--f", o.form_path, "First form file")->required();
    strassen->add_option("--g", o.g_path, "Second form file")->required();
    strassen->add_option("--s", o.s, "Catalecticant order")->required();
    strassen->add_option("--rank-f", o.rank_f, "Known symmetric rank of f")->required();
    strassen->add_option("--rank-g", o.rank_g, "Known symmetric rank of g")->required();
    strassen->add_option("--seed", o.seed, "Echoed in the report; this command is deterministic");
    add_output_flag(strassen, o);
    strassen->callback([&] { run_strassen(o, strassen); });

    CLI::App* hankel = add_cmd("hankel", "Hankel matrix of a binary form's Z-coordinates");
    auto* hz = hankel->add_option("--z", o.z_text, "Comma-separated Z-coordinates, e.g. 1,0,0");
    hankel->add_option("--form", o.form_path, "Binary form file (JSON)")->excludes(hz);
    hankel->add_option("--seed", o.seed, "Echoed in the report; this command is deterministic");
    add_output_flag(hankel, o);
    hankel->callback([&] { run_hankel(o, hankel); });

    CLI::App* lift = add_cmd("lift", "Degree-raising coordinate law (multiplication by x0)");
    auto* lz = lift->add_option("--z", o.z_text, "Comma-separated Z-coordinates, e.g. 1,0,0");
    lift->add_option("--form", o.form_path, "Binary form file (JSON)")->excludes(lz);
    lift->add_option("--seed", o.seed, "Echoed in the report; this command is deterministic");
    add_output_flag(lift, o);
    lift->callback([&] { run_lift(o, lift); });

    CLI::App* osc = add_cmd("osculate", "Identity test: does det Cat_s vanish on x0 * (degree-d forms)?");
    osc->add_option("--n", o.n, "Projective dimension (n+1 variables)")->required();
    osc->add_option("--d", o.d, "Degree of the sampled forms")->required();
    osc->add_option("--s", o.s, "Catalecticant order (needs 2s = d+1)")->required();
    osc->add_option("--trials", o.trials, "Samples to draw")->capture_default_str();
    osc->add_option("--prime", o.prime, "Prime field modulus")->capture_default_str();
    osc->add_option("--seed", o.seed, "Replay seed (64-bit); drawn from entropy when absent");
    add_output_flag(osc, o);
    osc->callback([&] { run_osculate(o, osc); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const catflat::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
