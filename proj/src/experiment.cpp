#include "flatlab/experiment.hpp"

#include "flatlab/classify.hpp"
#include "flatlab/errors.hpp"
#include "flatlab/homology.hpp"
#include "flatlab/lyapunov.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/serialize.hpp"
#include "flatlab/siegel_veech.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace flatlab {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, "cli", msg); }

std::vector<std::string> tokens(const std::string& text, const std::string& seps)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (seps.find(ch) != std::string::npos) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> parse_ints(const std::string& text)
{
    std::vector<int> out;
    for (const std::string& t : tokens(text, " ,")) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(t, &used));
            if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            config_error("not an integer: '" + t + "'");
        }
    }
    return out;
}

Rational parse_q(const std::string& t)
{
    try {
        return parse_rational(t);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        config_error("not a rational number: '" + t + "'");
    }
}

Permutation parse_perm(const std::string& text)
{
    auto rows = tokens(text, "/");
    if (rows.size() != 2) config_error("permutation must look like 'top/bottom'");
    return Permutation(parse_ints(rows[0]), parse_ints(rows[1]));
}

std::vector<Rational> parse_rationals(const std::string& text)
{
    std::vector<Rational> out;
    for (const std::string& t : tokens(text, " ,")) out.push_back(parse_q(t));
    return out;
}

std::vector<Vec2> parse_vectors(const std::string& text)
{
    std::vector<Vec2> out;
    for (const std::string& v : tokens(text, ";")) {
        auto xy = tokens(v, ", ");
        if (xy.size() != 2) config_error("vector '" + v + "' needs two coordinates");
        out.push_back({parse_q(xy[0]), parse_q(xy[1])});
    }
    return out;
}

double tolerance(const ExperimentConfig& c, const std::string& key, double fallback)
{
    auto it = c.tolerances.find(key);
    return it == c.tolerances.end() ? fallback : it->second;
}

Stratum stratum_of(const ExperimentConfig& c)
{
    if (c.stratum.empty()) config_error("command needs --stratum");
    return Stratum::parse(c.stratum);
}

SampleOptions sample_options(const ExperimentConfig& c)
{
    SampleOptions o;
    o.component = c.component;
    o.precision_bits = c.precision_bits;
    o.backend = parse_backend(c.backend);
    return o;
}

TranslationSurface surface_of(const ExperimentConfig& c)
{
    if (!c.input.empty()) return load_surface(c.input);
    return sample_random(stratum_of(c), c.seed, sample_options(c));
}

CountOptions count_options(const ExperimentConfig& c)
{
    CountOptions o;
    o.budget = static_cast<long>(tolerance(c, "budget", static_cast<double>(o.budget)));
    return o;
}

json strings(const std::vector<Rational>& v)
{
    json a = json::array();
    for (const Rational& q : v) a.push_back(to_string(q));
    return a;
}

json strings(const IntVec& v)
{
    json a = json::array();
    for (const BigInt& z : v) a.push_back(to_string(z));
    return a;
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows)
{
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) config_error("cannot write " + path);
    out << "# schema_version=" << kSchemaVersion << "\n" << header << "\n";
    for (const std::string& r : rows) out << r << "\n";
}

json surface_info(const TranslationSurface& s)
{
    return json{{"stratum", s.stratum().degrees}, {"stratum_name", s.stratum().name()}, {"genus", s.genus()},
                {"area", to_string(s.area())},    {"vertices", s.num_vertices()},
                {"triangles", s.triangulation().num_triangles()}, {"backend", std::string(backend_name(s.backend()))}};
}

IetQ iet_of(const ExperimentConfig& c)
{
    if (!c.perm.empty()) return IetQ(parse_perm(c.perm), parse_rationals(c.lengths));
    TranslationSurface s = surface_of(c);
    return first_return_iet(s, canonical_transversal(s));
}

json cmd_iet_induce(const ExperimentConfig& c)
{
    IetQ it = iet_of(c);
    IntMatrix product = IntMatrix::identity(it.size());
    long done = 0, top = 0;
    std::string stop = "steps";
    for (; done < c.steps; ++done) {
        try {
            auto r = rauzy_step(it);
            product = product * r.A;
            top += r.type == RauzyType::Top;
            it = r.next;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TieBreak) throw;
            stop = "tie";
            break;
        }
    }
    return json{{"steps", done},          {"top_steps", top},   {"bottom_steps", done - top},
                {"stopped_by", stop},     {"perm", it.perm().str()}, {"lengths", strings(it.lengths())},
                {"matrix_digest", product.digest()}};
}

json cmd_iet_orbit(const ExperimentConfig& c)
{
    IetQ it = iet_of(c);
    Rational x = c.x0.empty() ? it.total() * frac(500001, 1000003) : parse_q(c.x0);
    if (x < 0 || x >= it.total()) config_error("x0 outside the interval");
    std::vector<long> visits(it.size(), 0);
    for (long i = 0; i < c.N; ++i) {
        int a = it.label_at(x);
        ++visits[a];
        x += it.translation(a);
    }
    return json{{"N", c.N}, {"end_point", to_string(x)}, {"visits", visits}};
}

json cmd_homology_cycles(const ExperimentConfig& c)
{
    TranslationSurface s = surface_of(c);
    CycleModel m(s, canonical_transversal(s));
    json cycles = json::array(), omega = json::array();
    for (const IntVec& v : m.cycles()) cycles.push_back(strings(v));
    for (const IntVec& v : m.omega()) omega.push_back(strings(v));
    return json{{"genus", m.genus()}, {"labels", m.size()}, {"cycles", cycles}, {"intersection", omega}};
}

json cmd_homology_asymptotic(const ExperimentConfig& c)
{
    TranslationSurface s = surface_of(c);
    CycleModel m(s, canonical_transversal(s));
    std::vector<double> a = asymptotic_cycle(m, c.N);
    RatVec dual = dual_of_re_omega(m);
    double num = 0, den = 0;
    std::vector<double> d;
    for (size_t i = 0; i < a.size(); ++i) {
        d.push_back(to_double(dual[i]));
        num += (a[i] - d[i]) * (a[i] - d[i]);
        den += d[i] * d[i];
    }
    return json{{"N", c.N}, {"asymptotic_cycle", a}, {"dual_of_re_omega", d}, {"relative_error", std::sqrt(num / den)}};
}

json cmd_lyapunov_run(const ExperimentConfig& c)
{
    const Stratum st = stratum_of(c);
    ExponentOptions opt;
    opt.steps = c.steps;
    opt.tie_tol = tolerance(c, "tie_tol", opt.tie_tol);
    opt.max_std_error = tolerance(c, "max_std_error", 0);
    std::vector<ExponentEstimate> runs(c.seeds);
    parallel_for(c.seeds, worker_count(c.jobs), [&](long i) {
        runs[i] = cocycle_exponents(st, derive_seed(c.seed, static_cast<std::uint64_t>(i)), opt, c.component);
    });
    const size_t g = runs[0].values.size();
    std::vector<double> nu(g, 0), err(g, 0);
    std::vector<std::string> rows;
    json per_seed = json::array();
    for (int i = 0; i < c.seeds; ++i) {
        std::string row = std::to_string(i);
        for (size_t j = 0; j < g; ++j) {
            nu[j] += runs[i].values[j] / c.seeds;
            row += "," + std::to_string(runs[i].values[j]);
        }
        rows.push_back(row);
        per_seed.push_back(runs[i].values);
    }
    for (size_t j = 0; j < g; ++j) {
        if (c.seeds > 1) {
            double ss = 0;
            for (const auto& r : runs) ss += (r.values[j] - nu[j]) * (r.values[j] - nu[j]);
            err[j] = std::sqrt(ss / (c.seeds - 1) / c.seeds);
        } else {
            err[j] = runs[0].std_errors[j];
        }
    }
    std::string header = "seed";
    for (size_t j = 1; j <= g; ++j) header += ",nu" + std::to_string(j);
    write_csv(c.csv, header, rows);
    return json{{"stratum", st.degrees}, {"component", c.component}, {"nu", nu},
                {"stderr", err},         {"steps", c.steps},         {"per_seed", per_seed}};
}

json cmd_lyapunov_deviation(const ExperimentConfig& c)
{
    TranslationSurface s = surface_of(c);
    DeviationOptions opt;
    opt.log_n_max = c.log_n_max;
    opt.bounded_slope = tolerance(c, "bounded_slope", opt.bounded_slope);
    if (c.log_n_max <= 0 && c.precision_bits <= 30) opt.times = DeviationTimes::Orbit;
    DeviationReport r = deviation_experiment(s, static_cast<double>(c.N), opt);
    json levels = json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"dimension", l.dimension},
                          {"slope", l.degenerate ? json(nullptr) : json(l.slope)},
                          {"slope_error", l.degenerate ? json(nullptr) : json(l.slope_error)},
                          {"degenerate", l.degenerate}});
    return json{{"genus", r.genus},
                {"times", opt.times == DeviationTimes::Orbit ? "orbit" : "return-times"},
                {"log_n_max", r.log_n_max},
                {"points", r.points},
                {"levels", levels},
                {"flag", r.flag},
                {"bounded_at_genus", r.bounded_at_genus},
                {"lagrangian", lagrangian_check(r.flag, standard_symplectic_form(r.genus))}};
}

json cmd_count(const ExperimentConfig& c, const std::string& what)
{
    TranslationSurface s = surface_of(c);
    const CountOptions opt = count_options(c);
    const double disc = std::numbers::pi * c.L * c.L;
    if (what == "sc") {
        auto list = saddle_connections(s, c.L, opt);
        std::vector<std::string> rows;
        const double f = std::sqrt(to_double(s.length_scale_sq()));
        for (const auto& sc : list) {
            Vec2d v = to_double(sc.holonomy);
            std::ostringstream row;
            row.precision(17);
            row << sc.start << "," << sc.end << "," << v.x * f << "," << v.y * f << "," << sc.length;
            rows.push_back(row.str());
        }
        write_csv(c.csv, "start,end,x,y,length", rows);
        return json{{"L", c.L}, {"count", list.size()}, {"ratio", static_cast<double>(list.size()) / disc}};
    }
    if (what == "cyl") {
        auto cyl = cylinders(s, c.L, opt);
        json fam = json::object();
        for (const auto& f : cylinder_families(cyl)) {
            std::string key = std::to_string(f.size());
            fam[key] = fam.value(key, 0) + 1;
        }
        return json{{"L", c.L}, {"count", cyl.size()}, {"ratio", static_cast<double>(cyl.size()) / disc}, {"families", fam}};
    }
    auto groups = homologous_groups(s, c.L, opt);
    long twins = 0, pairs = 0;
    for (const auto& g : groups)
        if (g.size() > 1) {
            ++twins;
            pairs += static_cast<long>(g.size() * (g.size() - 1) / 2);
        }
    return json{{"L", c.L}, {"groups", groups.size()}, {"homologous_groups", twins}, {"homologous_pairs", pairs}};
}

json cmd_count_sv(const ExperimentConfig& c)
{
    const Stratum st = stratum_of(c);
    EstimateOptions opt;
    opt.sampling = sample_options(c);
    opt.counting = count_options(c);
    opt.jobs = c.jobs;
    auto e = siegel_veech_estimate(st, c.k, c.L, c.samples, c.seed, opt);
    std::vector<std::string> rows;
    for (size_t i = 0; i < e.values.size(); ++i) rows.push_back(std::to_string(i) + "," + std::to_string(e.values[i]));
    write_csv(c.csv, "sample,ratio", rows);
    json out{{"stratum", st.degrees}, {"k", c.k},          {"L", c.L},
             {"samples", e.samples},  {"estimate", e.mean}, {"stderr", e.std_error},
             {"anomalies", e.anomalies}};
    bool principal = true;
    for (int d : st.degrees) principal = principal && (d == 1 || (d == 0 && st.degrees.size() == 1));
    const double ref = tabulated_cyl_constant(st.genus(), c.k);
    if (principal && ref > 0) out["reference"] = ref * 6 / (std::numbers::pi * std::numbers::pi);
    return out;
}

json cmd_classify(const ExperimentConfig& c)
{
    TranslationSurface s = surface_of(c);
    ComponentLabel label = component_label(s);
    const Stratum st = s.stratum().without_marked();
    json spin = nullptr;
    if (st.all_even()) spin = parity_name(spin_parity(s));
    return json{{"stratum", st.degrees},
                {"genus", s.genus()},
                {"spin", spin},
                {"hyperelliptic", verdict_name(is_hyperelliptic(s).verdict)},
                {"component", label.tag}};
}

std::string file_contents(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ResultRecord run(const ExperimentConfig& c)
{
    c.validate();
    const auto t0 = std::chrono::steady_clock::now();
    ResultRecord r;
    r.schema_version = kSchemaVersion;
    r.software_version = kSoftwareVersion;
    r.config = config_to_json(c);
    std::string key = r.config.dump();
    if (!c.input.empty()) key += file_contents(c.input);
    r.inputs_digest = digest(key);
    std::string id = c.command;
    for (char& ch : id)
        if (ch == ' ') ch = '-';
    r.experiment_id = id + "-" + r.inputs_digest.substr(0, 8);

    const std::string& cmd = c.command;
    if (cmd == "surface build") {
        TranslationSurface s = normalize_area(build_from_polygon(parse_vectors(c.vectors), parse_ints(c.perm),
                                                                 parse_backend(c.backend)));
        r.metrics = surface_info(s);
        r.artifact = surface_to_json(s);
    } else if (cmd == "surface sample" || cmd == "surface info") {
        TranslationSurface s = surface_of(c);
        r.metrics = surface_info(s);
        if (cmd == "surface sample") r.artifact = surface_to_json(s);
    } else if (cmd == "iet induce") {
        r.metrics = cmd_iet_induce(c);
    } else if (cmd == "iet orbit") {
        r.metrics = cmd_iet_orbit(c);
    } else if (cmd == "homology cycles") {
        r.metrics = cmd_homology_cycles(c);
    } else if (cmd == "homology asymptotic") {
        r.metrics = cmd_homology_asymptotic(c);
    } else if (cmd == "lyapunov run") {
        r.metrics = cmd_lyapunov_run(c);
    } else if (cmd == "lyapunov deviation") {
        r.metrics = cmd_lyapunov_deviation(c);
    } else if (cmd == "count sv") {
        r.metrics = cmd_count_sv(c);
    } else if (cmd.rfind("count ", 0) == 0) {
        r.metrics = cmd_count(c, cmd.substr(6));
    } else {
        r.metrics = cmd_classify(c);
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!c.output.empty()) {
        std::ofstream out(c.output);
        if (!out) config_error("cannot write " + c.output);
        out << record_to_json(r).dump(2) << "\n";
    }
    return r;
}

ResultRecord replay(const ResultRecord& record, std::string* warning)
{
    ExperimentConfig c = config_from_json(record.config);
    if (record.software_version != kSoftwareVersion && warning)
        *warning = "VersionMismatch: record from " + record.software_version + ", running " + kSoftwareVersion;
    return run(c);
}

}  // namespace flatlab
