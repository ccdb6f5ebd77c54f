// bfun: command line front end for B-function evaluation, basis conversion,
// and two-range addition-theorem convergence studies.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bfn/addition.hpp"
#include "bfn/angular.hpp"
#include "bfn/basis_sets.hpp"
#include "bfn/bfunction.hpp"
#include "bfn/selfcheck.hpp"
#include "bfn/specfunc.hpp"
#include "bfn/types.hpp"

namespace {

constexpr const char* kSchemaVersion = "v1";

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

struct Field {
    std::string key;
    std::string text;
    bool quoted = false;
};

struct Record {
    std::vector<Field> fields;
    void add(const std::string& key, const std::string& v) {
        fields.push_back({key, v, true});
    }
    void add(const std::string& key, double v) {
        fields.push_back({key, fmt_double(v), false});
    }
    void add(const std::string& key, int v) {
        fields.push_back({key, fmt_int(v), false});
    }
    void add(const std::string& key, std::size_t v) {
        fields.push_back({key, fmt_int(static_cast<long long>(v)), false});
    }
};

std::string json_line(const Record& rec) {
    std::string out = "{";
    bool first = true;
    for (const auto& f : rec.fields) {
        if (!first) out += ",";
        first = false;
        out += "\"" + f.key + "\":";
        if (f.quoted)
            out += "\"" + f.text + "\"";
        else
            out += f.text;
    }
    out += "}";
    return out;
}

// CSV rows follow a fixed header; fields absent from a record print as blank.
std::string csv_header(const std::vector<std::string>& keys) {
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ",";
        out += keys[i];
    }
    return out;
}

std::string csv_line(const Record& rec, const std::vector<std::string>& keys) {
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ",";
        for (const auto& f : rec.fields)
            if (f.key == keys[i]) {
                out += f.text;
                break;
            }
    }
    return out;
}

std::vector<std::string> record_keys(const Record& rec) {
    std::vector<std::string> keys;
    keys.reserve(rec.fields.size());
    for (const auto& f : rec.fields) keys.push_back(f.key);
    return keys;
}

class Emitter {
  public:
    Emitter(std::string format, std::vector<std::string> keys)
        : csv_(format == "csv"), keys_(std::move(keys)) {
        if (csv_) std::cout << csv_header(keys_) << "\n";
    }
    void emit(const Record& rec) {
        std::cout << (csv_ ? csv_line(rec, keys_) : json_line(rec)) << "\n";
    }
    std::string render(const Record& rec) const {
        return (csv_ ? csv_line(rec, keys_) : json_line(rec)) + "\n";
    }

  private:
    bool csv_;
    std::vector<std::string> keys_;
};

bfn::Vector3 parse_point(const std::string& text) {
    bfn::Vector3 p;
    char trail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &p.x, &p.y, &p.z, &trail) != 3)
        throw std::domain_error("malformed point '" + text + "', expected x,y,z");
    return p;
}

struct GridSpec {
    bfn::Vector3 start, stop;
    int count = 0;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char trail = 0;
    int got = std::sscanf(text.c_str(), "%lf,%lf,%lf:%lf,%lf,%lf:%d%c", &g.start.x,
                          &g.start.y, &g.start.z, &g.stop.x, &g.stop.y, &g.stop.z,
                          &g.count, &trail);
    if (got != 7 || g.count < 1)
        throw std::domain_error("malformed grid '" + text +
                                "', expected x0,y0,z0:x1,y1,z1:N");
    return g;
}

std::vector<bfn::Vector3> grid_points(const GridSpec& g) {
    std::vector<bfn::Vector3> pts;
    pts.reserve(static_cast<std::size_t>(g.count));
    for (int i = 0; i < g.count; ++i) {
        double t = g.count == 1 ? 0.0 : static_cast<double>(i) / (g.count - 1);
        pts.push_back(g.start + t * (g.stop - g.start));
    }
    return pts;
}

unsigned worker_count(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("BFUN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
        else n = 1;
    }
    if (jobs < n) n = static_cast<unsigned>(jobs);
    return n == 0 ? 1 : n;
}

struct EvalOptions {
    std::string function;
    int n = 1, l = 0, m = 0;
    double alpha = 1.0, big_z = 1.0;
    double nu = 0.5, z_arg = 1.0;
    std::string point_text, grid_text;
};

bfn::ComplexValue eval_at(const EvalOptions& o, const bfn::Vector3& p) {
    using bfn::RadialBasisKind;
    if (o.function == "b")
        return bfn::b_eval({o.n, o.l, o.m, o.alpha}, p);
    if (o.function == "ylm") {
        if (p.norm() == 0.0)
            throw std::domain_error("ylm requires a nonzero point");
        auto sc = bfn::to_spherical(p);
        return bfn::spherical_harmonic({o.l, o.m}, sc.theta, sc.phi);
    }
    if (o.function == "solid")
        return bfn::solid_harmonic({o.l, o.m}, p);
    RadialBasisKind kind;
    double scale = o.alpha;
    if (o.function == "sto") kind = RadialBasisKind::slater;
    else if (o.function == "hydrogenic") { kind = RadialBasisKind::hydrogenic; scale = o.big_z; }
    else if (o.function == "lambda") kind = RadialBasisKind::lambda;
    else if (o.function == "sturmian") kind = RadialBasisKind::sturmian;
    else throw std::domain_error("unknown function '" + o.function + "'");
    return bfn::eval_direct({kind, o.n, o.l, o.m, scale}, p);
}

void eval_index_fields(const EvalOptions& o, Record& rec) {
    if (o.function == "ylm" || o.function == "solid") {
        rec.add("l", o.l);
        rec.add("m", o.m);
        return;
    }
    rec.add("n", o.n);
    rec.add("l", o.l);
    rec.add("m", o.m);
    if (o.function == "hydrogenic")
        rec.add("Z", o.big_z);
    else
        rec.add("alpha", o.alpha);
}

int run_eval(const EvalOptions& o, const std::string& format) {
    if (o.function == "rbf") {
        Record rec;
        rec.add("schema_version", std::string(kSchemaVersion));
        rec.add("command", std::string("eval"));
        rec.add("function", o.function);
        rec.add("nu", o.nu);
        rec.add("z", o.z_arg);
        rec.add("re", bfn::reduced_bessel(o.nu, o.z_arg));
        rec.add("im", 0.0);
        Emitter em(format, record_keys(rec));
        em.emit(rec);
        return 0;
    }
    if (o.point_text.empty() == o.grid_text.empty())
        throw std::domain_error("eval requires exactly one of --point or --grid");

    auto make_record = [&](const bfn::Vector3& p) {
        bfn::ComplexValue v = eval_at(o, p);
        Record rec;
        rec.add("schema_version", std::string(kSchemaVersion));
        rec.add("command", std::string("eval"));
        rec.add("function", o.function);
        eval_index_fields(o, rec);
        rec.add("x", p.x);
        rec.add("y", p.y);
        rec.add("z", p.z);
        rec.add("re", v.real());
        rec.add("im", v.imag());
        return rec;
    };

    if (!o.point_text.empty()) {
        Record rec = make_record(parse_point(o.point_text));
        Emitter em(format, record_keys(rec));
        em.emit(rec);
        return 0;
    }

    auto pts = grid_points(parse_grid(o.grid_text));
    Record probe = make_record(pts.front());
    Emitter em(format, record_keys(probe));
    std::vector<std::string> lines(pts.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string fail_msg;
    std::mutex fail_mutex;
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= pts.size() || failed.load()) break;
            try {
                lines[i] = em.render(make_record(pts[i]));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(fail_mutex);
                failed.store(true);
                fail_msg = e.what();
                break;
            }
        }
    };
    unsigned nw = worker_count(pts.size());
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < nw; ++t) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
    if (failed.load()) throw std::domain_error(fail_msg);
    for (const auto& line : lines) std::cout << line;
    return 0;
}

struct ExpandOptions {
    std::string basis;
    int n = 1, l = 0, m = 0;
    double alpha = 1.0, big_z = 1.0;
};

int run_expand(const ExpandOptions& o, const std::string& format) {
    using bfn::RadialBasisKind;
    RadialBasisKind kind;
    double scale = o.alpha;
    if (o.basis == "sto") kind = RadialBasisKind::slater;
    else if (o.basis == "hydrogenic") { kind = RadialBasisKind::hydrogenic; scale = o.big_z; }
    else if (o.basis == "lambda") kind = RadialBasisKind::lambda;
    else if (o.basis == "sturmian") kind = RadialBasisKind::sturmian;
    else throw std::domain_error("unknown basis '" + o.basis + "'");

    bfn::BExpansion ex = bfn::to_b_expansion({kind, o.n, o.l, o.m, scale});
    std::vector<Record> recs;
    for (std::size_t i = 0; i < ex.terms.size(); ++i) {
        const auto& t = ex.terms[i];
        Record rec;
        rec.add("schema_version", std::string(kSchemaVersion));
        rec.add("command", std::string("expand"));
        rec.add("basis", o.basis);
        rec.add("basis_n", o.n);
        rec.add("basis_l", o.l);
        rec.add("basis_m", o.m);
        rec.add("term", i);
        rec.add("coeff_re", t.coeff.real());
        rec.add("coeff_im", t.coeff.imag());
        rec.add("n", t.n);
        rec.add("l", t.ell);
        rec.add("m", t.m);
        rec.add("alpha", ex.alpha);
        recs.push_back(std::move(rec));
    }
    if (recs.empty()) return 0;
    Emitter em(format, record_keys(recs.front()));
    for (const auto& rec : recs) em.emit(rec);
    return 0;
}

struct AdditionOptions {
    int n = 1, l = 0, m = 0;
    double alpha = 1.0;
    std::string r_small_text, r_large_text;
    int lmax = 20;
    bool adaptive = false;
    double tol = 1e-10;
    std::string table_text;
};

std::vector<int> parse_cutoffs(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::domain_error("malformed cutoff list '" + text + "'");
        }
    }
    if (out.empty()) throw std::domain_error("empty cutoff list");
    return out;
}

int run_addition(const AdditionOptions& o, const std::string& format) {
    bfn::BIndex idx{o.n, o.l, o.m, o.alpha};
    bfn::Vector3 rs = parse_point(o.r_small_text);
    bfn::Vector3 rl = parse_point(o.r_large_text);
    bfn::TruncationSpec trunc{o.lmax, o.tol,
                              o.adaptive ? bfn::TruncationMode::adaptive
                                         : bfn::TruncationMode::fixed_order};
    auto [value, report] = bfn::b_addition(idx, rs, rl, trunc);

    const std::vector<std::string> keys = {
        "schema_version", "command", "record", "n", "l", "m", "alpha",
        "r_small_x", "r_small_y", "r_small_z", "r_large_x", "r_large_y",
        "r_large_z", "mode", "lmax", "tol", "cutoff", "partial_re",
        "partial_im", "error", "value_re", "value_im", "reference_re",
        "reference_im", "rel_error", "converged_at"};
    Emitter em(format, keys);

    double reference_re = 0.0, reference_im = 0.0;
    if (report.reference) {
        reference_re = report.reference->real();
        reference_im = report.reference->imag();
    }

    Record summary;
    summary.add("schema_version", std::string(kSchemaVersion));
    summary.add("command", std::string("addition"));
    summary.add("record", std::string("summary"));
    summary.add("n", o.n);
    summary.add("l", o.l);
    summary.add("m", o.m);
    summary.add("alpha", o.alpha);
    summary.add("r_small_x", rs.x);
    summary.add("r_small_y", rs.y);
    summary.add("r_small_z", rs.z);
    summary.add("r_large_x", rl.x);
    summary.add("r_large_y", rl.y);
    summary.add("r_large_z", rl.z);
    summary.add("mode", std::string(o.adaptive ? "adaptive" : "fixed_order"));
    summary.add("lmax", o.lmax);
    summary.add("tol", o.tol);
    summary.add("value_re", value.real());
    summary.add("value_im", value.imag());
    summary.add("reference_re", reference_re);
    summary.add("reference_im", reference_im);
    summary.add("rel_error", report.errors.empty() ? 0.0 : report.errors.back());
    if (report.converged_at) summary.add("converged_at", *report.converged_at);
    em.emit(summary);

    for (std::size_t i = 0; i < report.partial_values.size(); ++i) {
        Record shell;
        shell.add("schema_version", std::string(kSchemaVersion));
        shell.add("command", std::string("addition"));
        shell.add("record", std::string("shell"));
        shell.add("cutoff", i);
        shell.add("partial_re", report.partial_values[i].real());
        shell.add("partial_im", report.partial_values[i].imag());
        shell.add("error", report.errors[i]);
        em.emit(shell);
    }

    if (!o.table_text.empty()) {
        auto cutoffs = parse_cutoffs(o.table_text);
        auto rows = bfn::convergence_table(idx, {{rs, rl}}, cutoffs);
        for (const auto& row : rows) {
            Record rec;
            rec.add("schema_version", std::string(kSchemaVersion));
            rec.add("command", std::string("addition"));
            rec.add("record", std::string("table"));
            rec.add("cutoff", row.cutoff);
            rec.add("value_re", row.value.real());
            rec.add("value_im", row.value.imag());
            rec.add("reference_re", row.reference.real());
            rec.add("reference_im", row.reference.imag());
            rec.add("rel_error", row.rel_error);
            em.emit(rec);
        }
    }

    if (o.adaptive && !report.converged_at) {
        std::cerr << "error: outer expansion did not converge to " << o.tol
                  << " within lmax " << o.lmax << "\n";
        return 2;
    }
    return 0;
}

int run_selfcheck(bool quick, bool inject_fault) {
    if (inject_fault)
        bfn::gaunt_cache::inject_for_testing({1, 0, 1, 0, 2, 0}, 0.25);
    auto results = bfn::selfcheck_run(quick);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.group << ": " << r.detail
                  << "\n";
    }
    std::cout << (all_pass ? "selfcheck OK" : "selfcheck FAILED") << "\n";
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"B-function toolkit: evaluation, basis conversion, addition theorem"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "json";
    std::string cache_dir;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", cache_dir,
                   "directory holding the Gaunt coefficient snapshot");

    EvalOptions eo;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a single function");
    eval_cmd->add_option("--function", eo.function, "function kind")
        ->required()
        ->check(CLI::IsMember({"b", "rbf", "sto", "hydrogenic", "lambda",
                               "sturmian", "ylm", "solid"}));
    eval_cmd->add_option("--n", eo.n, "principal index");
    eval_cmd->add_option("--l", eo.l, "angular momentum");
    eval_cmd->add_option("--m", eo.m, "magnetic index");
    eval_cmd->add_option("--alpha", eo.alpha, "exponential scale");
    eval_cmd->add_option("--Z", eo.big_z, "nuclear charge (hydrogenic)");
    eval_cmd->add_option("--nu", eo.nu, "half-integer order (rbf)");
    eval_cmd->add_option("--z", eo.z_arg, "argument (rbf)");
    eval_cmd->add_option("--point", eo.point_text, "evaluation point x,y,z");
    eval_cmd->add_option("--grid", eo.grid_text,
                         "grid spec x0,y0,z0:x1,y1,z1:N");

    ExpandOptions xo;
    auto* expand_cmd =
        app.add_subcommand("expand", "print a finite B-function expansion");
    expand_cmd->add_option("--basis", xo.basis, "source basis kind")
        ->required()
        ->check(CLI::IsMember({"sto", "hydrogenic", "lambda", "sturmian"}));
    expand_cmd->add_option("--n", xo.n, "principal index");
    expand_cmd->add_option("--l", xo.l, "angular momentum");
    expand_cmd->add_option("--m", xo.m, "magnetic index");
    expand_cmd->add_option("--alpha", xo.alpha, "exponential scale");
    expand_cmd->add_option("--Z", xo.big_z, "nuclear charge (hydrogenic)");

    AdditionOptions ao;
    auto* add_cmd = app.add_subcommand(
        "addition", "two-range addition theorem convergence study");
    add_cmd->add_option("--n", ao.n, "principal index");
    add_cmd->add_option("--l", ao.l, "angular momentum");
    add_cmd->add_option("--m", ao.m, "magnetic index");
    add_cmd->add_option("--alpha", ao.alpha, "exponential scale");
    add_cmd->add_option("--r-small", ao.r_small_text, "inner displacement x,y,z")
        ->required();
    add_cmd->add_option("--r-large", ao.r_large_text, "outer displacement x,y,z")
        ->required();
    add_cmd->add_option("--lmax", ao.lmax, "outer angular cutoff");
    add_cmd->add_flag("--adaptive", ao.adaptive, "stop at relative tolerance");
    add_cmd->add_option("--tol", ao.tol, "adaptive relative tolerance");
    add_cmd->add_option("--table", ao.table_text, "comma separated cutoff list");

    bool quick = false, inject_fault = false;
    auto* check_cmd =
        app.add_subcommand("selfcheck", "run the embedded invariant suite");
    check_cmd->add_flag("--quick", quick, "reduced ranges, < 10 s");
    check_cmd->add_flag("--inject-gaunt-fault", inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        std::filesystem::path cache_file;
        if (!cache_dir.empty()) {
            cache_file = std::filesystem::path(cache_dir) / "gaunt.bfgt";
            std::filesystem::create_directories(cache_dir);
            bfn::gaunt_cache::load(cache_file.string());
        }
        int rc = 0;
        if (app.got_subcommand(eval_cmd)) rc = run_eval(eo, format);
        else if (app.got_subcommand(expand_cmd)) rc = run_expand(xo, format);
        else if (app.got_subcommand(add_cmd)) rc = run_addition(ao, format);
        else rc = run_selfcheck(quick, inject_fault);
        if (!cache_dir.empty() && rc == 0)
            bfn::gaunt_cache::save(cache_file.string());
        return rc;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
