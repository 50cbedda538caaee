// nstar command line front end; talks to the engine only through nstar.h.

#include "nstar/nstar.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGuaranteedFailure = 1;
constexpr int kExitUsage = 2;

struct ApiError {
    nstar_status status;
    std::string message;
};

void check(nstar_status s) {
    if (s != NSTAR_OK) throw ApiError{s, nstar_last_error()};
}

struct StringDeleter {
    void operator()(char* s) const { nstar_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) { return std::string(OwnedString(s).get()); }

struct ConfigDeleter {
    void operator()(nstar_config* c) const { nstar_config_destroy(c); }
};
struct ValueDeleter {
    void operator()(nstar_value* v) const { nstar_value_destroy(v); }
};
using Config = std::unique_ptr<nstar_config, ConfigDeleter>;
using Value = std::unique_ptr<nstar_value, ValueDeleter>;

struct Options {
    std::size_t n = 3;
    std::string theta;
    std::uint64_t seed = 42;
    unsigned trials = 100;
    double tolerance = 1e-9;
    unsigned order = 6;
    std::string format = "text";
    std::string output;
    std::string config_path = "nstar.json";

    std::vector<std::string> args;
    // verify
    std::string claims;
    // spectrum / residual
    std::size_t k = 1;
    std::string nbar;
    std::string hamiltonian;
    int max_norm = -1;
    std::size_t points = 20;
    std::string coords = "1,2";
    // oracle
    std::size_t grid_points = 8;
    double period = 6.283185307179586;
    double budget = 1e8;
    std::vector<std::string> lattice_in;
    std::string lattice_out;
    bool sample = false;
};

// Values from the config file fill every flag the command line left unset.
void apply_config_file(const CLI::App& sub, Options& o) {
    const bool explicit_path = sub.count("--config") > 0;
    if (!std::filesystem::exists(o.config_path)) {
        if (explicit_path) throw CLI::ValidationError("--config", "file not found: " + o.config_path);
        return;
    }
    std::ifstream in(o.config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
    }
    auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
    try {
        if (j.contains("n") && unset("--n")) o.n = j["n"].get<std::size_t>();
        if (j.contains("theta") && unset("--theta")) {
            if (j["theta"].is_array()) {
                std::string s;
                for (const auto& t : j["theta"])
                    s += (s.empty() ? "" : ",") + (t.is_string() ? t.get<std::string>() : t.dump());
                o.theta = s;
            } else {
                o.theta = j["theta"].get<std::string>();
            }
        }
        if (j.contains("seed") && unset("--seed")) o.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("trials") && unset("--trials")) o.trials = j["trials"].get<unsigned>();
        if (j.contains("tolerance") && unset("--tolerance")) o.tolerance = j["tolerance"].get<double>();
        if (j.contains("order") && unset("--order")) o.order = j["order"].get<unsigned>();
        if (j.contains("format") && unset("--format")) o.format = j["format"].get<std::string>();
        if (j.contains("output") && unset("--output")) o.output = j["output"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", std::string("bad value: ") + e.what());
    }
    if (o.format != "text" && o.format != "json" && o.format != "csv")
        throw CLI::ValidationError("--format", "must be text, json or csv");
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw ApiError{NSTAR_ERR_IO, "cannot write '" + o.output + "'"};
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

Config make_config(const Options& o) {
    nstar_config* c = nullptr;
    check(nstar_config_create(o.n, o.theta.c_str(), &c));
    return Config(c);
}

std::vector<Value> parse_all(const Config& cfg, const std::vector<std::string>& exprs) {
    std::vector<Value> out;
    for (const auto& e : exprs) {
        nstar_value* v = nullptr;
        check(nstar_parse(cfg.get(), e.c_str(), &v));
        out.emplace_back(v);
    }
    return out;
}

std::vector<const nstar_value*> raw(const std::vector<Value>& vs) {
    std::vector<const nstar_value*> out;
    for (const auto& v : vs) out.push_back(v.get());
    return out;
}

std::string render_value(const Options& o, const Config& cfg, const nstar_value* v) {
    const std::string text = take([&] {
        char* s = nullptr;
        check(nstar_value_to_text(v, &s));
        return s;
    }());
    if (o.format != "json") return text + "\n";
    char* js = nullptr;
    check(nstar_value_to_json(v, &js));
    char* th = nullptr;
    check(nstar_config_theta_text(cfg.get(), &th));
    nlohmann::ordered_json j;
    j["n"] = o.n;
    j["theta"] = take(th);
    j["text"] = text;
    j["value"] = nlohmann::ordered_json::parse(take(js));
    return j.dump(2) + "\n";
}

std::vector<double> parse_csv_doubles(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw ApiError{NSTAR_ERR_INVALID_ARGUMENT, std::string("malformed ") + what + " '" + s + "'"};
        out.push_back(v);
    }
    return out;
}

std::vector<unsigned> parse_csv_unsigned(const std::string& s, const char* what) {
    std::vector<unsigned> out;
    for (double v : parse_csv_doubles(s, what)) {
        if (v < 0 || v != std::floor(v) || v > 1e6)
            throw ApiError{NSTAR_ERR_INVALID_ARGUMENT, std::string(what) + " entries must be non-negative integers"};
        out.push_back(static_cast<unsigned>(v));
    }
    return out;
}

std::string complex_text(double re, double im) {
    std::ostringstream out;
    out.precision(17);
    out << re;
    if (im != 0) out << (im < 0 ? " - " : " + ") << std::fabs(im) << "i";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ApiError{NSTAR_ERR_IO, "cannot read '" + path + "'"};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_star(const Options& o, bool conjugate) {
    const Config cfg = make_config(o);
    const auto vals = parse_all(cfg, o.args);
    const auto ptrs = raw(vals);
    nstar_value* out = nullptr;
    check((conjugate ? nstar_conj_star : nstar_star)(cfg.get(), ptrs.data(), ptrs.size(), &out));
    const Value result(out);
    emit(o, render_value(o, cfg, result.get()));
    return kExitOk;
}

int run_bracket(const Options& o) {
    const Config cfg = make_config(o);
    if (o.args.size() != o.n)
        throw ApiError{NSTAR_ERR_ARITY, "bracket takes f, h and " + std::to_string(o.n - 2) + " inner factors"};
    const auto vals = parse_all(cfg, o.args);
    const auto ptrs = raw(vals);
    nstar_value* out = nullptr;
    check(nstar_bracket(cfg.get(), ptrs[0], ptrs[1], ptrs.data() + 2, ptrs.size() - 2, &out));
    const Value result(out);
    emit(o, render_value(o, cfg, result.get()));
    return kExitOk;
}

int run_kernel(const Options& o) {
    const Config cfg = make_config(o);
    std::vector<double> freqs;
    for (const auto& a : o.args) {
        const auto v = parse_csv_doubles(a, "frequency vector");
        if (v.size() != o.n)
            throw ApiError{NSTAR_ERR_DOMAIN, "frequency vector '" + a + "' needs " + std::to_string(o.n) + " components"};
        freqs.insert(freqs.end(), v.begin(), v.end());
    }
    double re = 0, im = 0;
    check(nstar_kernel_exponent(cfg.get(), freqs.data(), o.args.size(), &re, &im));
    const double mre = std::exp(re) * std::cos(im), mim = std::exp(re) * std::sin(im);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["exponent"] = {{"re", re}, {"im", im}};
        j["multiplier"] = {{"re", mre}, {"im", mim}};
        emit(o, j.dump(2));
    } else {
        emit(o, "exponent = " + complex_text(re, im) + "\nmultiplier = " + complex_text(mre, mim) + "\n");
    }
    return kExitOk;
}

int run_omega(const Options& o) {
    if (o.n != 3) throw ApiError{NSTAR_ERR_DOMAIN, "omega is defined for n = 3"};
    if (o.args.size() != 2) throw ApiError{NSTAR_ERR_ARITY, "omega takes two vectors q and r"};
    const auto q = parse_csv_doubles(o.args[0], "vector"), r = parse_csv_doubles(o.args[1], "vector");
    if (q.size() != 3 || r.size() != 3) throw ApiError{NSTAR_ERR_DOMAIN, "omega vectors need three components"};
    double w[3];
    check(nstar_omega(q.data(), r.data(), w));
    if (o.format == "json") {
        emit(o, nlohmann::ordered_json{{"omega", {w[0], w[1], w[2]}}}.dump(2));
    } else {
        std::ostringstream s;
        s.precision(17);
        s << w[0] << "," << w[1] << "," << w[2] << "\n";
        emit(o, s.str());
    }
    return kExitOk;
}

int run_verify(const Options& o) {
    std::vector<std::string> names;
    if (!o.claims.empty()) {
        std::stringstream ss(o.claims);
        std::string item;
        while (std::getline(ss, item, ',')) names.push_back(item);
    }
    std::vector<const char*> cnames;
    for (const auto& s : names) cnames.push_back(s.c_str());
    char* json = nullptr;
    char* text = nullptr;
    int ok = 0;
    check(nstar_run_suite(o.seed, o.trials, o.tolerance, cnames.empty() ? nullptr : cnames.data(), cnames.size(),
                          &json, &text, &ok));
    const std::string report = take(json), summary = take(text);
    if (o.output.empty()) {
        std::cout << (o.format == "json" ? report : summary);
    } else {
        emit(o, report);
        std::cout << summary;
    }
    if (!ok) std::cerr << "error: a guaranteed claim failed\n";
    return ok ? kExitOk : kExitGuaranteedFailure;
}

int run_spectrum(const Options& o) {
    const Config cfg = make_config(o);
    const std::string ham = o.hamiltonian.empty() ? std::string() : read_file(o.hamiltonian);
    const char* ham_ptr = ham.empty() ? nullptr : ham.c_str();
    std::vector<std::vector<unsigned>> rows;
    if (o.max_norm >= 0) {
        for (int m = 0; m <= o.max_norm; ++m) {
            std::vector<unsigned> nb(o.n, 0);
            nb[0] = static_cast<unsigned>(m);
            rows.push_back(nb);
        }
    } else {
        rows.push_back(o.nbar.empty() ? std::vector<unsigned>(o.n, 0) : parse_csv_unsigned(o.nbar, "--nbar"));
    }
    std::vector<std::string> energies;
    for (const auto& nb : rows) {
        char* e = nullptr;
        check(nstar_energy(cfg.get(), ham_ptr, o.k, nb.data(), nb.size(), &e));
        energies.push_back(take(e));
    }
    auto norm = [](const std::vector<unsigned>& v) {
        unsigned s = 0;
        for (unsigned x : v) s += x;
        return s;
    };
    auto join = [](const std::vector<unsigned>& v, const char* sep) {
        std::string s;
        for (unsigned x : v) s += (s.empty() ? "" : sep) + std::to_string(x);
        return s;
    };
    std::ostringstream out;
    if (o.format == "json") {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            a.push_back({{"k", o.k}, {"nbar", rows[i]}, {"norm", norm(rows[i])}, {"energy", energies[i]}});
        out << a.dump(2) << "\n";
    } else if (o.format == "csv") {
        out << "k,nbar,norm,energy\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << o.k << ",\"" << join(rows[i], ",") << "\"," << norm(rows[i]) << "," << energies[i] << "\n";
    } else if (rows.size() == 1) {
        out << "E = " << energies[0] << "\n";
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) out << "|nbar| = " << norm(rows[i]) << "  E = " << energies[i] << "\n";
    }
    emit(o, out.str());
    return kExitOk;
}

int run_residual(const Options& o) {
    const Config cfg = make_config(o);
    const std::string ham = o.hamiltonian.empty() ? std::string() : read_file(o.hamiltonian);
    const auto ij = parse_csv_unsigned(o.coords, "--coords");
    if (ij.size() != 2) throw ApiError{NSTAR_ERR_INVALID_ARGUMENT, "--coords takes two indices i,j"};
    const nstar_format fmt =
        o.format == "json" ? NSTAR_FORMAT_JSON : (o.format == "csv" ? NSTAR_FORMAT_CSV : NSTAR_FORMAT_TEXT);
    char* out = nullptr;
    check(nstar_residual_report(cfg.get(), ham.empty() ? nullptr : ham.c_str(), static_cast<unsigned>(o.k), o.order,
                                o.points, o.seed, ij[0], ij[1], fmt, &out));
    emit(o, take(out));
    return kExitOk;
}

int run_oracle(const Options& o) {
    const Config cfg = make_config(o);
    if (!o.lattice_in.empty()) {
        if (o.lattice_out.empty()) throw ApiError{NSTAR_ERR_INVALID_ARGUMENT, "--lattice-in needs --lattice-out"};
        std::vector<const char*> paths;
        for (const auto& p : o.lattice_in) paths.push_back(p.c_str());
        check(nstar_grid_oracle_files(cfg.get(), paths.data(), paths.size(), o.lattice_out.c_str(), o.budget));
        emit(o, "wrote " + o.lattice_out + "\n");
        return kExitOk;
    }
    const auto vals = parse_all(cfg, o.args);
    const auto ptrs = raw(vals);
    if (o.sample) {
        if (ptrs.size() != 1 || o.lattice_out.empty())
            throw ApiError{NSTAR_ERR_INVALID_ARGUMENT, "--sample takes one wave expression and --lattice-out"};
        check(nstar_lattice_write(ptrs[0], o.grid_points, o.period, o.lattice_out.c_str()));
        emit(o, "wrote " + o.lattice_out + "\n");
        return kExitOk;
    }
    double err = 0;
    check(nstar_grid_oracle_compare(cfg.get(), ptrs.data(), ptrs.size(), o.grid_points, o.period, o.budget, &err));
    if (o.format == "json") {
        emit(o, nlohmann::ordered_json{{"points_per_axis", o.grid_points}, {"period", o.period},
                                       {"max_relative_error", err}}
                    .dump(2));
    } else {
        std::ostringstream s;
        s.precision(6);
        s << "max relative error = " << err << "\n";
        emit(o, s.str());
    }
    return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "Dimension (arity) n >= 3");
    sub->add_option("--theta", o.theta, "Comma-separated rational theta_1..theta_n (default all 1)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", o.output, "Write the result to this file");
    sub->add_option("--config", o.config_path, "JSON config file mirroring the flags");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact n-ary star products, identity audit and oscillator spectra"};
    app.require_subcommand(1);
    Options o;

    auto* star = app.add_subcommand("star", "Star product of n expressions");
    auto* conj = app.add_subcommand("conj", "Conjugate product m[exp(-P)(...)] of n expressions");
    auto* bracket = app.add_subcommand("bracket", "Bracket {f,h} with n-2 inner factors: f h g...");
    auto* kernel = app.add_subcommand("kernel", "Plane-wave kernel exponent for n frequency vectors");
    auto* omega = app.add_subcommand("omega", "Omega^{qr} (n = 3)");
    auto* verify = app.add_subcommand("verify", "Run the identity audit");
    auto* spectrum = app.add_subcommand("spectrum", "Oscillator energy E_{k,nbar}");
    auto* residual = app.add_subcommand("residual", "Ground-state residual table by truncation order");
    auto* oracle = app.add_subcommand("oracle", "Lattice (FFT) oracle for plane-wave products");

    for (auto* sub : {star, conj, bracket, kernel, omega, verify, spectrum, residual, oracle}) add_common(sub, o);
    for (auto* sub : {star, conj, bracket}) sub->add_option("exprs", o.args, "Expressions")->required();
    kernel->add_option("freqs", o.args, "Frequency vectors, e.g. 1,0,0")->required();
    omega->add_option("vectors", o.args, "q and r, e.g. 1,0,0 0,1,0")->required();

    verify->add_option("--seed", o.seed, "Suite seed");
    verify->add_option("--trials", o.trials, "Trials per claim")->check(CLI::PositiveNumber);
    verify->add_option("--tolerance", o.tolerance, "Tolerance for wave-engine claims");
    verify->add_option("--claims", o.claims, "Comma-separated claim ids (default all)");

    for (auto* sub : {spectrum, residual}) {
        sub->add_option("--k", o.k, "Mode index k");
        sub->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian JSON file");
    }
    spectrum->add_option("--nbar", o.nbar, "Comma-separated occupation numbers");
    spectrum->add_option("--max-norm", o.max_norm, "Tabulate |nbar| = 0..M");
    residual->add_option("--order", o.order, "Highest truncation order");
    residual->add_option("--points", o.points, "Number of sample points");
    residual->add_option("--seed", o.seed, "Sample point seed");
    residual->add_option("--coords", o.coords, "Complex coordinate indices i,j");

    oracle->add_option("exprs", o.args, "Wave expressions");
    oracle->add_option("--points-per-axis", o.grid_points, "Lattice points per axis");
    oracle->add_option("--period", o.period, "Lattice period L");
    oracle->add_option("--budget", o.budget, "Kernel-evaluation budget");
    oracle->add_option("--lattice-in", o.lattice_in, "Input lattice files, one per slot")->delimiter(',');
    oracle->add_option("--lattice-out", o.lattice_out, "Output lattice file");
    oracle->add_flag("--sample", o.sample, "Sample one wave expression to --lattice-out");

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        apply_config_file(*sub, o);
        if (sub == star) return run_star(o, false);
        if (sub == conj) return run_star(o, true);
        if (sub == bracket) return run_bracket(o);
        if (sub == kernel) return run_kernel(o);
        if (sub == omega) return run_omega(o);
        if (sub == verify) return run_verify(o);
        if (sub == spectrum) return run_spectrum(o);
        if (sub == residual) return run_residual(o);
        return run_oracle(o);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ApiError& e) {
        std::cerr << "error[" << nstar_status_name(e.status) << "]: " << e.message << "\n";
        return kExitUsage;
    }
}
