#include "nstar/nstar.h"

#include "nstar/auditor.hpp"
#include "nstar/errors.hpp"
#include "nstar/expression.hpp"
#include "nstar/oscillator.hpp"
#include "nstar/root2.hpp"
#include "nstar/star.hpp"
#include "nstar/wave.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

struct nstar_config {
    nstar::ThetaConfig cfg;
};

struct nstar_value {
    nstar::LoweredValue v;
};

namespace {

struct LastError {
    std::string message;
    std::size_t line = 0;
    std::size_t column = 0;
};

thread_local LastError last_error;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

nstar_status fail(nstar_status s, std::string msg, std::size_t line = 0, std::size_t column = 0) {
    last_error = {std::move(msg), line, column};
    return s;
}

template <class F>
nstar_status guard(F&& body) {
    last_error = {};
    try {
        body();
        return NSTAR_OK;
    } catch (const nstar::ParseError& e) {
        return fail(NSTAR_ERR_PARSE, e.what(), e.line(), e.column());
    } catch (const nstar::DomainError& e) {
        return fail(NSTAR_ERR_DOMAIN, e.what());
    } catch (const nstar::ArityError& e) {
        return fail(NSTAR_ERR_ARITY, e.what());
    } catch (const nstar::BudgetError& e) {
        return fail(NSTAR_ERR_BUDGET, e.what());
    } catch (const IoError& e) {
        return fail(NSTAR_ERR_IO, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(NSTAR_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(NSTAR_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(NSTAR_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(NSTAR_ERR_INTERNAL, "unknown exception");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<const nstar::LoweredValue*> collect(const nstar_value* const* factors, std::size_t count) {
    require(factors != nullptr || count == 0, "factors is null");
    std::vector<const nstar::LoweredValue*> out;
    for (std::size_t i = 0; i < count; ++i) {
        require(factors[i] != nullptr, "factor is null");
        out.push_back(&factors[i]->v);
    }
    return out;
}

nstar::LoweredValue star_values(const std::vector<const nstar::LoweredValue*>& fs, const nstar::ThetaConfig& cfg) {
    if (fs.size() != cfg.n()) {
        throw nstar::ArityError("expected " + std::to_string(cfg.n()) + " factors, got " + std::to_string(fs.size()));
    }
    bool any_wave = false, any_poly = false;
    for (const auto* f : fs) (f->is_wave ? any_wave : any_poly) = true;
    if (any_wave && any_poly) throw nstar::DomainError("cannot mix polynomial and wave factors");
    nstar::LoweredValue out;
    if (any_wave) {
        std::vector<nstar::WaveSum> ws;
        for (const auto* f : fs) {
            if (f->wave.dimension() != cfg.n()) throw nstar::DomainError("wave dimension does not match n");
            ws.push_back(f->wave);
        }
        out.is_wave = true;
        out.wave = nstar::star_waves(ws, cfg);
    } else {
        std::vector<nstar::Root2Polynomial> ps;
        for (const auto* f : fs) {
            if (f->poly.dimension() != cfg.n()) throw nstar::DomainError("polynomial dimension does not match n");
            ps.push_back(f->poly);
        }
        out.poly = nstar::star_n(ps, cfg);
    }
    return out;
}

nstar_value* wrap(nstar::LoweredValue v) { return new nstar_value{std::move(v)}; }

nstar::HamiltonianSpec hamiltonian(const nstar::ThetaConfig& cfg, const char* json_text) {
    if (json_text == nullptr || *json_text == '\0') {
        nstar::HamiltonianSpec spec;
        spec.n = cfg.n();
        return spec;
    }
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("n")) j["n"] = cfg.n();
    if (j.at("n").get<std::size_t>() != cfg.n()) throw nstar::DomainError("hamiltonian dimension does not match n");
    return nstar::HamiltonianSpec::from_json(j);
}

nstar::Lattice read_lattice_file(const char* path) {
    require(path != nullptr, "path is null");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open '") + path + "'");
    return nstar::read_lattice(in);
}

void write_lattice_file(const char* path, const nstar::Lattice& lat) {
    require(path != nullptr, "path is null");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(std::string("cannot create '") + path + "'");
    nstar::write_lattice(out, lat);
    if (!out) throw IoError(std::string("write failed for '") + path + "'");
}

}  // namespace

extern "C" {

const char* nstar_version(void) { return "1.0.0"; }

const char* nstar_status_name(nstar_status status) {
    switch (status) {
        case NSTAR_OK: return "NSTAR_OK";
        case NSTAR_ERR_DOMAIN: return "NSTAR_ERR_DOMAIN";
        case NSTAR_ERR_ARITY: return "NSTAR_ERR_ARITY";
        case NSTAR_ERR_PARSE: return "NSTAR_ERR_PARSE";
        case NSTAR_ERR_BUDGET: return "NSTAR_ERR_BUDGET";
        case NSTAR_ERR_INVALID_ARGUMENT: return "NSTAR_ERR_INVALID_ARGUMENT";
        case NSTAR_ERR_IO: return "NSTAR_ERR_IO";
        case NSTAR_ERR_INTERNAL: return "NSTAR_ERR_INTERNAL";
    }
    return "NSTAR_ERR_UNKNOWN";
}

const char* nstar_last_error(void) { return last_error.message.c_str(); }

void nstar_last_error_position(size_t* line, size_t* column) {
    if (line) *line = last_error.line;
    if (column) *column = last_error.column;
}

void nstar_string_free(char* s) { std::free(s); }

nstar_status nstar_config_create(size_t n, const char* theta_csv, nstar_config** out) {
    return guard([&] {
        require(out != nullptr, "out is null");
        *out = nullptr;
        nstar::ThetaConfig cfg = (theta_csv == nullptr || *theta_csv == '\0') ? nstar::ThetaConfig::ones(n)
                                                                              : nstar::ThetaConfig::parse(n, theta_csv);
        *out = new nstar_config{std::move(cfg)};
    });
}

void nstar_config_destroy(nstar_config* cfg) { delete cfg; }

size_t nstar_config_n(const nstar_config* cfg) { return cfg ? cfg->cfg.n() : 0; }

nstar_status nstar_config_theta_text(const nstar_config* cfg, char** out) {
    return guard([&] {
        require(cfg && out, "null argument");
        std::string s;
        for (const auto& t : cfg->cfg.theta()) s += (s.empty() ? "" : ",") + nstar::rational_to_string(t);
        *out = dup(s);
    });
}

nstar_status nstar_parse(const nstar_config* cfg, const char* text, nstar_value** out) {
    return guard([&] {
        require(cfg && text && out, "null argument");
        *out = nullptr;
        *out = wrap(nstar::evaluate_expression(text, cfg->cfg.n()));
    });
}

nstar_status nstar_expression_normalize(const nstar_config* cfg, const char* text, char** out) {
    return guard([&] {
        require(cfg && text && out, "null argument");
        *out = dup(nstar::print(nstar::parse_expression(text, cfg->cfg.n())));
    });
}

void nstar_value_destroy(nstar_value* v) { delete v; }

int nstar_value_is_wave(const nstar_value* v) { return v && v->v.is_wave ? 1 : 0; }

nstar_status nstar_value_to_text(const nstar_value* v, char** out) {
    return guard([&] {
        require(v && out, "null argument");
        *out = dup(v->v.is_wave ? nstar::to_string(v->v.wave) : nstar::to_string(v->v.poly));
    });
}

nstar_status nstar_value_to_json(const nstar_value* v, char** out) {
    return guard([&] {
        require(v && out, "null argument");
        *out = dup((v->v.is_wave ? nstar::to_json(v->v.wave) : nstar::to_json(v->v.poly)).dump());
    });
}

nstar_status nstar_star(const nstar_config* cfg, const nstar_value* const* factors, size_t count,
                        nstar_value** out) {
    return guard([&] {
        require(cfg && out, "null argument");
        *out = nullptr;
        *out = wrap(star_values(collect(factors, count), cfg->cfg));
    });
}

nstar_status nstar_conj_star(const nstar_config* cfg, const nstar_value* const* factors, size_t count,
                             nstar_value** out) {
    return guard([&] {
        require(cfg && out, "null argument");
        *out = nullptr;
        *out = wrap(star_values(collect(factors, count), cfg->cfg.negated()));
    });
}

nstar_status nstar_bracket(const nstar_config* cfg, const nstar_value* f, const nstar_value* h,
                           const nstar_value* const* middle, size_t middle_count, nstar_value** out) {
    return guard([&] {
        require(cfg && f && h && out, "null argument");
        *out = nullptr;
        const auto mid = collect(middle, middle_count);
        std::vector<const nstar::LoweredValue*> a{&f->v}, b{&h->v};
        a.insert(a.end(), mid.begin(), mid.end());
        b.insert(b.end(), mid.begin(), mid.end());
        a.push_back(&h->v);
        b.push_back(&f->v);
        nstar::LoweredValue x = star_values(a, cfg->cfg);
        const nstar::LoweredValue y = star_values(b, cfg->cfg);
        if (x.is_wave) {
            x.wave += y.wave.scaled(-1.0);
        } else {
            x.poly -= y.poly;
        }
        *out = wrap(std::move(x));
    });
}

nstar_status nstar_kernel_exponent(const nstar_config* cfg, const double* freqs, size_t count, double* re,
                                   double* im) {
    return guard([&] {
        require(cfg && freqs && re && im, "null argument");
        const std::size_t n = cfg->cfg.n();
        if (count != n) throw nstar::ArityError("expected " + std::to_string(n) + " frequency vectors");
        std::vector<nstar::Frequency> fs;
        for (std::size_t j = 0; j < count; ++j) fs.emplace_back(freqs + j * n, freqs + (j + 1) * n);
        const auto k = nstar::kernel_exponent(fs, cfg->cfg);
        *re = k.real();
        *im = k.imag();
    });
}

nstar_status nstar_omega(const double q[3], const double r[3], double out[3]) {
    return guard([&] {
        require(q && r && out, "null argument");
        const auto w = nstar::omega(std::span<const double>(q, 3), std::span<const double>(r, 3));
        for (int i = 0; i < 3; ++i) out[i] = w[static_cast<std::size_t>(i)];
    });
}

nstar_status nstar_grid_oracle_compare(const nstar_config* cfg, const nstar_value* const* factors, size_t count,
                                       size_t points_per_axis, double period, double budget,
                                       double* max_relative_error) {
    return guard([&] {
        require(cfg && max_relative_error, "null argument");
        const auto fs = collect(factors, count);
        for (const auto* f : fs)
            if (!f->is_wave) throw nstar::DomainError("lattice oracle needs wave factors");
        const nstar::GridSpec spec{cfg->cfg.n(), points_per_axis, period};
        std::vector<nstar::Lattice> lattices;
        for (const auto* f : fs) lattices.push_back(nstar::sample_on_grid(f->wave, spec));
        const nstar::LoweredValue exact = star_values(fs, cfg->cfg);
        const nstar::Lattice grid = nstar::grid_oracle_star(lattices, spec, cfg->cfg, budget);
        *max_relative_error = nstar::max_relative_error(grid, nstar::sample_on_grid(exact.wave, spec));
    });
}

nstar_status nstar_lattice_write(const nstar_value* wave, size_t points_per_axis, double period, const char* path) {
    return guard([&] {
        require(wave != nullptr, "null argument");
        if (!wave->v.is_wave) throw nstar::DomainError("lattice sampling needs a wave value");
        const nstar::GridSpec spec{wave->v.wave.dimension(), points_per_axis, period};
        write_lattice_file(path, nstar::sample_on_grid(wave->v.wave, spec));
    });
}

nstar_status nstar_grid_oracle_files(const nstar_config* cfg, const char* const* input_paths, size_t count,
                                     const char* output_path, double budget) {
    return guard([&] {
        require(cfg && input_paths, "null argument");
        std::vector<nstar::Lattice> lattices;
        for (std::size_t i = 0; i < count; ++i) lattices.push_back(read_lattice_file(input_paths[i]));
        if (lattices.size() != cfg->cfg.n()) throw nstar::ArityError("expected one lattice file per slot");
        const nstar::GridSpec spec = lattices.front().spec;
        for (const auto& l : lattices)
            if (!(l.spec == spec)) throw nstar::DomainError("lattice files have different shapes");
        if (spec.n != cfg->cfg.n()) throw nstar::DomainError("lattice dimension does not match n");
        write_lattice_file(output_path, nstar::grid_oracle_star(lattices, spec, cfg->cfg, budget));
    });
}

nstar_status nstar_lattice_compare(const char* path_a, const char* path_b, double* max_relative_error) {
    return guard([&] {
        require(max_relative_error != nullptr, "null argument");
        const nstar::Lattice a = read_lattice_file(path_a);
        const nstar::Lattice b = read_lattice_file(path_b);
        if (!(a.spec == b.spec)) throw nstar::DomainError("lattice files have different shapes");
        *max_relative_error = nstar::max_relative_error(a, b);
    });
}

nstar_status nstar_run_suite(uint64_t seed, unsigned trials, double tolerance, const char* const* claims,
                             size_t count, char** report_json, char** report_text, int* guaranteed_ok) {
    return guard([&] {
        if (trials == 0) throw nstar::DomainError("trials must be at least 1");
        std::vector<nstar::ClaimId> ids;
        if (claims == nullptr || count == 0) {
            ids.assign(nstar::all_claims().begin(), nstar::all_claims().end());
        } else {
            for (std::size_t i = 0; i < count; ++i) {
                require(claims[i] != nullptr, "claim name is null");
                ids.push_back(nstar::claim_from_name(claims[i]));
            }
        }
        const auto reports = nstar::run_claims(ids, seed, trials, tolerance);
        if (report_json) *report_json = dup(nstar::to_json(reports).dump(2) + "\n");
        if (report_text) *report_text = dup(nstar::to_text(reports));
        if (guaranteed_ok) *guaranteed_ok = nstar::guaranteed_ok(reports) ? 1 : 0;
    });
}

nstar_status nstar_claim_names(char** out) {
    return guard([&] {
        require(out != nullptr, "null argument");
        std::string s;
        for (auto id : nstar::all_claims()) s += std::string(nstar::claim_name(id)) + "\n";
        *out = dup(s);
    });
}

nstar_status nstar_energy(const nstar_config* cfg, const char* hamiltonian_json, size_t k, const unsigned* nbar,
                          size_t nbar_len, char** out) {
    return guard([&] {
        require(cfg && out && (nbar || nbar_len == 0), "null argument");
        const nstar::HamiltonianSpec spec = hamiltonian(cfg->cfg, hamiltonian_json);
        const nstar::QuantumNumber q{std::vector<unsigned>(nbar, nbar + nbar_len)};
        *out = dup(nstar::rational_to_string(nstar::energy(k, q, cfg->cfg, spec)));
    });
}

nstar_status nstar_residual_report(const nstar_config* cfg, const char* hamiltonian_json, unsigned k,
                                   unsigned order, size_t points, uint64_t seed, size_t coord_i, size_t coord_j,
                                   nstar_format format, char** out) {
    return guard([&] {
        require(cfg && out, "null argument");
        const nstar::HamiltonianSpec spec = hamiltonian(cfg->cfg, hamiltonian_json);
        const auto pts = nstar::default_sample_points(cfg->cfg.n(), points, seed);
        const auto report = nstar::residual_report(spec, cfg->cfg, k, order, pts, coord_i, coord_j);
        switch (format) {
            case NSTAR_FORMAT_JSON: *out = dup(nstar::to_json(report).dump(2) + "\n"); break;
            case NSTAR_FORMAT_CSV: *out = dup(nstar::to_csv(report)); break;
            default: *out = dup(nstar::to_text(report)); break;
        }
    });
}

}  // extern "C"
