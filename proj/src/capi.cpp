#include "fnlslab.h"

#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fnlslab/exponents.hpp"
#include "fnlslab/grid.hpp"
#include "fnlslab/modulation.hpp"
#include "fnlslab/propagator.hpp"
#include "fnlslab/scenarios.hpp"
#include "fnlslab/solver.hpp"
#include "fnlslab/verify.hpp"

using namespace fnls;

struct fnls_grid {
    GridPtr grid;
};
struct fnls_field {
    Field field;
};
struct fnls_partition {
    ModulationPartition part;
};

namespace {

thread_local std::string g_last_error;

fnls_status fail(fnls_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
fnls_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(FNLS_EINVAL, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(FNLS_EIO, e.what());
    } catch (const std::exception& e) {
        return fail(FNLS_ERUNTIME, e.what());
    }
}

EquationSpec equation_from(const char* kind, int dim, double beta,
                           double alpha_or_nu, int sign, double coupling) {
    EquationSpec eq;
    std::string k = kind ? kind : "";
    if (k == "power") {
        eq.kind = NonlinearityKind::power;
        eq.alpha = alpha_or_nu;
    } else if (k == "hartree") {
        eq.kind = NonlinearityKind::hartree;
        eq.nu = alpha_or_nu;
    } else {
        throw std::invalid_argument("kind must be power or hartree");
    }
    eq.n = dim;
    eq.beta = beta;
    eq.sign = sign;
    eq.coupling = coupling;
    eq.validate_raw();
    return eq;
}

}  // namespace

extern "C" {

const char* fnls_version(void) { return version_string(); }

const char* fnls_last_error(void) { return g_last_error.c_str(); }

fnls_status fnls_grid_create(int dim, double half_extent, int points_per_axis,
                             fnls_grid** out) {
    if (!out) return fail(FNLS_EINVAL, "out is NULL");
    return guarded([&] {
        *out = new fnls_grid{make_grid(dim, half_extent, points_per_axis)};
        return FNLS_OK;
    });
}

void fnls_grid_free(fnls_grid* grid) { delete grid; }

fnls_status fnls_grid_info(const fnls_grid* grid, int* dim,
                           double* half_extent, int* points, double* dx) {
    if (!grid) return fail(FNLS_EINVAL, "grid is NULL");
    if (dim) *dim = grid->grid->dim();
    if (half_extent) *half_extent = grid->grid->half_extent();
    if (points) *points = grid->grid->points();
    if (dx) *dx = grid->grid->dx();
    return FNLS_OK;
}

fnls_status fnls_field_profile(const fnls_grid* grid, const char* kind,
                               double amplitude, double width, double radius,
                               fnls_field** out) {
    if (!grid || !kind || !out) return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        RadialKind rk;
        std::string k = kind;
        if (k == "gaussian")
            rk = RadialKind::gaussian;
        else if (k == "sech")
            rk = RadialKind::sech_bump;
        else if (k == "ring")
            rk = RadialKind::ring;
        else
            throw std::invalid_argument("kind must be gaussian|sech|ring");
        *out = new fnls_field{
            radial_profile(grid->grid, rk, {amplitude, width, radius})};
        return FNLS_OK;
    });
}

fnls_status fnls_field_from_samples(const fnls_grid* grid,
                                    const double* interleaved, size_t count,
                                    fnls_field** out) {
    if (!grid || !interleaved || !out)
        return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        if (count != 2 * grid->grid->size())
            throw std::invalid_argument(
                "count must be 2 * M^n interleaved doubles");
        Field f(grid->grid);
        for (std::size_t i = 0; i < grid->grid->size(); ++i)
            f.values[i] = cplx(interleaved[2 * i], interleaved[2 * i + 1]);
        if (!all_finite(f))
            throw std::invalid_argument("samples contain non-finite values");
        *out = new fnls_field{std::move(f)};
        return FNLS_OK;
    });
}

void fnls_field_free(fnls_field* field) { delete field; }

fnls_status fnls_field_samples(const fnls_field* field, double* interleaved,
                               size_t capacity) {
    if (!field || !interleaved) return fail(FNLS_EINVAL, "NULL argument");
    if (capacity < 2 * field->field.size())
        return fail(FNLS_EBUFFER, "need 2 * M^n doubles of capacity");
    for (std::size_t i = 0; i < field->field.size(); ++i) {
        interleaved[2 * i] = field->field.values[i].real();
        interleaved[2 * i + 1] = field->field.values[i].imag();
    }
    return FNLS_OK;
}

fnls_status fnls_field_l2(const fnls_field* field, double* out) {
    if (!field || !out) return fail(FNLS_EINVAL, "NULL argument");
    *out = l2_norm(field->field);
    return FNLS_OK;
}

fnls_status fnls_field_lp(const fnls_field* field, double p, double* out) {
    if (!field || !out) return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        *out = lp_norm(field->field, p);
        return FNLS_OK;
    });
}

fnls_status fnls_field_time(const fnls_field* field, double* out) {
    if (!field || !out) return fail(FNLS_EINVAL, "NULL argument");
    *out = field->field.time_tag;
    return FNLS_OK;
}

fnls_status fnls_propagate(const fnls_field* field, double beta, double t,
                           fnls_field** out) {
    if (!field || !out) return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        *out = new fnls_field{
            apply_propagator(field->field, Dispersion(beta), t)};
        return FNLS_OK;
    });
}

fnls_status fnls_partition_create(const fnls_grid* grid,
                                  fnls_partition** out) {
    if (!grid || !out) return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        *out = new fnls_partition{build_partition(grid->grid)};
        return FNLS_OK;
    });
}

void fnls_partition_free(fnls_partition* partition) { delete partition; }

fnls_status fnls_mod_norm(const fnls_field* field,
                          const fnls_partition* partition, double p, double q,
                          double* out) {
    if (!field || !partition || !out)
        return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        *out = mod_norm(field->field, partition->part, ModNormSpec(p, q));
        return FNLS_OK;
    });
}

fnls_status fnls_exponents_json(const char* kind, int dim, double beta,
                                double alpha_or_nu, double p_or_s, char* buf,
                                size_t capacity) {
    if (!kind || !buf) return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        EquationSpec eq = equation_from(kind, dim, beta, alpha_or_nu, -1, 1.0);
        Exponents e = compute_exponents(eq, p_or_s);
        nlohmann::json j;
        j["index"] = e.index;
        j["s_critical"] = e.s_critical;
        j["horizon_exponent"] = e.horizon_exponent;
        j["index_in_range"] = e.index_in_range;
        if (eq.kind == NonlinearityKind::power) {
            j["omega"] = e.omega;
            j["kappa"] = e.kappa;
            j["gamma"] = e.gamma;
            j["p_max"] = e.p_max;
            j["case_value"] = e.case_value;
            j["gamma_upper"] = e.gamma_upper;
        } else {
            j["theta"] = e.theta;
            j["gamma_tilde"] = e.gamma_tilde;
            j["s_max"] = e.s_max;
        }
        std::string text = j.dump();
        if (text.size() + 1 > capacity)
            return fail(FNLS_EBUFFER, "exponents JSON does not fit");
        std::memcpy(buf, text.c_str(), text.size() + 1);
        return FNLS_OK;
    });
}

fnls_status fnls_split_step_evolve(const fnls_field* field, const char* kind,
                                   double beta, double alpha_or_nu, int sign,
                                   double coupling, double h, int steps,
                                   fnls_field** out) {
    if (!field || !kind || !out) return fail(FNLS_EINVAL, "NULL argument");
    return guarded([&] {
        EquationSpec eq = equation_from(kind, field->field.grid->dim(), beta,
                                        alpha_or_nu, sign, coupling);
        Trajectory traj =
            evolve_split_step(field->field, eq, h, steps, steps);
        *out = new fnls_field{traj.states.back()};
        return FNLS_OK;
    });
}

fnls_status fnls_run_config(const char* config_path, const char* out_dir,
                            int threads, uint64_t seed_override,
                            int has_seed_override, int* scenario_status) {
    if (!config_path) return fail(FNLS_EINVAL, "config_path is NULL");
    return guarded([&] {
        ExperimentConfig cfg = parse_config_file(config_path);
        RunOverrides o;
        if (out_dir) o.out_dir = out_dir;
        o.threads = threads;
        o.seed_override_set = has_seed_override != 0;
        o.seed_override = seed_override;
        int status = run_scenario(cfg, o);
        if (scenario_status) *scenario_status = status;
        return FNLS_OK;
    });
}

fnls_status fnls_verify(const char* module_filter, int threads,
                        const char* report_json_path, int* failures) {
    return guarded([&] {
        std::vector<CheckResult> results =
            run_verify(module_filter ? module_filter : "", threads, 1);
        int bad = 0;
        nlohmann::json arr = nlohmann::json::array();
        for (const CheckResult& r : results) {
            if (!r.pass) ++bad;
            arr.push_back({{"module", r.module},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"observed", r.observed},
                           {"bound", r.bound},
                           {"detail", r.detail}});
        }
        if (report_json_path) {
            std::ofstream os(report_json_path, std::ios::binary);
            if (!os)
                throw std::ios_base::failure("cannot open report path");
            os << arr.dump(2) << "\n";
        }
        if (failures) *failures = bad;
        return FNLS_OK;
    });
}

}  // extern "C"
