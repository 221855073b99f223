// pybind11 surface over the toolkit's main operations. States travel as
// plain Python lists; density matrices as nested [row][col] pairs of
// (re, im) lists; reports come back as dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catalysis/catalyst.hpp"
#include "catalysis/majorization.hpp"
#include "catalysis/qstates.hpp"
#include "catalysis/second_order.hpp"
#include "catalysis/spectra.hpp"

namespace py = pybind11;
using namespace catalysis;

namespace {

ProbVec pv(const std::vector<double>& v) { return ProbVec::from_values(v); }

Theory make_theory(const std::string& name,
                   const std::optional<std::vector<double>>& gamma, std::size_t dim) {
    if (name == "entanglement") return Theory::entanglement();
    if (name == "unitary-noisy") return Theory::unitary_noisy(dim);
    if (name == "athermality")
        return Theory::athermality(gamma ? GibbsSpec::from_weights(*gamma)
                                         : GibbsSpec::uniform(dim));
    throw input_error("unknown theory \"" + name + "\"");
}

DensityMatrix dm(const std::vector<std::vector<std::complex<double>>>& rows,
                 std::optional<std::pair<std::size_t, std::size_t>> dims) {
    const std::size_t d = rows.size();
    std::vector<std::complex<double>> flat;
    flat.reserve(d * d);
    for (const auto& r : rows) {
        if (r.size() != d) throw input_error("density matrix must be square");
        for (auto x : r) flat.push_back(x);
    }
    return DensityMatrix::from_matrix(std::move(flat), d, dims);
}

py::dict report_dict(const CatalysisReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["d_C"] = r.d_C;
    d["chi_err"] = r.chi_err;
    d["system_err"] = r.system_err;
    d["joint_err"] = r.joint_err;
    d["marginal_exactness"] = r.marginal_exactness;
    d["feasible"] = r.feasible;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-size catalysis toolkit";
    m.attr("__version__") = "1.0.0";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<infeasible_error>(m, "InfeasibleError", PyExc_ArithmeticError);
    py::register_exception<size_cap_error>(m, "SizeCapError", PyExc_OverflowError);

    m.def("shannon_entropy",
          [](const std::vector<double>& p) { return shannon_entropy(pv(p)); });
    m.def("entropy_variance",
          [](const std::vector<double>& p) { return entropy_variance(pv(p)); });
    m.def("relative_entropy", [](const std::vector<double>& p,
                                 const std::vector<double>& g) {
        return relative_entropy(pv(p), GibbsSpec::from_weights(g));
    });
    m.def("relative_entropy_variance", [](const std::vector<double>& p,
                                          const std::vector<double>& g) {
        return relative_entropy_variance(pv(p), GibbsSpec::from_weights(g));
    });
    m.def("renyi_entropy", [](const std::vector<double>& p, double alpha) {
        return renyi_entropy(pv(p), alpha);
    });
    m.def("burg_entropy",
          [](const std::vector<double>& p) { return burg_entropy(pv(p)); });
    m.def("trace_distance", [](const std::vector<double>& p, const std::vector<double>& q) {
        return trace_distance(pv(p), pv(q));
    });
    m.def("multicopy_check",
          [](const std::vector<double>& p, const std::vector<double>& q,
             std::size_t grid) {
              const MulticopyVerdict v = multicopy_feasibility_check(pv(p), pv(q), grid);
              py::dict d;
              d["status"] = v.status == MulticopyStatus::Satisfied    ? "satisfied"
                            : v.status == MulticopyStatus::Violated   ? "violated"
                                                                      : "inconclusive";
              d["witness_alpha"] = v.witness_alpha;
              d["min_margin"] = v.min_margin;
              return d;
          },
          py::arg("p"), py::arg("q"), py::arg("grid") = 257);

    m.def("majorizes", [](const std::vector<double>& p, const std::vector<double>& q) {
        return majorizes(pv(p), pv(q));
    });
    m.def("thermo_majorizes",
          [](const std::vector<double>& p, const std::vector<double>& q,
             const std::vector<double>& g) {
              return thermo_majorizes(pv(p), pv(q), GibbsSpec::from_weights(g));
          });
    m.def("optimal_chi", [](const std::vector<double>& p, const std::vector<double>& q) {
        const ApproxMajorization r = optimal_chi(pv(p), pv(q));
        return py::make_tuple(r.chi, r.err);
    });
    m.def("optimal_chi_majorizing",
          [](const std::vector<double>& p, const std::vector<double>& q) {
              const ApproxMajorization r = optimal_chi_majorizing(pv(p), pv(q));
              return py::make_tuple(r.chi, r.err);
          });
    m.def("lp_oracle", [](const std::vector<double>& p, const std::vector<double>& q) {
        return lp_oracle(pv(p), pv(q));
    });
    m.def("ttransform_sequence",
          [](const std::vector<double>& p, const std::vector<double>& q) {
              const TTransformSeq seq = ttransform_sequence(pv(p), pv(q));
              std::vector<std::tuple<std::size_t, std::size_t, double>> out;
              for (const auto& s : seq.steps) out.emplace_back(s.i, s.j, s.t);
              return out;
          });
    m.def("apply_ttransforms",
          [](const std::vector<std::tuple<std::size_t, std::size_t, double>>& steps,
             const std::vector<double>& p) {
              TTransformSeq seq;
              for (const auto& [i, j, t] : steps) seq.steps.push_back({i, j, t});
              return apply_ttransforms(seq, pv(p)).probs();
          });

    m.def("inv_normal_cdf", &inv_normal_cdf);
    m.def("sesqui_normal", [](double nu, double eps) { return sesqui_normal(nu, eps); });
    m.def("rates",
          [](const std::string& theory, const std::vector<double>& p,
             const std::vector<double>& q, double eps,
             const std::optional<std::vector<double>>& gamma) {
              const SecondOrderRates r = rates(make_theory(theory, gamma, p.size()),
                                               pv(p), pv(q), eps);
              py::dict d;
              d["R"] = r.R;
              d["R_prime"] = r.Rprime;
              d["nu"] = r.nu;
              d["f_value"] = r.f_value;
              d["epsilon"] = r.epsilon;
              d["no_catalysis"] = r.no_catalysis;
              return d;
          },
          py::arg("theory"), py::arg("p"), py::arg("q"), py::arg("eps"),
          py::arg("gamma") = std::nullopt);
    m.def("n_epsilon",
          [](const std::string& theory, const std::vector<double>& p,
             const std::vector<double>& q, double eps,
             const std::optional<std::vector<double>>& gamma) {
              return n_epsilon(rates(make_theory(theory, gamma, p.size()), pv(p),
                                     pv(q), eps));
          },
          py::arg("theory"), py::arg("p"), py::arg("q"), py::arg("eps"),
          py::arg("gamma") = std::nullopt);
    m.def("catalyst_dimension", [](std::uint64_t n, std::size_t d_s) {
        const CatalystPlan plan = catalyst_dimension(n, d_s);
        py::dict d;
        d["n"] = plan.n;
        d["log_dC"] = plan.log_dC;
        d["dC_exact"] = plan.dC_exact ? py::cast(*plan.dC_exact) : py::none();
        return d;
    });
    m.def("sufficiency_check",
          [](const std::string& theory, const std::vector<double>& p,
             const std::vector<double>& q, double eps, double log_dC,
             const std::optional<std::vector<double>>& gamma) {
              const SufficiencyResult s = sufficiency_check(
                  make_theory(theory, gamma, p.size()), pv(p), pv(q), eps, log_dC);
              py::dict d;
              d["sufficient"] = s.sufficient;
              d["gap"] = s.gap;
              d["bound"] = s.bound;
              d["approximation"] = s.approximation;
              return d;
          },
          py::arg("theory"), py::arg("p"), py::arg("q"), py::arg("eps"),
          py::arg("log_dC"), py::arg("gamma") = std::nullopt);
    m.def("predicted_epsilon",
          [](const std::string& theory, const std::vector<double>& p,
             const std::vector<double>& q, double log_dC,
             const std::optional<std::vector<double>>& gamma) {
              return predicted_epsilon(make_theory(theory, gamma, p.size()), pv(p),
                                       pv(q), log_dC);
          },
          py::arg("theory"), py::arg("p"), py::arg("q"), py::arg("log_dC"),
          py::arg("gamma") = std::nullopt);

    m.def("run_protocol",
          [](const std::vector<double>& p, const std::vector<double>& q, unsigned n,
             const std::string& theory) {
              return report_dict(
                  run_protocol(pv(p), pv(q), n, make_theory(theory, {}, p.size())));
          },
          py::arg("p"), py::arg("q"), py::arg("n"), py::arg("theory") = "unitary-noisy");
    m.def("min_n_search",
          [](const std::vector<double>& p, const std::vector<double>& q, double eps,
             unsigned n_max, const std::string& theory) -> py::object {
              const auto n = min_n_search(pv(p), pv(q), eps, n_max,
                                          make_theory(theory, {}, p.size()));
              return n ? py::cast(*n) : py::none();
          },
          py::arg("p"), py::arg("q"), py::arg("eps"), py::arg("n_max"),
          py::arg("theory") = "unitary-noisy");

    m.def("von_neumann_entropy",
          [](const std::vector<std::vector<std::complex<double>>>& rho,
             std::optional<std::pair<std::size_t, std::size_t>> dims) {
              return von_neumann_entropy(dm(rho, dims));
          },
          py::arg("rho"), py::arg("dims") = std::nullopt);
    m.def("partial_trace",
          [](const std::vector<std::vector<std::complex<double>>>& rho,
             std::pair<std::size_t, std::size_t> dims, const std::string& keep) {
              const DensityMatrix out = partial_trace(
                  dm(rho, dims), keep == "A" ? Subsystem::A : Subsystem::B);
              std::vector<std::vector<std::complex<double>>> rows(out.dim());
              for (std::size_t i = 0; i < out.dim(); ++i)
                  for (std::size_t j = 0; j < out.dim(); ++j)
                      rows[i].push_back(out.at(i, j));
              return rows;
          },
          py::arg("rho"), py::arg("dims"), py::arg("keep") = "A");
    m.def("hashing_bound",
          [](const std::vector<std::vector<std::complex<double>>>& rho,
             std::pair<std::size_t, std::size_t> dims) {
              return hashing_bound(dm(rho, dims));
          });
    m.def("eof_two_qubit",
          [](const std::vector<std::vector<std::complex<double>>>& sigma) {
              return eof_two_qubit(dm(sigma, std::pair<std::size_t, std::size_t>{2, 2}));
          });
    m.def("locc_mixed_check",
          [](const std::vector<std::vector<std::complex<double>>>& rho,
             std::pair<std::size_t, std::size_t> dims,
             const std::optional<std::vector<std::vector<std::complex<double>>>>& sigma,
             std::optional<double> e_sigma) {
              const DensityMatrix r = dm(rho, dims);
              LoccMixedResult res =
                  e_sigma ? locc_mixed_check(r, *e_sigma)
                          : locc_mixed_check(
                                r, dm(*sigma, std::pair<std::size_t, std::size_t>{2, 2}));
              py::dict d;
              d["verdict"] = res.verdict == LoccMixedVerdict::Sufficient ? "sufficient"
                             : res.verdict == LoccMixedVerdict::Boundary ? "boundary"
                                                                          : "not_implied";
              d["hashing_bound"] = res.hashing;
              d["target_entanglement"] = res.target_entanglement;
              return d;
          },
          py::arg("rho"), py::arg("dims"), py::arg("sigma") = std::nullopt,
          py::arg("e_sigma") = std::nullopt);
}
