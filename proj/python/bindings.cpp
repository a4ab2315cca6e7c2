#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lexpfam/dirichlet.hpp"
#include "lexpfam/lambda_core.hpp"
#include "lexpfam/qgaussian.hpp"
#include "lexpfam/solver.hpp"

namespace py = pybind11;
using namespace lexpfam;

namespace {

SufficientData make_data(const FamilyModel& model, const std::vector<Vec>& samples) {
    return SufficientData::from_samples(model, samples);
}

py::dict fit_to_dict(const FitResult& fit, bool with_trace) {
    py::dict out;
    out["theta_hat"] = fit.theta_hat.coords();
    out["eta_hat"] = fit.eta_hat.coords();
    out["loglik"] = fit.loglik;
    out["iterations"] = fit.iterations;
    out["residual"] = fit.first_order_residual;
    out["termination"] = to_string(fit.termination);
    if (with_trace) {
        py::list recs;
        for (const TraceRecord& r : fit.trace.records) {
            py::dict jr;
            jr["k"] = r.k;
            jr["eta"] = r.eta.coords();
            jr["theta"] = r.theta.coords();
            jr["loglik"] = r.loglik;
            jr["step_norm"] = r.step_norm;
            jr["weights"] = r.weights.w;
            recs.append(jr);
        }
        out["trace"] = recs;
    }
    return out;
}

SolverConfig make_config(double tol_step, double tol_residual, int max_iter,
                         const std::optional<Vec>& init_theta,
                         const std::optional<Vec>& init_eta) {
    SolverConfig cfg;
    cfg.tol_step = tol_step;
    cfg.tol_residual = tol_residual;
    cfg.max_iter = max_iter;
    if (init_theta) cfg.init_theta = NaturalParam(*init_theta);
    if (init_eta) cfg.init_eta = DualParam(*init_eta);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_lexpfam, m) {
    m.doc() = "maximum likelihood estimation for lambda-exponential families";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<DimensionMismatch>(m, "DimensionMismatchError");
    py::register_exception<InvalidParameter>(m, "InvalidParameterError");
    py::register_exception<NoFeasiblePoint>(m, "NoFeasiblePointError");
    py::register_exception<QuadratureFailure>(m, "QuadratureFailureError");
    py::register_exception<InitializationError>(m, "InitializationError");
    py::register_exception<EmptyData>(m, "EmptyDataError");
    py::register_exception<ParseError>(m, "ParseError");

    py::class_<FamilyModel>(m, "FamilyModel")
        .def_property_readonly("lam", [](const FamilyModel& f) { return f.curvature().value(); })
        .def_property_readonly("dim", &FamilyModel::dim)
        .def_property_readonly("name", &FamilyModel::name)
        .def("statistic", &FamilyModel::statistic)
        .def("potential",
             [](const FamilyModel& f, const Vec& theta) { return f.potential(NaturalParam(theta)); })
        .def("potential_gradient",
             [](const FamilyModel& f, const Vec& theta) {
                 return f.potential_gradient(NaturalParam(theta));
             })
        .def("dual_forward",
             [](const FamilyModel& f, const Vec& theta) {
                 return f.dual_forward(NaturalParam(theta)).coords();
             })
        .def("dual_inverse",
             [](const FamilyModel& f, const Vec& eta) {
                 return f.dual_inverse(DualParam(eta)).coords();
             })
        .def("in_support", &FamilyModel::in_support);

    py::class_<QGaussianModel, FamilyModel>(m, "QGaussianModel")
        .def(py::init([](double lam) { return QGaussianModel(Curvature(lam)); }), py::arg("lam"))
        .def_property_readonly("c_lambda", &QGaussianModel::c_lambda)
        .def("sample", &QGaussianModel::sample, py::arg("theta"), py::arg("n"), py::arg("seed"));

    py::class_<DirichletPerturbationModel, FamilyModel>(m, "DirichletPerturbationModel")
        .def(py::init<double, int>(), py::arg("sigma"), py::arg("d"))
        .def_property_readonly("sigma", &DirichletPerturbationModel::sigma)
        .def_property_readonly("alpha", &DirichletPerturbationModel::alpha)
        .def("sample",
             [](const DirichletPerturbationModel& f, const Vec& p, int n, std::uint64_t seed) {
                 return as_points(f.sample(SimplexPoint(p), n, seed));
             },
             py::arg("p"), py::arg("n"), py::arg("seed"));

    m.def("pairing",
          [](const Vec& u, const Vec& v, double lam) { return pairing(u, v, Curvature(lam)); },
          py::arg("u"), py::arg("v"), py::arg("lam"));
    m.def("lambda_gradient",
          [](const Vec& grad, const Vec& theta, double lam) {
              return lambda_gradient(grad, NaturalParam(theta), Curvature(lam)).coords();
          },
          py::arg("grad"), py::arg("theta"), py::arg("lam"));
    m.def("fenchel_young_residual",
          [](const Vec& theta, const Vec& eta, double phi_val, double psi_val, double lam) {
              return fenchel_young_residual(NaturalParam(theta), DualParam(eta), phi_val,
                                            psi_val, Curvature(lam));
          },
          py::arg("theta"), py::arg("eta"), py::arg("phi_val"), py::arg("psi_val"),
          py::arg("lam"));

    m.def("log_density",
          [](const FamilyModel& f, const Vec& theta, const Vec& x) {
              return log_density(f, NaturalParam(theta), x);
          });
    m.def("log_likelihood", [](const FamilyModel& f, const Vec& theta,
                               const std::vector<Vec>& samples) {
        return log_likelihood(f, NaturalParam(theta), make_data(f, samples));
    });
    m.def("escort_weights", [](const FamilyModel& f, const Vec& theta,
                               const std::vector<Vec>& samples) {
        return escort_weights(f, NaturalParam(theta), make_data(f, samples)).w;
    });
    m.def("kappa", [](const FamilyModel& f, const Vec& eta, const std::vector<Vec>& samples) {
        return kappa(f, DualParam(eta), make_data(f, samples));
    });
    m.def("first_order_residual", [](const FamilyModel& f, const Vec& theta,
                                     const std::vector<Vec>& samples) {
        return first_order_residual(f, NaturalParam(theta), make_data(f, samples));
    });
    m.def("dual_potential",
          [](const FamilyModel& f, const Vec& eta) { return dual_potential(f, DualParam(eta)); });
    m.def("escort_expectation",
          [](const FamilyModel& f, const Vec& theta, double abs_tol) {
              return escort_expectation(f, NaturalParam(theta), abs_tol).coords();
          },
          py::arg("model"), py::arg("theta"), py::arg("abs_tol") = 1e-6);

    m.def("step", [](const FamilyModel& f, const Vec& eta, const std::vector<Vec>& samples) {
        return step(f, DualParam(eta), make_data(f, samples)).coords();
    });
    m.def("sample_mean_init", [](const FamilyModel& f, const std::vector<Vec>& samples) {
        return sample_mean_init(f, make_data(f, samples)).coords();
    });
    m.def("solve",
          [](const FamilyModel& f, const std::vector<Vec>& samples, double tol_step,
             double tol_residual, int max_iter, const std::optional<Vec>& init_theta,
             const std::optional<Vec>& init_eta, bool with_trace) {
              const SolverConfig cfg =
                  make_config(tol_step, tol_residual, max_iter, init_theta, init_eta);
              return fit_to_dict(solve(f, make_data(f, samples), cfg), with_trace);
          },
          py::arg("model"), py::arg("samples"), py::arg("tol_step") = 1e-12,
          py::arg("tol_residual") = 1e-10, py::arg("max_iter") = 500,
          py::arg("init_theta") = std::nullopt, py::arg("init_eta") = std::nullopt,
          py::arg("with_trace") = false);

    // simplex operations
    m.def("perturb", [](const Vec& p, const Vec& q) {
        return perturb(SimplexPoint(p), SimplexPoint(q)).coords();
    });
    m.def("difference", [](const Vec& p, const Vec& q) {
        return difference(SimplexPoint(p), SimplexPoint(q)).coords();
    });
    m.def("barycenter", [](int d) { return SimplexPoint::barycenter(d).coords(); });
    m.def("theta_from_p", [](const Vec& p, double lam) {
        return dp_theta_from_p(SimplexPoint(p), Curvature(lam)).coords();
    });
    m.def("p_from_eta", [](const Vec& eta) { return dp_p_from_eta(DualParam(eta)).coords(); });
    m.def("simplex_update", [](const Vec& p, const std::vector<Vec>& data) {
        std::vector<SimplexPoint> qs;
        qs.reserve(data.size());
        for (const Vec& q : data) qs.emplace_back(q);
        return dp_simplex_update(SimplexPoint(p), qs).coords();
    });

    m.attr("__version__") = "0.1.0";
}
