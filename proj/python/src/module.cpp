// Copyright 2026 The qmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qmeasure/qmeasure.hpp"

namespace py = pybind11;
using namespace qmeasure;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray &a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1) || a.shape(0) == 0) {
        throw Error(ErrorCode::BadDim, "expected a non-empty square 2-D array");
    }
    const auto n = static_cast<std::size_t>(a.shape(0));
    ComplexMatrix m(n);
    auto r = a.unchecked<2>();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
        }
    }
    return m;
}

CArray to_array(const ComplexMatrix &m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    CArray out({n, n});
    auto w = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i) {
        for (py::ssize_t j = 0; j < n; ++j) {
            w(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return out;
}

Vector to_vector(const CArray &a) {
    if (a.ndim() != 1) {
        throw Error(ErrorCode::BadDim, "expected a 1-D array");
    }
    auto r = a.unchecked<1>();
    Vector v(static_cast<std::size_t>(a.shape(0)));
    for (py::ssize_t i = 0; i < a.shape(0); ++i) {
        v[static_cast<std::size_t>(i)] = r(i);
    }
    return v;
}

CArray vector_to_array(const Vector &v) {
    CArray out(static_cast<py::ssize_t>(v.size()));
    auto w = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) {
        w(static_cast<py::ssize_t>(i)) = v[i];
    }
    return out;
}

BasisChoice to_basis(const std::vector<std::vector<CArray>> &groups) {
    BasisChoice out;
    for (const auto &g : groups) {
        std::vector<Vector> vs;
        for (const auto &v : g) {
            vs.push_back(to_vector(v));
        }
        out.push_back(std::move(vs));
    }
    return out;
}

DensityOperator state(const CArray &a, double tol) { return validate(to_matrix(a), tol); }

CheckMode mode_of(const std::string &s) {
    if (s == "exact") {
        return CheckMode::Exact;
    }
    if (s == "sampled") {
        return CheckMode::Sampled;
    }
    throw Error(ErrorCode::Parse, "mode must be 'exact' or 'sampled'");
}

py::dict condition_dict(const ConditionResult &r) {
    py::dict d;
    d["verdict"] = std::string(to_string(r.verdict));
    d["residual"] = r.residual;
    d["k"] = r.witness.k;
    d["j"] = r.witness.j;
    return d;
}

} // namespace

PYBIND11_MODULE(_qmeasure, m) {
    m.doc() = "Projective measurement calculus on finite-dimensional density operators";
    py::register_exception<Error>(m, "Error", PyExc_ValueError);
    m.attr("DEFAULT_TOL") = kDefaultTol;

    py::class_<Observable>(m, "Observable")
        .def_static(
            "from_matrix",
            [](const CArray &a, double cluster_tol, double tol) {
                return spectral_decompose(to_matrix(a), cluster_tol, tol);
            },
            py::arg("matrix"), py::arg("cluster_tol") = kDefaultClusterTol,
            py::arg("tol") = kDefaultTol)
        .def_static(
            "from_spectral",
            [](const std::vector<std::pair<double, CArray>> &pairs, double tol) {
                std::vector<std::pair<double, ComplexMatrix>> conv;
                for (const auto &[r, p] : pairs) {
                    conv.emplace_back(r, to_matrix(p));
                }
                return Observable::from_spectral(std::move(conv), tol);
            },
            py::arg("pairs"), py::arg("tol") = kDefaultTol)
        .def_property_readonly("dim", &Observable::dim)
        .def("__len__", &Observable::size)
        .def_property_readonly("eigenvalues", &Observable::eigenvalues)
        .def_property_readonly("multiplicities",
                               [](const Observable &o) {
                                   std::vector<std::size_t> out;
                                   for (const auto &p : o.pairs()) {
                                       out.push_back(p.multiplicity);
                                   }
                                   return out;
                               })
        .def("projector", [](const Observable &o, std::size_t k) { return to_array(o.projector(k)); })
        .def("basis",
             [](const Observable &o, std::size_t k) {
                 py::list out;
                 for (const auto &v : o.pair(k).basis) {
                     out.append(vector_to_array(v));
                 }
                 return out;
             })
        .def("matrix", [](const Observable &o) { return to_array(reconstruct(o)); })
        .def("heisenberg",
             [](const Observable &o, const CArray &u, double tol) {
                 return heisenberg_observable(o, to_matrix(u), tol);
             },
             py::arg("u"), py::arg("tol") = kDefaultTol);

    m.def("eigvalsh", [](const CArray &a, double tol) { return eig_hermitian(to_matrix(a), tol).values; },
          py::arg("matrix"), py::arg("tol") = kDefaultTol);
    m.def("commutes",
          [](const CArray &a, const CArray &b, double tol) {
              const auto c = commutes(to_matrix(a), to_matrix(b), tol);
              return py::make_tuple(c.commutes, c.residual);
          },
          py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);

    m.def("from_pure", [](const CArray &v) { return to_array(from_pure(to_vector(v)).matrix()); });
    m.def("random_density",
          [](std::size_t dim, std::size_t rank, std::uint64_t seed) {
              return to_array(random_density(dim, rank, seed).matrix());
          },
          py::arg("dim"), py::arg("rank"), py::arg("seed"));
    m.def("validate", [](const CArray &a, double tol) { return to_array(state(a, tol).matrix()); },
          py::arg("state"), py::arg("tol") = kDefaultTol);

    m.def("born",
          [](const Observable &o, const CArray &z, double tol) {
              std::vector<std::pair<double, double>> out;
              for (const auto &oc : born(o, state(z, tol), tol).outcomes) {
                  out.emplace_back(oc.eigenvalue, oc.probability);
              }
              return out;
          },
          py::arg("observable"), py::arg("state"), py::arg("tol") = kDefaultTol);
    m.def("lueders_select",
          [](const Observable &o, std::size_t k, const CArray &z, double tol) {
              return to_array(lueders_select(o, k, state(z, tol)).matrix());
          },
          py::arg("observable"), py::arg("k"), py::arg("state"), py::arg("tol") = kDefaultTol);
    m.def("lueders_aggregate",
          [](const Observable &o, const CArray &z, double tol) {
              return to_array(lueders_aggregate(o, state(z, tol)).matrix());
          },
          py::arg("observable"), py::arg("state"), py::arg("tol") = kDefaultTol);
    m.def("von_neumann_aggregate",
          [](const Observable &o, const CArray &z,
             const std::optional<std::vector<std::vector<CArray>>> &basis, double tol) {
              std::optional<BasisChoice> b;
              if (basis) {
                  b = to_basis(*basis);
              }
              return to_array(von_neumann_aggregate(o, state(z, tol), b, tol).matrix());
          },
          py::arg("observable"), py::arg("state"), py::arg("basis") = py::none(),
          py::arg("tol") = kDefaultTol);
    m.def("normalize",
          [](const CArray &s) { return to_array(normalize(SubensembleState(to_matrix(s))).matrix()); });

    py::class_<ThetaFamily>(m, "ThetaFamily")
        .def("__len__", &ThetaFamily::size)
        .def("op", [](const ThetaFamily &f, std::size_t k) { return to_array(f.op(k)); });
    m.def("make_theta_family",
          [](const Observable &o, const std::vector<std::vector<CArray>> &targets, double tol) {
              return make_theta_family(o, to_basis(targets), tol);
          },
          py::arg("observable"), py::arg("targets"), py::arg("tol") = kDefaultTol);
    m.def("lueders_family", &lueders_family);
    m.def("theta_select",
          [](const ThetaFamily &f, std::size_t k, const CArray &z, double tol) {
              return to_array(theta_select(f, k, state(z, tol)).matrix());
          },
          py::arg("family"), py::arg("k"), py::arg("state"), py::arg("tol") = kDefaultTol);
    m.def("theta_aggregate",
          [](const ThetaFamily &f, const CArray &z, double tol) {
              return to_array(theta_aggregate(f, state(z, tol)).matrix());
          },
          py::arg("family"), py::arg("state"), py::arg("tol") = kDefaultTol);

    m.def("condition1",
          [](const Observable &r, const Observable &s, const std::string &mode, double tol,
             std::size_t samples, std::uint64_t seed) {
              return condition_dict(condition1_holds(r, s, mode_of(mode), {tol, samples, seed}));
          },
          py::arg("r"), py::arg("s"), py::arg("mode") = "exact", py::arg("tol") = kDefaultTol,
          py::arg("samples") = 100, py::arg("seed") = 0);
    m.def("condition2",
          [](const Observable &r, const Observable &s, const std::string &mode, double tol,
             std::size_t samples, std::uint64_t seed) {
              return condition_dict(condition2_holds(r, s, mode_of(mode), {tol, samples, seed}));
          },
          py::arg("r"), py::arg("s"), py::arg("mode") = "exact", py::arg("tol") = kDefaultTol,
          py::arg("samples") = 100, py::arg("seed") = 0);
    m.def("theta_condition1",
          [](const ThetaFamily &r, const ThetaFamily &s, const std::string &mode, double tol,
             std::size_t samples, std::uint64_t seed) {
              return condition_dict(theta_condition1(r, s, mode_of(mode), {tol, samples, seed}));
          },
          py::arg("r"), py::arg("s"), py::arg("mode") = "exact", py::arg("tol") = kDefaultTol,
          py::arg("samples") = 100, py::arg("seed") = 0);
    m.def("theta_condition2",
          [](const ThetaFamily &r, const ThetaFamily &s, const std::string &mode, double tol,
             std::size_t samples, std::uint64_t seed) {
              return condition_dict(theta_condition2(r, s, mode_of(mode), {tol, samples, seed}));
          },
          py::arg("r"), py::arg("s"), py::arg("mode") = "exact", py::arg("tol") = kDefaultTol,
          py::arg("samples") = 100, py::arg("seed") = 0);
    m.def("compat_report",
          [](const Observable &r, const Observable &s, const std::optional<CArray> &u1,
             const std::optional<CArray> &u2, double tol, std::size_t samples,
             std::uint64_t seed) {
              std::optional<ComplexMatrix> m1;
              std::optional<ComplexMatrix> m2;
              if (u1) {
                  m1 = to_matrix(*u1);
              }
              if (u2) {
                  m2 = to_matrix(*u2);
              }
              const auto rep =
                  compat_report(r, s, m1, m2, {tol, ModeSelection::Both, samples, seed});
              py::dict d;
              d["c1"] = std::string(to_string(rep.condition1));
              d["c2"] = std::string(to_string(rep.condition2));
              d["comm"] = std::string(to_string(rep.commute));
              d["commutator_residual"] = rep.commutator_residual;
              d["max_residual_c1"] = rep.max_residual_c1;
              d["max_residual_c2"] = rep.max_residual_c2;
              return d;
          },
          py::arg("r"), py::arg("s"), py::arg("u1") = py::none(), py::arg("u2") = py::none(),
          py::arg("tol") = kDefaultTol, py::arg("samples") = 100, py::arg("seed") = 0);
    m.def("lemma_check",
          [](const CArray &b, const CArray &c, double tol) {
              const auto r = lemma_check(to_matrix(b), to_matrix(c), tol);
              return py::make_tuple(r.holds, r.worst_slack);
          },
          py::arg("b"), py::arg("c"), py::arg("tol") = kDefaultTol);

    py::class_<Constraint>(m, "Constraint")
        .def(py::init([](const CArray &op, std::string label) {
                 return Constraint(to_matrix(op), std::move(label));
             }),
             py::arg("op"), py::arg("label") = "N")
        .def_property_readonly("label", &Constraint::label)
        .def_property_readonly("dim", &Constraint::dim)
        .def("op", [](const Constraint &c) { return to_array(c.op()); });
    m.def("make_exchange_constraint", &make_exchange_constraint, py::arg("local_dim"),
          py::arg("symmetric"));
    m.def("satisfies",
          [](const CArray &z, const Constraint &n, double tol) {
              const auto r = satisfies(state(z, tol), n, tol);
              return py::make_tuple(r.ok, r.residual);
          },
          py::arg("state"), py::arg("constraint"), py::arg("tol") = kDefaultTol);
    m.def("measurable_under",
          [](const Observable &r, const Constraint &n, double tol) {
              return measurable_under(r, n, tol).measurable;
          },
          py::arg("observable"), py::arg("constraint"), py::arg("tol") = kDefaultTol);
    m.def("preserves_constraint",
          [](const Observable &r, const Constraint &n, const CArray &z, double tol) {
              py::list out;
              for (const auto &row : preserves_constraint(r, n, state(z, tol), tol)) {
                  py::dict d;
                  d["eigenvalue"] = row.eigenvalue;
                  d["weight"] = row.weight;
                  d["residual"] = row.residual;
                  d["preserved"] = row.preserved;
                  out.append(d);
              }
              return out;
          },
          py::arg("observable"), py::arg("constraint"), py::arg("state"),
          py::arg("tol") = kDefaultTol);
    m.def("random_constrained_state",
          [](const Constraint &n, std::size_t rank, std::uint64_t seed, double tol) {
              return to_array(random_constrained_state(n, rank, seed, tol).matrix());
          },
          py::arg("constraint"), py::arg("rank"), py::arg("seed"), py::arg("tol") = kDefaultTol);
}
