// Python bindings for the orthoalgebra core. Exposes observables, the three
// relations (orthogonality, partial sum, induced order), meets/joins, the
// integer oracle, and the randomized axiom sweep.

#include "orthoalg/generators.hpp"
#include "orthoalg/lattice.hpp"
#include "orthoalg/observable.hpp"
#include "orthoalg/oracle.hpp"

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace orthoalg;

namespace {

std::string observable_repr(const Observable& o) {
    std::ostringstream s;
    s << "Observable(dim=" << o.dim() << ", atoms=" << o.decomposition().atoms().size()
      << ", norm=" << o.norm() << ")";
    return s.str();
}

}  // namespace

PYBIND11_MODULE(_orthoalg, m) {
    m.doc() = "Orthoalgebra of finite-dimensional Hermitian observables";

    py::register_exception<Error>(m, "Error");

    // ── Configuration ─────────────────────────────────────────────────────
    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("cluster_rel", &Tolerances::cluster_rel)
        .def_readwrite("zero_abs", &Tolerances::zero_abs)
        .def_readwrite("proj_tol", &Tolerances::proj_tol)
        .def_readwrite("hermitian_tol", &Tolerances::hermitian_tol)
        .def("validate", &Tolerances::validate)
        .def_static("profile", &Tolerances::profile, py::arg("name"),
                    "Named profile: 'default', 'strict', or 'loose'.");

    py::enum_<SpectrumStyle>(m, "SpectrumStyle")
        .value("well_separated", SpectrumStyle::well_separated)
        .value("clustered", SpectrumStyle::clustered);

    // ── Observable ────────────────────────────────────────────────────────
    py::class_<Observable>(m, "Observable")
        .def(py::init<const Matrix&, const Tolerances&>(), py::arg("matrix"),
             py::arg("tol") = Tolerances(),
             "Wrap a Hermitian matrix and compute its spectral decomposition. "
             "Raises Error if the matrix is not Hermitian within tolerance.")
        .def_static("zero", &Observable::zero, py::arg("dim"),
                    py::arg("tol") = Tolerances())
        .def_property_readonly("matrix",
                               [](const Observable& o) { return Matrix(o.matrix()); })
        .def_property_readonly("dim", &Observable::dim)
        .def_property_readonly("norm", &Observable::norm)
        .def_property_readonly("is_zero", &Observable::is_zero)
        .def_property_readonly("cluster_ambiguity",
                               [](const Observable& o) {
                                   return o.decomposition().cluster_ambiguity();
                               })
        .def("atoms",
             [](const Observable& o) {
                 py::list out;
                 for (const auto& atom : o.decomposition().atoms())
                     out.append(py::make_tuple(atom.value, atom.proj.rank(),
                                               Matrix(atom.proj.matrix())));
                 return out;
             },
             "Spectral atoms as (value, rank, projection_matrix) tuples, "
             "values strictly increasing, ranks summing to dim.")
        .def("__repr__", &observable_repr);

    // ── Relation reports ──────────────────────────────────────────────────
    py::class_<OrthogonalityReport>(m, "OrthogonalityReport")
        .def_readonly("verdict", &OrthogonalityReport::verdict)
        .def_readonly("ranges", &OrthogonalityReport::ranges)
        .def_readonly("a_in_nb", &OrthogonalityReport::a_in_nb)
        .def_readonly("b_in_na", &OrthogonalityReport::b_in_na)
        .def_readonly("ab_zero", &OrthogonalityReport::ab_zero)
        .def_readonly("ba_zero", &OrthogonalityReport::ba_zero)
        .def_readonly("r_ranges", &OrthogonalityReport::r_ranges)
        .def_readonly("r_a_in_nb", &OrthogonalityReport::r_a_in_nb)
        .def_readonly("r_b_in_na", &OrthogonalityReport::r_b_in_na)
        .def_readonly("r_ab", &OrthogonalityReport::r_ab)
        .def_readonly("r_ba", &OrthogonalityReport::r_ba)
        .def("__bool__", [](const OrthogonalityReport& r) { return r.verdict; });

    py::class_<OrderReport>(m, "OrderReport")
        .def_readonly("verdict", &OrderReport::verdict)
        .def_readonly("algebraic", &OrderReport::algebraic)
        .def_readonly("atomwise", &OrderReport::atomwise)
        .def_readonly("algebraic_residual", &OrderReport::algebraic_residual)
        .def_readonly("witness", &OrderReport::witness,
                      "Complement C with A + C = B and A orthogonal to C; "
                      "present exactly when the verdict holds.")
        .def("__bool__", [](const OrderReport& r) { return r.verdict; });

    py::class_<JoinPrecondition>(m, "JoinPrecondition")
        .def_readonly("holds", &JoinPrecondition::holds)
        .def_readonly("max_cross_residual", &JoinPrecondition::max_cross_residual)
        .def_readonly("violating_values", &JoinPrecondition::violating_values)
        .def("__bool__", [](const JoinPrecondition& p) { return p.holds; });

    py::class_<JoinOutcome>(m, "JoinOutcome")
        .def_readonly("result", &JoinOutcome::result)
        .def_readonly("precondition", &JoinOutcome::precondition)
        .def("__bool__", &JoinOutcome::ok);

    // ── Relations and lattice operations ──────────────────────────────────
    m.def("is_orthogonal", &is_orthogonal, py::arg("a"), py::arg("b"),
          "Evaluate all five orthogonality criteria; raises Error if they "
          "disagree with one another.");
    m.def("oplus", &oplus, py::arg("a"), py::arg("b"),
          "Partial sum a + b, defined only for orthogonal operands.");
    m.def("leq", &leq, py::arg("a"), py::arg("b"),
          "Induced order: a below b iff some c orthogonal to a gives a + c = b.");
    m.def("check_principal", &check_principal, py::arg("b"), py::arg("c"), py::arg("a"),
          "With b, c orthogonal and both below a: is b + c below a?");
    m.def("check_loewner_consequence", &check_loewner_consequence, py::arg("a"),
          py::arg("b"),
          "With a below b and b positive semidefinite: does b - a stay "
          "positive semidefinite?");
    m.def("loewner_leq", &loewner_leq, py::arg("a"), py::arg("b"));
    m.def("meet", &meet, py::arg("a"), py::arg("b"),
          "Greatest lower bound under the induced order (always defined).");
    m.def("meet_family", &meet_family, py::arg("family"));
    m.def("join", &join, py::arg("a"), py::arg("b"),
          "Least upper bound; result is None when no upper bound exists.");
    m.def("join_family", &join_family, py::arg("family"));
    m.def("join_precondition", &join_precondition, py::arg("a"), py::arg("b"));
    m.def("common_abelian_witness", &common_abelian_witness, py::arg("a"), py::arg("b"),
          "Unitary that diagonalizes two orthogonal observables simultaneously.");
    m.def("match_nonzero_atoms",
          [](const Observable& a, const Observable& b) {
              AtomMatch match = match_nonzero_atoms(a, b);
              return py::make_tuple(match.pairs, match.only_a, match.only_b);
          },
          py::arg("a"), py::arg("b"),
          "Greedy value matching of nonzero atoms: (pairs, only_a, only_b).");

    // ── Randomized sweeps and demo ────────────────────────────────────────
    py::class_<AxiomFailure>(m, "AxiomFailure")
        .def_readonly("axiom", &AxiomFailure::axiom)
        .def_readonly("trial", &AxiomFailure::trial)
        .def_readonly("detail", &AxiomFailure::detail)
        .def_readonly("residual", &AxiomFailure::residual);

    py::class_<AxiomResult>(m, "AxiomResult")
        .def_readonly("checks", &AxiomResult::checks)
        .def_readonly("failures", &AxiomResult::failures);

    py::class_<AxiomReport>(m, "AxiomReport")
        .def_readonly("trials", &AxiomReport::trials)
        .def_readonly("dim", &AxiomReport::dim)
        .def_readonly("seed", &AxiomReport::seed)
        .def_readonly("axioms", &AxiomReport::axioms)
        .def("all_passed", &AxiomReport::all_passed)
        .def("total_checks", &AxiomReport::total_checks)
        .def("total_failures", &AxiomReport::total_failures);

    m.def("axiom_suite", &axiom_suite, py::arg("trials"), py::arg("dim"), py::arg("seed"),
          py::arg("tol") = Tolerances(),
          py::arg("style") = SpectrumStyle::well_separated,
          py::call_guard<py::gil_scoped_release>(),
          "Randomized check of the six algebra axioms; every trial is "
          "replayable from (seed, trial).");

    py::class_<HeisenbergPairSample>(m, "HeisenbergPairSample")
        .def_readonly("q_value", &HeisenbergPairSample::q_value)
        .def_readonly("p_value", &HeisenbergPairSample::p_value)
        .def_readonly("meet_rank", &HeisenbergPairSample::meet_rank);

    py::class_<HeisenbergReport>(m, "HeisenbergReport")
        .def_readonly("n", &HeisenbergReport::n)
        .def_readonly("hbar", &HeisenbergReport::hbar)
        .def_readonly("meet_norm", &HeisenbergReport::meet_norm)
        .def_readonly("max_pair_rank", &HeisenbergReport::max_pair_rank)
        .def_readonly("commutator_residual", &HeisenbergReport::commutator_residual)
        .def_readonly("pairs", &HeisenbergReport::pairs)
        .def_readonly("note", &HeisenbergReport::note);

    m.def("heisenberg_demo", &heisenberg_demo, py::arg("n"), py::arg("hbar") = 1.0,
          py::arg("tol") = Tolerances(), py::call_guard<py::gil_scoped_release>(),
          "Truncated position/momentum pair: their meet vanishes although "
          "they are maximally non-commuting.");

    // ── Integer oracle ────────────────────────────────────────────────────
    auto orc = m.def_submodule(
        "oracle", "Exact integer model on simultaneously diagonal observables");

    py::class_<oracle::DiagonalObservable>(orc, "DiagonalObservable")
        .def(py::init([](std::vector<std::int64_t> values) {
                 return oracle::DiagonalObservable{std::move(values)};
             }),
             py::arg("values"))
        .def_readwrite("values", &oracle::DiagonalObservable::values)
        .def_property_readonly("dim", &oracle::DiagonalObservable::dim)
        .def(py::self == py::self)
        .def("__repr__", [](const oracle::DiagonalObservable& d) {
            std::ostringstream s;
            s << "DiagonalObservable([";
            for (std::size_t i = 0; i < d.values.size(); ++i)
                s << (i ? ", " : "") << d.values[i];
            s << "])";
            return s.str();
        });

    py::class_<oracle::OracleJoinOutcome>(orc, "OracleJoinOutcome")
        .def_readonly("result", &oracle::OracleJoinOutcome::result)
        .def_readonly("violating_coordinate", &oracle::OracleJoinOutcome::violating_coordinate)
        .def("__bool__", &oracle::OracleJoinOutcome::ok);

    orc.def("orthogonal", &oracle::oracle_orthogonal, py::arg("a"), py::arg("b"));
    orc.def("leq", &oracle::oracle_leq, py::arg("a"), py::arg("b"));
    orc.def("meet_closed_form", &oracle::oracle_meet_closed_form, py::arg("a"), py::arg("b"));
    orc.def("meet_bruteforce", &oracle::oracle_meet_bruteforce, py::arg("a"), py::arg("b"),
            "Meet by exhaustive enumeration of value-set partitions; raises "
            "Error beyond 5 combined values.");
    orc.def("join", &oracle::oracle_join, py::arg("a"), py::arg("b"));
    orc.def("embed", &oracle::embed, py::arg("diagonal"), py::arg("unitary"),
            py::arg("tol") = Tolerances(),
            "Conjugate an integer diagonal into a dense observable.");
    orc.def("count_set_partitions", &oracle::count_set_partitions, py::arg("n"));

    py::class_<oracle::DifferentialFinding>(orc, "DifferentialFinding")
        .def_readonly("trial", &oracle::DifferentialFinding::trial)
        .def_readonly("check", &oracle::DifferentialFinding::check)
        .def_readonly("detail", &oracle::DifferentialFinding::detail)
        .def_readonly("a", &oracle::DifferentialFinding::a)
        .def_readonly("b", &oracle::DifferentialFinding::b)
        .def_readonly("unitary_stream", &oracle::DifferentialFinding::unitary_stream);

    py::class_<oracle::DifferentialReport>(orc, "DifferentialReport")
        .def_readonly("trials", &oracle::DifferentialReport::trials)
        .def_readonly("dim", &oracle::DifferentialReport::dim)
        .def_readonly("seed", &oracle::DifferentialReport::seed)
        .def_readonly("checks", &oracle::DifferentialReport::checks)
        .def_readonly("findings", &oracle::DifferentialReport::findings)
        .def("all_passed", &oracle::DifferentialReport::all_passed);

    orc.def("differential_sweep", &oracle::differential_sweep, py::arg("trials"),
            py::arg("dim"), py::arg("seed"), py::arg("tol") = Tolerances(),
            py::call_guard<py::gil_scoped_release>(),
            "Compare the matrix implementation against the integer oracle on "
            "random embedded diagonal pairs.");

    // ── Generators (for reproducing sweep instances) ──────────────────────
    py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t, std::uint64_t>(),
                                  py::arg("seed"), py::arg("stream"));
    m.def("random_unitary",
          [](int dim, std::uint64_t seed, std::uint64_t stream) {
              Rng rng(seed, stream);
              return random_unitary(dim, rng);
          },
          py::arg("dim"), py::arg("seed"), py::arg("stream"),
          "The unitary drawn by stream (seed, stream); bit-for-bit "
          "reproducible across platforms.");
}
