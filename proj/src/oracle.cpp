#include "orthoalg/oracle.hpp"

#include "orthoalg/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace orthoalg::oracle {

namespace {

void require_same_len(const DiagonalObservable& a, const DiagonalObservable& b,
                      const char* where) {
    if (a.values.size() != b.values.size())
        throw LengthMismatch(std::string(where) + ": diagonal lengths differ (" +
                             std::to_string(a.values.size()) + " vs " +
                             std::to_string(b.values.size()) + ")");
}

}  // namespace

bool oracle_orthogonal(const DiagonalObservable& a, const DiagonalObservable& b) {
    require_same_len(a, b, "oracle_orthogonal");
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != 0 && b.values[i] != 0) return false;
    return true;
}

bool oracle_leq(const DiagonalObservable& a, const DiagonalObservable& b) {
    require_same_len(a, b, "oracle_leq");
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != 0 && a.values[i] != b.values[i]) return false;
    return true;
}

DiagonalObservable oracle_meet_closed_form(const DiagonalObservable& a,
                                           const DiagonalObservable& b) {
    require_same_len(a, b, "oracle_meet_closed_form");
    DiagonalObservable c;
    c.values.resize(a.values.size(), 0);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] == b.values[i]) c.values[i] = a.values[i];
    return c;
}

DiagonalObservable oracle_meet_bruteforce(const DiagonalObservable& a,
                                          const DiagonalObservable& b) {
    require_same_len(a, b, "oracle_meet_bruteforce");

    std::set<std::int64_t> value_set;
    for (auto v : a.values)
        if (v != 0) value_set.insert(v);
    for (auto v : b.values)
        if (v != 0) value_set.insert(v);

    const int k = static_cast<int>(value_set.size());
    if (k > 5)
        throw TooManyAtoms("oracle_meet_bruteforce: " + std::to_string(k) +
                           " distinct nonzero values (limit 5)");

    DiagonalObservable c;
    c.values.resize(a.values.size(), 0);
    if (k == 0) return c;

    std::vector<std::int64_t> values(value_set.begin(), value_set.end());
    auto block_of = [&](const std::vector<int>& rgs, std::int64_t v) {
        auto it = std::lower_bound(values.begin(), values.end(), v);
        return rgs[static_cast<std::size_t>(it - values.begin())];
    };

    // A coordinate survives a partition of the value set iff both entries
    // are nonzero and land in the same block; the meet keeps exactly the
    // coordinates that survive every partition.
    std::vector<bool> survives(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i)
        survives[i] = a.values[i] != 0 && b.values[i] != 0;

    for_each_set_partition(k, [&](const std::vector<int>& rgs) {
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (!survives[i]) continue;
            if (block_of(rgs, a.values[i]) != block_of(rgs, b.values[i])) survives[i] = false;
        }
    });

    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (survives[i]) c.values[i] = a.values[i];
    return c;
}

OracleJoinOutcome oracle_join(const DiagonalObservable& a, const DiagonalObservable& b) {
    require_same_len(a, b, "oracle_join");
    OracleJoinOutcome out;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] != 0 && b.values[i] != 0 && a.values[i] != b.values[i]) {
            out.violating_coordinate = static_cast<int>(i);
            return out;
        }
    }
    DiagonalObservable c;
    c.values.resize(a.values.size(), 0);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        c.values[i] = a.values[i] != 0 ? a.values[i] : b.values[i];
    out.result = std::move(c);
    return out;
}

Observable embed(const DiagonalObservable& a, const Matrix& u, const Tolerances& tol) {
    const int n = a.dim();
    if (u.rows() != n || u.cols() != n)
        throw DimensionMismatch("embed: unitary is " + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + ", expected " + std::to_string(n));
    double resid = operator_norm(Matrix(u.adjoint() * u - Matrix::Identity(n, n)));
    if (resid > tol.proj_tol)
        throw NotUnitary("embed: basis change is not unitary (residual " +
                         std::to_string(resid) + ")");

    Eigen::VectorXd diag(n);
    for (int i = 0; i < n; ++i) diag(i) = static_cast<double>(a.values[i]);
    return Observable(Matrix(u * diag.asDiagonal() * u.adjoint()), tol);
}

// ── Set partitions ────────────────────────────────────────────────────────

void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
    if (n < 0) throw Error("for_each_set_partition: negative size");
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    if (n == 0) {
        visit(rgs);
        return;
    }
    visit(rgs);
    while (true) {
        // Rightmost position that can still grow: rgs[i] may rise to one
        // past the running maximum of everything before it.
        int grow = -1;
        int prefix_max = 0;
        std::vector<int> maxes(static_cast<std::size_t>(n), 0);
        for (int i = 1; i < n; ++i) {
            maxes[static_cast<std::size_t>(i)] = prefix_max = std::max(prefix_max, rgs[static_cast<std::size_t>(i - 1)]);
        }
        for (int i = n - 1; i >= 1; --i) {
            if (rgs[static_cast<std::size_t>(i)] <= maxes[static_cast<std::size_t>(i)]) {
                grow = i;
                break;
            }
        }
        if (grow < 0) return;
        rgs[static_cast<std::size_t>(grow)] += 1;
        for (int j = grow + 1; j < n; ++j) rgs[static_cast<std::size_t>(j)] = 0;
        visit(rgs);
    }
}

std::uint64_t count_set_partitions(int n) {
    std::uint64_t count = 0;
    for_each_set_partition(n, [&](const std::vector<int>&) { ++count; });
    return count;
}

bool is_refinement(const std::vector<int>& fine_rgs, const std::vector<int>& coarse_rgs) {
    if (fine_rgs.size() != coarse_rgs.size())
        throw LengthMismatch("is_refinement: partitions of different sets");
    std::vector<int> target(fine_rgs.size(), -1);
    for (std::size_t i = 0; i < fine_rgs.size(); ++i) {
        int f = fine_rgs[i];
        if (target[static_cast<std::size_t>(f)] < 0)
            target[static_cast<std::size_t>(f)] = coarse_rgs[i];
        else if (target[static_cast<std::size_t>(f)] != coarse_rgs[i])
            return false;
    }
    return true;
}

// ── Differential sweep ────────────────────────────────────────────────────

namespace {

DiagonalObservable random_diagonal(int dim, Rng& rng) {
    DiagonalObservable d;
    d.values.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        d.values.push_back(static_cast<std::int64_t>(rng.int_range(-3, 3)));
    return d;
}

int combined_nonzero_values(const DiagonalObservable& a, const DiagonalObservable& b) {
    std::set<std::int64_t> s;
    for (auto v : a.values)
        if (v != 0) s.insert(v);
    for (auto v : b.values)
        if (v != 0) s.insert(v);
    return static_cast<int>(s.size());
}

std::string diag_str(const DiagonalObservable& d) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < d.values.size(); ++i)
        out << (i ? "," : "") << d.values[i];
    out << "]";
    return out.str();
}

}  // namespace

DifferentialReport differential_sweep(std::uint64_t trials, int dim, std::uint64_t seed,
                                      const Tolerances& tol) {
    tol.validate();
    if (dim < 2) throw Error("differential_sweep: dimension must be at least 2");

    DifferentialReport report;
    report.trials = trials;
    report.dim = dim;
    report.seed = seed;

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, t);
        DiagonalObservable da = random_diagonal(dim, rng);
        DiagonalObservable db = random_diagonal(dim, rng);
        // Keep the combined spectrum small enough for the exhaustive meet.
        while (combined_nonzero_values(da, db) > 5) {
            da = random_diagonal(dim, rng);
            db = random_diagonal(dim, rng);
        }
        Matrix u = random_unitary(dim, rng);

        auto report_finding = [&](const char* check, const std::string& detail) {
            report.findings.push_back({t, check, detail, da, db, t});
        };
        const std::string pair_str = "a=" + diag_str(da) + " b=" + diag_str(db);

        try {
            Observable a = embed(da, u, tol);
            Observable b = embed(db, u, tol);
            const double scale = std::max({1.0, a.norm(), b.norm()});

            report.checks += 1;
            bool want_orth = oracle_orthogonal(da, db);
            bool got_orth = is_orthogonal(a, b).verdict;
            if (want_orth != got_orth)
                report_finding("orth", pair_str + ": oracle says " + std::to_string(want_orth) +
                                           ", matrices say " + std::to_string(got_orth));

            report.checks += 2;
            if (oracle_leq(da, db) != leq(a, b).verdict)
                report_finding("leq", pair_str + ": verdicts disagree on a before b");
            if (oracle_leq(db, da) != leq(b, a).verdict)
                report_finding("leq", pair_str + ": verdicts disagree on b before a");

            report.checks += 1;
            DiagonalObservable dm = oracle_meet_closed_form(da, db);
            if (oracle_meet_bruteforce(da, db) != dm)
                report_finding("meet_bruteforce",
                               pair_str + ": partition enumeration disagrees with closed form");

            report.checks += 1;
            Observable m = meet(a, b);
            double meet_resid = operator_norm(Matrix(m.matrix() - embed(dm, u, tol).matrix()));
            if (meet_resid > tol.proj_tol * scale)
                report_finding("meet", pair_str + ": matrix meet off by " +
                                           std::to_string(meet_resid));

            report.checks += 1;
            OracleJoinOutcome oj = oracle_join(da, db);
            JoinOutcome mj = join(a, b);
            if (oj.ok() != mj.ok()) {
                report_finding("join", pair_str + ": oracle existence " +
                                           std::to_string(oj.ok()) + ", matrix existence " +
                                           std::to_string(mj.ok()));
            } else if (oj.ok()) {
                double join_resid = operator_norm(
                    Matrix(mj.result->matrix() - embed(*oj.result, u, tol).matrix()));
                if (join_resid > tol.proj_tol * scale)
                    report_finding("join", pair_str + ": matrix join off by " +
                                               std::to_string(join_resid));
            }
        } catch (const std::exception& e) {
            report_finding("exception", pair_str + ": " + e.what());
        }
    }
    return report;
}

}  // namespace orthoalg::oracle
