#include "groupoidal/representation.hpp"

#include <cmath>
#include <stdexcept>

#include "groupoidal/tolerances.hpp"

namespace groupoidal {

const Eigen::MatrixXcd& MatrixRepresentation::matrix(int transition_id) const {
    auto it = matrices.find(transition_id);
    if (it == matrices.end())
        throw std::invalid_argument("no matrix for transition " + std::to_string(transition_id));
    return it->second;
}

Eigen::MatrixXcd MatrixRepresentation::act(const AlgebraElement& element) const {
    if (!(&element.parent() == parent || element.parent() == *parent))
        throw std::invalid_argument("element belongs to a different groupoid");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dimension, dimension);
    for (int tid : element.support()) out += element.coefficient(tid) * matrix(tid);
    return out;
}

double representation_defect(const MatrixRepresentation& rep) {
    const Groupoid& g = *rep.parent;
    double defect = 0.0;
    auto bump = [&](const Eigen::MatrixXcd& m) {
        if (m.size() > 0) defect = std::max(defect, m.cwiseAbs().maxCoeff());
    };

    for (const Transition& a : g.transitions()) {
        for (const Transition& b : g.transitions()) {
            auto c = g.compose(a.id, b.id);
            Eigen::MatrixXcd prod = rep.matrix(a.id) * rep.matrix(b.id);
            if (c)
                bump(prod - rep.matrix(*c));
            else
                bump(prod);
        }
    }
    for (const Transition& t : g.transitions()) {
        auto inv = g.inverse(t.id);
        if (inv) bump(rep.matrix(*inv) - rep.matrix(t.id).adjoint());
    }
    Eigen::MatrixXcd unit_sum = Eigen::MatrixXcd::Zero(rep.dimension, rep.dimension);
    for (const auto& [x, u] : g.unit_table()) unit_sum += rep.matrix(u);
    bump(unit_sum - Eigen::MatrixXcd::Identity(rep.dimension, rep.dimension));
    return defect;
}

MatrixRepresentation fundamental_representation(const Groupoid& g) {
    MatrixRepresentation rep;
    rep.parent = &g;
    rep.dimension = static_cast<int>(g.outcome_count());

    std::unordered_map<int, int> position;
    for (std::size_t i = 0; i < g.outcomes().size(); ++i) position[g.outcomes()[i].id] = static_cast<int>(i);

    for (const Transition& t : g.transitions()) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rep.dimension, rep.dimension);
        m(position.at(t.target), position.at(t.source)) = 1.0;
        rep.matrices.emplace(t.id, std::move(m));
    }
    return rep;
}

MatrixRepresentation left_regular_representation(const Groupoid& g) {
    MatrixRepresentation rep;
    rep.parent = &g;
    rep.dimension = static_cast<int>(g.size());

    std::unordered_map<int, int> position;
    for (std::size_t i = 0; i < g.transitions().size(); ++i)
        position[g.transitions()[i].id] = static_cast<int>(i);

    for (const Transition& t : g.transitions()) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rep.dimension, rep.dimension);
        for (const Transition& b : g.transitions()) {
            auto c = g.compose(t.id, b.id);
            if (c) m(position.at(*c), position.at(b.id)) = 1.0;
        }
        rep.matrices.emplace(t.id, std::move(m));
    }
    return rep;
}

GnsResult gns_representation(const State& rho) {
    const Groupoid& g = rho.parent();
    const auto& ts = g.transitions();
    const int n = static_cast<int>(ts.size());

    std::unordered_map<int, int> position;
    for (int i = 0; i < n; ++i) position[ts[i].id] = i;

    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        auto inv = g.inverse(ts[i].id);
        if (!inv) continue;
        for (int j = 0; j < n; ++j) {
            auto c = g.compose(*inv, ts[j].id);
            if (c) gram(i, j) = rho.value(*c);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((gram + gram.adjoint()) / 2.0);
    const Eigen::VectorXd evals = solver.eigenvalues();
    if (n > 0 && evals.minCoeff() < -tol::psd)
        throw std::invalid_argument("state is not positive semidefinite");

    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (evals(i) > tol::null_space) kept.push_back(i);
    const int rank = static_cast<int>(kept.size());

    // Columns v_i of the non-null eigenvectors; u_i = v_i / sqrt(λ_i) is an
    // orthonormal basis of the quotient under the Gram inner product.
    Eigen::MatrixXcd V(n, rank);
    Eigen::VectorXd lam(rank);
    for (int i = 0; i < rank; ++i) {
        V.col(i) = solver.eigenvectors().col(kept[i]);
        lam(i) = evals(kept[i]);
    }

    GnsResult out;
    out.rank = rank;
    out.representation.parent = &g;
    out.representation.dimension = rank;

    // Left convolution in the transition basis, compressed to the quotient:
    // entries ⟨u_i, L_σ u_j⟩ with the Gram inner product.
    for (const Transition& t : ts) {
        Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
        for (const Transition& b : ts) {
            auto c = g.compose(t.id, b.id);
            if (c) L(position.at(*c), position.at(b.id)) = 1.0;
        }
        Eigen::MatrixXcd compressed = V.adjoint() * gram * L * V;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) compressed(i, j) /= std::sqrt(lam(i) * lam(j));
        out.representation.matrices.emplace(t.id, std::move(compressed));
    }

    // Class of the algebra unit.
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
    for (const auto& [x, u] : g.unit_table()) w(position.at(u)) = 1.0;
    out.cyclic_vector = Eigen::VectorXcd::Zero(rank);
    Eigen::VectorXcd mw = gram * w;
    for (int i = 0; i < rank; ++i) out.cyclic_vector(i) = V.col(i).dot(mw) / std::sqrt(lam(i));

    return out;
}

}  // namespace groupoidal
