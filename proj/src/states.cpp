#include "groupoidal/states.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groupoidal/tolerances.hpp"

namespace groupoidal {

State::State(const Groupoid& parent) : parent_(&parent) {}

State State::from_values(const Groupoid& parent, std::unordered_map<int, cplx> values) {
    State s(parent);
    for (auto& [tid, v] : values) s.set_value(tid, v);
    return s;
}

cplx State::value(int transition_id) const {
    auto it = values_.find(transition_id);
    return it == values_.end() ? cplx{} : it->second;
}

State& State::set_value(int transition_id, cplx value) {
    if (!parent_->has_transition(transition_id))
        throw std::invalid_argument("amplitude at undeclared transition " + std::to_string(transition_id));
    if (std::abs(value) <= tol::prune)
        values_.erase(transition_id);
    else
        values_[transition_id] = value;
    return *this;
}

std::vector<int> State::support() const {
    std::vector<int> ids;
    ids.reserve(values_.size());
    for (const auto& [tid, v] : values_) ids.push_back(tid);
    std::sort(ids.begin(), ids.end());
    return ids;
}

cplx expectation(const State& rho, const AlgebraElement& element) {
    if (!(&rho.parent() == &element.parent() || rho.parent() == element.parent()))
        throw std::invalid_argument("state and element belong to different groupoids");
    cplx sum;
    for (int tid : element.support()) sum += element.coefficient(tid) * rho.value(tid);
    return sum;
}

StateReport check_state(const State& rho) {
    const Groupoid& g = rho.parent();
    StateReport report;

    for (const Transition& t : g.transitions()) {
        auto inv = g.inverse(t.id);
        if (!inv) continue;
        report.hermiticity_defect =
            std::max(report.hermiticity_defect, std::abs(rho.value(*inv) - std::conj(rho.value(t.id))));
    }
    report.hermitian = report.hermiticity_defect <= tol::compare;

    // Gram matrix over all transitions: entries pair transitions sharing a
    // target, where inverse-then-compose is defined.
    const auto& ts = g.transitions();
    const int n = static_cast<int>(ts.size());
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        auto inv = g.inverse(ts[i].id);
        if (!inv) continue;
        for (int j = 0; j < n; ++j) {
            auto c = g.compose(*inv, ts[j].id);
            if (c) gram(i, j) = rho.value(*c);
        }
    }
    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((gram + gram.adjoint()) / 2.0);
        report.min_gram_eigenvalue = solver.eigenvalues().minCoeff();
    }
    report.positive = report.hermitian && report.min_gram_eigenvalue > -tol::psd;

    report.unit_mass = expectation(rho, algebra_unit(g));
    report.normalized = std::abs(report.unit_mass - 1.0) <= tol::compare;

    for (const Transition& t : g.transitions()) {
        cplx v = rho.value(t.id);
        if (std::abs(v) <= tol::restrict_mass) continue;
        auto inv = g.inverse(t.id);
        if (!inv) continue;
        report.unitarity_defect = std::max(report.unitarity_defect, std::abs(rho.value(*inv) * v - 1.0));
    }
    report.unitary = report.unitarity_defect <= tol::compare;

    for (const Transition& a : g.transitions()) {
        for (const Transition& b : g.transitions()) {
            auto c = g.compose(a.id, b.id);
            if (!c) continue;
            report.factorization_defect =
                std::max(report.factorization_defect,
                         std::abs(rho.value(*c) - rho.value(a.id) * rho.value(b.id)));
        }
    }
    report.factorizable = report.factorization_defect <= tol::compare;

    return report;
}

State restrict_state(const State& rho, const Groupoid& sub) {
    const Groupoid& g = rho.parent();
    cplx mass;
    for (const auto& [x, u] : sub.unit_table()) {
        if (!g.has_transition(u))
            throw std::invalid_argument("subobject does not share the parent's transition ids");
        mass += rho.value(u);
    }
    if (std::abs(mass) <= tol::restrict_mass)
        throw std::invalid_argument("state has negligible mass on the subobject");

    State out(sub);
    for (const Transition& t : sub.transitions()) {
        if (!g.has_transition(t.id))
            throw std::invalid_argument("subobject does not share the parent's transition ids");
        out.set_value(t.id, rho.value(t.id) / mass);
    }
    return out;
}

State uniform_unit_state(const Groupoid& g) {
    State s(g);
    const double w = 1.0 / static_cast<double>(g.outcome_count());
    for (const auto& [x, u] : g.unit_table()) s.set_value(u, w);
    return s;
}

State all_ones_state(const Groupoid& g) {
    State s(g);
    for (const Transition& t : g.transitions()) s.set_value(t.id, 1.0);
    return s;
}

State pure_state_from_vector(const Groupoid& g, const std::vector<cplx>& v) {
    if (v.size() != g.outcome_count())
        throw std::invalid_argument("vector length must match the outcome count");
    std::unordered_map<int, int> position;
    for (std::size_t i = 0; i < g.outcomes().size(); ++i) position[g.outcomes()[i].id] = static_cast<int>(i);

    State s(g);
    for (const Transition& t : g.transitions())
        s.set_value(t.id, std::conj(v[position.at(t.target)]) * v[position.at(t.source)]);
    return s;
}

State mix(const std::vector<std::pair<double, State>>& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("cannot mix an empty ensemble");
    const Groupoid& g = ensemble.front().second.parent();
    State out(g);
    for (const auto& [w, s] : ensemble) {
        if (!(&s.parent() == &g || s.parent() == g))
            throw std::invalid_argument("mixed states belong to different groupoids");
        for (int tid : s.support()) out.set_value(tid, out.value(tid) + w * s.value(tid));
    }
    return out;
}

State separable_state(const DirectProduct& dp, const std::vector<State>& factor_states) {
    if (factor_states.size() != dp.factors.size())
        throw std::invalid_argument("one factor state per factor required");
    for (std::size_t k = 0; k < factor_states.size(); ++k) {
        if (!(&factor_states[k].parent() == &dp.factors[k] || factor_states[k].parent() == dp.factors[k]))
            throw std::invalid_argument("factor state " + std::to_string(k) + " has the wrong parent");
    }
    State out(dp.product);
    for (const Transition& t : dp.product.transitions()) {
        std::vector<int> parts = dp.transition_tuple(t.id);
        cplx v = 1.0;
        for (std::size_t k = 0; k < parts.size(); ++k) v *= factor_states[k].value(parts[k]);
        out.set_value(t.id, v);
    }
    return out;
}

}  // namespace groupoidal
