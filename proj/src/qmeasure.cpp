#include "groupoidal/qmeasure.hpp"

#include <algorithm>
#include <stdexcept>

namespace groupoidal {

namespace {

void require_same_parent(const Event& a, const Event& b) {
    if (a.parent == b.parent || *a.parent == *b.parent) return;
    throw std::invalid_argument("events belong to different groupoids");
}

void require_state_parent(const State& rho, const Event& a) {
    if (&rho.parent() == a.parent || rho.parent() == *a.parent) return;
    throw std::invalid_argument("state and event belong to different groupoids");
}

}  // namespace

Event make_event(const Groupoid& g, const std::vector<int>& transition_ids) {
    Event e;
    e.parent = &g;
    for (int tid : transition_ids) {
        if (!g.has_transition(tid))
            throw std::invalid_argument("event references undeclared transition " + std::to_string(tid));
        e.transitions.insert(tid);
    }
    return e;
}

Event arrival_event(const Groupoid& g, int outcome_id) {
    if (!g.has_outcome(outcome_id))
        throw std::invalid_argument("undeclared outcome " + std::to_string(outcome_id));
    Event e;
    e.parent = &g;
    for (const Transition& t : g.transitions())
        if (t.target == outcome_id) e.transitions.insert(t.id);
    return e;
}

bool disjoint(const Event& a, const Event& b) {
    require_same_parent(a, b);
    for (int tid : a.transitions)
        if (b.transitions.count(tid)) return false;
    return true;
}

Event event_union(const Event& a, const Event& b) {
    require_same_parent(a, b);
    Event e;
    e.parent = a.parent;
    e.transitions = a.transitions;
    e.transitions.insert(b.transitions.begin(), b.transitions.end());
    return e;
}

AlgebraElement indicator(const Event& event) {
    AlgebraElement f(*event.parent);
    for (int tid : event.transitions) f.set_coefficient(tid, 1.0);
    return f;
}

cplx decoherence(const State& rho, const Event& a, const Event& b) {
    require_same_parent(a, b);
    require_state_parent(rho, a);
    const Groupoid& g = *a.parent;
    cplx sum;
    for (int s : a.transitions) {
        int sinv = g.inverse(s).value();
        for (int sp : b.transitions) {
            auto c = g.compose(sinv, sp);
            if (c) sum += rho.value(*c);
        }
    }
    return sum;
}

double quantum_measure(const State& rho, const Event& a) { return decoherence(rho, a, a).real(); }

double quantum_measure_dual(const State& rho, const Event& a) {
    require_state_parent(rho, a);
    AlgebraElement e = indicator(a);
    return expectation(rho, e.adjoint() * e).real();
}

double interference(const State& rho, const Event& a, const Event& b) {
    if (!disjoint(a, b)) throw std::invalid_argument("interference requires disjoint events");
    return quantum_measure(rho, event_union(a, b)) - quantum_measure(rho, a) - quantum_measure(rho, b);
}

}  // namespace groupoidal
