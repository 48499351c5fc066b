#ifndef GROUPOIDAL_EXAMPLES_HPP
#define GROUPOIDAL_EXAMPLES_HPP

#include <string>
#include <vector>

#include "groupoidal/groupoid.hpp"
#include "groupoidal/states.hpp"

namespace groupoidal {

/// One asserted value of a worked example: a computed number, the value it
/// is expected to take, and the comparison verdict.
struct ReportRow {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 1e-9;
    bool pass = false;
};

struct ExampleReport {
    std::string title;
    std::vector<ReportRow> rows;
    bool all_pass = false;
};

/// Adds a row, computing its verdict.
void add_row(ExampleReport& report, std::string name, double computed, double reference,
             double tolerance = 1e-9);

/// Plain-text rendering, one row per line with PASS/FAIL verdicts.
std::string format_report(const ExampleReport& report);

/// The spin-pair experiment: four joint outcomes {++, +-, -+, --}, one
/// transition per ordered pair of outcomes (16 in total, labelled 1_xx,
/// alpha, beta, gamma, delta, eta, nu and inverses), the singlet-like state
/// rho0 supported on 1_+-, 1_-+, nu, nu^-1, and the vector psi it matches in
/// the fundamental representation.  The idle subgroupoids hold one particle's
/// transitions while the other detector is frozen.
struct EprbSystem {
    Groupoid groupoid;
    State rho0;
    std::vector<cplx> psi;
    Groupoid idle_particle2;  // particle-1 transitions: units, beta, delta and inverses
    Groupoid idle_particle1;  // particle-2 transitions: units, alpha, gamma and inverses

    EprbSystem();
    EprbSystem(const EprbSystem&) = delete;
    EprbSystem& operator=(const EprbSystem&) = delete;
};

EprbSystem build_eprb();

/// Reproduces the spin-pair computations: quantum measures of the three
/// arrival events, state expectations, the vector cross-check table, the
/// independence failure of the idle-leg subalgebras, and the restricted
/// classical distributions.  Reference values are the published ones; rows
/// whose honest computation disagrees with them report FAIL.
ExampleReport run_eprb_report(const EprbSystem& system);

/// The three ways of gluing two two-level systems along shared outcomes:
/// disjoint (direct sum), one shared outcome (three-level system), both
/// shared (infinite system classified by a winding number).  `max_word_length`
/// bounds the word enumeration for the third case; must be at least 4.
ExampleReport run_a2_star_a2_gallery(int max_word_length);

}  // namespace groupoidal

#endif
