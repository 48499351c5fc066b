#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <groupoidal/io.hpp>

using namespace groupoidal;

namespace {

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    const char* env = std::getenv("GROUPOIDAL_SEED");
    if (env == nullptr) return cli_seed;
    const std::string text(env);
    try {
        std::size_t pos = 0;
        const unsigned long long parsed = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw IoError("GROUPOIDAL_SEED is not an unsigned integer: '" + text + "'");
    }
}

Document load_kind(const std::string& path, const std::string& kind) {
    Document doc = load_document(path);
    if (doc.kind != kind)
        throw IoError(path + ": expected a " + kind + " document, found '" + doc.kind + "'");
    return doc;
}

Groupoid groupoid_from_file(const std::string& path) {
    return groupoid_from_json(load_kind(path, "groupoid").body);
}

void emit(const ordered_json& body) { std::cout << body.dump(2) << "\n"; }

std::vector<std::string> split_labels(const std::string& text) {
    std::vector<std::string> labels;
    std::stringstream stream(text);
    std::string label;
    while (std::getline(stream, label, ',')) labels.push_back(label);
    return labels;
}

int resolve_label(const Groupoid& g, const std::string& label) {
    const std::optional<int> tid = g.transition_id_of_label(label);
    if (!tid) throw IoError("undeclared transition label '" + label + "'");
    return *tid;
}

int run_validate(const std::string& path, const std::string& groupoid_path) {
    const Document doc = load_document(path);
    const auto parent = [&]() -> Groupoid {
        if (groupoid_path.empty())
            throw IoError("validating a " + doc.kind + " document needs --groupoid <file>");
        return groupoid_from_file(groupoid_path);
    };

    ordered_json out;
    out["schema"] = 1;
    out["kind"] = "validation-report";
    out["document"] = doc.kind;

    if (doc.kind == "groupoid") {
        const Groupoid g = groupoid_from_json(doc.body);
        const std::vector<Violation> violations = validate(g);
        out["name"] = g.name();
        out["outcomes"] = g.outcome_count();
        out["transitions"] = g.size();
        ordered_json list = ordered_json::array();
        for (const Violation& v : violations) list.push_back({{"axiom", v.axiom}, {"details", v.details}});
        out["violations"] = std::move(list);
        out["valid"] = violations.empty();
        emit(out);
        return violations.empty() ? 0 : 1;
    }
    if (doc.kind == "state") {
        const Groupoid g = parent();
        const State rho = state_from_json(doc.body, g);
        const StateReport report = check_state(rho);
        out["hermitian"] = report.hermitian;
        out["hermiticity_defect"] = report.hermiticity_defect;
        out["positive"] = report.positive;
        out["min_gram_eigenvalue"] = report.min_gram_eigenvalue;
        out["unit_mass"] = {{"re", report.unit_mass.real()}, {"im", report.unit_mass.imag()}};
        out["normalized"] = report.normalized;
        ordered_json warnings = ordered_json::array();
        if (!report.normalized) {
            std::ostringstream warning;
            warning << "normalization warning: unit mass is " << report.unit_mass.real() << " rather than 1";
            warnings.push_back(warning.str());
        }
        out["warnings"] = std::move(warnings);
        const bool ok = report.hermitian && report.positive;
        out["valid"] = ok;
        emit(out);
        return ok ? 0 : 1;
    }
    if (doc.kind == "free-product-spec") {
        const FreeProductSpec spec = spec_from_json(doc.body);
        out["name"] = spec.name;
        out["ambient_outcomes"] = spec.outcomes.size();
        out["factors"] = spec.factors.size();
        out["valid"] = true;
        emit(out);
        return 0;
    }
    if (doc.kind == "event") {
        const Groupoid g = parent();
        const Event event = event_from_json(doc.body, g);
        out["transitions"] = event.transitions.size();
        out["valid"] = true;
        emit(out);
        return 0;
    }
    // family
    const Groupoid g = parent();
    const std::vector<Member> members = family_members(family_from_json(doc.body), g);
    ordered_json list = ordered_json::array();
    for (const Member& member : members)
        list.push_back({{"name", member.name}, {"basis_size", member.basis.size()}});
    out["members"] = std::move(list);
    out["valid"] = true;
    emit(out);
    return 0;
}

int run_product(const std::string& first_path, const std::string& second_path, const std::string& out_path,
                const std::string& name) {
    const Groupoid first = groupoid_from_file(first_path);
    const Groupoid second = groupoid_from_file(second_path);
    const DirectProduct dp =
        direct_product({first, second}, name.empty() ? first.name() + "x" + second.name() : name);
    const Document doc{"groupoid", groupoid_to_json(dp.product)};
    if (!out_path.empty()) {
        save_document(doc, out_path);
        ordered_json summary;
        summary["schema"] = 1;
        summary["kind"] = "product-result";
        summary["name"] = dp.product.name();
        summary["outcomes"] = dp.product.outcome_count();
        summary["transitions"] = dp.product.size();
        summary["written"] = out_path;
        emit(summary);
    } else {
        emit(doc.body);
    }
    return 0;
}

int run_free_product(const std::string& spec_path, int max_word_length, const std::string& out_path) {
    const FreeProductSpec spec = spec_from_json(load_kind(spec_path, "free-product-spec").body);
    const BoundedFreeProduct fp = fp_groupoid(spec, max_word_length);
    ordered_json out;
    out["schema"] = 1;
    out["kind"] = "free-product-result";
    out["name"] = spec.name;
    out["max_word_length"] = max_word_length;
    out["saturated"] = fp.saturated;
    out["words"] = fp.groupoid.size();
    if (!out_path.empty()) {
        save_document(Document{"groupoid", groupoid_to_json(fp.groupoid)}, out_path);
        out["written"] = out_path;
    } else {
        out["groupoid"] = groupoid_to_json(fp.groupoid);
    }
    emit(out);
    return 0;
}

int run_measure(const std::string& groupoid_path, const std::string& state_path,
                const std::vector<std::string>& event_specs) {
    const Groupoid g = groupoid_from_file(groupoid_path);
    const State rho = state_from_json(load_kind(state_path, "state").body, g);
    const StateReport state_report = check_state(rho);

    std::vector<Event> events;
    for (const std::string& spec : event_specs) {
        std::vector<int> ids;
        for (const std::string& label : split_labels(spec)) ids.push_back(resolve_label(g, label));
        events.push_back(make_event(g, ids));
    }

    ordered_json out;
    out["schema"] = 1;
    out["kind"] = "measure-report";
    out["groupoid"] = g.name();
    out["state"] = {{"hermitian", state_report.hermitian},
                    {"positive", state_report.positive},
                    {"unit_mass", {{"re", state_report.unit_mass.real()}, {"im", state_report.unit_mass.imag()}}}};
    ordered_json rows = ordered_json::array();
    for (const Event& event : events) {
        const cplx pairing = decoherence(rho, event, event);
        ordered_json labels = ordered_json::array();
        for (int tid : event.transitions) labels.push_back(g.transition(tid).label);
        rows.push_back({{"transitions", std::move(labels)},
                        {"decoherence", {{"re", pairing.real()}, {"im", pairing.imag()}}},
                        {"mu", quantum_measure(rho, event)},
                        {"mu_dual", quantum_measure_dual(rho, event)}});
    }
    out["events"] = std::move(rows);
    ordered_json interferences = ordered_json::array();
    for (std::size_t i = 0; i < events.size(); ++i)
        for (std::size_t j = i + 1; j < events.size(); ++j)
            if (disjoint(events[i], events[j]))
                interferences.push_back(
                    {{"first", i}, {"second", j}, {"value", interference(rho, events[i], events[j])}});
    out["interference"] = std::move(interferences);
    emit(out);
    return (state_report.hermitian && state_report.positive) ? 0 : 1;
}

int run_independence(const std::string& groupoid_path, const std::string& family_path,
                     const std::vector<std::string>& state_paths, const std::string& notion, int trials,
                     int max_word_length, std::uint64_t seed, int jobs, double tolerance) {
    const Groupoid g = groupoid_from_file(groupoid_path);
    const std::vector<Member> members = family_members(family_from_json(load_kind(family_path, "family").body), g);

    IndependenceKind kind = IndependenceKind::usual;
    if (notion == "generalized") kind = IndependenceKind::generalized;
    if (notion == "free") kind = IndependenceKind::free_product;

    IndependenceParams params;
    params.trials = trials;
    params.max_word_length = max_word_length;
    params.tolerance = tolerance;
    params.seed = effective_seed(seed);
    params.jobs = jobs;

    ordered_json out;
    out["schema"] = 1;
    out["kind"] = "independence-run";
    out["groupoid"] = g.name();
    out["notion"] = notion;
    out["trials"] = params.trials;
    out["max_word_length"] = params.max_word_length;
    out["tolerance"] = params.tolerance;
    out["seed"] = params.seed;
    ordered_json names = ordered_json::array();
    for (const Member& member : members) names.push_back(member.name);
    out["members"] = std::move(names);

    bool all_hold = true;
    ordered_json results = ordered_json::array();
    for (const std::string& state_path : state_paths) {
        const State rho = state_from_json(load_kind(state_path, "state").body, g);
        const IndependenceReport report = check_independence(kind, rho, members, params);
        all_hold = all_hold && report.holds;
        results.push_back(
            {{"state", state_path}, {"report", independence_report_to_json(report, g, members)}});
    }
    out["results"] = std::move(results);
    emit(out);
    return all_hold ? 0 : 1;
}

int run_gallery(const std::string& which, int max_word_length, bool as_json) {
    bool all_pass = true;
    const auto show = [&](const ExampleReport& report) {
        all_pass = all_pass && report.all_pass;
        if (as_json)
            emit(report_to_json(report));
        else
            std::cout << format_report(report);
    };
    if (which == "eprb" || which == "all") {
        const EprbSystem system = build_eprb();
        show(run_eprb_report(system));
    }
    if (which == "a2star" || which == "all") show(run_a2_star_a2_gallery(max_word_length));
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-groupoid toolkit: validation, products, quantum measures, independence, gallery"};
    app.require_subcommand(1);

    auto* validate_cmd = app.add_subcommand("validate", "check a document against the axioms");
    std::string validate_path;
    std::string validate_groupoid;
    validate_cmd->add_option("file", validate_path, "document to check")->required();
    validate_cmd->add_option("--groupoid", validate_groupoid, "parent groupoid document");

    auto* product_cmd = app.add_subcommand("product", "direct product of two groupoids");
    std::string product_first;
    std::string product_second;
    std::string product_out;
    std::string product_name;
    product_cmd->add_option("first", product_first)->required();
    product_cmd->add_option("second", product_second)->required();
    product_cmd->add_option("-o,--output", product_out, "write the product groupoid here");
    product_cmd->add_option("--name", product_name, "name for the product");

    auto* free_cmd = app.add_subcommand("free-product", "bounded free product from a spec");
    std::string free_spec;
    int free_bound = 6;
    std::string free_out;
    free_cmd->add_option("spec", free_spec)->required();
    free_cmd->add_option("--max-word", free_bound, "word-length bound")->check(CLI::PositiveNumber);
    free_cmd->add_option("-o,--output", free_out, "write the word groupoid here");

    auto* measure_cmd = app.add_subcommand("measure", "decoherence pairing and quantum measure of events");
    std::string measure_groupoid;
    std::string measure_state;
    std::vector<std::string> measure_events;
    measure_cmd->add_option("groupoid", measure_groupoid)->required();
    measure_cmd->add_option("state", measure_state)->required();
    measure_cmd->add_option("--event", measure_events, "comma-separated transition labels (repeatable)")
        ->required();

    auto* indep_cmd = app.add_subcommand("independence", "randomized independence check for a family");
    std::string indep_groupoid;
    std::string indep_family;
    std::vector<std::string> indep_states;
    std::string indep_notion;
    int indep_trials = 1000;
    int indep_max_word = 6;
    std::uint64_t indep_seed = 1;
    int indep_jobs = 1;
    double indep_tol = 1e-8;
    indep_cmd->add_option("groupoid", indep_groupoid)->required();
    indep_cmd->add_option("family", indep_family)->required();
    indep_cmd->add_option("--states", indep_states, "state documents to test")->required();
    indep_cmd->add_option("--notion", indep_notion, "usual | free | generalized")
        ->required()
        ->check(CLI::IsMember({"usual", "free", "generalized"}));
    indep_cmd->add_option("--trials", indep_trials)->check(CLI::PositiveNumber);
    indep_cmd->add_option("--max-word", indep_max_word)->check(CLI::PositiveNumber);
    indep_cmd->add_option("--seed", indep_seed, "RNG seed (GROUPOIDAL_SEED overrides)");
    indep_cmd->add_option("--jobs", indep_jobs, "worker pool size")->check(CLI::PositiveNumber);
    indep_cmd->add_option("--tol", indep_tol, "violation tolerance");

    auto* gallery_cmd = app.add_subcommand("gallery", "worked-example reports");
    std::string gallery_case = "all";
    int gallery_bound = 8;
    bool gallery_json = false;
    gallery_cmd->add_option("--case", gallery_case)->check(CLI::IsMember({"eprb", "a2star", "all"}));
    gallery_cmd->add_option("--max-word", gallery_bound)->check(CLI::PositiveNumber);
    gallery_cmd->add_flag("--json", gallery_json, "emit JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate_cmd) return run_validate(validate_path, validate_groupoid);
        if (*product_cmd) return run_product(product_first, product_second, product_out, product_name);
        if (*free_cmd) return run_free_product(free_spec, free_bound, free_out);
        if (*measure_cmd) return run_measure(measure_groupoid, measure_state, measure_events);
        if (*indep_cmd)
            return run_independence(indep_groupoid, indep_family, indep_states, indep_notion, indep_trials,
                                    indep_max_word, indep_seed, indep_jobs, indep_tol);
        if (*gallery_cmd) return run_gallery(gallery_case, gallery_bound, gallery_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
