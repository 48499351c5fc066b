#ifndef GROUPOIDAL_IO_HPP
#define GROUPOIDAL_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "groupoidal/examples.hpp"
#include "groupoidal/independence.hpp"
#include "groupoidal/products.hpp"
#include "groupoidal/qmeasure.hpp"
#include "groupoidal/states.hpp"

namespace groupoidal {

using ordered_json = nlohmann::ordered_json;

/// Raised on malformed documents, unresolvable references, or schema
/// mismatches.  Messages carry the file (or origin) and the offending field.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed document: its declared kind plus the whole JSON object.  All
/// documents carry "schema": 1 and a "kind" of groupoid, state,
/// free-product-spec, event, or family.
struct Document {
    std::string kind;
    ordered_json body;

    bool operator==(const Document&) const = default;
};

/// Parses and validates the envelope (schema version, known kind).
Document parse_document(const std::string& text, const std::string& origin = "<memory>");

Document load_document(const std::string& path);

/// Writes the body with two-space indentation and a trailing newline;
/// byte-identical for equal documents.
void save_document(const Document& doc, const std::string& path);

std::string document_text(const Document& doc);

ordered_json groupoid_to_json(const Groupoid& g);

/// Accepts either explicit tables (outcomes, transitions with
/// source/target/inverse by id or label, compose triples) or the
/// "pairs_of": n shortcut.  Units are recovered from the compose table as
/// the idempotent loops; missing axioms are left for validate() to report.
Groupoid groupoid_from_json(const ordered_json& body);

ordered_json state_to_json(const State& rho);

/// The body's "groupoid" field must equal parent.name().
State state_from_json(const ordered_json& body, const Groupoid& parent);

ordered_json event_to_json(const Event& event);

/// Transitions are referenced by label; unknown labels raise IoError.
Event event_from_json(const ordered_json& body, const Groupoid& parent);

ordered_json spec_to_json(const FreeProductSpec& spec);

FreeProductSpec spec_from_json(const ordered_json& body);

/// A named collection of subalgebra members for independence checks, each
/// given by the transition labels of a subgroupoid of the parent.
struct FamilySpec {
    std::string name;
    std::string groupoid_name;
    struct MemberSpec {
        std::string name;
        std::vector<std::string> transition_labels;
    };
    std::vector<MemberSpec> members;
};

ordered_json family_to_json(const FamilySpec& family);

FamilySpec family_from_json(const ordered_json& body);

/// Resolves labels against the parent and builds the algebra members.
std::vector<Member> family_members(const FamilySpec& family, const Groupoid& parent);

ordered_json report_to_json(const ExampleReport& report);

ordered_json independence_report_to_json(const IndependenceReport& report, const Groupoid& parent,
                                         const std::vector<Member>& members);

}  // namespace groupoidal

#endif
