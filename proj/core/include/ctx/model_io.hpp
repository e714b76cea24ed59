#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ctx/model.hpp"

namespace ctx {

// Raised on malformed documents; message carries the location when known.
struct DocumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The JSON interchange document. Weights are "p/q" strings keyed by the
// comma-joined outcome tuple of a section in context order; the "format"
// field is mandatory. A document without "semiring"/"tables" describes a
// bare scenario.
inline constexpr const char* kDocumentFormat = "ctxlab/1";

struct Document {
  std::shared_ptr<const Scenario> scenario;
  std::optional<EmpiricalModel> model;
};

// strict = reject unknown fields. Omitted sections in a table weigh zero.
Document read_document(std::istream& in, bool strict = true);
Document read_document_text(const std::string& text, bool strict = true);
Document read_document_file(const std::string& path, bool strict = true);

std::string write_model(const EmpiricalModel& model);
std::string write_scenario(const Scenario& scenario);

}  // namespace ctx
