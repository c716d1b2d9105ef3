#ifndef MODTRACE_IO_HPP
#define MODTRACE_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "modtrace/builders.hpp"

namespace modtrace {

// JSON documents. Indices are 0-based; scalars are strings in the field's
// canonical form (residues for F_p, "a/b" for Q, polynomials in z for Q(zeta_l)).

std::string hopf_to_json(const HopfPresentation& h);
/// Throws MalformedInput on syntax, missing fields or bad scalars. Axioms are not checked.
HopfData hopf_from_json(std::string_view text);

std::string module_to_json(const ModuleRep& m);
/// The document's algebra_hash, when present, must match h. Validates the module.
ModulePtr module_from_json(std::string_view text, const HopfPtr& h);

/// "hopf" or "module", read from the document's "format" field.
std::string document_kind(std::string_view text);

/// Throws MalformedInput when the file cannot be read.
std::string read_text_file(const std::string& path);

/// builder:group:S3:F2, builder:double:S3:F2, builder:usl2:p=3, builder:quantum:l=3,
/// builder:sweedler:F3, or a path to a Hopf document (validated, with the trivial module).
Family resolve_algebra(std::string_view ref);

/// module:<name> for a named module of the family, module:regular, module:P1 (the
/// projective cover of the unit), module:proj:<k> (summand k of the regular module),
/// module:dual:<name>, or a path to a module document.
ModulePtr resolve_module(const Family& fam, std::string_view ref, std::uint64_t seed = 0);

std::string hex64(std::uint64_t x);

}  // namespace modtrace

#endif  // MODTRACE_IO_HPP
