#ifndef DELOC_IO_HPP
#define DELOC_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deloc/finite_cover.hpp"
#include "deloc/groups.hpp"
#include "deloc/heat_trace.hpp"
#include "deloc/hyperbolic.hpp"
#include "deloc/mapping_torus.hpp"
#include "deloc/nielsen.hpp"

namespace deloc::io {

/// Whole-file read; throws SchemaError when the file cannot be opened.
std::string read_file(const std::string& path);

/// FNV-1a 64-bit digest, used to pin inputs inside run records.
std::uint64_t fnv1a(const std::string& bytes);

// Parsers for the documented JSON formats. All of them throw SchemaError with
// a JSON-pointer-style path on malformed input.
groups::FiniteGroup parse_group(const std::string& text);
groups::Automorphism parse_automorphism(const std::string& text,
                                        const groups::FiniteGroup& g);
groups::CharacterTable parse_character_table(const std::string& text);
groups::InducedRepData parse_rep(const std::string& text);
hyperbolic::GeodesicClass parse_geodesic(const std::string& text);
torus::CohomologyAction parse_action(const std::string& text);
nielsen::EquivariantComplex parse_equivariant_complex(const std::string& text);
heat::LaurentComplex parse_laurent_complex(const std::string& text);

struct ValueFile {
    InvariantKind kind = InvariantKind::torsion;
    std::vector<Complex> values;
};
ValueFile parse_values(const std::string& text);

}  // namespace deloc::io

#endif
