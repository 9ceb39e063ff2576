#pragma once
// JSON presentation files. Rationals are strings "p/q" (plain integers are accepted on input).
// Matrices are row-major with the column convention M e_b = sum_i M[i][b] e_i.

#include <optional>
#include <string>

#include "pvac/coisson.hpp"
#include "pvac/finite_op.hpp"

namespace pvac {

struct ParseError : Error {
    using Error::Error;
};

enum class FileKind { HModule, SusyPva, Poisson, Lie, Commutative };

std::string kind_name(FileKind k);

struct PresentationFile {
    FileKind kind = FileKind::Poisson;
    std::optional<PoissonPresentation> poisson;   // poisson, lie, commutative
    std::optional<SusyPvaPresentation> susy;      // susy-pva
    std::optional<HModule> module;                // h-module and susy-pva
    std::optional<Vec> vacuum;
};

// Structural checks only (dimensions, index ranges, parities 0/1); throws ParseError.
PresentationFile parse_presentation(const std::string& text);
PresentationFile load_presentation(const std::string& path);

std::string poisson_to_json(const PoissonPresentation& P, FileKind kind = FileKind::Poisson);
std::string susy_to_json(const SusyPvaPresentation& P);

}  // namespace pvac
