#pragma once

#include <filesystem>
#include <iosfwd>

#include "cartan/csd.hpp"
#include "cartan/kgd.hpp"
#include "cartan/subalgebras.hpp"

namespace cartan {

// ".csd": sections U1, U2, THETA, U3, U4. Each U section is a header line
// followed by a .cmat block; THETA is followed by one line of N/2 angles.
void write_csd(std::ostream& out, const CsdFactors& f);
CsdFactors read_csd(std::istream& in);

// ".kgd": sections K1, A, K2 (.cmat blocks) and REPORT, whose lines are
// "name residual tolerance pass|fail".
void write_kgd(std::ostream& out, const KgdFactors& f);
KgdFactors read_kgd(std::istream& in);

// Basis files: "BASIS <kind> <n> <count>", then per element "ELEMENT <i>"
// followed by a .cmat block.
void write_basis(std::ostream& out, const SubalgebraBasis& b);
SubalgebraBasis read_basis(std::istream& in);

void save_csd(const std::filesystem::path& path, const CsdFactors& f);
CsdFactors load_csd(const std::filesystem::path& path);
void save_kgd(const std::filesystem::path& path, const KgdFactors& f);
KgdFactors load_kgd(const std::filesystem::path& path);
void save_basis(const std::filesystem::path& path, const SubalgebraBasis& b);
SubalgebraBasis load_basis(const std::filesystem::path& path);

}  // namespace cartan
