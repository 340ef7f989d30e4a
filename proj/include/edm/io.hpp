#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "edm/ccm.hpp"
#include "edm/types.hpp"

namespace edm
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Columns-as-series CSV: a header row of unique names followed by one row per
// time step. Cells must parse as finite numbers. Errors name the offending
// row (1-based, header is row 1) and column.
Dataset parse_csv(std::istream &in);
Dataset load_csv(const std::filesystem::path &path);

// Header "library,<target names...>", one row per library, rho printed with
// six decimals and undefined entries as NA.
void write_skill_matrix(std::ostream &out, const SkillMatrix &m);
void write_skill_matrix(const SkillMatrix &m, const std::filesystem::path &path);

SkillMatrix read_skill_matrix(std::istream &in);
SkillMatrix read_skill_matrix(const std::filesystem::path &path);

// Long format: library,target,time,predicted
void write_predictions(std::ostream &out, const CcmResult &result);

} // namespace edm
