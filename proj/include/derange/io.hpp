#pragma once

#include <string>
#include <vector>

#include "derange/action.hpp"
#include "derange/group.hpp"
#include "derange/perm.hpp"

namespace derange {

/// Parsed form of a group file:
///   degree n
///   (1 2)(3 4 5)        one generator per line, 1-based cycles
/// with `#` comments and blank lines ignored.
struct GroupFileData {
    int degree = 0;
    std::vector<Permutation> generators;
};

/// Parsed form of an action file: a group file followed by
///   orbits k
/// and k lines of 1-based point lists. The orbit block is optional; without
/// it the orbits are computed from the group.
struct ActionFileData {
    GroupFileData group;
    bool has_orbits = false;
    std::vector<std::vector<int>> orbits;  // 0-based internally
};

/// Parsed form of a matrix file: a `p d` header line, then each matrix as
/// d rows of d integers (blank lines between matrices are cosmetic).
struct MatrixFileData {
    long p = 0;
    int d = 0;
    std::vector<std::vector<std::vector<long>>> matrices;  // row-major d x d
};

GroupFileData parse_group_text(const std::string& text, const std::string& origin = "<input>");
ActionFileData parse_action_text(const std::string& text, const std::string& origin = "<input>");
MatrixFileData parse_matrix_text(const std::string& text, const std::string& origin = "<input>");

GroupFileData load_group_file(const std::string& path);
ActionFileData load_action_file(const std::string& path);
MatrixFileData load_matrix_file(const std::string& path);

std::string format_group_file(int degree, const std::vector<Permutation>& generators);
std::string format_action_file(const MultiOrbitAction& action);

/// Realizes a parsed action file, validating explicit orbit labels when
/// present and computing them otherwise.
MultiOrbitAction realize_action(const ActionFileData& data);

std::string read_text_file(const std::string& path);

}  // namespace derange
