#pragma once

#include <memory>
#include <vector>

#include "dpp/assembly.hpp"
#include "dpp/linalg/operator.hpp"
#include "dpp/solver/config.hpp"

namespace dpp::solver {

/// Builds the preconditioner described by `spec` for a matrix whose unknowns
/// are laid out as consecutive field segments of the given sizes. The
/// returned operator owns every sub-block it needs.
std::unique_ptr<linalg::LinearOperator> build_preconditioner(const linalg::CsrMatrix& a,
                                                             const std::vector<int>& field_sizes, const PcSpec& spec);

/// Convenience builders over the monolithic form of a block system.
std::unique_ptr<linalg::LinearOperator> build_scale_split(const BlockSystem& system);
std::unique_ptr<linalg::LinearOperator> build_field_split(const BlockSystem& system);

}  // namespace dpp::solver
