#pragma once

#include <gmpxx.h>

#include <vector>

#include "wronsos/rational.hpp"

namespace wronsos::detail {

/// Column vectors in extended precision: columns[c][i] is entry i of column c.
using MpColumns = std::vector<std::vector<mpf_class>>;

/// Integer vectors w with |w^T v| <= tolerance * |w| for every (orthonormal)
/// column v, found by LLL reduction of [I | weight * V]. Rows are linearly
/// independent and sorted by that ratio, smallest first.
std::vector<std::vector<Integer>> integer_relations(const MpColumns& columns, const mpf_class& weight,
                                                    const mpf_class& tolerance);

/// Orthonormal basis of the span of the columns (Gram-Schmidt twice).
MpColumns orthonormalize(MpColumns columns);

}  // namespace wronsos::detail
