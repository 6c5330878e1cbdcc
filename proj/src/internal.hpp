// private helpers shared between root_isolation.cpp and algnum.cpp
#ifndef MATPER_SRC_INTERNAL_HPP
#define MATPER_SRC_INTERNAL_HPP

#include <vector>

#include "matper/common.hpp"
#include "matper/int_poly.hpp"
#include "matper/interval.hpp"

namespace matper {
namespace detail {

Rat sqrt_upper(const Rat& q, long prec_bits);
Rat round_to_dyadic(const Rat& x, long prec_bits);

// pairwise-disjoint certified boxes (one root each) for a squarefree f,
// every box of width <= 2^-target_prec
std::vector<QRect> isolate_boxes(const IntPoly& f, long target_prec);

// shrink an isolating box below 2^-target_prec, keeping the same root
QRect refine_box(const IntPoly& f, const QRect& box, long target_prec);

}  // namespace detail
}  // namespace matper

#endif
