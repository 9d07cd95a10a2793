#include "circlepack/apollonian.hpp"

namespace circlepack {

// The generation templates are instantiated here once for both backings.
template Packing<Rat> generate(const DescartesQuadruple<Rat>&, const Rat&, const GenerateOptions&);
template Packing<double> generate(const DescartesQuadruple<double>&, const double&, const GenerateOptions&);
template RootQuadruple<Rat> reduce_to_root(const CurvatureQuadruple<Rat>&);
template RootQuadruple<double> reduce_to_root(const CurvatureQuadruple<double>&);
template DescartesQuadruple<Rat> realize_root(const RootQuadruple<Rat>&);
template DescartesQuadruple<double> realize_root(const RootQuadruple<double>&);

}  // namespace circlepack
