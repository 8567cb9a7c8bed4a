#pragma once

#include <functional>
#include <vector>

#include "bicomm/grid.hpp"

namespace bicomm {

/// Which distinguished boundary a sample set lives on: R x R (boundary of
/// the product of upper half-planes) or T x T (boundary of the bidisk).
enum class BoundaryDomain { halfplane, disk };
enum class CayleyDirection { to_disk, to_halfplane };
enum class LineRule { tangent_midpoint, truncated_trapezoid };

/// Function values on a tensor grid of boundary nodes together with per-axis
/// quadrature weights. Line nodes are real (stored with zero imaginary part);
/// circle nodes are unit complex numbers and circle weights integrate the
/// normalized arc measure d(theta)/(2 pi). `values` is row-major in node1.
struct BoundarySamples {
  BoundaryDomain domain = BoundaryDomain::halfplane;
  std::vector<Complex> nodes1, nodes2;
  std::vector<double> weights1, weights2;
  std::vector<Complex> values;
};

using BoundaryFunction = std::function<Complex(Complex, Complex)>;

/// m x m line grid. The tangent rule places x = tan(t) at midpoints of a
/// uniform grid in t over (-pi/2, pi/2); the truncated rule is the trapezoid
/// rule on [-T, T].
BoundarySamples sample_on_line(const BoundaryFunction& f, int m, LineRule rule = LineRule::tangent_midpoint,
                               double truncation = 64.0);
/// m x m circle grid at theta = 2 pi (k + 1/2) / m.
BoundarySamples sample_on_circle(const BoundaryFunction& f, int m);

double boundary_lp_norm(const BoundarySamples& s, double p);

/// alpha(l) = i (1 + l) / (1 - l), disk to upper half-plane.
Complex cayley_alpha(Complex lambda);
/// beta(l) = (l - i) / (l + i), upper half-plane to disk.
Complex cayley_beta(Complex lambda);

/// Applies u_p (to_disk) or its inverse (to_halfplane) node by node. Output
/// nodes are the images of the input nodes and the quadrature weights are
/// carried along by the Jacobian of the change of variables.
/// Throws for p outside {1, 2, 4}, for a source on the wrong boundary, and
/// for nodes at (or numerically at) the singular point of the map.
BoundarySamples cayley_transport(const BoundarySamples& s, int p, CayleyDirection direction);

}  // namespace bicomm
