"""kswitness: valuations on spheres, descent-circle geometry, finite
certificate extraction, and exact non-colorability of classic ray sets.

The package splits along the problem's own joints:

- ``sphere_geom``: latitude-convention coordinates, descent circles, the
  two-step descent, rotations, triad completion;
- ``valuation``: the oracle interface plus every explicit construction
  (1D, 2D, and the 3D near-miss families), the basis sum rule, and the
  d >= 4 -> 3 reduction;
- ``witness``: the certificate extractor and its circle-level operations;
- ``kssets``: exact integer ray sets, orthogonality graphs, basis
  enumeration, and the {0,1}-coloring solver with bundled classic data;
- ``cli``: the ``kswitness`` command-line front door.
"""

from .sphere_geom import (
    EPS_NORM,
    EPS_ORTHO,
    DescentAwayFromEquator,
    DescentCircle,
    DomainError,
    NotOrthogonal,
    SphPoint,
    Triad,
    complete_triad,
    complete_triad2,
    descent_theta,
    equator_crossings,
    from_cartesian,
    perp_of_apex,
    rotation_about_polar_axis,
    rotation_to_pole,
    to_cartesian,
    two_step_chain,
    two_step_delta_phi,
)
from .valuation import (
    FourSegmentValuation,
    FunctionValuation,
    Generator2D,
    NotABasis,
    OracleSpecError,
    PolarCapValuation,
    ReducedValuation,
    RotatedValuation,
    StepMeridianValuation,
    Valuation,
    Valuation2D,
    Valuation2DRotated,
    ZeroSetInvalid,
    build_oracle,
    check_basis,
    find_zero_orthogonal_set,
    make_valuation_1d,
    make_valuation_2d,
    reduce_dimension,
)
from .witness import (
    PreconditionFailed,
    WitnessConfig,
    WitnessReport,
    classify_great_circle,
    extract_witness,
    propagate_zero_along_descent,
)
from .kssets import (
    ColoringResult,
    DuplicateRay,
    OrthoGraph,
    RaySet,
    RaySetFormatError,
    build_ortho_graph,
    enumerate_bases,
    find_valuation,
    load_bundled,
    load_ray_set,
    verify_assignment,
)

__version__ = "0.1.0"
