"""Volumetric integral invariants, moving planes and ball extraction on voxel grids."""

from ._vxr import (  # noqa: F401
    ConsistencyError,
    GridSpec,
    InputError,
    IoError,
    ParameterError,
    PreconditionError,
    Shape,
    VoxelSet,
    annular_slab_volume,
    cli,
    criticality_report,
    curvature_estimate,
    degeneracy_score,
    detect_symmetry_planes,
    exact_ball_ball_volume,
    extract_balls,
    fit_ball,
    kernel_count,
    load_grid,
    moving_planes,
    nondegeneracy_condition,
    nonlocal_perimeter,
    rasterize,
    reflect,
    riesz_indicator,
    rigidity_verdict,
    save_grid,
    sphere_invariant_at,
    steiner_symmetrize,
    unit_ball_volume,
    vol_invariant_at,
    vol_invariant_field,
)


def disk(center, radius, half_width, spacing):
    """Rasterized ball on a centred cube grid."""
    grid = GridSpec.centered(len(center), half_width, spacing)
    return rasterize(Shape.ball(list(center), radius), grid)
