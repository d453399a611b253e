"""Discrete differential operators on box-grid samples.

Second-order central differences at interior nodes, one-sided stencils in the
boundary layer (flagged by `interior_mask`). Vector fields are arrays with a
trailing component axis: shape (m,)*d + (d,); scalars have shape (m,)*d.
"""

import numpy as np

KINDS = ("gradient", "divergence", "scalar-curl", "vector-curl", "curl3d")


def interior_mask(shape_d, m):
    """Boolean mask of nodes whose full central stencil lies on the grid."""
    mask = np.zeros((m,) * shape_d, dtype=bool)
    mask[(slice(1, -1),) * shape_d] = True
    return mask


def _axis_derivatives(field, h, d):
    return [np.gradient(field, h, axis=ax, edge_order=2) for ax in range(d)]


def discrete_differential(grid, field, kind):
    """Apply a differential operator to sampled data.

    kind: gradient (scalar -> vector), divergence (vector -> scalar),
    scalar-curl (2D vector -> scalar, d1 u2 - d2 u1), vector-curl
    (2D scalar -> vector, (d2 u, -d1 u)), curl3d (3D vector -> vector).
    Returns (result, interior_mask).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    m = grid.points_per_axis
    if m < 4:
        raise ValueError("grid too coarse for differencing")
    h = grid.spacing
    d = grid.d
    field = np.asarray(field)
    mask = interior_mask(d, m)

    if kind == "gradient":
        parts = _axis_derivatives(field, h, d)
        return np.stack(parts, axis=-1), mask

    if kind == "divergence":
        out = np.zeros(field.shape[:-1], dtype=field.dtype)
        for ax in range(d):
            out += np.gradient(field[..., ax], h, axis=ax, edge_order=2)
        return out, mask

    if kind == "scalar-curl":
        if d != 2:
            raise ValueError("scalar-curl is a 2D operator")
        return (np.gradient(field[..., 1], h, axis=0, edge_order=2)
                - np.gradient(field[..., 0], h, axis=1, edge_order=2)), mask

    if kind == "vector-curl":
        if d != 2:
            raise ValueError("vector-curl is a 2D operator")
        return np.stack([np.gradient(field, h, axis=1, edge_order=2),
                         -np.gradient(field, h, axis=0, edge_order=2)], axis=-1), mask

    # curl3d
    if d != 3:
        raise ValueError("curl3d is a 3D operator")
    du = [[np.gradient(field[..., c], h, axis=ax, edge_order=2)
           for ax in range(3)] for c in range(3)]
    curl = np.stack([du[2][1] - du[1][2],
                     du[0][2] - du[2][0],
                     du[1][0] - du[0][1]], axis=-1)
    return curl, mask
