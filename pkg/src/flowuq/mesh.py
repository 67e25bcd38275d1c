"""Structured 2-D finite-volume mesh with named boundary patches.

The geometry is a uniform Cartesian channel with an optional axis-aligned
rectangular obstacle realized as blocked (solid) cells.  Boundary faces are
grouped into four patches: ``inlet`` (west), ``outlet`` (east), ``wall``
(south + north), and ``obstacle`` (fluid/solid interfaces).  Fields store
one value per *fluid* cell; blocked cells carry no unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GeometryError",
    "FixedValue",
    "ZeroGradient",
    "FixedGradient",
    "Patch",
    "StructuredMesh",
    "CellField",
    "FaceFlux",
    "build_mesh",
    "inner_product",
    "write_field_csv",
]

# face-kind codes used on the (ny, nx) side arrays
INTERIOR = 0
INLET = 1
OUTLET = 2
WALL = 3
OBSTACLE = 4

PATCH_NAMES = ("inlet", "outlet", "wall", "obstacle")

# side index -> (di, dj), outward unit normal
_SIDES = {
    "w": (0, -1, (-1.0, 0.0)),
    "e": (0, 1, (1.0, 0.0)),
    "s": (-1, 0, (0.0, -1.0)),
    "n": (1, 0, (0.0, 1.0)),
}


class GeometryError(ValueError):
    """Invalid mesh geometry (obstacle placement, degenerate extents)."""


@dataclass(frozen=True)
class FixedValue:
    """Dirichlet boundary value (scalar or 2-vector)."""

    value: tuple


@dataclass(frozen=True)
class ZeroGradient:
    """Homogeneous Neumann condition."""


@dataclass(frozen=True)
class FixedGradient:
    """Prescribed normal gradient (scalar or 2-vector)."""

    gradient: tuple


@dataclass
class Patch:
    """One named group of boundary faces, stored as owner cells + sides."""

    name: str
    owner_i: np.ndarray  # grid row of the fluid owner cell
    owner_j: np.ndarray  # grid column of the fluid owner cell
    side: np.ndarray  # 'w'/'e'/'s'/'n' per face
    normal: np.ndarray  # (k, 2) outward unit normals
    area: np.ndarray  # (k,) face areas per unit depth

    def __len__(self) -> int:
        return self.owner_i.size


class StructuredMesh:
    """Uniform Cartesian mesh over [0, length] x [0, height].

    Construct through :func:`build_mesh`; the constructor only wires arrays.
    """

    def __init__(self, length, height, nx, ny, blocked):
        self.length = float(length)
        self.height = float(height)
        self.nx = int(nx)
        self.ny = int(ny)
        self.dx = self.length / self.nx
        self.dy = self.height / self.ny
        self.cell_volume = self.dx * self.dy
        self.blocked = blocked
        self.fluid = ~blocked

        self.n_cells = int(np.sum(self.fluid))
        self.cell_index = -np.ones((self.ny, self.nx), dtype=int)
        self.cell_index[self.fluid] = np.arange(self.n_cells)
        ii, jj = np.nonzero(self.fluid)
        self.ii, self.jj = ii, jj
        self.xc = (jj + 0.5) * self.dx
        self.yc = (ii + 0.5) * self.dy

        self.face_kind = self._classify_faces()
        self.patches = self._build_patches()

    # -- construction helpers -------------------------------------------------

    def _classify_faces(self):
        ny, nx = self.ny, self.nx
        kinds = {}
        for side, (di, dj, _normal) in _SIDES.items():
            kind = np.full((ny, nx), INTERIOR, dtype=np.int8)
            ni = np.clip(np.arange(ny)[:, None] + di, 0, ny - 1)
            nj = np.clip(np.arange(nx)[None, :] + dj, 0, nx - 1)
            kind[self.blocked[ni, nj]] = OBSTACLE
            if side == "w":
                kind[:, 0] = INLET
            elif side == "e":
                kind[:, -1] = OUTLET
            elif side == "s":
                kind[0, :] = WALL
            else:
                kind[-1, :] = WALL
            kind[self.blocked] = INTERIOR  # solid cells own no faces
            kinds[side] = kind
        return kinds

    def _build_patches(self):
        groups = {name: ([], [], []) for name in PATCH_NAMES}
        code_to_name = {INLET: "inlet", OUTLET: "outlet", WALL: "wall", OBSTACLE: "obstacle"}
        for side in ("w", "e", "s", "n"):
            kind = self.face_kind[side]
            for code, name in code_to_name.items():
                sel_i, sel_j = np.nonzero(self.fluid & (kind == code))
                groups[name][0].append(sel_i)
                groups[name][1].append(sel_j)
                groups[name][2].extend([side] * sel_i.size)
        patches = {}
        for name, (is_, js_, sides) in groups.items():
            oi = np.concatenate(is_) if is_ else np.empty(0, dtype=int)
            oj = np.concatenate(js_) if js_ else np.empty(0, dtype=int)
            sides = np.array(sides, dtype="U1")
            normal = np.array([_SIDES[s][2] for s in sides], dtype=float).reshape(-1, 2)
            area = np.where(np.isin(sides, ["w", "e"]), self.dy, self.dx)
            patches[name] = Patch(name, oi, oj, sides, normal, area)
        return patches

    # -- field/grid conversions -----------------------------------------------

    @property
    def volumes(self) -> np.ndarray:
        return np.full(self.n_cells, self.cell_volume)

    def to_grid(self, values, fill=0.0) -> np.ndarray:
        """Scatter compact per-fluid-cell values onto the (ny, nx[, 2]) grid."""
        values = np.asarray(values, dtype=float)
        shape = (self.ny, self.nx) + values.shape[1:]
        grid = np.full(shape, fill, dtype=float)
        grid[self.ii, self.jj] = values
        return grid

    def from_grid(self, grid) -> np.ndarray:
        return np.asarray(grid, dtype=float)[self.ii, self.jj].copy()

    def cell_face_balance(self) -> np.ndarray:
        """Sum of (face area x outward normal) over the 4 faces of each cell."""
        out = np.zeros((self.n_cells, 2))
        for _side, (_di, _dj, normal) in _SIDES.items():
            area = self.dy if normal[0] != 0.0 else self.dx
            out += np.array(normal) * area
        return out


class FaceFlux:
    """Volumetric face fluxes on the staggered face grids.

    ``fx[i, j]`` is flux in +x through the vertical face at ``x = j*dx``
    (j = 0..nx); ``fy[i, j]`` is flux in +y through the horizontal face at
    ``y = i*dy`` (i = 0..ny).  Faces touching solid cells carry zero.
    """

    def __init__(self, mesh: StructuredMesh, fx=None, fy=None):
        self.mesh = mesh
        self.fx = np.zeros((mesh.ny, mesh.nx + 1)) if fx is None else np.asarray(fx, dtype=float)
        self.fy = np.zeros((mesh.ny + 1, mesh.nx)) if fy is None else np.asarray(fy, dtype=float)

    def copy(self) -> "FaceFlux":
        return FaceFlux(self.mesh, self.fx.copy(), self.fy.copy())

    def divergence(self) -> np.ndarray:
        """Net outward volumetric flux per fluid cell (compact array)."""
        net = (self.fx[:, 1:] - self.fx[:, :-1]) + (self.fy[1:, :] - self.fy[:-1, :])
        return net[self.mesh.ii, self.mesh.jj]

    def __add__(self, other: "FaceFlux") -> "FaceFlux":
        return FaceFlux(self.mesh, self.fx + other.fx, self.fy + other.fy)

    def __sub__(self, other: "FaceFlux") -> "FaceFlux":
        return FaceFlux(self.mesh, self.fx - other.fx, self.fy - other.fy)

    def __rmul__(self, scalar) -> "FaceFlux":
        return FaceFlux(self.mesh, scalar * self.fx, scalar * self.fy)


class CellField:
    """Cell-centered field (scalar or 2-vector) with a boundary-condition table.

    ``values`` has shape (n_cells,) or (n_cells, 2); ``bcs`` maps every patch
    name to a boundary condition.  Velocity fields may carry their
    conservative face fluxes in ``flux``.
    """

    def __init__(self, mesh: StructuredMesh, values, bcs, flux: FaceFlux | None = None):
        values = np.asarray(values, dtype=float)
        if values.shape[0] != mesh.n_cells:
            raise ValueError(
                f"field has {values.shape[0]} values for {mesh.n_cells} fluid cells"
            )
        if values.ndim not in (1, 2) or (values.ndim == 2 and values.shape[1] != 2):
            raise ValueError(f"unsupported field shape {values.shape}")
        missing = [name for name in mesh.patches if name not in bcs]
        if missing:
            raise ValueError(f"boundary-condition table missing patches: {missing}")
        self.mesh = mesh
        self.values = values
        self.bcs = dict(bcs)
        self.flux = flux

    @property
    def arity(self) -> int:
        return 1 if self.values.ndim == 1 else 2

    def copy(self) -> "CellField":
        return CellField(
            self.mesh,
            self.values.copy(),
            self.bcs,
            None if self.flux is None else self.flux.copy(),
        )

    def bc_value(self, patch: str) -> np.ndarray:
        """Dirichlet value of a FixedValue patch as an array."""
        bc = self.bcs[patch]
        if not isinstance(bc, FixedValue):
            raise ValueError(f"patch {patch!r} is not FixedValue")
        return np.atleast_1d(np.asarray(bc.value, dtype=float))


def build_mesh(length, height, nx, ny, obstacle=None) -> StructuredMesh:
    """Build the channel mesh, optionally with a rectangular obstacle.

    ``obstacle`` is ``(x0, x1, y0, y1)`` in physical coordinates; cells whose
    centers fall inside the rectangle are blocked.  The rectangle must lie
    strictly inside the domain (no contact with the outer boundary).
    """
    if length <= 0.0 or height <= 0.0:
        raise ValueError(f"domain extents must be positive, got {length} x {height}")
    if nx < 2 or ny < 2:
        raise ValueError(f"need at least 2 cells per axis, got nx={nx}, ny={ny}")

    blocked = np.zeros((ny, nx), dtype=bool)
    if obstacle is not None:
        x0, x1, y0, y1 = map(float, obstacle)
        if not (x0 < x1 and y0 < y1):
            raise GeometryError(f"degenerate obstacle rectangle {obstacle}")
        if x0 <= 0.0 or x1 >= length or y0 <= 0.0 or y1 >= height:
            raise GeometryError("obstacle must lie strictly inside the domain")
        dx = length / nx
        dy = height / ny
        xc = (np.arange(nx) + 0.5) * dx
        yc = (np.arange(ny) + 0.5) * dy
        inside = (yc[:, None] > y0) & (yc[:, None] < y1) & (xc[None, :] > x0) & (xc[None, :] < x1)
        blocked = inside
        if blocked.any():
            bi, bj = np.nonzero(blocked)
            if bi.min() == 0 or bi.max() == ny - 1 or bj.min() == 0 or bj.max() == nx - 1:
                raise GeometryError("obstacle cells touch the domain boundary")
    return StructuredMesh(length, height, nx, ny, blocked)


def inner_product(f: CellField, g: CellField) -> float:
    """Volume-weighted L2 inner product of two fields on the same mesh."""
    if f.mesh is not g.mesh:
        raise ValueError("fields live on different meshes")
    if f.arity != g.arity:
        raise ValueError(f"field arity mismatch: {f.arity} vs {g.arity}")
    return float(f.mesh.cell_volume * np.sum(f.values * g.values))


def write_field_csv(path, fld: CellField, names=None) -> None:
    """Dump a field as ``cell,x,y,<value columns>`` rows."""
    mesh = fld.mesh
    if names is None:
        names = ["value"] if fld.arity == 1 else ["u", "v"]
    cols = fld.values if fld.arity == 2 else fld.values[:, None]
    with open(path, "w") as f:
        f.write("cell,x,y," + ",".join(names) + "\n")
        for k in range(mesh.n_cells):
            vals = ",".join("%.17g" % v for v in cols[k])
            f.write(f"{k},{mesh.xc[k]:.17g},{mesh.yc[k]:.17g},{vals}\n")
