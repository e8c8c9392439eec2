"""Implicit hypersurfaces: constraints, normals, tangent projection, retraction.

Every surface here is the zero set of a scalar constraint ``c`` on an ambient
Euclidean space R^(n+1).  The unit normal is the normalized constraint
gradient, and the tangent projector at a point ``y`` is ``I - n n^T``.

Conventions:

* points and tangent vectors are plain numpy arrays; a configuration of N
  agents is an ``(N, d)`` array with one agent per row,
* every core method (``constraint``, ``constraint_gradient``, ``unit_normal``,
  ``retract_rows``) is vectorized over rows; the module-level functions at the
  bottom are single-point wrappers,
* sphere / ellipsoid use ``c(y) = <y, A y> - 1`` (A = I for the sphere), the
  cylinder uses ``c = x^2 + y^2 - r^2``, the double graph of a scalar field f
  uses ``c = |z| - f(x, y)``.

The pseudosphere is driven by its ``(u, v)`` parametrization
``(sech u cos v, sech u sin v, u - tanh u)`` with the closed-form normal
``(tanh u cos v, tanh u sin v, sech u)`` on the ``u > 0`` branch; its implicit
form involves ``sech^-1`` and is kept only for drift monitoring because it is
ill-conditioned near the rim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class SingularPointError(ValueError):
    """Raised where the constraint gradient vanishes or a chart degenerates."""


class RetractionError(RuntimeError):
    """Raised when the Newton retraction fails to converge."""


_EPS_GRADIENT = 1e-13


def _rows(y):
    """View ``y`` as a 2-D block of row points; also report if it was 1-D."""
    arr = np.asarray(y, dtype=float)
    if arr.ndim == 1:
        return arr[None, :], True
    return arr, False


# ---------------------------------------------------------------------------
# scalar-field and revolution-profile registries (used by scenario files)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ScalarField:
    """A named scalar field f(x, y) > 0 with analytic partials."""

    name: str
    f: Callable[[np.ndarray, np.ndarray], np.ndarray]
    fx: Callable[[np.ndarray, np.ndarray], np.ndarray]
    fy: Callable[[np.ndarray, np.ndarray], np.ndarray]


def _paraboloid(a: float, b: float) -> ScalarField:
    return ScalarField(
        name=f"paraboloid:{a:g},{b:g}",
        f=lambda x, y: 1.0 + a * x**2 + b * y**2,
        fx=lambda x, y: 2.0 * a * x,
        fy=lambda x, y: 2.0 * b * y,
    )


def _sombrero() -> ScalarField:
    # non-convex: a ring of minima at x^2 + y^2 = 1, local max at the origin
    return ScalarField(
        name="sombrero",
        f=lambda x, y: 1.0 + (x**2 + y**2 - 1.0) ** 2,
        fx=lambda x, y: 4.0 * x * (x**2 + y**2 - 1.0),
        fy=lambda x, y: 4.0 * y * (x**2 + y**2 - 1.0),
    )


def scalar_field(key: str) -> ScalarField:
    """Look up a registered scalar field, e.g. ``"paraboloid:1,1"``, ``"sombrero"``."""
    name, _, args = key.partition(":")
    if name == "paraboloid":
        try:
            a, b = (float(s) for s in args.split(","))
        except ValueError:
            raise ValueError(f"bad paraboloid parameters in field key {key!r}") from None
        return _paraboloid(a, b)
    if name == "sombrero" and not args:
        return _sombrero()
    raise ValueError(f"unknown scalar field key {key!r}")


@dataclass(frozen=True, eq=False)
class RevolutionProfile:
    """Profile (phi, psi) of a surface of revolution about the z-axis.

    The surface is the image of ``(u, v) -> (phi(u) cos v, phi(u) sin v,
    psi(u))``.  ``psi`` must be monotone on ``(u_min, u_max)`` so that ``u``
    can be recovered from the z-coordinate via ``u_from_z``.
    """

    name: str
    phi: Callable[[np.ndarray], np.ndarray]
    dphi: Callable[[np.ndarray], np.ndarray]
    psi: Callable[[np.ndarray], np.ndarray]
    dpsi: Callable[[np.ndarray], np.ndarray]
    u_min: float
    u_max: float
    u_from_z: Callable[[np.ndarray], np.ndarray]


def revolution_profile(key: str) -> RevolutionProfile:
    """Look up a registered revolution profile: ``"cylinder"`` or ``"sphere"``."""
    if key == "cylinder":
        return RevolutionProfile(
            name="cylinder",
            phi=lambda u: np.ones_like(u),
            dphi=lambda u: np.zeros_like(u),
            psi=lambda u: u,
            dpsi=lambda u: np.ones_like(u),
            u_min=-math.inf,
            u_max=math.inf,
            u_from_z=lambda z: z,
        )
    if key == "sphere":
        return RevolutionProfile(
            name="sphere",
            phi=np.sin,
            dphi=np.cos,
            psi=np.cos,
            dpsi=lambda u: -np.sin(u),
            u_min=0.0,
            u_max=math.pi,
            u_from_z=lambda z: np.arccos(np.clip(z, -1.0, 1.0)),
        )
    raise ValueError(f"unknown revolution profile key {key!r}")


# ---------------------------------------------------------------------------
# surface catalog
# ---------------------------------------------------------------------------

class Surface:
    """Base class; subclasses provide constraint, gradient and sampling."""

    ambient_dim: int

    # -- constraint interface (vectorized over rows) --

    def constraint(self, y):
        """c(y); zero exactly on the surface.  Scalar in, scalar out."""
        raise NotImplementedError

    def constraint_gradient(self, y):
        raise NotImplementedError

    def _working_constraint(self, y):
        """Constraint used by the retraction; overridden where the reported
        implicit form is ill-conditioned."""
        return self.constraint(y)

    def _working_gradient(self, y):
        return self.constraint_gradient(y)

    def unit_normal(self, y):
        """Normalized constraint gradient; raises at singular points."""
        g, single = _rows(self.constraint_gradient(y))
        norms = np.linalg.norm(g, axis=1)
        bad = np.flatnonzero(norms < _EPS_GRADIENT)
        if bad.size:
            raise SingularPointError(
                f"zero constraint gradient on {self.describe()} at row {bad[0]}"
            )
        n = g / norms[:, None]
        return n[0] if single else n

    def tangent_project(self, y, v):
        """(I - n n^T) v at the point(s) ``y``."""
        n, single = _rows(self.unit_normal(y))
        vv, _ = _rows(v)
        out = vv - n * np.sum(n * vv, axis=1)[:, None]
        return out[0] if single else out

    # -- retraction --

    def retract_rows(self, y, *, tol=1e-12, max_iter=50, capture_radius=math.inf):
        """Newton iteration along the unit normal of the start point(s).

        Returns points with |working constraint| <= tol.  Points already
        within tolerance are returned unchanged, which makes the map exactly
        idempotent.
        """
        X, single = _rows(y)
        c = np.atleast_1d(self._working_constraint(X))
        if np.all(np.abs(c) <= tol):
            return y if single else X
        if np.any(np.abs(c) > capture_radius):
            raise RetractionError(
                f"point outside capture radius {capture_radius:g} on {self.describe()}"
            )
        n0 = np.atleast_2d(self.unit_normal(X))
        Y = X.copy()
        for _ in range(max_iter):
            c = np.atleast_1d(self._working_constraint(Y))
            active = np.abs(c) > tol
            if not active.any():
                return Y[0] if single else Y
            g = np.atleast_2d(self._working_gradient(Y))
            slope = np.sum(g * n0, axis=1)
            if np.any(np.abs(slope[active]) < _EPS_GRADIENT):
                raise RetractionError(
                    f"retraction direction tangent to {self.describe()}"
                )
            step = np.where(active, c / slope, 0.0)
            Y = Y - step[:, None] * n0
        raise RetractionError(
            f"retraction on {self.describe()} did not converge in {max_iter} "
            f"iterations (max |c| = {np.max(np.abs(c)):.3e})"
        )

    # -- misc --

    def max_point_norm(self) -> float:
        """sup ||y|| over the surface; inf when unbounded."""
        return math.inf

    @property
    def is_axisymmetric(self) -> bool:
        """Whether azimuthal angles about the z-axis are meaningful."""
        return False

    def sample_point(self, rng: np.random.Generator) -> np.ndarray:
        """Draw a point on the surface (parametrization sampling)."""
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__.lower()


@dataclass(frozen=True, eq=False)
class Sphere(Surface):
    """Unit sphere S^n in R^(n+1), ``c(y) = ||y||^2 - 1``."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("sphere dimension must be >= 1")

    @property
    def ambient_dim(self):
        return self.dim + 1

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        return np.sum(arr * arr, axis=-1) - 1.0

    def constraint_gradient(self, y):
        return 2.0 * np.asarray(y, dtype=float)

    def retract_rows(self, y, *, tol=1e-12, max_iter=50, capture_radius=math.inf):
        # the normal line through y meets the sphere at y/||y||
        X, single = _rows(y)
        c = self.constraint(X)
        if np.all(np.abs(c) <= tol):
            return y if single else X
        norms = np.linalg.norm(X, axis=1)
        if np.any(norms < _EPS_GRADIENT):
            raise SingularPointError("cannot retract the origin to the sphere")
        Y = X / norms[:, None]
        return Y[0] if single else Y

    def max_point_norm(self):
        return 1.0

    @property
    def is_axisymmetric(self):
        return self.dim in (1, 2)

    def sample_point(self, rng):
        v = rng.normal(size=self.ambient_dim)
        return v / np.linalg.norm(v)

    def describe(self):
        return f"sphere(n={self.dim})"


@dataclass(frozen=True, eq=False)
class Ellipsoid(Surface):
    """Ellipsoid ``<y, A y> = 1`` for a symmetric positive definite A."""

    matrix: np.ndarray
    _chol: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("ellipsoid matrix must be square")
        if not np.allclose(A, A.T, atol=1e-12):
            raise ValueError("ellipsoid matrix must be symmetric")
        try:
            L = np.linalg.cholesky(A)
        except np.linalg.LinAlgError:
            raise ValueError("ellipsoid matrix must be positive definite") from None
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "_chol", L)

    @property
    def ambient_dim(self):
        return self.matrix.shape[0]

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        return np.sum(arr * (arr @ self.matrix.T), axis=-1) - 1.0

    def constraint_gradient(self, y):
        return 2.0 * np.asarray(y, dtype=float) @ self.matrix.T

    def max_point_norm(self):
        # largest semi-axis
        return 1.0 / math.sqrt(np.linalg.eigvalsh(self.matrix)[0])

    def sample_point(self, rng):
        v = rng.normal(size=self.ambient_dim)
        v /= np.linalg.norm(v)
        return np.linalg.solve(self._chol.T, v)

    def describe(self):
        return f"ellipsoid(d={self.ambient_dim})"


@dataclass(frozen=True, eq=False)
class Cylinder(Surface):
    """Infinite cylinder ``x^2 + y^2 = r^2`` in R^3."""

    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("cylinder radius must be positive")

    ambient_dim = 3

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        return arr[..., 0] ** 2 + arr[..., 1] ** 2 - self.radius**2

    def constraint_gradient(self, y):
        arr = np.asarray(y, dtype=float)
        g = np.zeros_like(arr)
        g[..., 0] = 2.0 * arr[..., 0]
        g[..., 1] = 2.0 * arr[..., 1]
        return g

    @property
    def is_axisymmetric(self):
        return True

    def sample_point(self, rng):
        v = rng.uniform(-math.pi, math.pi)
        z = rng.uniform(-2.0, 2.0)
        return np.array([self.radius * math.cos(v), self.radius * math.sin(v), z])

    def describe(self):
        return f"cylinder(r={self.radius:g})"


def _pseudosphere_u_from_z(z):
    """Invert z = u - tanh(u) on the branch u > 0 (monotone, d/du = tanh^2 u).

    Newton iteration seeded with the small-z expansion u ~ (3z)^(1/3) and the
    large-z asymptote u ~ z + 1.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise SingularPointError("pseudosphere branch requires z > 0 (u > 0)")
    u = np.where(z < 0.5, np.cbrt(3.0 * z), z + 1.0)
    for _ in range(60):
        g = u - np.tanh(u) - z
        if np.all(np.abs(g) <= 1e-14 * np.maximum(1.0, z)):
            break
        u = u - g / np.tanh(u) ** 2
    return u


@dataclass(frozen=True, eq=False)
class Pseudosphere(Surface):
    """Tractroid branch ``u > 0``: (sech u cos v, sech u sin v, u - tanh u).

    Surface of revolution with constant curvature -1.  ``constraint`` reports
    the implicit form ``z^2 - (sech^-1 rho - sqrt(1 - rho^2))^2`` used for
    drift monitoring; the retraction works on the well-conditioned profile
    residual ``rho - sech(u(z))``.
    """

    ambient_dim = 3

    def point(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if np.any(u <= 0):
            raise ValueError("pseudosphere parametrization requires u > 0")
        sech = 1.0 / np.cosh(u)
        return np.stack(
            [sech * np.cos(v), sech * np.sin(v), u - np.tanh(u)], axis=-1
        )

    def u_from_z(self, z):
        return _pseudosphere_u_from_z(z)

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        rho = np.hypot(arr[..., 0], arr[..., 1])
        rho_c = np.clip(rho, 1e-300, 1.0)
        body = np.arccosh(1.0 / rho_c) - np.sqrt(np.clip(1.0 - rho_c**2, 0.0, None))
        return arr[..., 2] ** 2 - body**2

    def constraint_gradient(self, y):
        arr = np.asarray(y, dtype=float)
        x, yy, z = arr[..., 0], arr[..., 1], arr[..., 2]
        rho = np.hypot(x, yy)
        if np.any(rho < _EPS_GRADIENT) or np.any(rho >= 1.0):
            raise SingularPointError("pseudosphere implicit form needs 0 < rho < 1")
        root = np.sqrt(1.0 - rho**2)
        body = np.arccosh(1.0 / rho) - root
        # d(body)/d(rho) = -sqrt(1 - rho^2)/rho
        radial = 2.0 * body * root / rho**2
        g = np.empty_like(arr)
        g[..., 0] = radial * x
        g[..., 1] = radial * yy
        g[..., 2] = 2.0 * z
        return g

    def unit_normal(self, y):
        arr, single = _rows(y)
        z = arr[:, 2]
        if np.any(z <= 0):
            raise SingularPointError("pseudosphere rim or lower branch (z <= 0)")
        u = self.u_from_z(z)
        rho = np.hypot(arr[:, 0], arr[:, 1])
        if np.any(rho < _EPS_GRADIENT):
            raise SingularPointError("pseudosphere axis point has no azimuth")
        t = np.tanh(u)
        n = np.empty_like(arr)
        n[:, 0] = t * arr[:, 0] / rho
        n[:, 1] = t * arr[:, 1] / rho
        n[:, 2] = 1.0 / np.cosh(u)
        return n[0] if single else n

    def _working_constraint(self, y):
        arr = np.asarray(y, dtype=float)
        u = self.u_from_z(arr[..., 2])
        return np.hypot(arr[..., 0], arr[..., 1]) - 1.0 / np.cosh(u)

    def _working_gradient(self, y):
        arr = np.asarray(y, dtype=float)
        x, yy, z = arr[..., 0], arr[..., 1], arr[..., 2]
        rho = np.hypot(x, yy)
        u = self.u_from_z(z)
        g = np.empty_like(arr)
        g[..., 0] = x / rho
        g[..., 1] = yy / rho
        # d sech(u)/dz = -sech u tanh u / tanh^2 u
        g[..., 2] = 1.0 / (np.cosh(u) * np.tanh(u))
        return g

    @property
    def is_axisymmetric(self):
        return True

    def sample_point(self, rng):
        u = rng.uniform(0.2, 3.0)
        v = rng.uniform(-math.pi, math.pi)
        return self.point(u, v)


def _bump(t):
    """exp(-1/t) for t > 0, else 0; the standard C-infinity bump kernel."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def _smoothstep(s):
    """C-infinity monotone step, 0 for s <= 0 and 1 for s >= 1."""
    s = np.asarray(s, dtype=float)
    b = _bump(s)
    return b / (b + _bump(1.0 - s))


def _smoothstep_derivative(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = (s > 0) & (s < 1)
    si = s[inside]
    b, bc = _bump(si), _bump(1.0 - si)
    db = b / si**2
    dbc = -bc / (1.0 - si) ** 2
    out[inside] = (db * bc - b * dbc) / (b + bc) ** 2
    return out


@dataclass(frozen=True, eq=False)
class Telescope(Surface):
    """Chain of shrinking cylinders glued by C-infinity (non-analytic) blends.

    Band k (k = 1..k_max) is the cylinder of radius 2^(-k/2) over
    z in [1 - 2^(1-k), 1 - 2^(-k)].  At the joint z_k = 1 - 2^(-k) the radius
    profile r(z) transitions over a window of total width glue_width * 2^(-k)
    using a bump-function smoothstep, so the surface is smooth but nowhere
    analytic at the joints.
    """

    k_max: int = 12
    glue_width: float = 0.25

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("telescope needs at least one band")
        if not 0.0 < self.glue_width < 0.5:
            raise ValueError("glue_width must lie in (0, 0.5)")

    ambient_dim = 3

    def band_interval(self, k: int) -> tuple[float, float]:
        """z-range [1 - 2^(1-k), 1 - 2^(-k)] of band k."""
        if not 1 <= k <= self.k_max:
            raise ValueError(f"band index {k} outside 1..{self.k_max}")
        return 1.0 - 2.0 ** (1 - k), 1.0 - 2.0 ** (-k)

    def band_radius(self, k: int) -> float:
        return 2.0 ** (-k / 2.0)

    def flat_center(self, k: int) -> float:
        """Midpoint of band k, well inside the unblended region."""
        lo, hi = self.band_interval(k)
        return 0.5 * (lo + hi)

    def _blend_state(self, z):
        """Per-point band radius plus smoothstep blend data (1-D input)."""
        joints = 1.0 - 2.0 ** (-np.arange(1, self.k_max, dtype=float))
        k = np.searchsorted(joints, z) + 1  # band index, clipped to 1..k_max
        k = np.clip(k, 1, self.k_max)
        r = 2.0 ** (-k / 2.0)
        s = np.full(z.shape, -1.0)  # smoothstep argument; outside [0,1] => flat
        dr = np.zeros(z.shape)
        width = np.ones(z.shape)
        for j in range(1, self.k_max):
            zj = 1.0 - 2.0 ** (-j)
            half = 0.5 * self.glue_width * 2.0 ** (-j)
            in_window = np.abs(z - zj) <= half
            if np.any(in_window):
                s = np.where(in_window, (z - (zj - half)) / (2.0 * half), s)
                r_here = 2.0 ** (-j / 2.0)
                r_next = 2.0 ** (-(j + 1) / 2.0)
                r = np.where(in_window, r_here, r)
                dr = np.where(in_window, r_next - r_here, dr)
                width = np.where(in_window, 2.0 * half, width)
        return r, s, dr, width

    def radius_profile(self, z):
        """r(z): piecewise-constant band radii with smooth joints."""
        z1 = np.atleast_1d(np.asarray(z, dtype=float))
        r, s, dr, _ = self._blend_state(z1)
        out = r + dr * _smoothstep(s)
        return out.reshape(np.shape(z))

    def radius_profile_derivative(self, z):
        z1 = np.atleast_1d(np.asarray(z, dtype=float))
        _, s, dr, width = self._blend_state(z1)
        out = dr * _smoothstep_derivative(s) / width
        return out.reshape(np.shape(z))

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        r = self.radius_profile(arr[..., 2])
        return arr[..., 0] ** 2 + arr[..., 1] ** 2 - r**2

    def constraint_gradient(self, y):
        arr = np.asarray(y, dtype=float)
        z = arr[..., 2]
        r = self.radius_profile(z)
        g = np.empty_like(arr)
        g[..., 0] = 2.0 * arr[..., 0]
        g[..., 1] = 2.0 * arr[..., 1]
        g[..., 2] = -2.0 * r * self.radius_profile_derivative(z)
        return g

    @property
    def is_axisymmetric(self):
        return True

    def sample_point(self, rng):
        # stay in the flat part of a band: the left joint blend reaches a
        # glue_width fraction of the band length, the right one half that
        k = int(rng.integers(1, min(self.k_max, 8) + 1))
        lo, hi = self.band_interval(k)
        length = hi - lo
        z = rng.uniform(
            lo + (self.glue_width + 0.05) * length,
            hi - (0.5 * self.glue_width + 0.05) * length,
        )
        v = rng.uniform(-math.pi, math.pi)
        r = float(self.radius_profile(z))
        return np.array([r * math.cos(v), r * math.sin(v), z])

    def describe(self):
        return f"telescope(k_max={self.k_max})"


@dataclass(frozen=True, eq=False)
class DoubleGraph(Surface):
    """Two mirrored graph sheets ``z = +-f(x, y)`` of a positive field f.

    Implicitly ``|z| = f(x, y)``; the sheets never meet because f > 0, and
    the simulation domain is restricted to the sheets.
    """

    field: ScalarField

    ambient_dim = 3

    def _check_positive(self, fval):
        if np.any(fval <= 0):
            raise ValueError(f"field {self.field.name!r} must be positive on the domain")

    def sheet_point(self, x, y, upper=True):
        fval = self.field.f(np.asarray(x, float), np.asarray(y, float))
        self._check_positive(fval)
        z = fval if upper else -fval
        return np.stack([np.asarray(x, float), np.asarray(y, float), z], axis=-1)

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        fval = self.field.f(arr[..., 0], arr[..., 1])
        self._check_positive(fval)
        return np.abs(arr[..., 2]) - fval

    def constraint_gradient(self, y):
        arr = np.asarray(y, dtype=float)
        x, yy, z = arr[..., 0], arr[..., 1], arr[..., 2]
        g = np.empty_like(arr)
        g[..., 0] = -self.field.fx(x, yy)
        g[..., 1] = -self.field.fy(x, yy)
        g[..., 2] = np.where(z >= 0, 1.0, -1.0)
        return g

    def sample_point(self, rng):
        x = rng.uniform(-1.5, 1.5)
        y = rng.uniform(-1.5, 1.5)
        upper = bool(rng.integers(0, 2))
        return self.sheet_point(x, y, upper=upper)

    def describe(self):
        return f"double-graph({self.field.name})"


@dataclass(frozen=True, eq=False)
class Revolution(Surface):
    """Generic surface of revolution built from a registered profile."""

    profile: RevolutionProfile

    ambient_dim = 3

    def point(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if np.any(u <= self.profile.u_min) or np.any(u >= self.profile.u_max):
            raise ValueError(
                f"parameter u outside domain ({self.profile.u_min:g}, "
                f"{self.profile.u_max:g}) of profile {self.profile.name!r}"
            )
        r = self.profile.phi(u)
        return np.stack([r * np.cos(v), r * np.sin(v), self.profile.psi(u)], axis=-1)

    def constraint(self, y):
        arr = np.asarray(y, dtype=float)
        u = self.profile.u_from_z(arr[..., 2])
        return np.hypot(arr[..., 0], arr[..., 1]) - self.profile.phi(u)

    def constraint_gradient(self, y):
        arr = np.asarray(y, dtype=float)
        rho = np.hypot(arr[..., 0], arr[..., 1])
        if np.any(rho < _EPS_GRADIENT):
            raise SingularPointError("revolution surface point on the axis")
        u = self.profile.u_from_z(arr[..., 2])
        g = np.empty_like(arr)
        g[..., 0] = arr[..., 0] / rho
        g[..., 1] = arr[..., 1] / rho
        g[..., 2] = -self.profile.dphi(u) / self.profile.dpsi(u)
        return g

    @property
    def is_axisymmetric(self):
        return True

    def sample_point(self, rng):
        lo = max(self.profile.u_min, -2.0) + 0.1
        hi = min(self.profile.u_max, 2.0) - 0.1
        u = rng.uniform(lo, hi)
        v = rng.uniform(-math.pi, math.pi)
        return self.point(u, v)

    def describe(self):
        return f"revolution({self.profile.name})"


# ---------------------------------------------------------------------------
# single-point operations
# ---------------------------------------------------------------------------

def _check_point(surface: Surface, y) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    if arr.shape != (surface.ambient_dim,):
        raise ValueError(
            f"point of shape {arr.shape} does not match {surface.describe()} "
            f"ambient dimension {surface.ambient_dim}"
        )
    return arr


def constraint_value(surface: Surface, y) -> float:
    """c(y) for a single ambient point."""
    return float(surface.constraint(_check_point(surface, y)))


def constraint_gradient(surface: Surface, y) -> np.ndarray:
    return np.asarray(surface.constraint_gradient(_check_point(surface, y)))


def unit_normal(surface: Surface, y) -> np.ndarray:
    return np.asarray(surface.unit_normal(_check_point(surface, y)))


def project_tangent(surface: Surface, y, v) -> np.ndarray:
    """Orthogonal projection of ``v`` onto the tangent space at ``y``."""
    return np.asarray(surface.tangent_project(_check_point(surface, y), np.asarray(v, float)))


def retract(surface: Surface, y, *, tol=1e-12, max_iter=50, capture_radius=math.inf) -> np.ndarray:
    """Pull a near-surface point back onto the surface along its normal."""
    return np.asarray(
        surface.retract_rows(
            _check_point(surface, y), tol=tol, max_iter=max_iter, capture_radius=capture_radius
        )
    )


def revolution_point(surface: Surface, u: float, v: float) -> np.ndarray:
    """(phi(u) cos v, phi(u) sin v, psi(u)) on a revolution-type surface."""
    if isinstance(surface, (Pseudosphere, Revolution)):
        return np.asarray(surface.point(u, v))
    raise ValueError(f"{surface.describe()} has no (u, v) revolution parametrization")


def conjugate_to_sphere(A, x) -> np.ndarray:
    """Map ellipsoid points ``<x, A x> = 1`` to unit-sphere points ``L^T x``.

    A = L L^T is the Cholesky factorization.  Accepts stacked rows; every row
    must satisfy the ellipsoid constraint to 1e-10.
    """
    A = np.asarray(A, dtype=float)
    try:
        L = np.linalg.cholesky(A)
    except np.linalg.LinAlgError:
        raise ValueError("conjugation requires a positive definite matrix") from None
    X = np.asarray(x, dtype=float)
    resid = np.abs(np.sum(X * (X @ A.T), axis=-1) - 1.0)
    if np.max(resid) > 1e-10:
        raise ValueError(
            f"input not on the ellipsoid (max |<x,Ax>-1| = {np.max(resid):.3e})"
        )
    return X @ L


def conjugate_from_sphere(A, y) -> np.ndarray:
    """Inverse of :func:`conjugate_to_sphere`: x = L^-T y."""
    A = np.asarray(A, dtype=float)
    L = np.linalg.cholesky(A)
    Y = np.asarray(y, dtype=float)
    if Y.ndim == 1:
        return np.linalg.solve(L.T, Y)
    return np.linalg.solve(L.T, Y.T).T
