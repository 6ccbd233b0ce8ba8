from dataclasses import dataclass, field
from math import hypot
from typing import Callable, Dict, Tuple

from numpy import arange, asarray, clip, cumsum, float64, full, interp, ndarray, searchsorted
from numpy.random import default_rng
from scipy.ndimage import gaussian_filter1d

from edge_fs._errors import DataError

TEXTURE_STEP_M = 0.001
POSTER_EDGES_PER_M = 30.0
POSTER_MIN_STRIPE_M = 0.012
POSTER_LEVELS = (30, 225)
POSTER_BLUR_M = 0.003


@dataclass(frozen=True, eq=False)
class WallTexture:
    """Intensity along a wall sampled on a regular grid, `intensity[i]` at `i * step_m` from the start."""

    intensity: ndarray
    step_m: float = field(default=TEXTURE_STEP_M)

    def sample(self, position_m: ndarray) -> ndarray:
        pos = asarray(position_m, dtype=float64)
        grid = arange(self.intensity.shape[0]) * self.step_m
        return interp(pos, grid, self.intensity)


def poster_texture(
    length_m: float,
    seed: int,
    edges_per_m: float = POSTER_EDGES_PER_M,
    blur_m: float = POSTER_BLUR_M,
) -> WallTexture:
    """
    Random stripes of uniform intensity in [30, 225] with a given mean edge density.

    Stripe widths are a fixed minimum plus an exponential draw, so boundaries are aperiodic with mean rate
    `edges_per_m` and no stripe is narrower than `POSTER_MIN_STRIPE_M` (or half the mean width when that
    is smaller). The profile is blurred with a Gaussian of width `blur_m` so it is band-limited. Zero edge
    density gives a uniform wall.
    """
    rng = default_rng(seed)
    n = int(round(length_m / TEXTURE_STEP_M)) + 1
    if edges_per_m <= 0:
        return WallTexture(intensity=full(n, float(sum(POSTER_LEVELS)) / 2))
    n_edges = int(length_m * edges_per_m * 2) + 8
    mean_width = 1.0 / edges_per_m
    min_width = min(POSTER_MIN_STRIPE_M, 0.5 * mean_width)
    edges = cumsum(min_width + rng.exponential(mean_width - min_width, size=n_edges))
    levels = rng.uniform(POSTER_LEVELS[0], POSTER_LEVELS[1], size=n_edges + 1)
    stripes = levels[searchsorted(edges, arange(n) * TEXTURE_STEP_M)]
    blurred = gaussian_filter1d(stripes, sigma=blur_m / TEXTURE_STEP_M, mode="nearest")
    return WallTexture(intensity=clip(blurred, 0, 255))


@dataclass(frozen=True, eq=False)
class WallSegment:
    """Straight textured wall from `(x0_m, y0_m)` to `(x1_m, y1_m)`; texture runs from the first endpoint."""

    x0_m: float
    y0_m: float
    x1_m: float
    y1_m: float
    texture: WallTexture

    def __post_init__(self):
        if self.length_m <= 1e-9:
            raise DataError(f"Degenerate wall segment at ({self.x0_m}, {self.y0_m}).")

    @property
    def length_m(self) -> float:
        return hypot(self.x1_m - self.x0_m, self.y1_m - self.y0_m)

    def distance_to(self, x: float, y: float) -> float:
        """Euclidean distance from a point to the segment."""
        dx, dy = self.x1_m - self.x0_m, self.y1_m - self.y0_m
        t = ((x - self.x0_m) * dx + (y - self.y0_m) * dy) / (dx * dx + dy * dy)
        t = min(max(t, 0.0), 1.0)
        return hypot(x - (self.x0_m + t * dx), y - (self.y0_m + t * dy))


@dataclass(frozen=True, eq=False)
class World2D:
    """Floor plan of textured walls; `bounds` is (x_min, y_min, x_max, y_max) of the flyable area."""

    segments: Tuple[WallSegment, ...]
    bounds: Tuple[float, float, float, float]
    name: str = field(default="custom")

    def segment_array(self) -> ndarray:
        """Endpoints as an (n_segments, 4) array of x0, y0, x1, y1."""
        return asarray(
            [[s.x0_m, s.y0_m, s.x1_m, s.y1_m] for s in self.segments], dtype=float64
        )

    def distance_to_nearest(self, x: float, y: float) -> float:
        return min(s.distance_to(x, y) for s in self.segments)

    def contains(self, x: float, y: float, margin_m: float = 0.0) -> bool:
        """True if `(x, y)` lies in the bounds shrunk by `margin_m` on every side."""
        x_min, y_min, x_max, y_max = self.bounds
        inside_x = x_min + margin_m <= x <= x_max - margin_m
        return inside_x and y_min + margin_m <= y <= y_max - margin_m


@dataclass(frozen=True)
class CameraPose:
    """
    Pose and motion of the camera body.

    Yaw is counter-clockwise from the world x axis; body `vx_m_s` points along the heading and `vy_m_s` to the
    right of it.
    """

    pos_x_m: float
    pos_y_m: float
    yaw_rad: float
    vx_m_s: float = field(default=0.0)
    vy_m_s: float = field(default=0.0)
    yaw_rate_rad_s: float = field(default=0.0)

    @property
    def vel_body(self) -> Tuple[float, float]:
        return (self.vx_m_s, self.vy_m_s)


def _wall(x0, y0, x1, y1, seed, edges_per_m) -> WallSegment:
    length = hypot(x1 - x0, y1 - y0)
    return WallSegment(x0, y0, x1, y1, poster_texture(length, seed, edges_per_m))


def room4x4(seed: int = 0, edges_per_m: float = POSTER_EDGES_PER_M):
    """4 x 4 m room of poster walls; start at the center facing +x."""
    corners = [(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]
    segments = tuple(
        _wall(*corners[i], *corners[(i + 1) % 4], seed * 1000 + i, edges_per_m)
        for i in range(4)
    )
    world = World2D(segments=segments, bounds=(0.0, 0.0, 4.0, 4.0), name="room4x4")
    return world, CameraPose(2.0, 2.0, 0.0)


def flat_wall(
    seed: int = 0, distance_m: float = 1.0, edges_per_m: float = POSTER_EDGES_PER_M
):
    """Single 20 m poster wall at `x = distance_m`; start at the origin facing it."""
    if distance_m <= 0:
        raise DataError(f"Wall distance must be positive, got {distance_m}.")
    wall = _wall(distance_m, 10.0, distance_m, -10.0, seed * 1000, edges_per_m)
    world = World2D(
        segments=(wall,), bounds=(-10.0, -10.0, distance_m, 10.0), name="flat-wall"
    )
    return world, CameraPose(0.0, 0.0, 0.0)


def blank_wall(seed: int = 0, distance_m: float = 1.0):
    """Flat wall without texture; every column is textureless."""
    world, start = flat_wall(seed, distance_m, edges_per_m=0.0)
    return World2D(segments=world.segments, bounds=world.bounds, name="blank-wall"), start


POLES = ((0.8, 0.0), (1.6, 0.7), (2.2, -0.8))
POLE_SIDE_M = 0.1


def pole_field(seed: int = 0, background_m: float = 3.0):
    """Square poles in front of a background wall; the closest pole face is 0.8 m ahead of the start."""
    segments = [_wall(background_m, 10.0, background_m, -10.0, seed * 1000, POSTER_EDGES_PER_M)]
    for i, (x, y) in enumerate(POLES):
        h = POLE_SIDE_M / 2
        corners = [(x, y + h), (x, y - h), (x + POLE_SIDE_M, y - h), (x + POLE_SIDE_M, y + h)]
        for j in range(4):
            segments.append(
                _wall(
                    *corners[j],
                    *corners[(j + 1) % 4],
                    seed * 1000 + 10 * (i + 1) + j,
                    POSTER_EDGES_PER_M,
                )
            )
    world = World2D(
        segments=tuple(segments), bounds=(-10.0, -10.0, background_m, 10.0), name="pole-field"
    )
    return world, CameraPose(0.0, 0.0, 0.0)


WORLD_PRESETS: Dict[str, Callable] = {
    "room4x4": room4x4,
    "flat-wall": flat_wall,
    "blank-wall": blank_wall,
    "pole-field": pole_field,
}


def build_world(name: str, seed: int = 0, **kwargs):
    """
    Builds a named world preset.

    Returns:
        tuple: (World2D, CameraPose) with the preset's start pose.
    """
    if name not in WORLD_PRESETS:
        raise DataError(f'Unknown world preset "{name}"; choose one of {sorted(WORLD_PRESETS)}.')
    return WORLD_PRESETS[name](seed=seed, **kwargs)
