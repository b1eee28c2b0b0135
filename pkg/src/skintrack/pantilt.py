"""Deterministic pan/tilt camera simulation and the closed tracking loop.

The camera is modelled as a view window cropped out of a larger world
image. One pan step translates the window ``pixels_per_step`` pixels
along +x in the world (tilt likewise along +y), which moves an on-screen
target the same amount toward -x/-y; stepping in the sign of the
displacement therefore recentres the target:

        world image
    +--------------------------------+
    |          home                  |
    |           +--------+           |
    |           |  view  |   pan +1  |
    |           |        | --------> |   (window moves +x; a static
    |           +--------+           |    target drifts left on screen)
    |                                |
    +--------------------------------+

Each frame the loop senses (render then detect), decides (signed
displacement of the skin centroid from the view centre), and actuates at
most one step per axis: a step is issued iff the displacement magnitude
exceeds the deadband, and positions clamp to the step limits. Frames
without any detected skin hold the current position.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .detector import detect
from .errors import ConfigError
from .frames import Frame
from .mlp import Mlp

TRACE_HEADER = ["frame", "pan_steps", "tilt_steps", "mu_x", "mu_y", "dx", "dy", "skin_pixels"]
SCRIPT_HEADER = ["frame", "target_id", "x", "y"]


@dataclass(frozen=True)
class PanTiltState:
    """Stepper positions plus the axis configuration they obey."""

    pan_steps: int = 0
    tilt_steps: int = 0
    pan_limits: tuple = (-60, 60)
    tilt_limits: tuple = (-60, 60)
    pixels_per_step: int = 4
    deadband: int = 4

    def __post_init__(self):
        for name, pos, (lo, hi) in (
            ("pan", self.pan_steps, self.pan_limits),
            ("tilt", self.tilt_steps, self.tilt_limits),
        ):
            if lo > hi:
                raise ConfigError(f"{name}_limits {lo}:{hi} are inverted")
            if not lo <= pos <= hi:
                raise ConfigError(f"{name}_steps {pos} outside limits {lo}:{hi}")
        if self.pixels_per_step < 1:
            raise ConfigError(f"pixels_per_step must be >= 1, got {self.pixels_per_step}")
        if self.deadband < 0:
            raise ConfigError(f"deadband must be >= 0, got {self.deadband}")


@dataclass
class Target:
    """A scripted blob: appearance plus (frame, x, y) waypoints.

    Waypoint positions are the blob centre in world coordinates; between
    listed frames the centre moves linearly, and before the first / after
    the last waypoint it holds."""

    target_id: int
    color: tuple
    waypoints: list
    shape: str = "rect"
    size: tuple = (9, 9)  # rect width, height
    radius: float = 5.0  # disc radius

    def __post_init__(self):
        if self.shape not in ("rect", "disc"):
            raise ConfigError(f"unknown target shape {self.shape!r}")
        if not self.waypoints:
            raise ConfigError(f"target {self.target_id} has no waypoints")
        frames = [wp[0] for wp in self.waypoints]
        if sorted(set(frames)) != frames:
            raise ConfigError(
                f"target {self.target_id} waypoint frames must be strictly increasing"
            )
        if self.shape == "rect" and (self.size[0] < 1 or self.size[1] < 1):
            raise ConfigError(f"rect target {self.target_id} needs positive size")
        if self.shape == "disc" and not self.radius > 0:
            raise ConfigError(f"disc target {self.target_id} needs positive radius")

    def position(self, frame_index: int):
        wps = self.waypoints
        if frame_index <= wps[0][0]:
            return (float(wps[0][1]), float(wps[0][2]))
        if frame_index >= wps[-1][0]:
            return (float(wps[-1][1]), float(wps[-1][2]))
        for (f0, x0, y0), (f1, x1, y1) in zip(wps, wps[1:]):
            if f0 <= frame_index <= f1:
                u = (frame_index - f0) / (f1 - f0)
                return (x0 + (x1 - x0) * u, y0 + (y1 - y0) * u)
        raise AssertionError("unreachable: waypoints are sorted")


@dataclass
class World:
    """The scene the simulated camera looks at."""

    image: Frame
    home: tuple  # top-left of the view window at pan = tilt = 0
    view_w: int = 320
    view_h: int = 240
    targets: list = field(default_factory=list)

    def __post_init__(self):
        if self.view_w < 1 or self.view_h < 1:
            raise ConfigError(f"view must be positive, got {self.view_w}x{self.view_h}")


@dataclass
class TraceRow:
    """One simulated frame: measurements from the rendered view and the
    post-actuation stepper positions."""

    frame_index: int
    pan_steps: int
    tilt_steps: int
    mu_x: float | None
    mu_y: float | None
    dx: float | None
    dy: float | None
    skin_pixels: int


def displacement(centroid, view_w: int, view_h: int):
    """Signed offset of the centroid from the view centre
    (view_w/2, view_h/2)."""
    return (centroid[0] - view_w / 2, centroid[1] - view_h / 2)


def _axis_step(pos: int, limits, component: float, deadband: int) -> int:
    if abs(component) > deadband:
        pos += 1 if component > 0 else -1
        pos = max(limits[0], min(limits[1], pos))
    return pos


def step(state: PanTiltState, d) -> PanTiltState:
    """At most one step per axis toward reducing the displacement;
    components within the deadband hold, limits clamp."""
    dx, dy = d
    return replace(
        state,
        pan_steps=_axis_step(state.pan_steps, state.pan_limits, dx, state.deadband),
        tilt_steps=_axis_step(state.tilt_steps, state.tilt_limits, dy, state.deadband),
    )


def validate_world(world: World, state: PanTiltState) -> None:
    """Reject configurations where some reachable view window would leave
    the world image."""
    gain = state.pixels_per_step
    min_x = world.home[0] + gain * state.pan_limits[0]
    max_x = world.home[0] + gain * state.pan_limits[1] + world.view_w
    min_y = world.home[1] + gain * state.tilt_limits[0]
    max_y = world.home[1] + gain * state.tilt_limits[1] + world.view_h
    if min_x < 0 or min_y < 0 or max_x > world.image.width or max_y > world.image.height:
        raise ConfigError(
            f"reachable view envelope x[{min_x},{max_x}) y[{min_y},{max_y}) "
            f"exceeds the {world.image.width}x{world.image.height} world image"
        )


def _draw_target(data: np.ndarray, target: Target, frame_index: int) -> None:
    cx, cy = target.position(frame_index)
    h, w, _ = data.shape
    if target.shape == "rect":
        rw, rh = target.size
        left = max(math.ceil(cx - rw / 2), 0)
        right = min(math.ceil(cx + rw / 2) - 1, w - 1)
        top = max(math.ceil(cy - rh / 2), 0)
        bottom = min(math.ceil(cy + rh / 2) - 1, h - 1)
        if left <= right and top <= bottom:
            data[top : bottom + 1, left : right + 1] = target.color
    else:
        r = target.radius
        x0 = max(math.floor(cx - r), 0)
        x1 = min(math.ceil(cx + r), w - 1)
        y0 = max(math.floor(cy - r), 0)
        y1 = min(math.ceil(cy + r), h - 1)
        if x0 > x1 or y0 > y1:
            return
        yy, xx = np.ogrid[y0 : y1 + 1, x0 : x1 + 1]
        inside = (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
        data[y0 : y1 + 1, x0 : x1 + 1][inside] = target.color


def render_view(world: World, state: PanTiltState, frame_index: int) -> Frame:
    """Advance targets to ``frame_index``, composite them over the world
    image, and crop the current view window."""
    if frame_index < 0:
        raise ValueError(f"frame_index must be >= 0, got {frame_index}")
    canvas = world.image.data.copy()
    for target in world.targets:
        _draw_target(canvas, target, frame_index)
    ox = world.home[0] + state.pixels_per_step * state.pan_steps
    oy = world.home[1] + state.pixels_per_step * state.tilt_steps
    if ox < 0 or oy < 0 or ox + world.view_w > world.image.width or oy + world.view_h > world.image.height:
        raise ConfigError(f"view window at ({ox},{oy}) leaves the world image")
    view = canvas[oy : oy + world.view_h, ox : ox + world.view_w].copy()
    return Frame(world.view_w, world.view_h, view)


def run_tracking(
    world: World,
    net: Mlp,
    eta: int,
    rho: float,
    state0: PanTiltState,
    frames: int,
) -> list:
    """Run ``frames`` sense-decide-actuate iterations from ``state0``.

    Rows record the post-actuation state together with that frame's
    measurements; frames with no detected skin leave the state unchanged
    and carry empty measurement fields.
    """
    if frames < 1:
        raise ConfigError(f"frames must be >= 1, got {frames}")
    validate_world(world, state0)
    state = state0
    rows = []
    for t in range(frames):
        view = render_view(world, state, t)
        det = detect(view, eta, net, rho)
        if det.centroid is not None:
            dx, dy = displacement(det.centroid, world.view_w, world.view_h)
            state = step(state, (dx, dy))
            mu_x, mu_y = det.centroid
        else:
            mu_x = mu_y = dx = dy = None
        rows.append(
            TraceRow(
                frame_index=t,
                pan_steps=state.pan_steps,
                tilt_steps=state.tilt_steps,
                mu_x=mu_x,
                mu_y=mu_y,
                dx=dx,
                dy=dy,
                skin_pixels=det.skin_pixel_count,
            )
        )
    return rows


def converged_at(rows, state0: PanTiltState):
    """First frame index from which no step occurs through the end of the
    run; 0 if no step ever occurs; None if stepping continues to the end."""
    prev = (state0.pan_steps, state0.tilt_steps)
    last_moved = -1
    for row in rows:
        cur = (row.pan_steps, row.tilt_steps)
        if cur != prev:
            last_moved = row.frame_index
        prev = cur
    if last_moved == rows[-1].frame_index:
        return None
    return last_moved + 1


def _fmt(value) -> str:
    return "" if value is None else repr(value)


def trace_to_csv(rows) -> str:
    lines = [",".join(TRACE_HEADER)]
    for r in rows:
        lines.append(
            f"{r.frame_index},{r.pan_steps},{r.tilt_steps},"
            f"{_fmt(r.mu_x)},{_fmt(r.mu_y)},{_fmt(r.dx)},{_fmt(r.dy)},{r.skin_pixels}"
        )
    return "\n".join(lines) + "\n"


def parse_script_csv(text: str) -> dict:
    """Waypoints per target id from motion-script CSV
    (header ``frame,target_id,x,y``; positions may be fractional)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ConfigError("empty motion script") from None
    if [h.strip() for h in header] != SCRIPT_HEADER:
        raise ConfigError(f"expected header {','.join(SCRIPT_HEADER)!r}, got {header!r}")
    waypoints = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ConfigError(f"script line {lineno}: expected 4 fields, got {len(row)}")
        try:
            frame = int(row[0])
            target_id = int(row[1])
            x = float(row[2])
            y = float(row[3])
        except ValueError:
            raise ConfigError(f"script line {lineno}: malformed row {row!r}") from None
        if frame < 0:
            raise ConfigError(f"script line {lineno}: negative frame {frame}")
        waypoints.setdefault(target_id, []).append((frame, x, y))
    if not waypoints:
        raise ConfigError("motion script contains no waypoints")
    for target_id, wps in waypoints.items():
        wps.sort(key=lambda wp: wp[0])
        frames = [wp[0] for wp in wps]
        if len(set(frames)) != len(frames):
            raise ConfigError(f"target {target_id} has duplicate waypoint frames")
    return waypoints


def targets_from_waypoints(waypoints: dict, palette, radius: float = 10.0) -> list:
    """Default scripted blobs: filled discs coloured from ``palette`` by
    target id (``palette[target_id % len(palette)]``)."""
    return [
        Target(
            target_id=tid,
            color=palette[tid % len(palette)],
            waypoints=wps,
            shape="disc",
            radius=radius,
        )
        for tid, wps in sorted(waypoints.items())
    ]
