"""Parsing and writing the fan file format.

A fan file is a line-based text document.  ``#`` starts a comment, blank
lines are ignored, and every other line is one directive:

    dim <n>                  ambient dimension, required, exactly once
    label <name>             optional display name
    assume_complete <bool>   true or false, optional, defaults to true
    ray <c1> <c2> ... <cn>   one ray per line, arbitrary precision integers

Rays are normalized to primitive vectors with a warning; duplicates after
normalization, length mismatches, and ray counts at or below the dimension
are errors that cite the offending line.
"""

from dataclasses import dataclass

from .errors import InputError
from .lattice import Vec, primitive
from .rays import RaySystem


@dataclass(frozen=True)
class FanFile:
    """A parsed fan description plus the warnings parsing produced."""

    dim: int
    rays: tuple[Vec, ...]
    label: str | None
    assume_complete: bool
    warnings: tuple[str, ...]

    def ray_system(self) -> RaySystem:
        return RaySystem(self.dim, self.rays)


def parse_fan_file(data: bytes | str, source: str = "<fan>") -> FanFile:
    """Parse and validate one fan file."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    dim: int | None = None
    label: str | None = None
    assume_complete = True
    raw_rays: list[tuple[int, Vec]] = []  # (line number, vector)
    warnings: list[str] = []

    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        where = f"{source}:{lineno}"
        if key == "dim":
            if dim is not None:
                raise InputError(f"{where}: dim given twice")
            if len(args) != 1:
                raise InputError(f"{where}: dim takes one integer")
            try:
                dim = int(args[0])
            except ValueError:
                raise InputError(f"{where}: bad integer {args[0]!r}") from None
            if dim < 1:
                raise InputError(f"{where}: dim must be positive")
        elif key == "label":
            if not args:
                raise InputError(f"{where}: label needs a value")
            label = " ".join(args)
        elif key == "assume_complete":
            if len(args) != 1 or args[0] not in ("true", "false"):
                raise InputError(f"{where}: assume_complete takes true or false")
            assume_complete = args[0] == "true"
        elif key == "ray":
            if not args:
                raise InputError(f"{where}: ray needs coordinates")
            try:
                vec = tuple(int(a) for a in args)
            except ValueError:
                raise InputError(f"{where}: bad integer in ray") from None
            raw_rays.append((lineno, vec))
        else:
            raise InputError(f"{where}: unknown directive {key!r}")

    if dim is None:
        raise InputError(f"{source}: missing dim directive")

    rays: list[Vec] = []
    seen: dict[Vec, int] = {}
    for lineno, vec in raw_rays:
        where = f"{source}:{lineno}"
        if len(vec) != dim:
            raise InputError(
                f"{where}: ray has {len(vec)} coordinates, expected {dim}"
            )
        if all(x == 0 for x in vec):
            raise InputError(f"{where}: the zero vector is not a ray")
        prim = primitive(vec)
        if prim != vec:
            warnings.append(
                f"{where}: ray {_fmt(vec)} normalized to {_fmt(prim)}"
            )
        if prim in seen:
            raise InputError(
                f"{where}: duplicate ray {_fmt(prim)} (first on line "
                f"{seen[prim]})"
            )
        seen[prim] = lineno
        rays.append(prim)

    if len(rays) < dim + 1:
        raise InputError(
            f"{source}: a complete fan needs more than {dim} rays, got "
            f"{len(rays)}"
        )
    return FanFile(
        dim=dim,
        rays=tuple(rays),
        label=label,
        assume_complete=assume_complete,
        warnings=tuple(warnings),
    )


def fan_to_text(ff: FanFile) -> str:
    """Serialize a fan back to the file format."""
    lines = []
    if ff.label:
        lines.append(f"label {ff.label}")
    lines.append(f"dim {ff.dim}")
    if not ff.assume_complete:
        lines.append("assume_complete false")
    for ray in ff.rays:
        lines.append("ray " + " ".join(str(x) for x in ray))
    return "\n".join(lines) + "\n"


def _fmt(vec: Vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"
