"""Built-in fan fixtures used by the test suite and available on the CLI."""

from pathlib import Path

from .fanfile import FanFile, fan_to_text
from .lattice import Vec


def _unit(i: int, n: int) -> Vec:
    return tuple(1 if k == i else 0 for k in range(n))


def _fan(label: str, dim: int, rays) -> FanFile:
    return FanFile(
        dim=dim,
        rays=tuple(tuple(r) for r in rays),
        label=label,
        assume_complete=True,
        warnings=(),
    )


def projective_space(n: int) -> FanFile:
    rays = [_unit(i, n) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    return _fan(f"p{n}", n, rays)


def weighted_projective(*weights: int) -> FanFile:
    """Weighted projective space with first weight one: the basis rays carry
    the remaining weights and the extra ray closes the weighted relation."""
    if weights[0] != 1:
        raise ValueError("first weight must be 1 for an additive action")
    tail = weights[1:]
    n = len(tail)
    rays = [_unit(i, n) for i in range(n)]
    rays.append(tuple(-w for w in tail))
    label = "p" + "".join(str(w) for w in weights)
    return _fan(label, n, rays)


def product_of_lines() -> FanFile:
    return _fan("p1xp1", 2, [(1, 0), (0, 1), (-1, 0), (0, -1)])


def five_ray_surface() -> FanFile:
    """A surface with a two-dimensional unipotent automorphism part but no
    additive action: one ray escapes every negative octant."""
    return _fan(
        "five-ray", 2, [(1, 0), (0, 1), (-1, 1), (-2, -1), (-1, -1)]
    )


def two_extra_family(n: int) -> FanFile:
    """Basis rays plus two extra rays with opposite weight ladders; the
    smallest family where the additive action is unique."""
    rays = [_unit(i, n) for i in range(n)]
    rays.append(tuple(-(i + 1) for i in range(n)))
    rays.append(tuple(-(n - i) for i in range(n)))
    return _fan(f"family-{n}", n, rays)


def hirzebruch(k: int) -> FanFile:
    return _fan(f"hirzebruch-{k}", 2, [(1, 0), (0, 1), (-1, k), (0, -1)])


def _build() -> dict[str, FanFile]:
    out: dict[str, FanFile] = {}
    for n in range(1, 5):
        ff = projective_space(n)
        out[ff.label] = ff
    out["p1xp1"] = product_of_lines()
    for weights in ((1, 1, 2), (1, 2, 3), (1, 1, 1, 2)):
        ff = weighted_projective(*weights)
        out[ff.label] = ff
    out["five-ray"] = five_ray_surface()
    for n in range(2, 6):
        ff = two_extra_family(n)
        out[ff.label] = ff
    for k in range(4):
        ff = hirzebruch(k)
        out[ff.label] = ff
    return out


FIXTURES: dict[str, FanFile] = _build()


def fixture(name: str) -> FanFile:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}"
        ) from None


def fixture_names() -> list[str]:
    return list(FIXTURES)


def write_fixtures(directory) -> list[Path]:
    """Write every fixture as a .fan file and return the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, ff in FIXTURES.items():
        path = directory / f"{name}.fan"
        path.write_text(fan_to_text(ff), encoding="utf-8")
        paths.append(path)
    return paths
