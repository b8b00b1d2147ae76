"""Canonical file formats.

Rationals serialize as decimal strings "a/b" or "a"; points add "inf".
Group files carry the prime, the digit precision, generator matrices in
row-major rational strings, and the two disk lists.  Serialization is
canonical (sorted keys, exact strings), so parse-then-serialize is the
identity on canonical files and outputs diff cleanly.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Tuple

from .disks import Disk
from .errors import FormatError
from .groups import SchottkyGroup
from .padic import DEFAULT_PRECISION, PadicApprox, PrimeContext
from .proj import Homography, ProjPoint

FORMAT_VERSION = 1

PRECISION_ENV = "SCHOTTKY_PRECISION"


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError as exc:
        raise FormatError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise FormatError(f"{PRECISION_ENV} must be >= 1")
    return value


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str, field: str = "rational") -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{field}: cannot parse rational {text!r}") from exc


def point_str(x: ProjPoint) -> str:
    return "inf" if x.is_infinity else rational_str(x.value)


def parse_point(text: str, field: str = "point") -> ProjPoint:
    text = str(text).strip()
    if text in ("inf", "oo", "infinity"):
        return ProjPoint.infinity()
    return ProjPoint(parse_rational(text, field))


def homography_to_lists(g: Homography):
    a, b, c, d = g.entries
    return [[str(a), str(b)], [str(c), str(d)]]


def parse_homography(data, field: str = "matrix") -> Homography:
    try:
        (a, b), (c, d) = data
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{field}: expected [[a,b],[c,d]]") from exc
    entries = [parse_rational(x, field) for x in (a, b, c, d)]
    try:
        return Homography(*entries)
    except ValueError as exc:
        raise FormatError(f"{field}: {exc}") from exc


def disk_to_dict(D: Disk) -> dict:
    return {
        "kind": "bounded" if D.bounded else "unbounded",
        "open": D.is_open,
        "center": rational_str(D.center),
        "radius_exp": rational_str(D.radius_exp),
    }


def parse_disk(data: dict, p: int, field: str = "disk") -> Disk:
    try:
        kind = data["kind"]
        is_open = data["open"]
        center = parse_rational(data["center"], f"{field}.center")
        radius_exp = parse_rational(data["radius_exp"], f"{field}.radius_exp")
    except KeyError as exc:
        raise FormatError(f"{field}: missing key {exc}") from exc
    if kind not in ("bounded", "unbounded"):
        raise FormatError(f"{field}.kind: expected bounded|unbounded, got {kind!r}")
    if not isinstance(is_open, bool):
        raise FormatError(f"{field}.open: expected a boolean")
    return Disk(kind == "bounded", is_open, center, radius_exp, p)


def approx_to_dict(x: PadicApprox) -> dict:
    if x.is_zero:
        return {"valuation": None, "unit": 0, "precision": x.precision}
    return {"valuation": x.valuation, "unit": x.unit, "precision": x.precision}


def group_to_dict(G: SchottkyGroup) -> dict:
    return {
        "version": FORMAT_VERSION,
        "p": G.p,
        "precision": G.ctx.precision,
        "generators": [homography_to_lists(g) for g in G.generators],
        "B": [disk_to_dict(D) for D in G.B],
        "C": [disk_to_dict(D) for D in G.C],
    }


def group_from_dict(data: dict) -> SchottkyGroup:
    if not isinstance(data, dict):
        raise FormatError("group: expected a JSON object")
    try:
        p = int(data["p"])
    except (KeyError, TypeError, ValueError):
        raise FormatError("group.p: missing or not an integer")
    version = data.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FormatError(f"group.version: unsupported version {version}")
    precision = int(data.get("precision", default_precision()))
    try:
        ctx = PrimeContext(p, precision)
    except ValueError as exc:
        raise FormatError(f"group: {exc}") from exc
    for key in ("generators", "B", "C"):
        if key not in data:
            raise FormatError(f"group.{key}: missing")
    generators = [
        parse_homography(m, f"group.generators[{i}]") for i, m in enumerate(data["generators"])
    ]
    B = [parse_disk(d, p, f"group.B[{i}]") for i, d in enumerate(data["B"])]
    C = [parse_disk(d, p, f"group.C[{i}]") for i, d in enumerate(data["C"])]
    try:
        return SchottkyGroup(ctx, generators, B, C)
    except ValueError as exc:
        raise FormatError(f"group: {exc}") from exc


class GroupSpecFile:
    """A parsed group spec file: path, group, and format version."""

    __slots__ = ("path", "group", "version")

    def __init__(self, path):
        self.path = Path(path)
        try:
            data = json.loads(self.path.read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{self.path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
        self.group = group_from_dict(data)
        self.version = data.get("version", FORMAT_VERSION) if isinstance(data, dict) else None


def load_group(path) -> SchottkyGroup:
    return GroupSpecFile(path).group


def save_group(G: SchottkyGroup, path):
    Path(path).write_text(canonical_json(group_to_dict(G)))


def pair_from_dict(data: dict, base_dir=None) -> Tuple[SchottkyGroup, Homography, SchottkyGroup, int]:
    if not isinstance(data, dict):
        raise FormatError("pair: expected a JSON object")

    def resolve_group(value, field):
        if isinstance(value, str):
            path = Path(value)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            return load_group(path)
        return group_from_dict(value)

    for key in ("gamma1", "g", "gamma2", "depth"):
        if key not in data:
            raise FormatError(f"pair.{key}: missing")
    G1 = resolve_group(data["gamma1"], "pair.gamma1")
    G2 = resolve_group(data["gamma2"], "pair.gamma2")
    g = parse_homography(data["g"], "pair.g")
    try:
        depth = int(data["depth"])
    except (TypeError, ValueError):
        raise FormatError("pair.depth: expected an integer")
    return G1, g, G2, depth


def load_pair(path) -> Tuple[SchottkyGroup, Homography, SchottkyGroup, int]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return pair_from_dict(data, base_dir=path.parent)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load_cover_csv(path):
    """Rows of a limit-cover export: (word, center, radius exponent)."""
    import csv

    from .words import Word

    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["word", "center", "radius_exp"]:
            raise FormatError(f"{path}: unexpected cover CSV header {reader.fieldnames}")
        return [
            (
                Word.parse(row["word"]),
                parse_rational(row["center"], "center"),
                parse_rational(row["radius_exp"], "radius_exp"),
            )
            for row in reader
        ]


def load_scan_csv(path):
    """Rows of a height-scan export: (length, word, height, threshold bin)."""
    import csv

    from .words import Word

    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["length", "word", "height", "threshold_bin"]:
            raise FormatError(f"{path}: unexpected scan CSV header {reader.fieldnames}")
        return [
            (int(row["length"]), Word.parse(row["word"]), int(row["height"]), int(row["threshold_bin"]))
            for row in reader
        ]
