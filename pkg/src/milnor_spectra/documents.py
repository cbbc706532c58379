"""JSON documents: singularity descriptors, line-singularity problems, spaces.

Descriptor shapes::

    {"kind": "brieskorn", "exponents": [2, 3]}
    {"kind": "suspension", "base": <descriptor>, "j": 2}
    {"kind": "point_power", "alpha": 5}
    {"kind": "spectrum", "eigenvalues": [{"num": 1, "den": 6, "mult": 1}, ...],
     "ambient_dim": 2}

Errors carry a JSON path (``$.base.exponents[1]``) or, for syntax errors, a
line and column.
"""

from __future__ import annotations

import json
import logging

from .lines import LineSingularityProblem, TransversalComponent
from .spaces import DisjointUnion, HypersurfaceGerm, OpenSubsetOf, Product, Smooth
from .spectrum import (
    BrieskornPham,
    EigenMultiset,
    ExplicitSpectrum,
    PointPower,
    RationalAngle,
    Suspension,
    spectrum_of,
)

log = logging.getLogger(__name__)


class DocumentError(ValueError):
    def __init__(self, message: str, path: str = "$", line: int | None = None, col: int | None = None):
        self.path = path
        self.line = line
        self.col = col
        where = f"line {line}, column {col}" if line is not None else path
        super().__init__(f"{where}: {message}")


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno, col=exc.colno) from None


def _require(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", path)
    if key not in obj:
        raise DocumentError(f"missing field {key!r}", path)
    value = obj[key]
    if kind is not None and not _is(value, kind):
        raise DocumentError(f"field {key!r} must be {_kind_name(kind)}", f"{path}.{key}")
    return value


def _is(value, kind):
    if kind is int:
        return isinstance(value, int) and not isinstance(value, bool)
    return isinstance(value, kind)


def _kind_name(kind):
    return {int: "an integer", list: "an array", dict: "an object", str: "a string", bool: "a boolean"}[kind]


def _int(value, path, minimum=None):
    if not _is(value, int):
        raise DocumentError("expected an integer", path)
    if minimum is not None and value < minimum:
        raise DocumentError(f"expected an integer >= {minimum}, got {value}", path)
    return value


# ---------------------------------------------------------------------------
# descriptors


def parse_spectrum(obj, path="$") -> EigenMultiset:
    """The "eigenvalues" payload of a spectrum descriptor (also accepts a bare list)."""
    if isinstance(obj, list):
        items, ambient = obj, None
    else:
        items = _require(obj, "eigenvalues", path, list)
        ambient = obj.get("ambient_dim")
        if ambient is not None:
            ambient = _int(ambient, f"{path}.ambient_dim", 1)
        path = f"{path}.eigenvalues"
    counts: dict = {}
    for i, item in enumerate(items):
        ipath = f"{path}[{i}]"
        num = _int(_require(item, "num", ipath), f"{ipath}.num")
        den = _int(_require(item, "den", ipath), f"{ipath}.den", 1)
        mult = _int(item.get("mult", 1), f"{ipath}.mult", 1)
        angle = RationalAngle(num, den)
        if (angle.numerator, angle.denominator) != (num, den):
            log.warning("%s: %d/%d normalized to %s", ipath, num, den, angle)
        counts[angle] = counts.get(angle, 0) + mult
    return EigenMultiset.from_counts(counts, ambient)


def parse_descriptor(obj, path="$"):
    kind = _require(obj, "kind", path, str)
    try:
        if kind == "brieskorn":
            exps = _require(obj, "exponents", path, list)
            if not exps:
                raise DocumentError("exponent list must be nonempty", f"{path}.exponents")
            return BrieskornPham(
                tuple(_int(a, f"{path}.exponents[{i}]", 1) for i, a in enumerate(exps))
            )
        if kind == "suspension":
            base = parse_descriptor(_require(obj, "base", path, dict), f"{path}.base")
            return Suspension(base, _int(_require(obj, "j", path), f"{path}.j", 2))
        if kind == "point_power":
            return PointPower(_int(_require(obj, "alpha", path), f"{path}.alpha", 1))
        if kind == "spectrum":
            return ExplicitSpectrum(parse_spectrum(obj, path))
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc), path) from None
    raise DocumentError(f"unknown descriptor kind {kind!r}", f"{path}.kind")


def spectrum_to_json(s: EigenMultiset) -> dict:
    out = {
        "kind": "spectrum",
        "eigenvalues": [
            {"num": a.numerator, "den": a.denominator, "mult": m} for a, m in s.entries
        ],
    }
    if s.ambient_dim is not None:
        out["ambient_dim"] = s.ambient_dim
    return out


def descriptor_to_json(desc) -> dict:
    if isinstance(desc, BrieskornPham):
        return {"kind": "brieskorn", "exponents": list(desc.exponents)}
    if isinstance(desc, Suspension):
        return {"kind": "suspension", "base": descriptor_to_json(desc.base), "j": desc.j}
    if isinstance(desc, PointPower):
        return {"kind": "point_power", "alpha": desc.alpha}
    if isinstance(desc, ExplicitSpectrum):
        return spectrum_to_json(desc.spectrum)
    raise TypeError(f"not a singularity descriptor: {desc!r}")


def ambient_dim_of(desc) -> int | None:
    if isinstance(desc, BrieskornPham):
        return len(desc.exponents)
    if isinstance(desc, PointPower):
        return 1
    if isinstance(desc, Suspension):
        n = ambient_dim_of(desc.base)
        return None if n is None else n + 1
    return desc.spectrum.ambient_dim


# ---------------------------------------------------------------------------
# line-singularity problems


def _spectrum_field(obj, key, path) -> EigenMultiset:
    value = _require(obj, key, path)
    if isinstance(value, list):
        return parse_spectrum(value, f"{path}.{key}")
    return spectrum_of(parse_descriptor(value, f"{path}.{key}"))


def parse_problem(obj, path="$") -> LineSingularityProblem:
    n = _int(_require(obj, "n", path), f"{path}.n", 3)
    comps_raw = _require(obj, "components", path, list)
    if not comps_raw:
        raise DocumentError("at least one component is required", f"{path}.components")
    components = []
    for i, c in enumerate(comps_raw):
        cpath = f"{path}.components[{i}]"
        name = str(c.get("name", f"nu{i}")) if isinstance(c, dict) else None
        mu = _int(_require(c, "mu_generic", cpath), f"{cpath}.mu_generic", 1)
        transversal = _spectrum_field(c, "transversal_spectrum", cpath)
        h = c.get("h")
        h_spec, ker = None, None
        if h is None:
            raise DocumentError("missing field 'h' (a spectrum or {\"ker_dim\": d})", cpath)
        if isinstance(h, dict) and "ker_dim" in h:
            ker = _int(h["ker_dim"], f"{cpath}.h.ker_dim", 0)
        else:
            h_spec = _spectrum_field(c, "h", cpath)
        try:
            components.append(TransversalComponent(name, mu, transversal, h_spec, ker))
        except ValueError as exc:
            raise DocumentError(str(exc), cpath) from None
    f0 = _spectrum_field(obj, "f0_spectrum", path)
    claimed_dim = obj.get("claimed_dim")
    if claimed_dim is not None:
        claimed_dim = _int(claimed_dim, f"{path}.claimed_dim", 0)
    claimed_spectrum = None
    if obj.get("claimed_spectrum") is not None:
        claimed_spectrum = _spectrum_field(obj, "claimed_spectrum", path)
    euler = obj.get("euler_characteristic")
    if euler is not None:
        euler = _int(euler, f"{path}.euler_characteristic")
    try:
        return LineSingularityProblem(n, components, f0, claimed_dim, claimed_spectrum, euler)
    except ValueError as exc:
        raise DocumentError(str(exc), path) from None


# ---------------------------------------------------------------------------
# spaces


def parse_space(obj, path="$"):
    kind = _require(obj, "kind", path, str)
    if kind == "smooth":
        return Smooth(_int(_require(obj, "n", path), f"{path}.n", 0))
    if kind == "hypersurface_germ":
        germ_spectrum = spectrum_of(parse_descriptor(_require(obj, "spectrum", path, dict), f"{path}.spectrum"))
        n = obj.get("ambient_dim", germ_spectrum.ambient_dim)
        if n is None:
            raise DocumentError("missing field 'ambient_dim'", path)
        n = _int(n, f"{path}.ambient_dim", 1)
        generic_ok = obj.get("generic_ok", True)
        if not isinstance(generic_ok, bool):
            raise DocumentError("expected a boolean", f"{path}.generic_ok")
        mults = obj.get("multiplicities")
        if mults is not None:
            if not isinstance(mults, list) or not mults:
                raise DocumentError("expected a nonempty array", f"{path}.multiplicities")
            mults = tuple(_int(a, f"{path}.multiplicities[{i}]", 1) for i, a in enumerate(mults))
        return HypersurfaceGerm(germ_spectrum, n, generic_ok, mults)
    if kind == "product":
        items = _require(obj, "factors", path, list)
        if not items:
            raise DocumentError("a product needs at least one factor", f"{path}.factors")
        return Product(tuple(parse_space(x, f"{path}.factors[{i}]") for i, x in enumerate(items)))
    if kind == "disjoint_union":
        items = _require(obj, "parts", path, list)
        if not items:
            raise DocumentError("a disjoint union needs at least one part", f"{path}.parts")
        return DisjointUnion(tuple(parse_space(x, f"{path}.parts[{i}]") for i, x in enumerate(items)))
    if kind == "open_subset":
        return OpenSubsetOf(parse_space(_require(obj, "parent", path, dict), f"{path}.parent"))
    raise DocumentError(f"unknown space kind {kind!r}", f"{path}.kind")


def space_to_json(space) -> dict:
    if isinstance(space, Smooth):
        return {"kind": "smooth", "n": space.n}
    if isinstance(space, HypersurfaceGerm):
        out = {
            "kind": "hypersurface_germ",
            "spectrum": spectrum_to_json(space.spectrum),
            "ambient_dim": space.ambient_dim,
            "generic_ok": space.generic_ok,
        }
        if space.multiplicities is not None:
            out["multiplicities"] = list(space.multiplicities)
        return out
    if isinstance(space, Product):
        return {"kind": "product", "factors": [space_to_json(f) for f in space.factors]}
    if isinstance(space, DisjointUnion):
        return {"kind": "disjoint_union", "parts": [space_to_json(p) for p in space.parts]}
    if isinstance(space, OpenSubsetOf):
        return {"kind": "open_subset", "parent": space_to_json(space.parent)}
    raise TypeError(f"not a space descriptor: {space!r}")


def bundled_document(name: str):
    """Load one of the JSON documents shipped in the package's data directory."""
    from importlib.resources import files

    return loads(files(__package__).joinpath("data", name).read_text(encoding="utf-8"))
