"""JSON configuration: orbifold specs, level plans, output options.

A config is a single JSON document:

    {
      "orbifolds": [ <orbifold> | {"catalog": "<id>"}, ... ],
      "levels": {"mode": "prime_range", "norm_min": 2, "norm_max": 13}
              | {"mode": "prime_power", "p": 2, "root": 0, "n_max": 4},
      "output": { ... optional defaults for the CLI ... }
    }

where an orbifold object looks like

    {
      "id": "fig8",
      "field_poly": [1, -1, 1],              # ascending, monic
      "base_volume": 2.0298832128193072,
      "presentation": {"generators": 2, "relators": [[1, -2, ...], ...]},
      "matrices": [ [[{"num": [1], "den": 1}, ...], [...]], ... ],
      "metadata": { ... free-form ... }
    }

Generator data is exact: polynomials are integer coefficient arrays and
matrix entries are integer coordinate vectors over the field generator with
an integer denominator, so nothing passes through floats.  Entries may omit
"presentation"/"matrices" (metadata-only specs, not runnable).
"""

import json
from dataclasses import dataclass, field
from typing import Optional

from .fpgroup import Presentation
from .residue import MonicIntPolynomial, NumberRingElement


class ParseError(ValueError):
    """The config file is not well-formed JSON or is structurally wrong."""


class ValidationError(ValueError):
    """The config parsed but violates a spec invariant."""


@dataclass(frozen=True)
class OrbifoldSpec:
    """One base orbifold: exact group data plus catalog metadata."""

    id: str
    field_poly: MonicIntPolynomial
    base_volume: float
    presentation: Optional[Presentation] = None
    matrices: Optional[tuple] = None  # g matrices, each ((e,e),(e,e)) of NumberRingElement
    metadata: dict = field(default_factory=dict)

    @property
    def runnable(self):
        return self.presentation is not None and self.matrices is not None


@dataclass(frozen=True)
class LevelPlan:
    """Which congruence levels to run: a prime range or one prime-power tower."""

    mode: str
    norm_min: int = 0
    norm_max: int = 0
    p: int = 0
    root: int = 0
    n_max: int = 0

    def __post_init__(self):
        if self.mode == "prime_range":
            if not (2 <= self.norm_min <= self.norm_max):
                raise ValidationError("prime_range needs 2 <= norm_min <= norm_max")
        elif self.mode == "prime_power":
            if self.p < 2 or self.n_max < 1:
                raise ValidationError("prime_power needs p >= 2 and n_max >= 1")
        else:
            raise ValidationError(f"unknown level mode {self.mode!r}")


def _require(obj, key, where, types=None):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    v = obj[key]
    if types is not None and not isinstance(v, types):
        raise ParseError(f"{where}.{key}: expected {types}, got {type(v).__name__}")
    return v


def _parse_number_elt(obj, where):
    if isinstance(obj, int):
        return NumberRingElement((obj,), 1)
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: matrix entry must be an int or a num/den object")
    num = _require(obj, "num", where, list)
    den = obj.get("den", 1)
    if not isinstance(den, int) or den == 0:
        raise ValidationError(f"{where}: denominator must be a nonzero integer")
    return NumberRingElement(tuple(num), den)


def parse_orbifold(obj, where="orbifold"):
    oid = _require(obj, "id", where, str)
    where = f"orbifold {oid!r}"
    coeffs = _require(obj, "field_poly", where, list)
    try:
        poly = MonicIntPolynomial(tuple(coeffs))
    except ValueError as e:
        raise ValidationError(f"{where}.field_poly: {e}") from None
    vol = _require(obj, "base_volume", where, (int, float))
    if vol <= 0:
        raise ValidationError(f"{where}: base_volume must be positive")

    pres = None
    if obj.get("presentation") is not None:
        pobj = obj["presentation"]
        gens = _require(pobj, "generators", f"{where}.presentation", int)
        rels = _require(pobj, "relators", f"{where}.presentation", list)
        try:
            pres = Presentation(gens, tuple(tuple(r) for r in rels))
        except ValueError as e:
            raise ValidationError(f"{where}.presentation: {e}") from None

    mats = None
    if obj.get("matrices") is not None:
        mats = []
        for gi, mobj in enumerate(obj["matrices"]):
            mwhere = f"{where}.matrices[{gi}]"
            if not (isinstance(mobj, list) and len(mobj) == 2
                    and all(isinstance(row, list) and len(row) == 2 for row in mobj)):
                raise ParseError(f"{mwhere}: expected a 2x2 array")
            mats.append(tuple(
                tuple(_parse_number_elt(e, mwhere) for e in row) for row in mobj
            ))
        mats = tuple(mats)

    if (pres is None) != (mats is None):
        raise ValidationError(f"{where}: presentation and matrices must come together")
    if pres is not None and len(mats) != pres.num_generators:
        raise ValidationError(
            f"{where}: {len(mats)} matrices for {pres.num_generators} generators"
        )
    return OrbifoldSpec(
        id=oid,
        field_poly=poly,
        base_volume=float(vol),
        presentation=pres,
        matrices=mats,
        metadata=obj.get("metadata", {}),
    )


def parse_levels(obj):
    mode = _require(obj, "mode", "levels", str)
    if mode == "prime_range":
        return LevelPlan(mode=mode,
                         norm_min=_require(obj, "norm_min", "levels", int),
                         norm_max=_require(obj, "norm_max", "levels", int))
    if mode == "prime_power":
        return LevelPlan(mode=mode,
                         p=_require(obj, "p", "levels", int),
                         root=_require(obj, "root", "levels", int),
                         n_max=_require(obj, "n_max", "levels", int))
    raise ValidationError(f"unknown level mode {mode!r}")


def load_config(path):
    """Parse and validate a config file; returns (specs, plan, options)."""
    from .catalog import catalog_spec  # deferred: catalog parses with this module

    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ParseError(f"{path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")

    specs = []
    for i, entry in enumerate(_require(doc, "orbifolds", path, list)):
        if isinstance(entry, dict) and set(entry) == {"catalog"}:
            specs.append(catalog_spec(entry["catalog"]))
        else:
            specs.append(parse_orbifold(entry, f"orbifolds[{i}]"))
    ids = [s.id for s in specs]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate orbifold ids in config")
    plan = parse_levels(_require(doc, "levels", path, dict))
    options = doc.get("output", {})
    if not isinstance(options, dict):
        raise ParseError(f"{path}: output options must be an object")
    return specs, plan, options
