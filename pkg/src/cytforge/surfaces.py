"""Base-surface models: H^2(X, Z) as a based lattice with intersection form,
anti-canonical class, and negative-curve data, plus the class arithmetic and
integer-lattice services every other module consumes.

Built-in models: the projective plane, the smooth quadric, blow-ups of the
plane at k points (general position for k <= 8, points on a cubic for k >= 2),
and a Kummer-surface fragment given by a partial pairing table.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from . import intlinalg
from .errors import (
    InvalidPosition,
    NonSymmetricGram,
    RankMismatch,
    ScalarParseError,
    UndeclaredPairing,
    ZeroClass,
)
from .scalars import Scalar, format_scalar, is_integer, parse_scalar


@dataclass(frozen=True)
class CohClass:
    """A degree-2 class as a coefficient vector over a model's ordered basis."""

    coeffs: tuple[Scalar, ...]

    @staticmethod
    def of(values: Sequence) -> "CohClass":
        return CohClass(tuple(int(v) if isinstance(v, int) else v for v in values))

    @staticmethod
    def zero(rank: int) -> "CohClass":
        return CohClass((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "CohClass") -> "CohClass":
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return CohClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CohClass") -> "CohClass":
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return CohClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CohClass":
        return CohClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar) -> "CohClass":
        return CohClass(tuple(scalar * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def is_integral(self) -> bool:
        return all(is_integer(a) for a in self.coeffs)

    def as_int_vector(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("class is not integral")
        return [int(a) for a in self.coeffs]

    def serialize(self) -> list[str]:
        return [format_scalar(a) for a in self.coeffs]

    @staticmethod
    def deserialize(items: Sequence[str]) -> "CohClass":
        return CohClass(tuple(parse_scalar(s) for s in items))


# negative-curve regimes
REGIME_NONE = "none"  # no curves of negative self-intersection
REGIME_RULINGS = "rulings"  # quadric: cone cut out by the two rulings
REGIME_ENUMERATE = "enumerate_neg1"  # del Pezzo: exhaustive (-1)-class enumeration
REGIME_ON_CUBIC = "on_cubic"  # blow-up along a cubic: explicit curve families
REGIME_EXPLICIT = "explicit"  # custom model with a user-supplied list


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    basis_labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    c1: CohClass
    curve_regime: str = REGIME_NONE
    curves: Optional[tuple[CohClass, ...]] = None
    ample_witness: Optional[CohClass] = None
    simply_connected: bool = True
    volume_class_sign: int = 1

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def __post_init__(self):
        b = self.rank
        if len(self.gram) != b or any(len(row) != b for row in self.gram):
            raise NonSymmetricGram("gram shape does not match basis")
        for i in range(b):
            for j in range(b):
                if self.gram[i][j] != self.gram[j][i]:
                    raise NonSymmetricGram(f"gram[{i}][{j}] != gram[{j}][{i}]")
        if self.c1.rank != b:
            raise RankMismatch("c1 length does not match basis")


@dataclass(frozen=True)
class PairingFunctionalModel:
    """Classes known only through declared pairings against named generators.

    The table may leave entries undeclared (None); querying one raises
    UndeclaredPairing.  Used for the Kummer fragment, where only the sixteen
    rational curves' pairings and their products with a chosen Kaehler class
    are pinned down, not an ambient basis.
    """

    name: str
    basis_labels: tuple[str, ...]
    table: tuple[tuple[Optional[int], ...], ...]
    c1: CohClass = None  # type: ignore[assignment]
    simply_connected: bool = True

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def __post_init__(self):
        b = self.rank
        if len(self.table) != b or any(len(row) != b for row in self.table):
            raise NonSymmetricGram("pairing table shape does not match basis")
        for i in range(b):
            for j in range(b):
                if self.table[i][j] != self.table[j][i]:
                    raise NonSymmetricGram("pairing table is not symmetric")
        if self.c1 is None:
            object.__setattr__(self, "c1", CohClass.zero(b))

    @property
    def gram(self):
        return self.table


Model = Union[SurfaceModel, PairingFunctionalModel]


def intersect(model: Model, x: CohClass, y: CohClass) -> Scalar:
    """x . y under the model's intersection form, exactly."""
    b = model.rank
    if x.rank != b or y.rank != b:
        raise RankMismatch(f"classes of rank {x.rank}/{y.rank} on a rank-{b} model")
    gram = model.gram
    total: Scalar = 0
    for i, xi in enumerate(x.coeffs):
        if xi == 0:
            continue
        row = gram[i]
        for j, yj in enumerate(y.coeffs):
            if yj == 0:
                continue
            g = row[j]
            if g is None:
                li, lj = model.basis_labels[i], model.basis_labels[j]
                raise UndeclaredPairing(f"Q({li},{lj}) is not declared on {model.name}")
            if g:
                total = total + xi * g * yj
    return total


# -- built-in models ----------------------------------------------------


def projective_plane() -> SurfaceModel:
    return SurfaceModel(
        name="projective_plane",
        basis_labels=("H",),
        gram=((1,),),
        c1=CohClass.of([3]),
        curve_regime=REGIME_NONE,
        ample_witness=CohClass.of([1]),
    )


def quadric() -> SurfaceModel:
    return SurfaceModel(
        name="quadric",
        basis_labels=("C", "D"),
        gram=((0, 1), (1, 0)),
        c1=CohClass.of([2, 2]),
        curve_regime=REGIME_RULINGS,
        ample_witness=CohClass.of([1, 1]),
    )


POSITION_GENERAL = "general"
POSITION_ON_CUBIC = "on_cubic"


def blowup_cp2(k: int, position: str | None = None) -> SurfaceModel:
    """Blow-up of the plane at k points; basis (H, E1, ..., Ek), gram
    diag(1, -1, ..., -1), anti-canonical class 3H - E1 - ... - Ek."""
    if k < 1:
        raise InvalidPosition("k >= 1 required")
    if position is None:
        position = POSITION_GENERAL if k <= 8 else POSITION_ON_CUBIC
    if position == POSITION_GENERAL:
        if k > 8:
            raise InvalidPosition(f"general position needs k <= 8, got k={k}")
        regime = REGIME_ENUMERATE
    elif position == POSITION_ON_CUBIC:
        if k < 2:
            raise InvalidPosition("on_cubic needs k >= 2")
        regime = REGIME_ON_CUBIC
    else:
        raise InvalidPosition(f"unknown position {position!r}")
    labels = ("H",) + tuple(f"E{i}" for i in range(1, k + 1))
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(k + 1))
        for i in range(k + 1)
    )
    return SurfaceModel(
        name=f"blowup_cp2({k},{position})",
        basis_labels=labels,
        gram=gram,
        c1=CohClass.of([3] + [-1] * k),
        curve_regime=regime,
        ample_witness=CohClass.of([k + 1] + [-1] * k),
    )


def custom_model(
    name: str,
    gram: Sequence[Sequence[int]],
    c1: Sequence[int],
    basis_labels: Sequence[str] | None = None,
    curves: Sequence[Sequence[int]] | None = None,
    ample_witness: Sequence[int] | None = None,
    simply_connected: bool = False,
) -> SurfaceModel:
    b = len(gram)
    labels = tuple(basis_labels) if basis_labels else tuple(f"e{i}" for i in range(1, b + 1))
    return SurfaceModel(
        name=name,
        basis_labels=labels,
        gram=tuple(tuple(int(x) for x in row) for row in gram),
        c1=CohClass.of(c1),
        curve_regime=REGIME_EXPLICIT,
        curves=tuple(CohClass.of(c) for c in curves) if curves is not None else None,
        ample_witness=CohClass.of(ample_witness) if ample_witness is not None else None,
        simply_connected=simply_connected,
    )


def kummer_model(f_pairings: Sequence[int] = (1, 1, 1, 1)) -> PairingFunctionalModel:
    """Kummer-surface fragment: four of the sixteen (-2)-curves C1..C4 plus a
    Ricci-flat Kaehler class F declared only through Q(Ci, F) = +/-1."""
    if len(f_pairings) != 4 or any(s not in (1, -1) for s in f_pairings):
        raise ValueError("four pairings in {+1,-1} required")
    labels = ("C1", "C2", "C3", "C4", "F")
    table = []
    for i in range(5):
        row: list[Optional[int]] = []
        for j in range(5):
            if i < 4 and j < 4:
                row.append(-2 if i == j else 0)
            elif i == 4 and j == 4:
                row.append(None)  # Q(F,F) is not pinned down by the chamber data
            else:
                row.append(f_pairings[min(i, j)])
        table.append(tuple(row))
    return PairingFunctionalModel(
        name="kummer",
        basis_labels=labels,
        table=tuple(table),
        c1=CohClass.zero(5),
    )


_BUILTIN_RE = re.compile(r"^blowup_cp2\((\d+)(?:,\s*(general|on_cubic))?\)$")


def builtin_model(spec: str) -> Model:
    """Resolve a builtin model name like 'quadric' or 'blowup_cp2(5)'."""
    s = spec.strip()
    if s in ("projective_plane", "cp2", "p2"):
        return projective_plane()
    if s == "quadric":
        return quadric()
    if s == "kummer":
        return kummer_model()
    m = _BUILTIN_RE.match(s)
    if m:
        return blowup_cp2(int(m.group(1)), m.group(2))
    raise ValueError(f"unknown builtin model {spec!r}")


def load_model(path: str) -> SurfaceModel:
    """Model config file: JSON with name, basis, gram, c1, curves, ample_witness."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return custom_model(
        name=doc.get("name", path),
        gram=doc["gram"],
        c1=doc["c1"],
        basis_labels=doc.get("basis"),
        curves=doc.get("curves"),
        ample_witness=doc.get("ample_witness"),
        simply_connected=bool(doc.get("simply_connected", False)),
    )


def model_to_dict(model: Model) -> dict:
    doc = {
        "name": model.name,
        "basis": list(model.basis_labels),
        "gram": [list(row) for row in model.gram],
        "c1": model.c1.serialize(),
        "simply_connected": model.simply_connected,
    }
    if isinstance(model, SurfaceModel):
        doc["curves"] = (
            [c.serialize() for c in model.curves] if model.curves is not None else None
        )
        doc["ample_witness"] = (
            model.ample_witness.serialize() if model.ample_witness is not None else None
        )
    return doc


def resolve_model(spec: str) -> Model:
    """Builtin name or path to a model file."""
    try:
        return builtin_model(spec)
    except ValueError:
        pass
    return load_model(spec)


# -- lattice services ---------------------------------------------------


def snf(mat) -> intlinalg.SnfResult:
    return intlinalg.snf([list(row) for row in mat])


def solve_integer_linear(mat, target) -> Optional[CohClass]:
    """Some integral x with mat . x = target, as a CohClass; None if unsolvable."""
    x = intlinalg.solve_integer_linear([list(row) for row in mat], list(target))
    return CohClass.of(x) if x is not None else None


def basis_extension_check(model: Model, classes: Sequence[CohClass]) -> bool:
    """True iff the integral classes extend to a Z-basis of the lattice
    (their coefficient matrix has full rank with all invariant factors 1)."""
    if not classes:
        return True
    rows = [c.as_int_vector() for c in classes]
    for row in rows:
        if len(row) != model.rank:
            raise RankMismatch("class rank does not match model")
    if len(rows) > model.rank:
        return False
    diag = intlinalg.snf(rows).diagonal
    return all(diag[i] == 1 for i in range(len(rows)))


def divisibility_index(model: Model, x: CohClass) -> int:
    """Largest r with x/r still integral."""
    vec = x.as_int_vector()
    if all(v == 0 for v in vec):
        raise ZeroClass("divisibility index of the zero class")
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    return g


def mod2_membership(model: Model, target: CohClass, span: Sequence[CohClass]) -> bool:
    tv = target.as_int_vector()
    sv = [c.as_int_vector() for c in span]
    if len(tv) != model.rank or any(len(v) != model.rank for v in sv):
        raise RankMismatch("class rank does not match model")
    return intlinalg.gf2_in_span(tv, sv)


def pairing_row(model: Model, x: CohClass) -> list[int]:
    """The functional Q(x, .) on integral classes, as an integer row vector."""
    xv = x.as_int_vector()
    row = []
    for j in range(model.rank):
        total = 0
        for i, xi in enumerate(xv):
            if xi:
                g = model.gram[i][j]
                if g is None:
                    raise UndeclaredPairing(model.basis_labels[j])
                total += xi * g
        row.append(total)
    return row


# -- class expression parsing / printing --------------------------------

_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?([A-Za-z][A-Za-z0-9]*)")
_VECTOR_SPLIT_RE = re.compile(r",")


def parse_class(model: Model, text: str) -> CohClass:
    """Accepts '3H-E1-E2' label syntax or '[3,-1,-1]' vector syntax
    (vector entries in the exact scalar format)."""
    s = text.strip()
    if not s:
        raise ScalarParseError("empty class expression")
    if s == "0":
        return CohClass.zero(model.rank)
    if s.startswith("["):
        if not s.endswith("]"):
            raise ScalarParseError(f"unterminated vector: {text!r}")
        items = [p.strip() for p in _VECTOR_SPLIT_RE.split(s[1:-1]) if p.strip()]
        if len(items) != model.rank:
            raise RankMismatch(f"{len(items)} coefficients on a rank-{model.rank} model")
        return CohClass.deserialize(items)
    s = s.replace(" ", "")
    coeffs: list[Scalar] = [0] * model.rank
    index = {label: i for i, label in enumerate(model.basis_labels)}
    pos = 0
    matched = False
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.start() != pos:
            raise ScalarParseError(f"bad class expression near {s[pos:]!r}")
        sign_s, coef_s, label = m.groups()
        if label not in index:
            raise ScalarParseError(f"unknown basis label {label!r} on {model.name}")
        coef = Fraction(coef_s) if coef_s else Fraction(1)
        if sign_s == "-":
            coef = -coef
        coeffs[index[label]] += coef
        pos = m.end()
        matched = True
    if not matched:
        raise ScalarParseError(f"bad class expression {text!r}")
    return CohClass(tuple(int(c) if c.denominator == 1 else c for c in coeffs))


def format_class(model: Model, x: CohClass) -> str:
    """Label form like '3H-E1-E2' when all coefficients are rational,
    else the exact vector form."""
    parts = []
    for coef, label in zip(x.coeffs, model.basis_labels):
        if coef == 0:
            continue
        if not isinstance(coef, (int, Fraction)):
            return "[" + ",".join(format_scalar(c) for c in x.coeffs) + "]"
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        mag_s = "" if mag == 1 else str(mag)
        parts.append(f"{sign}{mag_s}{label}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out
