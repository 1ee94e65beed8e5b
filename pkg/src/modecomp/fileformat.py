"""
Instance and decomposition files.

An instance is a JSON object::

    {"p": 2, "dim": 3, "generators": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]]],
     "N": [[0, 0, 1]], "label": "mixed"}

``generators`` are row-major m x m matrices acting on column vectors,
``N`` (optional) lists vectors spanning the base submodule and ``label`` is
free text.  A decomposition file adds ``"parts"``, a list of vector lists,
one per part.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ModecompError, ProperSubmoduleError, ShapeError
from .linalg import check_prime
from .modules import ModulePresentation, Submodule, closure, is_invariant

INSTANCE_FIELDS = ("p", "dim", "generators", "N", "label")
DECOMPOSITION_FIELDS = INSTANCE_FIELDS + ("parts",)


class InstanceFormatError(ModecompError, ValueError):
    """A malformed instance or decomposition document."""


@dataclass(frozen=True)
class LoadedInstance:
    """A parsed document.  ``closed`` is set when N or a part was not
    invariant and had to be replaced by the submodule it generates."""

    module: ModulePresentation
    base: Submodule
    parts: tuple[Submodule, ...] | None = None
    warnings: tuple[str, ...] = ()

    @property
    def closed(self) -> bool:
        return bool(self.warnings)

    @property
    def label(self) -> str:
        return self.module.label

    def __eq__(self, other):
        if not isinstance(other, LoadedInstance):
            return NotImplemented
        return (self.module == other.module and self.label == other.label
                and self.base == other.base and self.parts == other.parts)

    def __hash__(self):
        return hash((self.module, self.base, self.parts))


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(f"{what} must be an integer, got {value!r}")
    return value


def _vectors(raw, p: int, m: int, what: str) -> list[list[int]]:
    if not isinstance(raw, list):
        raise InstanceFormatError(f"{what} must be a list of vectors")
    out = []
    for v in raw:
        if not isinstance(v, list) or len(v) != m:
            raise InstanceFormatError(f"{what}: every vector needs {m} entries, got {v!r}")
        for x in v:
            if not 0 <= _int(x, what) < p:
                raise InstanceFormatError(f"{what}: entry {x} out of range [0, {p})")
        out.append(v)
    return out


def _generated(M: ModulePresentation, raw, what: str, warnings: list[str]) -> Submodule:
    vecs = _vectors(raw, M.p, M.dim, what)
    if vecs and not is_invariant(M, vecs):
        warnings.append(f"{what} is not a submodule; replaced by the submodule it generates")
    return closure(M, vecs)


def parse_document(doc, *, decomposition: bool = False) -> LoadedInstance:
    """Validate a decoded JSON document and build the instance it describes."""
    if not isinstance(doc, dict):
        raise InstanceFormatError("an instance must be a JSON object")
    allowed = DECOMPOSITION_FIELDS if decomposition else INSTANCE_FIELDS
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise InstanceFormatError(f"unknown field(s): {', '.join(unknown)}")
    for key in ("p", "dim", "generators"):
        if key not in doc:
            raise InstanceFormatError(f"missing field {key!r}")
    if decomposition and "parts" not in doc:
        raise InstanceFormatError("missing field 'parts'")

    p = _int(doc["p"], "p")
    try:
        check_prime(p)
    except ShapeError as exc:
        raise InstanceFormatError(str(exc)) from None
    m = _int(doc["dim"], "dim")
    if m < 0:
        raise InstanceFormatError("dim must be non-negative")
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise InstanceFormatError("generators must be a list of matrices")
    mats = []
    for k, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != m:
            raise InstanceFormatError(f"generator {k} must be a square {m}x{m} matrix")
        mats.append(_vectors(g, p, m, f"generator {k}"))
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise InstanceFormatError("label must be a string")
    M = ModulePresentation.from_matrices(p, mats, dim=m, label=label)

    warnings: list[str] = []
    N = _generated(M, doc.get("N", []), "N", warnings)
    if M.dim and N.dim == M.dim:
        raise ProperSubmoduleError()
    parts = None
    if decomposition:
        raw_parts = doc["parts"]
        if not isinstance(raw_parts, list) or not raw_parts:
            raise InstanceFormatError("parts must be a nonempty list of vector lists")
        parts = tuple(_generated(M, q, f"part {i}", warnings) for i, q in enumerate(raw_parts))
    return LoadedInstance(M, N, parts, tuple(warnings))


def to_document(M: ModulePresentation, N: Submodule | None = None, parts=None) -> dict:
    """The canonical document of an instance (and optionally a decomposition)."""
    doc = {
        "p": M.p,
        "dim": M.dim,
        "generators": [g.tolist() for g in M.generators],
    }
    if N is not None and not N.is_zero():
        doc["N"] = [list(v) for v in N.basis]
    if M.label:
        doc["label"] = M.label
    if parts is not None:
        doc["parts"] = [[list(v) for v in q.basis] for q in parts]
    return doc


def dumps(doc: dict) -> str:
    # one field per line keeps matrices readable and the output byte-stable
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def loads(text: str, *, decomposition: bool | None = None) -> LoadedInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from None
    if decomposition is None:
        decomposition = isinstance(doc, dict) and "parts" in doc
    return parse_document(doc, decomposition=decomposition)


def load(path, *, decomposition: bool | None = None) -> LoadedInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, decomposition=decomposition)


def save(path, M: ModulePresentation, N: Submodule | None = None, parts=None) -> None:
    Path(path).write_text(dumps(to_document(M, N, parts)))
