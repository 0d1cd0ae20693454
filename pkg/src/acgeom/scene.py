"""Plain-text serialization for structures on constant-coefficient frames.

Format (version 1)::

    acgeom-scene 1
    name my-structure
    backend exact
    dim 4
    c 0 0 1 -1/2
    J 0 2 -1
    g 0 0 1
    Gamma 0 1 2 3/4

Lines are whitespace-separated; blank lines and ``#`` comments are
ignored.  ``c i j k v`` sets the frame bracket coefficient c^i_{jk} = v
(the j < k entry suffices; the mirror entry is filled in with the
opposite sign, and explicitly given mirrors must be consistent).
``J i j v`` / ``g i j v`` / ``Gamma i j k v`` set single tensor entries;
``g`` is completed symmetrically.  Values are ``p/q`` rationals or
integers on the exact backend and decimal literals on the float
backend.  ``J`` is required; ``g`` and ``Gamma`` are optional.

Version 1 stores constant-coefficient data only; structures over
coordinate charts are built in code (see the fixture registry) and are
not serializable.
"""
from __future__ import annotations

import numpy as np

from . import backend as bk
from .errors import SceneError
from .frames import ChartFrame, HomogeneousFrame, Structure

FORMAT_NAME = "acgeom-scene"
FORMAT_VERSION = 1

_TENSOR_ARITY = {"c": 3, "J": 2, "g": 2, "Gamma": 3}


def loads(text: str) -> Structure:
    """Parse a scene document into a validated Structure."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    if not lines:
        raise SceneError("empty scene document")
    header = lines[0][1].split()
    if len(header) != 2 or header[0] != FORMAT_NAME:
        raise SceneError(f"line {lines[0][0]}: expected header "
                         f"'{FORMAT_NAME} {FORMAT_VERSION}'")
    try:
        version = int(header[1])
    except ValueError:
        raise SceneError(f"line {lines[0][0]}: malformed version {header[1]!r}")
    if version != FORMAT_VERSION:
        raise SceneError(f"unsupported scene format version {version}")

    name = ""
    backend = bk.EXACT
    dim = None
    entries: dict[str, dict[tuple, object]] = {k: {} for k in _TENSOR_ARITY}

    for lineno, line in lines[1:]:
        parts = line.split()
        key, rest = parts[0], parts[1:]
        if key == "name":
            name = " ".join(rest)
        elif key == "backend":
            if len(rest) != 1 or rest[0] not in (bk.EXACT, bk.FLOAT):
                raise SceneError(f"line {lineno}: backend must be "
                                 f"'{bk.EXACT}' or '{bk.FLOAT}'")
            backend = rest[0]
        elif key == "dim":
            try:
                dim = int(rest[0]) if len(rest) == 1 else None
            except ValueError:
                dim = None
            if dim is None or dim < 1:
                raise SceneError(f"line {lineno}: malformed dimension")
        elif key in _TENSOR_ARITY:
            if dim is None:
                raise SceneError(f"line {lineno}: 'dim' must precede tensor entries")
            arity = _TENSOR_ARITY[key]
            if len(rest) != arity + 1:
                raise SceneError(f"line {lineno}: '{key}' takes {arity} indices "
                                 "and one value")
            try:
                idx = tuple(int(p) for p in rest[:arity])
            except ValueError:
                raise SceneError(f"line {lineno}: malformed index")
            if not all(0 <= i < dim for i in idx):
                raise SceneError(f"line {lineno}: index out of range for dim {dim}")
            try:
                if backend == bk.EXACT:
                    value = bk.parse_scalar(rest[arity])
                else:
                    value = float(rest[arity])
            except Exception:
                raise SceneError(f"line {lineno}: malformed value {rest[arity]!r}")
            _set_entry(entries[key], key, idx, value, lineno)
        else:
            raise SceneError(f"line {lineno}: unknown directive {key!r}")

    if dim is None:
        raise SceneError("scene document lacks a 'dim' line")
    if not entries["J"]:
        raise SceneError("scene document lacks 'J' entries")

    def tensor(key: str, arity: int):
        if not entries[key] and key != "c":
            return None
        a = bk.zeros((dim,) * arity, backend)
        for idx, v in entries[key].items():
            a[idx] = v
        return a

    c = tensor("c", 3)
    J = tensor("J", 2)
    g = tensor("g", 2)
    Gamma = tensor("Gamma", 3)
    frame = HomogeneousFrame(c, backend=backend)
    struct = Structure(frame=frame, J=J, g=g, Gamma=Gamma, name=name)
    struct.validate()
    return struct


def _set_entry(store, key, idx, value, lineno):
    """Record one entry, completing bracket antisymmetry / metric symmetry
    and rejecting inconsistent duplicates."""
    mirrors = [(idx, value)]
    if key == "c":
        i, j, k = idx
        if j == k:
            if value != 0:
                raise SceneError(f"line {lineno}: c {i} {j} {k} must vanish "
                                 "on a repeated lower pair")
            return
        mirrors.append(((i, k, j), -value))
    elif key == "g":
        i, j = idx
        if i != j:
            mirrors.append(((j, i), value))
    for where, v in mirrors:
        if where in store and store[where] != v:
            raise SceneError(f"line {lineno}: conflicting value for "
                             f"{key} entry {where}")
        store[where] = v


def load(path: str) -> Structure:
    """Read and parse a scene file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SceneError(f"cannot read scene file: {exc}")
    return loads(text)


def dumps(struct: Structure) -> str:
    """Render a structure as a scene document (deterministic ordering)."""
    frame = struct.frame
    if isinstance(frame, ChartFrame):
        raise SceneError("structures over coordinate charts are not "
                         "serializable in scene format 1")
    n = frame.n
    out = [f"{FORMAT_NAME} {FORMAT_VERSION}"]
    if struct.name:
        out.append(f"name {struct.name}")
    out.append(f"backend {frame.backend}")
    out.append(f"dim {n}")
    c = frame.structure_constants()
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                if c[i, j, k] != 0:
                    out.append(f"c {i} {j} {k} {bk.format_scalar(c[i, j, k])}")
    for key, value, sym in (("J", struct.J, False), ("g", struct.g, True),
                            ("Gamma", struct.Gamma, False)):
        if value is None:
            continue
        a = frame.value(value)
        for idx in np.ndindex(a.shape):
            if sym and idx[0] > idx[1]:
                continue
            if a[idx] != 0:
                ix = " ".join(str(i) for i in idx)
                out.append(f"{key} {ix} {bk.format_scalar(a[idx])}")
    return "\n".join(out) + "\n"


def save(struct: Structure, path: str) -> None:
    """Write a structure to a scene file."""
    text = dumps(struct)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
