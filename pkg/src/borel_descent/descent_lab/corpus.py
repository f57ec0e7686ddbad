"""The bundled extension corpus and its JSON format.

An extension lists rings A and B by presentation, the structure map f and
the action of a cyclic generator by generator images. An image is either a
coordinate list or a string such as ``"f0.x+f1.x"`` or ``"2*x"`` built from
generator names of the target ring and integers.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from .rings import DescentError, FiniteGroup, FRing, GroupAction, RingMap, map_from_images, ring_from_json


@dataclass
class Extension:
    name: str
    f: RingMap
    act: GroupAction
    expect_galois: Optional[bool] = None

    @property
    def A(self) -> FRing:
        return self.f.source

    @property
    def B(self) -> FRing:
        return self.f.target


def parse_element(R: FRing, spec) -> np.ndarray:
    if isinstance(spec, (list, tuple)):
        if len(spec) != R.n:
            raise DescentError(f"element {spec} has {len(spec)} coordinates, ring {R.name} needs {R.n}")
        return R.reduce(np.array(spec, dtype=np.int64))
    if not isinstance(spec, str):
        raise DescentError(f"cannot read element {spec!r}")
    total = R.zero()
    for term in spec.replace(" ", "").split("+"):
        if not term:
            raise DescentError(f"empty term in {spec!r}")
        val = R.one.copy()
        for factor in term.split("*"):
            if re.fullmatch(r"-?\d+", factor):
                val = R.reduce(int(factor) * val)
            elif factor in R.gens:
                val = R.mul(val, R.gens[factor])
            else:
                raise DescentError(f"unknown generator {factor!r} in {spec!r}; ring has {sorted(R.gens)}")
        total = R.add(total, val)
    return total


def _check_keys(name: str, field: str, images: dict, R: FRing) -> None:
    for g in images:
        if g not in R.gens:
            raise DescentError(f"{name}: field {field!r} names unknown generator {g!r}; ring has {sorted(R.gens)}")


def extension_from_json(d: dict) -> Extension:
    try:
        name = d["name"]
        A = ring_from_json(d["A"])
        B = ring_from_json(d["B"])
        _check_keys(name, "f", d.get("f", {}), A)
        _check_keys(name, "action", d["action"], B)
        f = map_from_images(A, B, {g: parse_element(B, v) for g, v in d.get("f", {}).items()}, name=f"{name}: f")
        grp = d["group"]
        if "cyclic" not in grp:
            raise DescentError(f"{name}: only cyclic groups are supported in the corpus format")
        n = int(grp["cyclic"])
        images = {g: parse_element(B, v) for g, v in d["action"].items()}
        act = GroupAction.cyclic_from_generator(B, n, images, f)
    except KeyError as exc:
        raise DescentError(f"extension entry is missing field {exc}") from exc
    return Extension(name, f, act, d.get("expect_galois"))


def load_corpus(source: Union[None, str, Path, dict] = None) -> List[Extension]:
    """Load extensions from a path, a JSON string, a dict, or the bundled corpus."""
    if source is None:
        data = json.loads(resources.files(__package__).joinpath("corpus.json").read_text())
    elif isinstance(source, dict):
        data = source
    else:
        p = Path(source)
        try:
            text = p.read_text() if p.exists() else str(source)
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescentError(f"corpus JSON error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if "extensions" not in data:
        raise DescentError("corpus needs an 'extensions' list")
    return [extension_from_json(e) for e in data["extensions"]]


def by_name(name: str, corpus: Optional[List[Extension]] = None) -> Extension:
    for e in corpus or load_corpus():
        if e.name == name:
            return e
    raise KeyError(name)
