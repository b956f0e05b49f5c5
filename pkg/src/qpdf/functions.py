"""Named example functions and JSON reading/writing of functions.

Builtins, selected by a short string:

``const1``
    The constant 1.
``cosine``
    ``phi(n) = cos n`` on a window of Z.
``lemma-exp2[:a=<elem>,J=<unit>]``
    1 at 0, ``+-J/2`` at ``+-a``, 0 elsewhere.  Needs ``a != -a``; it is
    positive definite but leaves the slice of i1, so on groups of exponent
    > 2 the quaternionic dual is larger than the classical one.
``char:k=<index>,axis=<unit>`` or ``char:theta=<angle>,axis=<unit>``
    A single character.

Group elements with several coordinates are written ``1/0``; units as
``i1``, ``-i3`` or a slash-separated 3-vector ``0/1/1``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .characters import QCharacter
from .errors import WrongExponent
from .group import FiniteGroup, GroupSpec, ZWindow, group_from_json, parse_group
from .pdf import QFunction
from .quat import I1, I2, I3, ImaginaryUnit, axes_close

_NAMED_UNITS = {"i1": I1, "i2": I2, "i3": I3}


def parse_unit(text: str) -> ImaginaryUnit:
    t = text.strip().lower()
    sign = -1.0 if t.startswith("-") else 1.0
    t = t.lstrip("+-")
    if t in _NAMED_UNITS:
        u = _NAMED_UNITS[t]
    else:
        parts = [float(x) for x in t.split("/")]
        if len(parts) not in (3, 4):
            raise ValueError(f"cannot read {text!r} as an imaginary unit")
        u = ImaginaryUnit.of(parts)
    return -u if sign < 0 else u


def parse_element(group: GroupSpec, text: str) -> tuple:
    return group.element(tuple(int(x) for x in text.strip().split("/")))


def _options(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part!r}")
        out[key.strip()] = value.strip()
    return out


def const1(group: GroupSpec) -> QFunction:
    return QFunction.constant(group, 1.0)


def cosine(group: GroupSpec) -> QFunction:
    if not isinstance(group, ZWindow):
        raise ValueError("cosine (phi(n) = cos n) is defined on a window of Z only")
    vals = np.zeros((group.size, 4))
    vals[:, 0] = np.cos(group.coords[:, 0])
    return QFunction(group, vals)


def default_lemma_element(group: GroupSpec) -> tuple:
    """First element (canonical order) with ``a != -a``."""
    if isinstance(group, ZWindow):
        return (1,)
    for g in group.elements():
        if group.neg(g) != g:
            return g
    raise WrongExponent(f"{group} has exponent <= 2; every element is its own inverse")


def lemma_exp2(group: GroupSpec, a=None, J=I2) -> QFunction:
    """1 at 0, ``J/2`` at ``a``, ``-J/2`` at ``-a``, 0 elsewhere."""
    a = default_lemma_element(group) if a is None else group.element(a)
    J = ImaginaryUnit.of(J)
    if group.neg(a) == a:
        raise WrongExponent(f"{a} equals its own inverse in {group}")
    if axes_close(J, I1) or axes_close(-J, I1):
        raise ValueError("J must differ from +-i1, the slice of the classical dual")
    vals = np.zeros((group.size, 4))
    vals[group.index(group.identity), 0] = 1.0
    vals[group.index(a)] = 0.5 * J.to_array()
    vals[group.index(group.neg(a))] = -0.5 * J.to_array()
    return QFunction(group, vals)


def parse_character(group: GroupSpec, text: str) -> QCharacter:
    opts = _options(text)
    axis = parse_unit(opts.get("axis", "i1"))
    if "theta" in opts:
        if isinstance(group, FiniteGroup):
            raise ValueError("theta= is for windows of Z; use k= on a finite group")
        return QCharacter(group, float(opts["theta"]), axis)
    if "k" not in opts:
        raise ValueError(f"character {text!r} needs k= or theta=")
    if isinstance(group, ZWindow):
        raise ValueError("k= is for finite groups; use theta= on a window of Z")
    return QCharacter(group, parse_element(group, opts["k"]), axis)


def load_function(group: GroupSpec | None, path) -> QFunction:
    """Read ``{"group": <group>, "values": [[<element>, [a0..a3]], ...]}``.

    Elements not listed are 0.  ``group`` overrides a missing ``"group"``
    key and must agree with it otherwise.
    """
    obj = json.loads(Path(path).read_text())
    file_group = obj.get("group")
    if file_group is not None:
        file_group = parse_group(file_group) if isinstance(file_group, str) else group_from_json(file_group)
        if group is not None and file_group != group:
            raise ValueError(f"{path} is a function on {file_group}, not {group}")
        group = file_group
    if group is None:
        raise ValueError(f"{path} names no group and none was given")
    mapping = {}
    for elem, q in obj["values"]:
        mapping[group.element(elem)] = np.asarray(q, dtype=float)
    return QFunction.from_mapping(group, mapping)


def function_to_json(phi: QFunction) -> dict:
    return {"group": str(phi.group), "values": [[list(g), row.tolist()] for g, row in zip(phi.group.elements(), phi.values)]}


def resolve_function(text: str, group: GroupSpec | None) -> QFunction:
    """Turn a ``--fn`` string into a function."""
    name, _, rest = text.partition(":")
    if name == "file":
        return load_function(group, rest)
    if group is None:
        raise ValueError(f"builtin {name!r} needs a group")
    if name == "const1":
        return const1(group)
    if name == "cosine":
        return cosine(group)
    if name == "lemma-exp2":
        opts = _options(rest)
        a = parse_element(group, opts["a"]) if "a" in opts else None
        J = parse_unit(opts.get("J", "i2"))
        return lemma_exp2(group, a, J)
    if name == "char":
        return parse_character(group, rest).as_function()
    raise ValueError(f"unknown function {text!r}; expected const1, cosine, lemma-exp2, char:... or file:...")


def format_quaternion(q, digits: int = 6) -> str:
    a = [round(float(x), digits) + 0.0 for x in q]
    return f"{a[0]:+.{digits}g} {a[1]:+.{digits}g}i1 {a[2]:+.{digits}g}i2 {a[3]:+.{digits}g}i3"

