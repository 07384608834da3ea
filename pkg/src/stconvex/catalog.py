"""Turn parsed spec trees into series objects.

Function constructors (normalized ``f`` or ``g``)::

    identity([n])                 z
    koebe(alpha)                  z/(1-z)^(2(1-alpha))
    poly(c1, c2, ... [, n=k])     c1 z + c2 z^2 + ...   (c1 must be 1)
    zexp(b)                       z exp(b z), starlike only for |b| <= 1
    starlike(alpha[, seed][, atoms][, n])   random Herglotz starlike function
    synth(g=..., mu=..., w=...[, direction=forward|reciprocal])

``w`` constructors::

    cmono(c, m)  cmobius(c, m, a)  cexp(c, m)  wpoly(c1, c2, ...)

``n`` declares the class index. It defaults to 1 for ``identity`` and
``starlike``; ``poly`` infers it from the coefficient gap when omitted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecInvalid
from .families import (
    WKind,
    WSpec,
    koebe_alpha,
    random_atoms,
    random_starlike,
    realize_w,
    synth_from_w,
)
from .functionals import Direction
from .series import DEFAULT_ORDER, AnalyticSeries, NormalizedFunction, from_coeffs, normalized
from .specparse import SpecNode, parse_spec


@dataclass(frozen=True)
class BuildContext:
    order: int = DEFAULT_ORDER
    seed: int = 0


def _bind(node: SpecNode, names: list[str], required: int, variadic: bool = False,
          keywords: tuple[str, ...] = ()) -> tuple[dict, list]:
    values: dict = {}
    extra: list = []
    for i, a in enumerate(node.args):
        if a.key is None:
            if values and any(x.key for x in node.args[:i]):
                raise SpecInvalid(f"{node.name}: positional argument after keyword")
            if i < len(names):
                values[names[i]] = a.value
            elif variadic:
                extra.append(a.value)
            else:
                raise SpecInvalid(f"{node.name}: too many arguments")
        else:
            if a.key not in names and a.key not in keywords:
                raise SpecInvalid(f"{node.name}: unknown argument {a.key!r}")
            if a.key in values:
                raise SpecInvalid(f"{node.name}: argument {a.key!r} given twice")
            values[a.key] = a.value
    missing = [k for k in names[:required] if k not in values]
    if missing:
        raise SpecInvalid(f"{node.name}: missing argument(s) {', '.join(missing)}")
    return values, extra


def _real(node, key, v) -> float:
    if isinstance(v, SpecNode) or isinstance(v, complex) and v.imag != 0:
        raise SpecInvalid(f"{node.name}: {key} must be a real number")
    return float(v.real if isinstance(v, complex) else v)


def _int(node, key, v) -> int:
    if not isinstance(v, int):
        raise SpecInvalid(f"{node.name}: {key} must be an integer")
    return v


def _num(node, key, v) -> complex:
    if isinstance(v, SpecNode):
        raise SpecInvalid(f"{node.name}: {key} must be a number")
    return complex(v)


def _node(node, key, v) -> SpecNode:
    if not isinstance(v, SpecNode):
        raise SpecInvalid(f"{node.name}: {key} must be a function spec")
    return v


def build_w_spec(node: SpecNode) -> WSpec:
    name = node.name
    if name in ("cmono", "cexp"):
        vals, _ = _bind(node, ["c", "m"], 2)
        kind = WKind.SCALED_MONOMIAL if name == "cmono" else WKind.EXP_MONOMIAL
        return WSpec(kind, c=_num(node, "c", vals["c"]), m=_int(node, "m", vals["m"]))
    if name == "cmobius":
        vals, _ = _bind(node, ["c", "m", "a"], 3)
        return WSpec(WKind.MOBIUS_MONOMIAL, c=_num(node, "c", vals["c"]),
                     m=_int(node, "m", vals["m"]), a=_num(node, "a", vals["a"]))
    if name == "wpoly":
        _, extra = _bind(node, [], 0, variadic=True)
        if not extra:
            raise SpecInvalid("wpoly needs at least one coefficient")
        coeffs = (0j,) + tuple(_num(node, "coefficient", v) for v in extra)
        return WSpec(WKind.POLY, coeffs=coeffs)
    raise SpecInvalid(f"unknown w constructor {name!r}")


def build_w(node: SpecNode | str, ctx: BuildContext = BuildContext()) -> AnalyticSeries:
    if isinstance(node, str):
        node = parse_spec(node)
    return realize_w(build_w_spec(node), 1, ctx.order)


def build_function(node: SpecNode | str, ctx: BuildContext = BuildContext()) -> NormalizedFunction:
    if isinstance(node, str):
        node = parse_spec(node)
    name = node.name
    if name == "identity":
        vals, _ = _bind(node, ["n"], 0)
        n = _int(node, "n", vals["n"]) if "n" in vals else 1
        if not 1 <= n <= ctx.order:
            raise SpecInvalid(f"identity: index must lie in 1..{ctx.order}")
        return normalized(from_coeffs([0.0, 1.0], order=ctx.order), n)
    if name == "koebe":
        vals, _ = _bind(node, ["alpha"], 1)
        try:
            return koebe_alpha(_real(node, "alpha", vals["alpha"]), ctx.order)
        except ValueError as exc:
            raise SpecInvalid(f"koebe: {exc}") from exc
    if name == "poly":
        vals, extra = _bind(node, [], 0, variadic=True, keywords=("n",))
        if not extra:
            raise SpecInvalid("poly needs coefficients starting at z^1")
        if len(extra) > ctx.order:
            raise SpecInvalid("poly degree exceeds the truncation order")
        coeffs = [0.0] + [_num(node, "coefficient", v) for v in extra]
        n = _int(node, "n", vals["n"]) if "n" in vals else None
        try:
            return normalized(from_coeffs(coeffs, order=ctx.order), n)
        except ValueError as exc:
            raise SpecInvalid(f"poly: {exc}") from exc
    if name == "zexp":
        vals, _ = _bind(node, ["b"], 1)
        b = _num(node, "b", vals["b"])
        steps = np.cumprod(b / np.arange(1, ctx.order))
        coeffs = np.concatenate([[0.0, 1.0], steps])  # b^k / k!
        return normalized(from_coeffs(coeffs, order=ctx.order), 1)
    if name == "starlike":
        vals, _ = _bind(node, ["alpha", "seed", "atoms", "n"], 1)
        alpha = _real(node, "alpha", vals["alpha"])
        seed = _int(node, "seed", vals["seed"]) if "seed" in vals else ctx.seed
        count = _int(node, "atoms", vals["atoms"]) if "atoms" in vals else None
        n = _int(node, "n", vals["n"]) if "n" in vals else 1
        try:
            atoms = random_atoms(np.random.default_rng(seed), count)
            return random_starlike(alpha, atoms, ctx.order, n)
        except ValueError as exc:
            raise SpecInvalid(f"starlike: {exc}") from exc
    if name == "synth":
        vals, _ = _bind(node, ["g", "mu", "w", "direction"], 3)
        g = build_function(_node(node, "g", vals["g"]), ctx)
        mu = _real(node, "mu", vals["mu"])
        w = build_w(_node(node, "w", vals["w"]), ctx)
        direction = Direction.FORWARD
        if "direction" in vals:
            d = _node(node, "direction", vals["direction"])
            try:
                direction = Direction(d.name)
            except ValueError:
                raise SpecInvalid("direction must be forward or reciprocal") from None
        try:
            return synth_from_w(g, mu, w, direction)
        except ValueError as exc:
            raise SpecInvalid(f"synth: {exc}") from exc
    raise SpecInvalid(f"unknown function constructor {name!r}")
