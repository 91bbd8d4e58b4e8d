"""Named scenarios and JSON round-tripping of structure recipes.

A scenario pairs a structure with a default grid and time function.  Names
take comma separated arguments after a colon, e.g. ``flat:3,2`` or
``torus:2,1,4``.
"""
from dataclasses import dataclass, field
from typing import Callable

from . import nulldist
from . import spacetime as st
from .lattice import GridSpec


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    build: Callable = field(repr=False)
    grid: Callable = field(repr=False)
    time: Callable = field(repr=False)
    arity: tuple = (0, 0)
    usage: str = ""
    expect_invalid: bool = False


def _flat_grid(n, nu):
    return GridSpec([(-2.0, 2.0)] * int(n), 0.25, r=2)


def _int_args(args):
    return [int(a) for a in args]


SCENARIOS = {
    "flat": Scenario(
        "flat", "flat R^(n-nu, nu) with the standard frame",
        lambda n, nu: st.flat(int(n), int(nu)), _flat_grid,
        lambda n, nu: nulldist.canonical_T(int(nu)), (2, 2), "flat:n,nu"),
    "minkowski": Scenario(
        "minkowski", "Lorentzian product R x R^m",
        lambda m: st.flat(int(m) + 1, 1), lambda m: _flat_grid(int(m) + 1, 1),
        lambda m: nulldist.product_t(), (1, 1), "minkowski:m"),
    "punctured": Scenario(
        "punctured", "R x (R^m minus the origin)",
        lambda m: st.punctured_product(int(m)), lambda m: _flat_grid(int(m) + 1, 1),
        lambda m: nulldist.product_t(), (1, 1), "punctured:m"),
    "notgh_base": Scenario(
        "notgh_base", "two-dimensional Minkowski space minus the causal future of the origin",
        st.minkowski_minus_future_cone, lambda: _flat_grid(2, 1),
        lambda: nulldist.canonical_T(1), (0, 0), "notgh_base"),
    "notgh": Scenario(
        "notgh", "negative extension of notgh_base; globally hyperbolic base, non-GH product",
        lambda: st.extend_negative(st.minkowski_minus_future_cone(), 0.0),
        lambda: GridSpec([(-2.0, 2.0), (-1.0, 1.0), (-2.0, 1.0)], 0.25, r=2),
        lambda: nulldist.canonical_T(2), (0, 0), "notgh"),
    "perturbed": Scenario(
        "perturbed", "extend_negative(flat(2,1), eps) with the perturbed frame",
        lambda eps: st.extend_negative(st.flat(2, 1), float(eps)),
        lambda eps: _flat_grid(3, 2), lambda eps: nulldist.product_t(), (1, 1), "perturbed:eps"),
    "conformal": Scenario(
        "conformal", "flat(n,nu) rescaled by (1 + sin(p^1)/2)^2",
        lambda n, nu: st.conformal(st.flat(int(n), int(nu))), _flat_grid,
        lambda n, nu: nulldist.canonical_T(int(nu)), (2, 2), "conformal:n,nu"),
    "torus": Scenario(
        "torus", "flat(n,nu) with every axis identified with period L",
        lambda n, nu, L: st.flat(int(n), int(nu)),
        lambda n, nu, L: GridSpec([(0.0, float(L))] * int(n), 1.0, periodic=(True,) * int(n), r=1),
        lambda n, nu, L: nulldist.canonical_T(int(nu)), (3, 3), "torus:n,nu,L"),
}


def parse_name(spec):
    """Split ``name:a,b`` into ``("name", ["a", "b"])``."""
    name, _, rest = spec.partition(":")
    args = [a.strip() for a in rest.split(",")] if rest else []
    if any(a == "" for a in args):
        raise ValueError(f"malformed scenario arguments in {spec!r}")
    return name.strip(), args


def get(spec):
    """Resolve a scenario string into ``(scenario, args)``."""
    name, args = parse_name(spec)
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario {name!r}; available: {', '.join(sorted(SCENARIOS))}")
    sc = SCENARIOS[name]
    lo, hi = sc.arity
    if not lo <= len(args) <= hi:
        raise ValueError(f"scenario {name!r} expects arguments as {sc.usage!r}")
    return sc, args


def build(spec):
    """Return ``(structure, default_grid, default_time)`` for a scenario string."""
    sc, args = get(spec)
    return sc.build(*args), sc.grid(*args), sc.time(*args)


def listing():
    return [{"name": sc.name, "usage": sc.usage, "description": sc.description,
             "expect_invalid": sc.expect_invalid} for sc in SCENARIOS.values()]


# -- recipes ----------------------------------------------------------------

def structure_from_recipe(recipe):
    """Rebuild a structure from its JSON recipe (``kind`` tag plus parameters)."""
    kind = recipe.get("kind")
    if kind == "flat":
        return st.flat(recipe["n"], recipe["nu"])
    if kind == "notgh_base":
        return st.minkowski_minus_future_cone()
    if kind == "punctured":
        return st.punctured_product(recipe["m"])
    if kind == "extend_negative":
        return st.extend_negative(structure_from_recipe(recipe["base"]), recipe.get("eps", 0.0))
    if kind == "extend_positive":
        return st.extend_positive(structure_from_recipe(recipe["base"]))
    if kind == "conformal":
        if recipe.get("omega") != "half_sine":
            raise ValueError(f"unknown conformal factor {recipe.get('omega')!r}")
        return st.conformal(structure_from_recipe(recipe["base"]))
    raise ValueError(f"structure kind {kind!r} cannot be rebuilt from JSON")


def recipe_of(s):
    if s.recipe is None:
        raise ValueError("structure was built from callables and has no JSON recipe")
    return s.recipe
