"""Named forms used throughout the test-suite and the CLI.

Forms originally written in letters are stored with variables renamed to
x0.., with the mapping given in each note.  ``golden`` records published
values for the fixture; ``report --verify-paper`` compares against them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .qpoly import Poly, homogeneous_degree, parse_poly


@dataclass(frozen=True)
class Fixture:
    name: str
    nvars: int
    degree: int
    expression: str
    note: str
    golden: dict = field(default_factory=dict)
    singular_points: tuple[tuple[int, ...], ...] = ()

    @property
    def poly(self) -> Poly:
        return parse_poly(self.expression, self.nvars)


def _betti(*triples) -> dict:
    return {(i, j): b for i, j, b in triples}


SMOOTH_QUARTIC_M1 = {"polynomial": [1, 3, 6, 7, 6, 3, 1], "tail_value": 0, "tail_from": None}

FERMAT_BETTI = _betti((0, 0, 1), (1, 2, 3), (1, 4, 2), (2, 3, 2), (2, 5, 3), (3, 7, 1))
CA_BETTI = _betti((0, 0, 1), (1, 2, 2), (1, 3, 1), (2, 4, 1), (2, 5, 2), (3, 7, 1))
CA1_BETTI = _betti((0, 0, 1), (1, 3, 7), (2, 4, 7), (3, 7, 1))
CA2_BETTI = _betti((0, 0, 1), (1, 2, 2), (1, 3, 2), (1, 4, 1), (2, 3, 1), (2, 4, 2), (2, 5, 2), (3, 7, 1))
A1x4_BETTI = _betti((0, 0, 1), (1, 2, 1), (1, 3, 4), (2, 4, 4), (2, 5, 1), (3, 7, 1))


_CATALOG = [
    Fixture(
        "caporali", 3, 4, "x0^4+x1^4+x2^4+(x0+x1+x2)^4",
        "smooth Caporali quartic",
        {"hilbert_A": [1, 3, 4, 3, 1], "milnor_1": SMOOTH_QUARTIC_M1,
         "milnor_2": {"polynomial": [1, 3, 2], "tail_value": 0, "tail_from": None},
         "betti_A": CA_BETTI, "hess_in_jacobian": False},
    ),
    Fixture(
        "caporali1", 3, 4, "x0^4+x1^4+x2^4+(x0^2+x1^2+x2^2)^2",
        "smooth quartic with generic A(f) Hilbert vector",
        {"hilbert_A": [1, 3, 6, 3, 1], "milnor_1": SMOOTH_QUARTIC_M1,
         "milnor_2": {"polynomial": [1, 3], "tail_value": 0, "tail_from": None},
         "betti_A": CA1_BETTI, "hess_in_jacobian": False},
    ),
    Fixture(
        "caporali2", 3, 4, "x0^4+x1^4+x2^4+(x0^2+x1^2)^2",
        "smooth quartic, same Hilbert vector as caporali",
        {"hilbert_A": [1, 3, 4, 3, 1], "milnor_1": SMOOTH_QUARTIC_M1,
         "milnor_2": {"polynomial": [1, 3, 2], "tail_value": 0, "tail_from": None},
         "betti_A": CA2_BETTI, "hess_in_jacobian": False},
    ),
    Fixture(
        "quartic-e6", 3, 4, "x0^3*x1+x2^4",
        "rational quartic with one E6 point at (0:1:0)",
        {"hilbert_A": [1, 3, 3, 3, 1],
         "milnor_1": {"polynomial": [1, 3, 6, 7, 7], "tail_value": 6, "tail_from": 5},
         "milnor_2": {"polynomial": [1, 3, 3], "tail_value": 2, "tail_from": 3},
         "betti_A": FERMAT_BETTI, "hess_in_jacobian": True,
         "ann_2": ["X1^2", "X0*X2", "X1*X2"]},
        singular_points=((0, 1, 0),),
    ),
    Fixture(
        "quartic-3a2", 3, 4, "x0^2*x1^2+x1^2*x2^2+x0^2*x2^2-2*x0*x1*x2*(x0+x1+x2)",
        "tricuspidal quartic (three A2 points)",
        {"hilbert_A": [1, 3, 6, 3, 1],
         "milnor_1": {"polynomial": [1, 3, 6, 7], "tail_value": 6, "tail_from": 4},
         "milnor_2": {"polynomial": [1, 3], "tail_value": 0, "tail_from": None},
         "betti_A": CA1_BETTI, "hess_in_jacobian": True},
        singular_points=((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ),
    Fixture(
        "quartic-2a3", 3, 4, "x0^2*x1^2+x2^4",
        "quartic with two A3 points",
        {"hilbert_A": [1, 3, 4, 3, 1],
         "milnor_1": {"polynomial": [1, 3, 6, 7, 7], "tail_value": 6, "tail_from": 5},
         "milnor_2": {"polynomial": [1, 3, 2], "tail_value": 0, "tail_from": None},
         "betti_A": CA2_BETTI, "hess_in_jacobian": True,
         "ann_2": ["X0*X2", "X1*X2"]},
        singular_points=((1, 0, 0), (0, 1, 0)),
    ),
    Fixture(
        "quartic-4a1", 3, 4, "(x0^2+x1^2)^2+(x1^2+x2^2)^2",
        "two conics meeting in four nodes (nodes not rational)",
        {"hilbert_A": [1, 3, 5, 3, 1],
         "milnor_1": {"polynomial": [1, 3, 6, 7, 6], "tail_value": 4, "tail_from": 5},
         "milnor_2": {"polynomial": [1, 3, 1], "tail_value": 0, "tail_from": None},
         "betti_A": A1x4_BETTI, "hess_in_jacobian": True},
    ),
    Fixture(
        "lines-3x", 3, 4, "(x0^3+x1^3)*x2",
        "four lines, three concurrent",
        {"hilbert_A": [1, 3, 4, 3, 1], "betti_A": CA_BETTI, "ann_2": ["X0*X1", "X2^2"]},
    ),
    Fixture(
        "lines-4", 3, 4, "x0*x1*x2*(x0+x1+x2)",
        "four general lines",
        {"hilbert_A": [1, 3, 6, 3, 1], "betti_A": CA1_BETTI},
        singular_points=((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)),
    ),
    Fixture(
        "gn-quintic", 5, 4, "x0*x3^3+x1*x3^2*x4+x2*x3*x4^2+x4^4",
        "xu^3+yu^2v+zuv^2+v^4 with (x,y,z,u,v) = (x0,x1,x2,x3,x4)",
        {"hess2_zero": True, "hess_12_rank": 5, "polar_2_degenerate": False,
         "mult_u_plus_v_injective": True},
    ),
    Fixture(
        "ikeda", 4, 5, "x0*x2*x3^3+x1*x2^3*x3+x0^2*x1^3",
        "Ikeda surface xuv^3+yu^3v+x^2y^3 with (x,y,u,v) = (x0,x1,x2,x3)",
        {"hess_nonzero": True, "hess2_zero": True, "dim_A2": 10, "polar_2_degenerate": False,
         "slp": False},
    ),
    Fixture(
        "triangle", 3, 3, "x0*x1*x2",
        "coordinate triangle; A(f) = Q/(X0^2,X1^2,X2^2)",
        {"hilbert_A": [1, 3, 3, 1], "slp": True},
        singular_points=((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ),
]

CATALOG: dict[str, Fixture] = {fx.name: fx for fx in _CATALOG}


def fermat(n: int, d: int) -> Fixture:
    """x0^d + ... + xn^d in P^n."""
    nv = n + 1
    expr = "+".join(f"x{i}^{d}" for i in range(nv))
    golden: dict = {"hilbert_A": [1] + [nv] * (d - 1) + [1] if d >= 2 else [1, 1]}
    if (n, d) == (2, 4):
        golden.update({
            "milnor_1": SMOOTH_QUARTIC_M1,
            "milnor_2": {"polynomial": [1, 3, 3, 1], "tail_value": 0, "tail_from": None},
            "betti_A": FERMAT_BETTI,
            "hess_in_jacobian": False,
            "slp": True,
            "ann_2": ["X0*X1", "X0*X2", "X1*X2"],
        })
    return Fixture(f"fermat:{n}:{d}", nv, d, expr, f"Fermat form of degree {d} in P^{n}", golden)


def get_fixture(name: str) -> Fixture:
    if name.startswith("fermat:"):
        try:
            _, n, d = name.split(":")
            n, d = int(n), int(d)
        except ValueError:
            raise KeyError(f"bad fermat fixture {name!r}; use fermat:n:d") from None
        if n < 1 or d < 1:
            raise KeyError(f"bad fermat fixture {name!r}")
        return fermat(n, d)
    if name == "fermat":
        return fermat(2, 4)
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: fermat:n:d, {', '.join(CATALOG)}") from None


def fixture_names() -> list[str]:
    return ["fermat:2:4"] + list(CATALOG)


def validate(fx: Fixture) -> None:
    f = fx.poly
    if homogeneous_degree(f) != fx.degree:
        raise ValueError(f"{fx.name}: degree {homogeneous_degree(f)} != recorded {fx.degree}")
