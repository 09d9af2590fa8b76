"""Random expression and program generators for property tests.

``typed_expr`` builds an expression of a requested sort that the checker
accepts by construction; ``any_expr`` builds expressions with no regard for
sorts, about half of which the checker rejects.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .lang.nodes import Binary, Check, FamilyDecl, Group, Let, Mix, Name, Neg, Number, Pow, Program, ScaleDecl, SNum, depth
from .lang.printer import print_program
from .scales import Kind, Registry
from .sorts import SCALAR, Point, Power, Scalar, Sort, power_sort

MAX_DEPTH = 5
MAX_K = 3

# (family, kind, [(scale, offset, factor), ...]); first scale is the reference alias.
FAMILIES = [
    ("temperature", "affine", [("C", None, None), ("F", Fraction(-160, 9), Fraction(5, 9)),
                               ("K", Fraction(-27315, 100), Fraction(1))]),
    ("time", "affine", [("s", None, None), ("h", Fraction(3600), Fraction(3600))]),
    ("mass", "linear", [("kg", None, None), ("lb", Fraction(0), Fraction(45359237, 100000000))]),
]


def declarations() -> List:
    out = []
    for fam, kind, scales in FAMILIES:
        out.append(FamilyDecl(fam, kind))
        for name, p, q in scales:
            if p is None:
                out.append(ScaleDecl(name, fam))
            else:
                out.append(ScaleDecl(name, fam, _snum(p), _snum(q)))
    return out


def _snum(f: Fraction) -> SNum:
    return SNum(float(f.numerator), None if f.denominator == 1 else float(f.denominator))


def registry() -> Registry:
    reg = Registry()
    for fam, kind, scales in FAMILIES:
        reg.register_family(fam, kind)
        for name, p, q in scales:
            reg.register_scale(name, fam, 0 if p is None else float(p), 1 if q is None else float(q))
    return reg


class Generator:
    def __init__(self, seed=0):
        self.rng = random.Random(seed)

    # leaves

    def _scales(self, family: str) -> List[str]:
        for fam, _, scales in FAMILIES:
            if fam == family:
                return [s[0] for s in scales]
        raise KeyError(family)

    def _value(self, lo: float, hi: float) -> float:
        # a few significant digits keep printed literals short
        return round(self.rng.uniform(lo, hi), 3)

    def scalar_leaf(self) -> Number:
        v = self._value(0.5, 5.0)
        return Number(v if self.rng.random() < 0.8 else -v)

    def diff_leaf(self, family: str) -> Number:
        v = self._value(0.5, 20.0)
        return Number(v if self.rng.random() < 0.7 else -v, "d@", self.rng.choice(self._scales(family)))

    def point_leaf(self, family: str) -> Number:
        return Number(self._value(-100.0, 100.0), "@", self.rng.choice(self._scales(family)))

    def family(self, kinds=("affine", "linear")) -> str:
        return self.rng.choice([f for f, k, _ in FAMILIES if k in kinds])

    def sort(self) -> Sort:
        r = self.rng.random()
        if r < 0.3:
            return SCALAR
        if r < 0.6:
            return Point(self.family(("affine",)))
        k = self.rng.choice([1, 1, 1, 2, -1, 2, 3, -2])
        return Power(self.family(), k)

    # well-sorted expressions

    def typed_expr(self, sort: Optional[Sort] = None, budget: int = MAX_DEPTH) -> object:
        """An expression of ``sort`` of depth at most ``budget``."""
        sort = sort or self.sort()
        while True:
            e = self._typed(sort, budget)
            if 1 <= depth(e) <= budget or budget == 0:
                return e

    def _wrap(self, e):
        return Group(e) if isinstance(e, (Binary, Neg)) and self.rng.random() < 0.3 else e

    def _typed(self, sort: Sort, budget: int):
        rng = self.rng
        leaf_p = 0.25 if budget > 1 else 1.0
        if isinstance(sort, Point):
            f = sort.family
            if budget == 0 or rng.random() < leaf_p:
                return self.point_leaf(f)
            b = budget - 1
            choice = rng.randrange(4)
            if choice == 0:
                return Binary("+", self._typed(sort, b), self._typed(Power(f, 1), b))
            if choice == 1:
                return Binary("-", self._typed(sort, b), self._typed(Power(f, 1), b))
            if choice == 2:
                return Binary("+", self._typed(Power(f, 1), b), self._typed(sort, b))
            return Mix(tuple((w, self._typed(sort, b)) for w in self.weights()))
        if isinstance(sort, Scalar):
            if budget == 0 or rng.random() < leaf_p:
                return self.scalar_leaf()
            b = budget - 1
            choice = rng.randrange(6)
            if choice == 0:
                return Binary(rng.choice("+-*"), self._typed(SCALAR, b), self._typed(SCALAR, b))
            if choice == 1:
                return Binary("/", self._typed(SCALAR, b), self._typed(SCALAR, b))
            if choice == 2:
                f, k = self.family(), rng.choice([1, 1, 2, -1])
                return Binary("/", self._typed(Power(f, k), b), self._typed(Power(f, k), b))
            if choice == 3:
                f = self.family(("affine",))
                return Binary("/", self._wrap(Binary("-", self._typed(Point(f), b - 1), self._typed(Point(f), b - 1))),
                              self._typed(Power(f, 1), b)) if b >= 1 else self.scalar_leaf()
            if choice == 4:
                return Neg(self._typed(SCALAR, b))
            return Pow(self._typed(SCALAR, b), rng.choice([-1, 2, 2, 3]))
        f, k = sort.family, sort.k
        affine = any(n == f and kk == "affine" for n, kk, _ in FAMILIES)
        if budget == 0:
            if k == 1:
                return self.diff_leaf(f)
            return Pow(self.diff_leaf(f), k)
        if k == 1 and rng.random() < leaf_p:
            return self.diff_leaf(f)
        b = budget - 1
        options = ["addsub", "scale", "mul", "div", "neg"]
        if k == 1 and affine:
            options += ["pp", "pp"]
        if k != 1:
            options += ["pow"]
        choice = rng.choice(options)
        if choice == "addsub":
            return Binary(rng.choice("+-"), self._typed(sort, b), self._typed(sort, b))
        if choice == "scale":
            if rng.random() < 0.5:
                return Binary("*", self._typed(SCALAR, b), self._typed(sort, b))
            return Binary(rng.choice("*/"), self._typed(sort, b), self._typed(SCALAR, b))
        if choice == "mul":
            a = rng.choice([j for j in range(-MAX_K, MAX_K + 1) if j != 0 and abs(k - j) <= MAX_K])
            return Binary("*", self._typed(power_sort(f, a), b), self._typed(power_sort(f, k - a), b))
        if choice == "div":
            a = rng.choice([j for j in range(-MAX_K, MAX_K + 1) if j != 0 and abs(j - k) <= MAX_K])
            return Binary("/", self._typed(power_sort(f, a), b), self._typed(power_sort(f, a - k), b))
        if choice == "neg":
            return Neg(self._typed(sort, b))
        if choice == "pp":
            return Binary("-", self._typed(Point(f), b), self._typed(Point(f), b))
        # pow: k = j * n
        pairs = [(j, k // j) for j in range(-MAX_K, MAX_K + 1) if j != 0 and k % j == 0]
        j, n = rng.choice(pairs)
        return Pow(self._typed(Power(f, j), b), n)

    def weights(self) -> List[SNum]:
        n = self.rng.choice([1, 2, 2, 3])
        while True:
            ws = [Fraction(self.rng.choice([-2, -1, 1, 2, 3, 4]), self.rng.choice([2, 3, 4, 5]))
                  for _ in range(n - 1)]
            ws.append(1 - sum(ws, Fraction(0)))
            # a zero weight would silently drop a term
            if all(ws):
                break
        out = []
        for w in ws:
            num = float(w.numerator)
            out.append(SNum(num, None if w.denominator == 1 else float(w.denominator)))
        return out

    # sort-agnostic expressions

    def any_leaf(self):
        r = self.rng.random()
        if r < 0.3:
            return self.scalar_leaf()
        if r < 0.65:
            return self.point_leaf(self.family(("affine",)))
        return self.diff_leaf(self.family())

    def any_expr(self, budget: int = MAX_DEPTH):
        rng = self.rng
        if budget == 0 or rng.random() < 0.25:
            return self.any_leaf()
        b = budget - 1
        r = rng.random()
        if r < 0.75:
            return Binary(rng.choice("+-*/"), self.any_expr(b), self.any_expr(b))
        if r < 0.85:
            return Neg(self.any_expr(b))
        if r < 0.93:
            return Pow(self.any_expr(b), rng.choice([-1, 2, 3]))
        return Mix(tuple((w, self.any_expr(b)) for w in self.weights()))

    # programs

    def program(self, n_lets: int = 3, n_checks: int = 3, typed_share: float = 0.5) -> Program:
        """Declarations, a few lets (possibly referenced later), and checks."""
        stmts = list(declarations())
        names: List[Tuple[str, Sort]] = []
        for i in range(n_lets):
            name = f"v{i}"
            if self.rng.random() < typed_share:
                sort = self.sort()
                e = self.typed_expr(sort, 3)
                if names and self.rng.random() < 0.5:
                    e = self._splice(e, names, sort)
            else:
                e = self.any_expr(3)
                sort = None
            stmts.append(Let(name, e))
            if sort is not None:
                names.append((name, sort))
        for _ in range(n_checks):
            if self.rng.random() < typed_share:
                sort = self.sort()
                e = self._splice(self.typed_expr(sort, 4), names, sort)
            elif names and self.rng.random() < 0.5:
                e = Binary(self.rng.choice("+-*/"), Name(self.rng.choice(names)[0]), self.any_expr(2))
            else:
                e = self.any_expr(4)
            stmts.append(Check(e))
        return Program(tuple(stmts), "")

    def _splice(self, e, names, sort):
        """Replace the whole expression by a reference when a binding of the same sort exists."""
        same = [n for n, s in names if s == sort]
        if not same or self.rng.random() < 0.5:
            return e
        ref = Name(self.rng.choice(same))
        if isinstance(sort, Point):
            # moves the bound point by (e - e), a difference
            return Binary("+", ref, Group(Binary("-", e, e)))
        return Binary(self.rng.choice("+-"), ref, e)


def program_source(program: Program) -> str:
    return print_program(program)
