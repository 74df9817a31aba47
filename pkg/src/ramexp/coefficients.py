"""Multiplicative coefficient functions G, described by their prime-power values.

A :class:`CoefficientSpec` names a base family (``power``, ``totient_reciprocal``
or ``custom``) and optional per-prime rules that override it. Composite
arguments are evaluated multiplicatively, so G(1) = 1 and multiplicativity hold
by construction.

The JSON form is::

    {"family": "power", "s": 3,
     "overrides": [{"p": 2, "mode": "all_ones"},
                   {"p": 3, "values": ["1/3", "1/9"], "tail": "zero"}],
     "declared_smooth_bound": 7}

``{"family": "zero_beyond", "support": [[2, "1/2"], [4, "1/4"]]}`` is also
accepted; it lists G on finitely many arguments and sets G to zero elsewhere.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Union

import numpy as np

from .arith import (
    PrimeSet,
    SieveTables,
    _require_prime,
    factorize,
    is_prime,
)

Scalar = Union[Fraction, float]

FAMILIES = ("power", "totient_reciprocal", "custom", "zero_beyond")
MODES = ("all_ones", "explicit", "function")
TAILS = ("family", "zero")


class SpecError(ValueError):
    """Malformed coefficient description. ``field`` names the offending key."""

    def __init__(self, message: str, field: str = "", line: Optional[int] = None):
        where = ""
        if line is not None:
            where += f"line {line}: "
        if field:
            where += f"{field}: "
        super().__init__(where + message)
        self.field = field
        self.line = line


def _as_fraction(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise SpecError(f"expected a rational, got {x!r}", where)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"cannot parse rational {x!r}", where) from None
    raise SpecError(f"expected an integer or 'num/den' string, got {x!r}", where)


@dataclass(frozen=True)
class PrimeRule:
    """Override of G on the powers of one prime.

    ``all_ones`` sets G(p^K) = 1 for every K. ``explicit`` lists G(p), G(p^2),
    ... and continues with ``tail`` (the base family, or zero). ``function``
    wraps a callable ``K -> G(p^K)``; it cannot be inspected, so reports built
    on it are bounded scans.
    """

    p: int
    mode: str = "explicit"
    values: tuple = ()
    tail: str = "family"
    fn: Optional[Callable[[int], Any]] = field(default=None, compare=False)

    def __post_init__(self):
        if not is_prime(int(self.p)):
            raise SpecError(f"{self.p!r} is not prime", "p")
        if self.mode not in MODES:
            raise SpecError(f"unknown mode {self.mode!r}", "mode")
        if self.tail not in TAILS:
            raise SpecError(f"unknown tail {self.tail!r}", "tail")
        if self.mode == "function" and self.fn is None:
            raise SpecError("function rule needs fn", "fn")
        object.__setattr__(
            self, "values", tuple(_as_fraction(v, "values") for v in self.values)
        )

    @classmethod
    def all_ones(cls, p: int) -> "PrimeRule":
        return cls(p, "all_ones")

    @classmethod
    def explicit(cls, p: int, values: Iterable, tail: str = "family") -> "PrimeRule":
        return cls(p, "explicit", tuple(values), tail)

    @classmethod
    def function(cls, p: int, fn: Callable[[int], Any]) -> "PrimeRule":
        return cls(p, "function", fn=fn)


@dataclass(frozen=True)
class CoefficientSpec:
    family: str
    s: Optional[Fraction] = None
    rules: tuple = ()
    declared_smooth_bound: Optional[int] = None
    support: tuple = ()  # only for zero_beyond, kept for serialization

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}", "family")
        if self.family == "power":
            if self.s is None:
                raise SpecError("power family needs an exponent", "s")
            s = _as_fraction(self.s, "s")
            if s <= 0:
                raise SpecError(f"exponent must be positive, got {s}", "s")
            object.__setattr__(self, "s", s)
        elif self.s is not None:
            object.__setattr__(self, "s", _as_fraction(self.s, "s"))
        rules = tuple(self.rules)
        seen = set()
        for r in rules:
            if r.p in seen:
                raise SpecError(f"duplicate override for p={r.p}", "overrides")
            seen.add(r.p)
        object.__setattr__(self, "rules", tuple(sorted(rules, key=lambda r: r.p)))
        object.__setattr__(self, "_rule_map", {r.p: r for r in self.rules})
        bound = self.declared_smooth_bound
        if bound is not None:
            if bound < 2:
                raise SpecError("smooth bound must be >= 2", "declared_smooth_bound")
            if self.family in ("power", "totient_reciprocal"):
                raise SpecError(
                    f"{self.family} is nonzero at every prime; it cannot be "
                    f"supported on {bound}-smooth numbers",
                    "declared_smooth_bound",
                )
            for r in self.rules:
                if r.p > bound and not _rule_is_zero(r):
                    raise SpecError(
                        f"override at p={r.p} is nonzero beyond the smooth bound {bound}",
                        "declared_smooth_bound",
                    )

    # constructors ---------------------------------------------------------

    @classmethod
    def power(cls, s, overrides: Iterable[PrimeRule] = (), **kw) -> "CoefficientSpec":
        """G(q) = q^(-s), with optional per-prime overrides."""
        return cls("power", s=s, rules=tuple(overrides), **kw)

    @classmethod
    def totient_reciprocal(cls, overrides: Iterable[PrimeRule] = ()) -> "CoefficientSpec":
        return cls("totient_reciprocal", rules=tuple(overrides))

    @classmethod
    def custom(cls, rules: Iterable[PrimeRule], declared_smooth_bound=None) -> "CoefficientSpec":
        """Only the listed primes carry nonzero values; G(p^K) = 0 elsewhere for K >= 1."""
        return cls("custom", rules=tuple(rules), declared_smooth_bound=declared_smooth_bound)

    @classmethod
    def zero_beyond(cls, support: Mapping | Iterable, declared_smooth_bound=None):
        """G given on finitely many q and zero elsewhere.

        Entries at prime powers define G there; entries at other q must agree
        with the product of their prime-power parts.
        """
        items = support.items() if isinstance(support, Mapping) else support
        table = {}
        for q, v in items:
            q = int(q)
            if q < 1:
                raise SpecError(f"support entry q={q} must be positive", "support")
            table[q] = _as_fraction(v, f"support[{q}]")
        if table.get(1, Fraction(1)) != 1:
            raise SpecError("G(1) must be 1", "support")
        ladders: dict[int, dict[int, Fraction]] = {}
        composites = []
        for q, v in table.items():
            if q == 1:
                continue
            f = factorize(q)
            if len(f) == 1:
                p, e = f[0]
                ladders.setdefault(p, {})[e] = v
            else:
                composites.append((q, f, v))
        for q, f, v in composites:
            prod = Fraction(1)
            for p, e in f:
                prod *= ladders.get(p, {}).get(e, Fraction(0))
            if prod != v:
                raise SpecError(
                    f"G({q})={v} is not the product of its prime-power values ({prod})",
                    "support",
                )
        rules = []
        for p, ladder in ladders.items():
            top = max(ladder)
            rules.append(
                PrimeRule.explicit(p, [ladder.get(k, Fraction(0)) for k in range(1, top + 1)], "zero")
            )
        if declared_smooth_bound is None and rules:
            declared_smooth_bound = max(2, max(r.p for r in rules))
        return cls(
            "zero_beyond",
            rules=tuple(rules),
            declared_smooth_bound=declared_smooth_bound,
            support=tuple(sorted(table.items())),
        )

    # queries ---------------------------------------------------------------

    def rule_for(self, p: int) -> Optional[PrimeRule]:
        return self._rule_map.get(int(p))

    @property
    def is_exact(self) -> bool:
        """True when every value is rational (integer exponent, no black boxes)."""
        if self.family == "power" and self.s.denominator != 1:
            return False
        return not any(r.mode == "function" for r in self.rules)

    @property
    def is_inspectable(self) -> bool:
        return not any(r.mode == "function" for r in self.rules)

    @property
    def base_is_zero(self) -> bool:
        return self.family in ("custom", "zero_beyond")

    def override_primes(self) -> PrimeSet:
        return frozenset(self._rule_map)

    def describe(self) -> str:
        if self.family == "power":
            head = f"power(s={self.s})"
        elif self.family == "zero_beyond":
            head = "zero_beyond"
        else:
            head = self.family
        parts = []
        for r in self.rules:
            if r.mode == "all_ones":
                parts.append(f"{r.p}:all_ones")
            elif r.mode == "explicit":
                vals = ",".join(str(v) for v in r.values)
                parts.append(f"{r.p}:[{vals}]+{r.tail}")
            else:
                parts.append(f"{r.p}:fn")
        return head + (" {" + "; ".join(parts) + "}" if parts else "")


def _rule_is_zero(rule: PrimeRule) -> bool:
    return rule.mode == "explicit" and all(v == 0 for v in rule.values) and rule.tail == "zero"


# evaluation ----------------------------------------------------------------


def family_prime_power(spec: CoefficientSpec, p: int, K: int) -> Scalar:
    """Value of the base family at p^K, ignoring overrides."""
    if K == 0:
        return Fraction(1)
    if spec.family == "power":
        s = spec.s
        if s.denominator == 1:
            return Fraction(1, p ** (K * s.numerator))
        return float(p) ** (-K * float(s))
    if spec.family == "totient_reciprocal":
        return Fraction(1, p ** (K - 1) * (p - 1))
    return Fraction(0)


def coeff_prime_power(spec: CoefficientSpec, p: int, K: int) -> Scalar:
    """G(p^K): the override for ``p`` if one exists, else the family value."""
    _require_prime(p)
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")
    if K == 0:
        return Fraction(1)
    rule = spec.rule_for(p)
    if rule is None:
        return family_prime_power(spec, p, K)
    if rule.mode == "all_ones":
        return Fraction(1)
    if rule.mode == "function":
        v = rule.fn(K)
        return v if isinstance(v, float) else Fraction(v)
    if K <= len(rule.values):
        return rule.values[K - 1]
    if rule.tail == "zero":
        return Fraction(0)
    return family_prime_power(spec, p, K)


def coeff_value(spec: CoefficientSpec, q: int, tables: Optional[SieveTables] = None) -> Scalar:
    """G(q) as the product of G(p^e) over the factorization of q."""
    out: Scalar = Fraction(1)
    for p, e in factorize(q, tables):
        out *= coeff_prime_power(spec, p, e)
        if out == 0:
            return out
    return out


def coefficient_table(spec: CoefficientSpec, Q: int, tables: SieveTables) -> np.ndarray:
    """Float array ``G[q]`` for q = 0..Q (slot 0 holds 0)."""
    if Q > tables.limit:
        from .arith import CapacityError

        raise CapacityError(f"Q={Q} exceeds sieve limit {tables.limit}")
    out = np.zeros(Q + 1)
    q = np.arange(1, Q + 1, dtype=np.float64)
    if not spec.rules:
        if spec.family == "power":
            out[1:] = q ** (-float(spec.s))
        elif spec.family == "totient_reciprocal":
            out[1:] = 1.0 / tables.phi[1 : Q + 1]
        else:
            out[1] = 1.0
        return out

    spf = tables.spf
    ppow = np.zeros(Q + 1, dtype=np.int64)
    ppow[1] = 1
    lo = 2
    while lo <= Q:
        hi = min(2 * lo, Q + 1)
        n = np.arange(lo, hi)
        p = spf[lo:hi].astype(np.int64)
        m = n // p
        ppow[lo:hi] = np.where(spf[m] == p, ppow[m] * p, p)
        lo = hi

    idx = np.flatnonzero(ppow == np.arange(Q + 1))
    idx = idx[idx >= 2]
    gpp = np.zeros(Q + 1)
    if spec.family == "power":
        gpp[idx] = idx.astype(np.float64) ** (-float(spec.s))
    elif spec.family == "totient_reciprocal":
        gpp[idx] = 1.0 / tables.phi[idx]
    for rule in spec.rules:
        pk, K = rule.p, 1
        while pk <= Q:
            gpp[pk] = float(coeff_prime_power(spec, rule.p, K))
            pk *= rule.p
            K += 1

    out[1] = 1.0
    lo = 2
    while lo <= Q:
        hi = min(2 * lo, Q + 1)
        n = np.arange(lo, hi)
        pp = ppow[lo:hi]
        out[lo:hi] = gpp[pp] * out[n // pp]
        lo = hi
    return out


# fixed points ----------------------------------------------------------------


@dataclass(frozen=True)
class FixedPointReport:
    """F(G) = {p : G(p) = 1} and F0(G) = {p : G(p^K) = 1 for all K}.

    ``exhaustive`` is True when both sets were decided from the rules
    themselves; otherwise F0 membership rests on a scan of K <= k_max.
    """

    F_of_G: PrimeSet
    F0_of_G: PrimeSet
    exhaustive: bool
    scan_bounds: tuple


def fixed_point_report(spec: CoefficientSpec, p_max: int, k_max: int) -> FixedPointReport:
    """Determine F(G) and F0(G).

    Primes without an override follow the base family, where G(p) = 1 happens
    only for ``totient_reciprocal`` at p = 2; those members are added
    analytically, so F(G) is complete. Overridden primes are checked one by
    one. A ``function`` override can only be scanned up to ``k_max``, which
    marks the report non-exhaustive.
    """
    if p_max < 2 or k_max < 1:
        raise ValueError("need p_max >= 2 and k_max >= 1")
    F, F0 = set(), set()
    exhaustive = True
    if spec.family == "totient_reciprocal" and spec.rule_for(2) is None:
        F.add(2)
    for rule in spec.rules:
        p = rule.p
        if coeff_prime_power(spec, p, 1) != 1:
            continue
        F.add(p)
        if rule.mode == "all_ones":
            F0.add(p)
        # explicit lists are finite and no tail is identically 1 (power and
        # totient values drop below 1 from K = 2 on, zero tails vanish)
        elif rule.mode == "function":
            exhaustive = False
            if all(coeff_prime_power(spec, p, K) == 1 for K in range(1, k_max + 1)):
                F0.add(p)
    return FixedPointReport(
        F_of_G=frozenset(F),
        F0_of_G=frozenset(F0),
        exhaustive=exhaustive,
        scan_bounds=(int(p_max), int(k_max)),
    )


# JSON --------------------------------------------------------------------------


def spec_from_dict(data: Mapping) -> CoefficientSpec:
    if not isinstance(data, Mapping):
        raise SpecError("top level must be an object")
    known = {"family", "s", "overrides", "declared_smooth_bound", "support"}
    extra = set(data) - known
    if extra:
        raise SpecError(f"unknown keys {sorted(extra)}", sorted(extra)[0])
    family = data.get("family")
    if family not in FAMILIES:
        raise SpecError(f"must be one of {FAMILIES}, got {family!r}", "family")
    bound = data.get("declared_smooth_bound")
    if bound is not None and (isinstance(bound, bool) or not isinstance(bound, int)):
        raise SpecError(f"expected an integer, got {bound!r}", "declared_smooth_bound")
    if family == "zero_beyond":
        support = data.get("support")
        if not isinstance(support, list):
            raise SpecError("zero_beyond needs a list of [q, value] pairs", "support")
        pairs = []
        for i, item in enumerate(support):
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
                raise SpecError(f"expected [q, value], got {item!r}", f"support[{i}]")
            pairs.append((item[0], _as_fraction(item[1], f"support[{i}]")))
        return CoefficientSpec.zero_beyond(pairs, declared_smooth_bound=bound)
    s = data.get("s")
    if family == "power":
        if s is None or isinstance(s, bool) or not isinstance(s, (int, str)):
            raise SpecError(f"power family needs an integer exponent, got {s!r}", "s")
    rules = []
    for i, o in enumerate(data.get("overrides", []) or []):
        where = f"overrides[{i}]"
        if not isinstance(o, Mapping):
            raise SpecError("expected an object", where)
        p = o.get("p")
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise SpecError(f"expected a prime, got {p!r}", where + ".p")
        mode = o.get("mode", "explicit" if "values" in o else None)
        if mode == "all_ones":
            rules.append(PrimeRule.all_ones(p))
        elif mode == "explicit":
            values = o.get("values")
            if not isinstance(values, list):
                raise SpecError("expected a list", where + ".values")
            tail = o.get("tail", "family")
            if tail not in TAILS:
                raise SpecError(f"must be one of {TAILS}, got {tail!r}", where + ".tail")
            vals = [_as_fraction(v, f"{where}.values[{j}]") for j, v in enumerate(values)]
            rules.append(PrimeRule.explicit(p, vals, tail))
        else:
            raise SpecError(f"mode must be 'all_ones' or 'explicit', got {mode!r}", where + ".mode")
    return CoefficientSpec(
        family,
        s=_as_fraction(s, "s") if s is not None else None,
        rules=tuple(rules),
        declared_smooth_bound=bound,
    )


def spec_from_json(text: str) -> CoefficientSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, line=exc.lineno) from None
    return spec_from_dict(data)


def spec_to_dict(spec: CoefficientSpec) -> dict:
    if not spec.is_inspectable:
        raise SpecError("function overrides cannot be serialized", "overrides")
    out: dict = {"family": spec.family}
    if spec.family == "zero_beyond":
        out["support"] = [[q, str(v)] for q, v in spec.support]
    else:
        if spec.s is not None:
            out["s"] = spec.s.numerator if spec.s.denominator == 1 else str(spec.s)
        overrides = []
        for r in spec.rules:
            if r.mode == "all_ones":
                overrides.append({"p": r.p, "mode": "all_ones"})
            else:
                overrides.append(
                    {"p": r.p, "values": [str(v) for v in r.values], "tail": r.tail}
                )
        if overrides:
            out["overrides"] = overrides
    if spec.declared_smooth_bound is not None:
        out["declared_smooth_bound"] = spec.declared_smooth_bound
    return out


def spec_digest(spec: CoefficientSpec) -> str:
    """Short stable hash of the canonical JSON form."""
    try:
        payload = json.dumps(spec_to_dict(spec), sort_keys=True, separators=(",", ":"))
    except SpecError:
        payload = spec.describe()
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# named examples ----------------------------------------------------------------


def odd_cubes_two_ones() -> CoefficientSpec:
    """G(q) = 1/q^3 on odd q and G(2^K) = 1 for every K."""
    return CoefficientSpec.power(3, [PrimeRule.all_ones(2)])
