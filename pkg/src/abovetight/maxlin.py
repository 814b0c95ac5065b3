"""Weighted GF(2) equation systems parameterized above half the total weight.

An instance assigns 0/1 values to n variables; equation j asks that the sum
of its variables equal b_j and carries a positive integer weight. X denotes
satisfied weight minus unsatisfied weight, so the target "satisfied weight
at least W/2 + k" reads X >= 2k.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from . import gf2
from .outcome import CapExceeded, DecisionOutcome, RestrictionViolated, Verdict

DEFAULT_ASSIGNMENT_CAP = 20


@dataclass(frozen=True)
class Lin2Equation:
    """A weighted parity constraint: sum of ``variables`` equals ``rhs``."""

    variables: tuple[int, ...]
    rhs: int
    weight: int

    def __post_init__(self) -> None:
        if not self.variables:
            raise ValueError("equations must involve at least one variable")
        if list(self.variables) != sorted(set(self.variables)):
            raise ValueError("variables must be strictly increasing")
        if self.rhs not in (0, 1):
            raise ValueError("right-hand side must be 0 or 1")
        if self.weight < 1:
            raise ValueError("weights must be positive integers")


@dataclass(frozen=True)
class Lin2System:
    """Weighted linear system over GF(2) on variables 0..n-1."""

    n: int
    equations: tuple[Lin2Equation, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        for eq in self.equations:
            if eq.variables[-1] >= self.n:
                raise ValueError("equation references a variable beyond n")

    @classmethod
    def from_tuples(cls, n: int, eqs: Iterable[tuple[Sequence[int], int, int]]) -> Lin2System:
        """Build from (variables, rhs, weight) triples; variable sets are sorted."""
        out = []
        for variables, rhs, weight in eqs:
            out.append(Lin2Equation(tuple(sorted(set(variables))), rhs, weight))
        return cls(n, tuple(out))

    def masks(self) -> list[int]:
        return [sum(1 << v for v in eq.variables) for eq in self.equations]

    def is_merge_normalized(self) -> bool:
        keys = [eq.variables for eq in self.equations]
        return len(keys) == len(set(keys))


@dataclass(frozen=True)
class SystemStats:
    """Counts: equations m, total weight W, max arity r, max occurrence rho."""

    m: int
    W: int
    r: int
    rho: int


@dataclass(frozen=True)
class RankReduction:
    """Restriction of a system to an independent set of variable columns.

    ``reduced`` is renumbered over 0..len(basis)-1 in basis order; ``recipe``
    maps each eliminated original variable to the basis subset whose column
    sum reproduces its column. Zero-padding a reduced assignment back onto
    the original variables satisfies exactly the corresponding equations.
    """

    reduced: Lin2System
    basis: tuple[int, ...]
    recipe: dict[int, frozenset[int]]
    original_n: int


class CaseKind(Enum):
    ODD_SET = "odd-set"
    BOUNDED_ARITY = "arity"
    BOUNDED_OCCURRENCE = "occurrence"
    GENERAL = "general"


@dataclass(frozen=True)
class CaseTag:
    """Which structural special case a decision run may rely on."""

    kind: CaseKind
    odd_set: frozenset[int] | None = None
    arity: int | None = None
    occurrence: int | None = None

    @classmethod
    def for_odd_set(cls, variables: Iterable[int] | None = None) -> CaseTag:
        U = None if variables is None else frozenset(variables)
        return cls(CaseKind.ODD_SET, odd_set=U)

    @classmethod
    def for_arity(cls, r: int) -> CaseTag:
        if r < 1:
            raise ValueError("arity bound must be at least 1")
        return cls(CaseKind.BOUNDED_ARITY, arity=r)

    @classmethod
    def for_occurrence(cls, rho: int) -> CaseTag:
        if rho < 1:
            raise ValueError("occurrence bound must be at least 1")
        return cls(CaseKind.BOUNDED_OCCURRENCE, occurrence=rho)

    @classmethod
    def general(cls) -> CaseTag:
        return cls(CaseKind.GENERAL)


def merge_duplicates(s: Lin2System) -> Lin2System:
    """Combine equations with identical variable sets.

    Same right side: weights add. Opposite right sides: the heavier side
    survives with the weight difference; exact ties cancel and disappear.
    X is preserved pointwise, so decisions agree for every k.
    """
    order: list[tuple[int, ...]] = []
    signed: dict[tuple[int, ...], int] = {}
    for eq in s.equations:
        key = eq.variables
        if key not in signed:
            signed[key] = 0
            order.append(key)
        # Positive sign tallies rhs=0 weight, negative tallies rhs=1.
        signed[key] += eq.weight if eq.rhs == 0 else -eq.weight
    out = []
    for key in order:
        net = signed[key]
        if net > 0:
            out.append(Lin2Equation(key, 0, net))
        elif net < 0:
            out.append(Lin2Equation(key, 1, -net))
    return Lin2System(s.n, tuple(out))


def system_stats(s: Lin2System) -> SystemStats:
    occ: Counter[int] = Counter()
    for eq in s.equations:
        occ.update(eq.variables)
    return SystemStats(
        m=len(s.equations),
        W=sum(eq.weight for eq in s.equations),
        r=max((len(eq.variables) for eq in s.equations), default=0),
        rho=max(occ.values(), default=0),
    )


def coefficient_matrix(s: Lin2System) -> gf2.BitMatrix:
    return gf2.BitMatrix.from_row_masks(s.masks(), s.n)


def find_odd_set(s: Lin2System) -> frozenset[int] | None:
    """A variable set meeting every equation in an odd number of variables.

    Exists iff the system with every right side replaced by 1 is solvable;
    the set is the support of that solution. Returns None otherwise.
    """
    mat = coefficient_matrix(s)
    rhs = gf2.BitVec(mat.rows, (1 << mat.rows) - 1)
    sol = gf2.solve_affine(mat, rhs)
    if sol is None:
        return None
    return frozenset(i for i, bit in enumerate(sol) if bit)


def rank_reduce(s: Lin2System) -> RankReduction:
    """Drop every variable outside a greedy-leftmost independent column basis.

    Each equation keeps only its basis variables (renumbered by basis
    position). The eliminated columns lie in the basis span, so every
    achievable satisfied/unsatisfied pattern of the original system is
    achievable in the reduction and vice versa; no equation loses all of
    its variables.
    """
    mat = coefficient_matrix(s)
    basis = gf2.independent_columns(mat)
    basis_set = set(basis)
    recipe = {
        j: frozenset(gf2.express_in_basis(mat, basis, j))
        for j in range(s.n)
        if j not in basis_set
    }
    position = {v: i for i, v in enumerate(basis)}
    new_eqs = []
    for eq in s.equations:
        kept = tuple(sorted(position[v] for v in eq.variables if v in basis_set))
        new_eqs.append(Lin2Equation(kept, eq.rhs, eq.weight))
    reduced = Lin2System(len(basis), tuple(new_eqs))
    return RankReduction(reduced=reduced, basis=tuple(basis), recipe=recipe, original_n=s.n)


def lift_assignment(reduction: RankReduction, y: Sequence[int]) -> tuple[int, ...]:
    """Extend a reduced assignment to the original variables, zeroing the rest."""
    if len(y) != len(reduction.basis):
        raise ValueError("assignment length must match the basis size")
    z = [0] * reduction.original_n
    for value, variable in zip(y, reduction.basis):
        if value not in (0, 1):
            raise ValueError("assignment values must be 0 or 1")
        z[variable] = value
    return tuple(z)


def evaluate_x(s: Lin2System, z: Sequence[int]) -> int:
    """Satisfied weight minus unsatisfied weight of assignment z."""
    if len(z) != s.n:
        raise ValueError("assignment must cover all variables")
    total = 0
    for eq in s.equations:
        parity = 0
        for v in eq.variables:
            parity ^= z[v]
        total += eq.weight if parity == eq.rhs else -eq.weight
    return total


def _scan_setup(s: Lin2System, start: int):
    masks = s.masks()
    occ: list[list[int]] = [[] for _ in range(s.n)]
    for j, eq in enumerate(s.equations):
        for v in eq.variables:
            occ[v].append(j)
    sat = bytearray(len(s.equations))
    x = 0
    for j, (mask, eq) in enumerate(zip(masks, s.equations)):
        parity = (start & mask).bit_count() & 1
        if parity == eq.rhs:
            sat[j] = 1
            x += eq.weight
        else:
            x -= eq.weight
    doubled = [2 * eq.weight for eq in s.equations]
    return occ, sat, doubled, x


def _scan_best(s: Lin2System, lo: int, hi: int) -> tuple[int, int]:
    """Best (x, assignment) over assignments lo..hi-1; ties take the smaller one."""
    occ, sat, doubled, x = _scan_setup(s, lo)
    best_x, best_z = x, lo
    for z in range(lo + 1, hi):
        diff = z ^ (z - 1)
        while diff:
            v = (diff & -diff).bit_length() - 1
            diff &= diff - 1
            for j in occ[v]:
                if sat[j]:
                    x -= doubled[j]
                    sat[j] = 0
                else:
                    x += doubled[j]
                    sat[j] = 1
        if x > best_x:
            best_x, best_z = x, z
    return best_x, best_z


def _scan_mass(s: Lin2System, lo: int, hi: int) -> Counter[int]:
    occ, sat, doubled, x = _scan_setup(s, lo)
    counts: Counter[int] = Counter()
    counts[x] += 1
    for z in range(lo + 1, hi):
        diff = z ^ (z - 1)
        while diff:
            v = (diff & -diff).bit_length() - 1
            diff &= diff - 1
            for j in occ[v]:
                if sat[j]:
                    x -= doubled[j]
                    sat[j] = 0
                else:
                    x += doubled[j]
                    sat[j] = 1
        counts[x] += 1
    return counts


def _chunk_ranges(n: int, workers: int) -> list[tuple[int, int]]:
    size = 1 << n
    parts = max(1, min(workers, size))
    step = size // parts
    bounds = [i * step for i in range(parts)] + [size]
    return [(bounds[i], bounds[i + 1]) for i in range(parts) if bounds[i] < bounds[i + 1]]


def solve_exact(
    s: Lin2System, cap: int = DEFAULT_ASSIGNMENT_CAP, workers: int = 1
) -> tuple[int, tuple[int, ...]]:
    """Exhaustive optimum of X with a witness assignment.

    The assignment space may be split across workers; the merged result is
    deterministic and independent of the worker count (maximum X, smallest
    assignment on ties). Refuses systems with more than ``cap`` variables.
    """
    if s.n > cap:
        raise CapExceeded(
            "exact solve refused: %d variables exceed cap %d" % (s.n, cap),
            instance=s,
            needed=s.n,
            cap=cap,
        )
    ranges = _chunk_ranges(s.n, workers)
    if len(ranges) == 1:
        best_x, best_z = _scan_best(s, *ranges[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda r: _scan_best(s, *r), ranges))
        best_x, best_z = results[0]
        for x, z in results[1:]:
            if x > best_x:
                best_x, best_z = x, z
    return best_x, tuple((best_z >> v) & 1 for v in range(s.n))


def x_distribution_counts(s: Lin2System, workers: int = 1) -> Counter[int]:
    """Exact multiset of X values over all 2^n assignments."""
    ranges = _chunk_ranges(s.n, workers)
    if len(ranges) == 1:
        return _scan_mass(s, *ranges[0])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda r: _scan_mass(s, *r), ranges))
    total: Counter[int] = Counter()
    for part in parts:
        total.update(part)
    return total


def occurrence_f(k: int, r: int) -> int:
    """Equation-count threshold 16(2k-1)^2 64^r used by the occurrence rule."""
    return 16 * (2 * k - 1) ** 2 * 64**r


def occurrence_reduce(s: Lin2System, k: int, r: int) -> Lin2System:
    """Remove every equation containing a rarely occurring variable.

    While some variable occurs in at most m - f(k, r) of the current m
    equations, all equations containing it are dropped (least occurrences
    first, ties by variable index). The survivor count never falls below
    f(k, r), so removal preserves the decision, and a solution of the result
    extends to the input by assigning 0 to the variables that disappeared.
    Expects a merge-normalized system with arity at most r.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not s.is_merge_normalized():
        raise ValueError("system must be merge-normalized first")
    stats = system_stats(s)
    if stats.r > r:
        raise ValueError("system arity %d exceeds the declared bound %d" % (stats.r, r))
    f = occurrence_f(k, r)
    eqs = list(s.equations)
    while True:
        m = len(eqs)
        occ: Counter[int] = Counter()
        for eq in eqs:
            occ.update(eq.variables)
        candidates = [v for v, c in occ.items() if c <= m - f]
        if not candidates:
            break
        victim = min(candidates, key=lambda v: (occ[v], v))
        eqs = [eq for eq in eqs if victim not in eq.variables]
    return Lin2System(s.n, tuple(eqs))


def case_threshold(tag: CaseTag, k: int) -> int | None:
    """Equation count at which the tagged case certifies YES outright."""
    if tag.kind is CaseKind.ODD_SET:
        return 4 * k * k
    if tag.kind is CaseKind.BOUNDED_ARITY:
        return 16 * (2 * k - 1) ** 2 * 64**tag.arity
    if tag.kind is CaseKind.BOUNDED_OCCURRENCE:
        rho = max(2, tag.occurrence)
        return 32 * rho * rho * (2 * k - 1) ** 2
    return None


def _check_tag(merged: Lin2System, tag: CaseTag, stats: SystemStats) -> CaseTag:
    """Validate the tag against the merged system; fill in a found odd set."""
    if tag.kind is CaseKind.ODD_SET:
        if tag.odd_set is None:
            found = find_odd_set(merged)
            if found is None:
                raise RestrictionViolated(
                    "no variable set meets every equation an odd number of times"
                )
            return CaseTag(CaseKind.ODD_SET, odd_set=found)
        for j, eq in enumerate(merged.equations):
            if len(tag.odd_set.intersection(eq.variables)) % 2 == 0:
                raise RestrictionViolated(
                    "supplied set meets equation %d an even number of times" % j
                )
        return tag
    if tag.kind is CaseKind.BOUNDED_ARITY:
        if stats.r > tag.arity:
            raise RestrictionViolated(
                "system arity %d exceeds the declared bound %d" % (stats.r, tag.arity)
            )
        return tag
    if tag.kind is CaseKind.BOUNDED_OCCURRENCE:
        if stats.rho > tag.occurrence:
            raise RestrictionViolated(
                "variable occurrence %d exceeds the declared bound %d"
                % (stats.rho, tag.occurrence)
            )
        return tag
    return tag


def auto_case(s: Lin2System, k: int) -> CaseTag:
    """Pick the applicable case with the smallest YES threshold.

    An odd set is looked for first, then the arity and occurrence bounds of
    the merged system itself; ties keep that ordering.
    """
    merged = merge_duplicates(s)
    stats = system_stats(merged)
    candidates: list[tuple[int, int, CaseTag]] = []
    found = find_odd_set(merged)
    if found is not None:
        tag = CaseTag(CaseKind.ODD_SET, odd_set=found)
        candidates.append((case_threshold(tag, k), 0, tag))
    if stats.m:
        arity_tag = CaseTag.for_arity(stats.r)
        candidates.append((case_threshold(arity_tag, k), 1, arity_tag))
        occ_tag = CaseTag.for_occurrence(max(stats.rho, 1))
        candidates.append((case_threshold(occ_tag, k), 2, occ_tag))
    if not candidates:
        return CaseTag.general()
    candidates.sort(key=lambda item: (item[0], item[1]))
    return candidates[0][2]


def decide_linalb(
    s: Lin2System,
    k: int,
    tag: CaseTag,
    cap: int = DEFAULT_ASSIGNMENT_CAP,
    workers: int = 1,
) -> DecisionOutcome:
    """Decide whether some assignment satisfies weight at least W/2 + k.

    The system is merge-normalized first and the tag's condition checked
    against the result. Large systems are YES outright at the case's
    threshold; otherwise the rank-reduced kernel is solved exhaustively and
    a witness is lifted back by zero-padding.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    merged = merge_duplicates(s)
    stats = system_stats(merged)
    tag = _check_tag(merged, tag, stats)
    diag: dict[str, object] = {"k": k, "case": tag.kind.value, "m": stats.m}
    if tag.kind is CaseKind.ODD_SET:
        diag["odd_set_size"] = len(tag.odd_set)
    threshold = case_threshold(tag, k)
    if threshold is not None:
        diag["m_threshold"] = threshold
        if stats.m >= threshold:
            return DecisionOutcome(Verdict.YES_BY_BOUND, diagnostics=diag)
    reduction = rank_reduce(merged)
    diag["kernel_vars"] = reduction.reduced.n
    diag["kernel_eqs"] = len(reduction.reduced.equations)
    try:
        best, y = solve_exact(reduction.reduced, cap=cap, workers=workers)
    except CapExceeded as exc:
        diag["cap"] = exc.cap
        return DecisionOutcome(Verdict.KERNEL, kernel=reduction.reduced, diagnostics=diag)
    diag["best_x"] = best
    diag["target_x"] = 2 * k
    if best >= 2 * k:
        witness = lift_assignment(reduction, y)
        return DecisionOutcome(Verdict.YES_WITNESS, witness=witness, diagnostics=diag)
    return DecisionOutcome(Verdict.NO, diagnostics=diag)
