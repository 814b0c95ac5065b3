"""Instance file formats and seeded generators.

Three line-oriented dialects, each with a header line and one record per
line; lines starting with ``c`` are comments and blank lines are ignored.

digraph   header ``p digraph <n> <m>``, then m arc lines ``a <u> <v> <w>``
          with 1-based endpoints and positive integer weights. Parallel
          same-direction arcs are merged by summing weights; loops are
          rejected.
lin2      header ``p lin2 <n> <m>``, then m lines ``e <w> <b> <i1> ... <it>``
          listing an equation of weight w, right side b and distinct
          1-based variable indices.
ecnf      header ``p ecnf <n> <m> <r>``, then m clause lines of exactly r
          nonzero signed literals terminated by ``0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linord import WeightedDigraph
from .maxlin import Lin2Equation, Lin2System
from .rsat import ExactCnfFormula

Instance = WeightedDigraph | Lin2System | ExactCnfFormula

GENERATOR_KINDS = (
    "symmetric-digraph",
    "random-oriented",
    "cancelling-pairs-lin2",
    "random-lin2",
    "complete-rcnf",
    "disjoint-complete-rcnf",
    "remark2",
)


class ParseError(ValueError):
    """Malformed instance text; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


@dataclass(frozen=True)
class InstanceFile:
    """A serialized instance: format name, header line, record lines."""

    format: str
    header: str
    body: tuple[str, ...]

    @property
    def text(self) -> str:
        return "\n".join((self.header,) + self.body) + "\n"


def _significant_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        out.append((line_no, stripped.split()))
    return out


def _int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, "%s is not an integer: %r" % (what, token)) from None


def parse_instance(text: str) -> Instance:
    """Parse one instance in any of the three dialects."""
    lines = _significant_lines(text)
    if not lines:
        raise ParseError(1, "empty instance")
    header_no, header = lines[0]
    if header[0] != "p" or len(header) < 2:
        raise ParseError(header_no, "expected a 'p <format> ...' header")
    fmt = header[1]
    records = lines[1:]
    if fmt == "digraph":
        if len(header) != 4:
            raise ParseError(header_no, "digraph header needs 'p digraph <n> <m>'")
        n = _int(header[2], header_no, "vertex count")
        m = _int(header[3], header_no, "arc count")
        if n < 0 or m < 0:
            raise ParseError(header_no, "counts must be nonnegative")
        if len(records) != m:
            raise ParseError(header_no, "header announces %d arcs, found %d" % (m, len(records)))
        arcs = []
        for line_no, rec in records:
            if len(rec) != 4 or rec[0] != "a":
                raise ParseError(line_no, "expected 'a <u> <v> <w>'")
            u = _int(rec[1], line_no, "tail")
            v = _int(rec[2], line_no, "head")
            w = _int(rec[3], line_no, "weight")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(line_no, "vertex out of range 1..%d" % n)
            if u == v:
                raise ParseError(line_no, "loop arcs are not allowed")
            if w < 1:
                raise ParseError(line_no, "weights must be positive")
            arcs.append((u - 1, v - 1, w))
        return WeightedDigraph.from_arcs(n, arcs)
    if fmt == "lin2":
        if len(header) != 4:
            raise ParseError(header_no, "lin2 header needs 'p lin2 <n> <m>'")
        n = _int(header[2], header_no, "variable count")
        m = _int(header[3], header_no, "equation count")
        if n < 0 or m < 0:
            raise ParseError(header_no, "counts must be nonnegative")
        if len(records) != m:
            raise ParseError(
                header_no, "header announces %d equations, found %d" % (m, len(records))
            )
        eqs = []
        for line_no, rec in records:
            if len(rec) < 4 or rec[0] != "e":
                raise ParseError(line_no, "expected 'e <w> <b> <i1> ...'")
            w = _int(rec[1], line_no, "weight")
            b = _int(rec[2], line_no, "right side")
            if w < 1:
                raise ParseError(line_no, "weights must be positive")
            if b not in (0, 1):
                raise ParseError(line_no, "right side must be 0 or 1")
            indices = [_int(tok, line_no, "variable index") for tok in rec[3:]]
            if any(not 1 <= i <= n for i in indices):
                raise ParseError(line_no, "variable index out of range 1..%d" % n)
            if len(set(indices)) != len(indices):
                raise ParseError(line_no, "repeated variable in the equation")
            eqs.append(Lin2Equation(tuple(sorted(i - 1 for i in indices)), b, w))
        return Lin2System(n, tuple(eqs))
    if fmt == "ecnf":
        if len(header) != 5:
            raise ParseError(header_no, "ecnf header needs 'p ecnf <n> <m> <r>'")
        n = _int(header[2], header_no, "variable count")
        m = _int(header[3], header_no, "clause count")
        r = _int(header[4], header_no, "clause width")
        if n < 0 or m < 0:
            raise ParseError(header_no, "counts must be nonnegative")
        if r < 2:
            raise ParseError(header_no, "clause width must be at least 2")
        if len(records) != m:
            raise ParseError(
                header_no, "header announces %d clauses, found %d" % (m, len(records))
            )
        clauses = []
        for line_no, rec in records:
            lits = [_int(tok, line_no, "literal") for tok in rec]
            if not lits or lits[-1] != 0:
                raise ParseError(line_no, "clause line must end with 0")
            lits = lits[:-1]
            if any(lit == 0 for lit in lits):
                raise ParseError(line_no, "literal 0 inside a clause")
            if len(lits) != r:
                raise ParseError(line_no, "clause width %d, expected %d" % (len(lits), r))
            variables = [abs(lit) for lit in lits]
            if any(not 1 <= v <= n for v in variables):
                raise ParseError(line_no, "variable out of range 1..%d" % n)
            if len(set(variables)) != r:
                raise ParseError(line_no, "clause repeats a variable or has complementary literals")
            clauses.append(tuple(sorted(lits, key=abs)))
        return ExactCnfFormula(n, r, tuple(clauses))
    raise ParseError(header_no, "unknown format %r" % fmt)


def serialize_instance(instance: Instance) -> InstanceFile:
    """Render an instance in its dialect; parse(serialize(x)) == x."""
    if isinstance(instance, WeightedDigraph):
        body = tuple("a %d %d %d" % (u + 1, v + 1, w) for u, v, w in instance.arcs)
        return InstanceFile(
            "digraph", "p digraph %d %d" % (instance.n, len(instance.arcs)), body
        )
    if isinstance(instance, Lin2System):
        body = tuple(
            "e %d %d %s" % (eq.weight, eq.rhs, " ".join(str(v + 1) for v in eq.variables))
            for eq in instance.equations
        )
        return InstanceFile(
            "lin2", "p lin2 %d %d" % (instance.n, len(instance.equations)), body
        )
    if isinstance(instance, ExactCnfFormula):
        body = tuple(
            " ".join(str(lit) for lit in clause) + " 0" for clause in instance.clauses
        )
        return InstanceFile(
            "ecnf",
            "p ecnf %d %d %d" % (instance.n, len(instance.clauses), instance.r),
            body,
        )
    raise TypeError("unsupported instance type: %r" % type(instance))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def gen_instance(
    kind: str,
    seed: int = 0,
    n: int | None = None,
    m: int | None = None,
    r: int | None = None,
    pairs: int | None = None,
    blocks: int | None = None,
    wmax: int | None = None,
) -> InstanceFile:
    """Build a seeded instance of the given kind and serialize it.

    The tight families (symmetric digraphs, cancelling equation pairs,
    complete and disjoint-complete width-r formulas) meet their lower bound
    exactly and decide NO at every positive parameter value.
    """
    rng = random.Random(seed)
    wmax = 4 if wmax is None else wmax
    _require(wmax >= 1, "wmax must be positive")
    if kind == "symmetric-digraph":
        n = 4 if n is None else n
        _require(2 <= n <= 64, "n must be in 2..64")
        m = n if m is None else m
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        _require(0 <= m <= len(all_pairs), "m must be at most n(n-1)/2")
        chosen = rng.sample(all_pairs, m)
        arcs = []
        for u, v in sorted(chosen):
            w = rng.randint(1, wmax)
            arcs.append((u, v, w))
            arcs.append((v, u, w))
        return serialize_instance(WeightedDigraph.from_arcs(n, arcs))
    if kind == "random-oriented":
        n = 6 if n is None else n
        _require(2 <= n <= 64, "n must be in 2..64")
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        m = min(2 * n, len(all_pairs)) if m is None else m
        _require(0 <= m <= len(all_pairs), "m must be at most n(n-1)/2")
        chosen = rng.sample(all_pairs, m)
        arcs = []
        for u, v in sorted(chosen):
            w = rng.randint(1, wmax)
            if rng.random() < 0.5:
                arcs.append((u, v, w))
            else:
                arcs.append((v, u, w))
        return serialize_instance(WeightedDigraph.from_arcs(n, arcs))
    if kind == "cancelling-pairs-lin2":
        n = 6 if n is None else n
        _require(1 <= n <= 30, "n must be in 1..30")
        pairs = 3 if pairs is None else pairs
        _require(1 <= pairs <= (1 << n) - 1, "pairs must be in 1..2^n-1")
        subset_masks = rng.sample(range(1, 1 << n), pairs)
        eqs = []
        for mask in sorted(subset_masks):
            variables = tuple(v for v in range(n) if (mask >> v) & 1)
            w = rng.randint(1, wmax)
            eqs.append(Lin2Equation(variables, 1, w))
            eqs.append(Lin2Equation(variables, 0, w))
        return serialize_instance(Lin2System(n, tuple(eqs)))
    if kind == "random-lin2":
        n = 6 if n is None else n
        _require(1 <= n <= 30, "n must be in 1..30")
        m = 2 * n if m is None else m
        _require(0 <= m <= 4096, "m must be in 0..4096")
        rmax = min(r, n) if r is not None else min(3, n)
        _require(rmax >= 1, "r must be positive")
        eqs = []
        for _ in range(m):
            size = rng.randint(1, rmax)
            variables = tuple(sorted(rng.sample(range(n), size)))
            eqs.append(Lin2Equation(variables, rng.randint(0, 1), rng.randint(1, wmax)))
        return serialize_instance(Lin2System(n, tuple(eqs)))
    if kind == "complete-rcnf":
        r = 2 if r is None else r
        _require(2 <= r <= 6, "r must be in 2..6")
        clauses = []
        for signs in range(1 << r):
            clause = tuple(
                (v + 1) if (signs >> v) & 1 else -(v + 1) for v in range(r)
            )
            clauses.append(clause)
        return serialize_instance(ExactCnfFormula(r, r, tuple(clauses)))
    if kind == "disjoint-complete-rcnf":
        r = 2 if r is None else r
        _require(2 <= r <= 6, "r must be in 2..6")
        blocks = 2 if blocks is None else blocks
        _require(1 <= blocks <= 8, "blocks must be in 1..8")
        clauses = []
        for block in range(blocks):
            base = block * r
            for signs in range(1 << r):
                clause = tuple(
                    (base + v + 1) if (signs >> v) & 1 else -(base + v + 1)
                    for v in range(r)
                )
                clauses.append(clause)
        return serialize_instance(ExactCnfFormula(blocks * r, r, tuple(clauses)))
    if kind == "remark2":
        from .moments import all_subsets_system

        n = 3 if n is None else n
        system = all_subsets_system(n)
        return serialize_instance(system)
    raise ValueError("unknown generator kind %r" % kind)
