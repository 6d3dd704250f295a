"""The Y-system attached to a pair of Dynkin diagrams, the canonical
mutation sequences of its product quivers, and machine verification of
Zamolodchikov periodicity.

Composition convention, used everywhere: in a product of mutations the
rightmost factor acts first.  The bipartite round for the triangle
product applies the sign blocks in the order (-,+), (+,+), (-,-), (+,-);
the round for the square product applies (+,-), (-,+), (+,+), (-,-).
Within a block the vertices commute and are taken in row-major order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import dynkin
from .algebra import Polynomial
from .dynkin import DynkinType
from .errors import InputError
from .folding import GroupAction, Lift, is_admissible, lift_dynkin, product_action
from .quiver import (
    Quiver,
    ValuedQuiver,
    alternating_quiver,
    alternating_valued_quiver,
    horizontal_slice,
    is_constrained,
    square_product,
    triangle_product,
    vertical_slice,
)
from .seed import Seed

Pair = Tuple[DynkinType, DynkinType]
Values = Dict[Tuple[int, int], Fraction]

BOXTIMES_BLOCK_ORDER = ((-1, 1), (1, 1), (-1, -1), (1, -1))
SQUARE_BLOCK_ORDER = ((1, -1), (-1, 1), (1, 1), (-1, -1))


# ---------------------------------------------------------------------------
# the direct recurrence and its automorphisms

def pair_vertices(ta: DynkinType, tb: DynkinType) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, ip) for i in ta.vertices for ip in tb.vertices)


def vertex_parity(ta: DynkinType, tb: DynkinType, v: Tuple[int, int]) -> int:
    """+1 when both coordinates sit in the same class of their 2-colorings."""
    sa = dynkin.bipartition(ta).sign(v[0])
    sb = dynkin.bipartition(tb).sign(v[1])
    return sa * sb


@dataclass(frozen=True)
class YSystemState:
    """Two consecutive exact-value slices of the recurrence."""

    pair: Pair
    prev: Tuple[Fraction, ...]  # slice t-1, indexed like pair_vertices
    curr: Tuple[Fraction, ...]  # slice t
    t: int = 0

    def __post_init__(self):
        if any(v <= 0 for v in self.prev) or any(v <= 0 for v in self.curr):
            raise InputError("Y-system values must be strictly positive")

    def as_dicts(self) -> Tuple[Values, Values]:
        verts = pair_vertices(*self.pair)
        return (
            dict(zip(verts, self.prev)),
            dict(zip(verts, self.curr)),
        )


def initial_state(ta: DynkinType, tb: DynkinType, prev: Sequence, curr: Sequence) -> YSystemState:
    verts = pair_vertices(ta, tb)
    if len(prev) != len(verts) or len(curr) != len(verts):
        raise InputError("slice length does not match the vertex count")
    return YSystemState(
        (ta, tb),
        tuple(Fraction(v) for v in prev),
        tuple(Fraction(v) for v in curr),
    )


def y_system_step(state: YSystemState) -> YSystemState:
    """Advance one time slice of the recurrence

    Y[i,i',t+1] = prod_j (1+Y[j,i',t])^{a_ij}
                  / ( prod_j' (1+1/Y[i,j',t])^{a'_i'j'} * Y[i,i',t-1] ).
    """
    ta, tb = state.pair
    a = dynkin.incidence_matrix(ta)
    ap = dynkin.incidence_matrix(tb)
    verts = pair_vertices(ta, tb)
    pos = {v: i for i, v in enumerate(verts)}
    nxt: List[Fraction] = []
    for (i, ip) in verts:
        num = Fraction(1)
        for j in ta.vertices:
            e = a[i - 1][j - 1]
            if e:
                num *= (1 + state.curr[pos[(j, ip)]]) ** e
        den = Fraction(1)
        for jp in tb.vertices:
            e = ap[ip - 1][jp - 1]
            if e:
                den *= (1 + 1 / state.curr[pos[(i, jp)]]) ** e
        nxt.append(num / (den * state.prev[pos[(i, ip)]]))
    return YSystemState(state.pair, state.curr, tuple(nxt), state.t + 1)


def tau_automorphism(ta: DynkinType, tb: DynkinType, eps: int, values: Values) -> Values:
    """Value map of the automorphism tau_eps: vertices whose parity equals
    eps get the product formula, the others are inverted."""
    if eps not in (1, -1):
        raise InputError("eps must be +1 or -1")
    a = dynkin.incidence_matrix(ta)
    ap = dynkin.incidence_matrix(tb)
    out: Values = {}
    for (i, ip), y in values.items():
        if vertex_parity(ta, tb, (i, ip)) == eps:
            val = y
            for j in ta.vertices:
                e = a[i - 1][j - 1]
                if e:
                    val *= (1 + values[(j, ip)]) ** e
            for jp in tb.vertices:
                e = ap[ip - 1][jp - 1]
                if e:
                    val *= (1 + 1 / values[(i, jp)]) ** (-e)
            out[(i, ip)] = val
        else:
            out[(i, ip)] = 1 / y
    return out


def normalized_step(values: Values, t: int, ta: DynkinType, tb: DynkinType) -> Values:
    """One step of the first-order normalized system: the slice at time
    t+1 from the slice at time t."""
    eps = 1 if (t + 1) % 2 == 0 else -1
    return tau_automorphism(ta, tb, eps, values)


def phi_automorphism(ta: DynkinType, tb: DynkinType, values: Values) -> Values:
    """Value map of phi = tau_minus after tau_plus."""
    return tau_automorphism(ta, tb, -1, tau_automorphism(ta, tb, 1, values))


# ---------------------------------------------------------------------------
# canonical mutation sequences

def _sign_blocks(qa, qb, order) -> Tuple[Tuple[Tuple, ...], ...]:
    if not qa.is_alternating() or not qb.is_alternating():
        raise InputError("both factors must be alternating")
    blocks = []
    for (sa, sb) in order:
        block = tuple(
            (u, x)
            for u in qa.vertices
            if qa.vertex_sign(u) == sa
            for x in qb.vertices
            if qb.vertex_sign(x) == sb
        )
        blocks.append(block)
    return tuple(blocks)


def mu_boxtimes_blocks(qa, qb):
    return _sign_blocks(qa, qb, BOXTIMES_BLOCK_ORDER)


def mu_square_blocks(qa, qb):
    return _sign_blocks(qa, qb, SQUARE_BLOCK_ORDER)


def mu_boxtimes_sequence(qa, qb) -> Tuple[Tuple, ...]:
    """One triangle-product round, flattened, in application order."""
    return tuple(v for block in mu_boxtimes_blocks(qa, qb) for v in block)


def mu_square_sequence(qa, qb) -> Tuple[Tuple, ...]:
    """One square-product round, flattened, in application order."""
    return tuple(v for block in mu_square_blocks(qa, qb) for v in block)


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class PeriodicityReport:
    """Machine-checkable verdict of a verification run."""

    pair: Tuple[str, str]
    system: str
    period_bound: int
    rounds: int
    minimal_period: Optional[int]
    divides: bool
    verified: bool
    checks: List[CheckResult] = field(default_factory=list)
    counterexample: Optional[dict] = None
    rng_seed: Optional[int] = None
    trials: Optional[int] = None

    def to_json(self) -> dict:
        out = {
            "pair": list(self.pair),
            "system": self.system,
            "period_bound": self.period_bound,
            "rounds": self.rounds,
            "minimal_period": self.minimal_period,
            "divides": self.divides,
            "verified": self.verified,
            "checks": [c.to_json() for c in self.checks],
            "counterexample": self.counterexample,
        }
        if self.rng_seed is not None:
            out["rng_seed"] = self.rng_seed
        if self.trials is not None:
            out["trials"] = self.trials
        return out

    def text(self) -> str:
        lines = [
            f"pair: {self.pair[0]} x {self.pair[1]}   system: {self.system}",
            f"period bound: {self.period_bound}   rounds executed: {self.rounds}",
            f"minimal period: {self.minimal_period}   divides bound: {self.divides}",
        ]
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            detail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  check {c.name}: {status}{detail}")
        if self.counterexample is not None:
            lines.append(f"counterexample: {self.counterexample}")
        lines.append("verdict: " + ("verified" if self.verified else "NOT verified"))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# seed-pattern verification

def _progress(stream, msg: str) -> None:
    if stream is not None:
        print(msg, file=stream, flush=True)


def _wrap_quiver(product, b):
    if isinstance(product, ValuedQuiver):
        return ValuedQuiver(product.vertices, b, product.d)
    return Quiver(product.vertices, b)


def _c_is_identity(seed: Seed) -> bool:
    n = seed.n
    return all(
        seed.c[j] == tuple(1 if i == j else 0 for i in range(n)) for j in range(n)
    )


def verify_periodicity(
    ta: DynkinType,
    tb: DynkinType,
    system: str = "boxtimes",
    max_rounds: Optional[int] = None,
    progress=None,
) -> PeriodicityReport:
    """Run the restricted pattern of the product of alternating quivers
    round by round and certify exact seed return.

    For simply laced pairs every intermediate quiver is checked to be
    product-constrained with intact slices; multiply laced pairs run the
    valued pattern with the structural checks that make sense there.
    """
    if system not in ("boxtimes", "square"):
        raise InputError(f"unknown seed system {system!r}")
    simply = ta.simply_laced and tb.simply_laced
    if simply:
        qa, qb = alternating_quiver(ta), alternating_quiver(tb)
    else:
        qa, qb = alternating_valued_quiver(ta), alternating_valued_quiver(tb)
    product = triangle_product(qa, qb) if system == "boxtimes" else square_product(qa, qb)
    blocks = (
        mu_boxtimes_blocks(qa, qb) if system == "boxtimes" else mu_square_blocks(qa, qb)
    )
    bound = dynkin.coxeter_number(ta) + dynkin.coxeter_number(tb)
    rounds = bound if max_rounds is None else int(max_rounds)
    if rounds < 1:
        raise InputError("max_rounds must be at least 1")

    idx = {v: product.index(v) for v in product.vertices}
    seed0 = Seed.initial(product)
    seed = seed0
    minimal: Optional[int] = None
    returned_at_bound = False
    counterexample: Optional[dict] = None
    steps = 0
    slice_checks = 0
    report_pair = (str(ta), str(tb))

    if simply:
        row_expect = {x: horizontal_slice(product, qa, qb, x) for x in qb.vertices}
        col_expect = {u: vertical_slice(product, qa, qb, u) for u in qa.vertices}

    def fail(check: str, detail: str, p: int, v=None) -> PeriodicityReport:
        return PeriodicityReport(
            pair=report_pair,
            system=system,
            period_bound=bound,
            rounds=p,
            minimal_period=minimal,
            divides=False,
            verified=False,
            checks=[CheckResult(check, False, detail)],
            counterexample={
                "round": p,
                "step": steps,
                "vertex": repr(v),
                "check": check,
                "detail": detail,
            },
        )

    for p in range(1, rounds + 1):
        for block in blocks:
            for v in block:
                seed = seed.mutate(idx[v])
                steps += 1
                current = _wrap_quiver(product, seed.b)
                if current.has_loops_or_two_cycles():
                    return fail("no_loops_or_two_cycles", "loop or 2-cycle appeared", p, v)
                if simply:
                    if not is_constrained(current, qa, qb):
                        return fail(
                            "intermediate_constrained",
                            "intermediate quiver left the constrained class",
                            p,
                            v,
                        )
                    row_expect[v[1]] = row_expect[v[1]].mutate(v)
                    col_expect[v[0]] = col_expect[v[0]].mutate(v)
            if simply:
                current = _wrap_quiver(product, seed.b)
                for x in qb.vertices:
                    if horizontal_slice(current, qa, qb, x) != row_expect[x]:
                        return fail(
                            "slice_law",
                            f"horizontal slice through {x} is not the mutated factor",
                            p,
                        )
                for u in qa.vertices:
                    if vertical_slice(current, qa, qb, u) != col_expect[u]:
                        return fail(
                            "slice_law",
                            f"vertical slice through {u} is not the mutated factor",
                            p,
                        )
                slice_checks += 1
        if seed.b != product.b:
            return fail("quiver_returns_each_round", "round did not fix the quiver", p)
        trivial = _c_is_identity(seed) and all(f.is_one() for f in seed.f)
        same = seed.equals(seed0)
        if trivial != same:
            return fail(
                "trivial_data_iff_seed_return",
                "identity tropical data and unit polynomials must come back together",
                p,
            )
        if same:
            if minimal is None:
                minimal = p
            if p == bound:
                returned_at_bound = True
        _progress(progress, f"[{report_pair[0]} x {report_pair[1]}] round {p}/{rounds} done")

    divides = minimal is not None and bound % minimal == 0
    verified = (
        minimal is not None and divides and (returned_at_bound if rounds >= bound else True)
    )
    checks = [
        CheckResult("quiver_returns_each_round", True, f"{rounds} rounds"),
        CheckResult("no_loops_or_two_cycles", True, f"{steps} mutation steps"),
        CheckResult("sign_coherent_c_vectors", True, f"{steps} mutation steps"),
        CheckResult(
            "trivial_data_iff_seed_return", True, "checked at every round boundary"
        ),
    ]
    if simply:
        checks.insert(1, CheckResult("intermediate_constrained", True, f"{steps} steps"))
        checks.append(
            CheckResult("slice_law", True, f"{slice_checks} block boundaries")
        )
    if rounds >= bound:
        checks.append(
            CheckResult(
                "seed_return_at_coxeter_bound",
                returned_at_bound,
                f"round {bound}",
            )
        )
    if minimal is None:
        counterexample = {
            "round": rounds,
            "check": "seed_return",
            "detail": f"no return within {rounds} rounds",
        }
    return PeriodicityReport(
        pair=report_pair,
        system=system,
        period_bound=bound,
        rounds=rounds,
        minimal_period=minimal,
        divides=divides,
        verified=verified,
        checks=checks,
        counterexample=counterexample,
    )


# ---------------------------------------------------------------------------
# direct-system verification

def verify_direct_ysystem(
    ta: DynkinType,
    tb: DynkinType,
    trials: int = 5,
    rng_seed: int = 0,
    progress=None,
) -> PeriodicityReport:
    """Iterate the recurrence from random positive rational slices and
    certify exact return after twice the Coxeter number sum."""
    if not (ta.simply_laced and tb.simply_laced):
        raise InputError("direct verification runs on simply laced pairs; fold first")
    if trials < 1:
        raise InputError("need at least one trial")
    bound = 2 * (dynkin.coxeter_number(ta) + dynkin.coxeter_number(tb))
    rng = random.Random(rng_seed)
    verts = pair_vertices(ta, tb)
    minimal_lcm = 1
    counterexample = None
    for trial in range(trials):
        prev = [Fraction(rng.randint(1, 100), rng.randint(1, 100)) for _ in verts]
        curr = [Fraction(rng.randint(1, 100), rng.randint(1, 100)) for _ in verts]
        state = initial_state(ta, tb, prev, curr)
        start = (state.prev, state.curr)
        minimal = None
        for m in range(1, bound + 1):
            state = y_system_step(state)
            if (state.prev, state.curr) == start and minimal is None:
                minimal = m
        if minimal is None or (state.prev, state.curr) != start:
            counterexample = {
                "trial": trial,
                "check": "exact_return",
                "detail": f"no return within {bound} steps",
                "start_prev": [str(v) for v in start[0]],
                "start_curr": [str(v) for v in start[1]],
            }
            break
        g = _gcd(minimal_lcm, minimal)
        minimal_lcm = minimal_lcm // g * minimal
        _progress(progress, f"[{ta} x {tb}] direct trial {trial + 1}/{trials} ok")
    ok = counterexample is None
    return PeriodicityReport(
        pair=(str(ta), str(tb)),
        system="direct",
        period_bound=bound,
        rounds=bound,
        minimal_period=minimal_lcm if ok else None,
        divides=ok and bound % minimal_lcm == 0,
        verified=ok,
        checks=[
            CheckResult(
                "exact_return_after_double_bound",
                ok,
                f"{trials} random positive rational starts",
            )
        ],
        counterexample=counterexample,
        rng_seed=rng_seed,
        trials=trials,
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# folding verification

def _orbit_label_maps(lift: Lift) -> Dict:
    """lifted vertex label -> base diagram vertex."""
    out = {}
    for orbit, base_vertex in lift.orbit_to_vertex.items():
        for i in orbit:
            out[lift.quiver.vertices[i]] = base_vertex
    return out


def _project_exponents(e, proj, n_valued: int) -> Tuple[int, ...]:
    out = [0] * n_valued
    for idx, x in enumerate(e):
        if x:
            out[proj[idx]] += x
    return tuple(out)


def _project_polynomial(p: Polynomial, proj, n_valued: int) -> Polynomial:
    return Polynomial(
        n_valued,
        [(_project_exponents(e, proj, n_valued), c) for e, c in p.items()],
    )


def verify_folding(
    ta: DynkinType,
    tb: DynkinType,
    max_rounds: Optional[int] = None,
    allow_trivial: bool = False,
    progress=None,
) -> PeriodicityReport:
    """Run the lifted simply laced pattern and the valued pattern side by
    side: the action must stay admissible, variable identification must
    match the two patterns at every round, and the valued seed must return
    within the Coxeter number sum."""
    la, lb = lift_dynkin(ta), lift_dynkin(tb)
    if la.trivial and lb.trivial and not allow_trivial:
        raise InputError(f"nothing to fold in ({ta}, {tb})")
    bound = dynkin.coxeter_number(ta) + dynkin.coxeter_number(tb)
    lifted_bound = dynkin.coxeter_number(la.lifted_type) + dynkin.coxeter_number(lb.lifted_type)
    rounds = bound if max_rounds is None else int(max_rounds)

    lifted_product = triangle_product(la.quiver, lb.quiver)
    action = product_action(la.action, lb.action, lifted_product)
    va, vb = alternating_valued_quiver(ta), alternating_valued_quiver(tb)
    valued_product = triangle_product(va, vb)

    base_a, base_b = _orbit_label_maps(la), _orbit_label_maps(lb)
    # lifted product index -> valued product index
    proj = [0] * lifted_product.n
    for i, (u, x) in enumerate(lifted_product.vertices):
        proj[i] = valued_product.index((base_a[u], base_b[x]))

    vseq = mu_boxtimes_sequence(va, vb)
    members = {
        v: tuple(
            (u, x)
            for (u, x) in lifted_product.vertices
            if (base_a[u], base_b[x]) == v
        )
        for v in vseq
    }

    vseed0 = Seed.initial(valued_product)
    lseed0 = Seed.initial(lifted_product)
    vseed, lseed = vseed0, lseed0
    report_pair = (str(ta), str(tb))
    minimal = None
    returned_at_bound = False
    counterexample = None
    orbit_steps = 0

    def fail(check: str, detail: str, p: int) -> PeriodicityReport:
        return PeriodicityReport(
            pair=report_pair,
            system="fold",
            period_bound=bound,
            rounds=p,
            minimal_period=minimal,
            divides=False,
            verified=False,
            checks=[CheckResult(check, False, detail)],
            counterexample={"round": p, "check": check, "detail": detail},
        )

    if lifted_bound != bound:
        return fail(
            "coxeter_numbers_match_lift",
            f"lift bound {lifted_bound} != folded bound {bound}",
            0,
        )

    nv = valued_product.n
    for p in range(1, rounds + 1):
        for v in vseq:
            vseed = vseed.mutate(valued_product.index(v))
            for m in members[v]:
                lseed = lseed.mutate(lifted_product.index(m))
            orbit_steps += 1
            current = Quiver(lifted_product.vertices, lseed.b)
            try:
                step_action = GroupAction(current, action.generators)
            except InputError:
                return fail(
                    "lifted_action_admissible",
                    "group stopped acting by automorphisms",
                    p,
                )
            if not is_admissible(step_action):
                return fail(
                    "lifted_action_admissible",
                    f"orbit quiver gained a loop or 2-cycle after mutating {v!r}",
                    p,
                )
        # identification of the two patterns, vertex by vertex
        for i in range(lifted_product.n):
            j = proj[i]
            if _project_exponents(lseed.c[i], proj, nv) != vseed.c[j]:
                return fail(
                    "projection_matches_valued",
                    f"tropical data at {lifted_product.vertices[i]!r} projects wrong",
                    p,
                )
            if _project_polynomial(lseed.f[i], proj, nv) != vseed.f[j]:
                return fail(
                    "projection_matches_valued",
                    f"polynomial at {lifted_product.vertices[i]!r} projects wrong",
                    p,
                )
        # folding the lifted matrix must reproduce the valued matrix
        for j in range(nv):
            rep = next(i for i in range(lifted_product.n) if proj[i] == j)
            for jj in range(nv):
                total = sum(
                    lseed.b[i][rep] for i in range(lifted_product.n) if proj[i] == jj
                )
                if total != vseed.b[jj][j]:
                    return fail(
                        "folded_matrix_matches",
                        f"entry ({jj},{j}) folds to {total}, valued run has {vseed.b[jj][j]}",
                        p,
                    )
        if vseed.equals(vseed0):
            if minimal is None:
                minimal = p
            if p == bound:
                returned_at_bound = True
        _progress(progress, f"[{report_pair[0]} x {report_pair[1]}] fold round {p}/{rounds} done")

    divides = minimal is not None and bound % minimal == 0
    lifted_returns = lseed.equals(lseed0) if rounds == bound else True
    verified = (
        minimal is not None
        and divides
        and lifted_returns
        and (returned_at_bound if rounds >= bound else True)
    )
    checks = [
        CheckResult("coxeter_numbers_match_lift", True, f"h sum {bound}"),
        CheckResult("lifted_action_admissible", True, f"{orbit_steps} orbit mutations"),
        CheckResult("projection_matches_valued", True, f"{rounds} rounds"),
        CheckResult("folded_matrix_matches", True, f"{rounds} rounds"),
        CheckResult(
            "valued_seed_return", minimal is not None, f"minimal period {minimal}"
        ),
    ]
    if rounds == bound:
        checks.append(CheckResult("lifted_seed_return", lifted_returns, f"round {bound}"))
    if minimal is None:
        counterexample = {
            "round": rounds,
            "check": "valued_seed_return",
            "detail": f"no return within {rounds} rounds",
        }
    return PeriodicityReport(
        pair=report_pair,
        system="fold",
        period_bound=bound,
        rounds=rounds,
        minimal_period=minimal,
        divides=divides,
        verified=verified,
        checks=checks,
        counterexample=counterexample,
    )
