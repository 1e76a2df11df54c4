"""Reproduction checks for every published number, with time limits.

Each check returns ``(passed, detail)``. ``run_all`` times them and is what
the ``repro`` subcommand prints.
"""

from __future__ import annotations

import contextlib
import io
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import facets_n, ideal, orders, summation
from .multfunc import MultiplicativeFunction, constant

FACETS_30 = [12, 14, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30]
GAMMA_PUBLISHED = Fraction("0.607714359516618")


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 7) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def check_facets_30():
    from .cli import main  # the criterion is stated for the command line

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["facets", "30", "--list"])
    printed = [int(tok) for tok in buf.getvalue().split()]
    got = list(facets_n.enumerate_facets(30))
    ok = code == 0 and printed == got == FACETS_30
    return ok, f"{len(printed)} facets: {','.join(map(str, printed))}"


def check_density_30():
    d = facets_n.facet_density(30)
    return d == Fraction(17, 30), f"density {d}"


def check_gamma():
    est = facets_n.gamma_constant(Fraction(1, 10**12))
    err = abs(est.series_value - GAMMA_PUBLISHED)
    return err < Fraction(1, 10**12), f"gamma {float(est):.15g} ({est.terms_used} terms), |diff| = {float(err):.2e}"


def check_density_million():
    n = 10**6
    d = facets_n.facet_density(n)
    gap = abs(d - facets_n.gamma_constant().series_value)
    return gap < Fraction(1, 100), f"facets([10^6])/10^6 = {float(d):.6f}, |diff from gamma| = {float(gap):.2e}"


def check_linear_extensions():
    Y = orders.poset_Y(4)
    full = orders.count_linear_extensions(Y)
    two = orders.count_linear_extensions(orders.restrict_poset(Y, orders.k_subsets(4, 2)))
    return (full, two) == (78, 2), f"e(Y(4)) = {full}, e(Y(4) on 2-subsets) = {two}"


def check_realizable_orders():
    T = orders.k_subsets(4, 2)
    unsorted = len(orders.realizable_orders(T, sorted_only=False, r=4))
    sorted_ = len(orders.realizable_orders(T, sorted_only=True, r=4))
    return (unsorted, sorted_) == (48, 2), f"{unsorted} realizable orders ({sorted_} sorted) of 720"


def check_impossible():
    rep = orders.verify_impossible_example()
    return rep.infeasible and rep.result.contradiction is not None, "INFEASIBLE" if rep.infeasible else "feasible?!"


def check_nord_bound():
    res = orders.check_nord_bound(orders.k_subsets(4, 2), 4)
    return tuple(res[:3]) == (48, 48, True), f"t = {res.t}, r! e(Y_T) = {res.bound}, holds = {res.holds}"


def check_psi_oracle(samples: int = 50, seed: int = 1):
    rng = random.Random(seed)
    checked = 0
    piecewise = 0
    for r in (1, 2, 3, 4):
        for _ in range(samples):
            c = random_rational(rng, -10, 10, max_den=12)
            value = summation.psi(r, c).value
            if value != summation.psi_bruteforce(r, c):
                return False, f"psi({r}, {c}) disagrees with brute force"
            checked += 1
            try:
                pw = summation.psi_piecewise(r, c)
            except ValueError:
                continue  # boundary input
            if pw != value:
                return False, f"piecewise psi({r}, {c}) = {pw} but argmax route gives {value}"
            piecewise += 1
    return True, f"{checked} (r, c) pairs agree; piecewise agreed on {piecewise} off-boundary pairs"


def random_ideal(rng: random.Random, max_gen: int = 500, max_facets: int = 12):
    while True:
        gens = [rng.randint(1, max_gen) for _ in range(rng.randint(1, max_facets))]
        S = ideal.close_under_unitary_divisors(gens)
        cx = ideal.complex_of(S)
        fs = cx.facets()
        if len(fs) <= max_facets:
            return S, cx, fs


def check_summation_routes(count: int = 200, seed: int = 2):
    rng = random.Random(seed)
    for k in range(count):
        S, cx, fs = random_ideal(rng)
        g = MultiplicativeFunction({q: random_rational(rng, -3, 3) for q in S.vertices})
        direct = summation.g_sum_direct(S, g)
        incl = summation.g_sum_inclusion_exclusion(fs, g)
        if direct != incl:
            return False, f"ideal {sorted(S.elements)}: direct {direct} != inclusion-exclusion {incl}"
        c = random_rational(rng, -3, 3)
        gc = constant(c)
        vals = {
            summation.g_sum_direct(S, gc),
            summation.g_sum_inclusion_exclusion(fs, gc),
            summation.g_sum_fvector(cx.f_vector(), c),
        }
        if len(vals) != 1:
            return False, f"ideal {sorted(S.elements)}, c = {c}: routes give {vals}"
    return True, f"{count} random ideals agree on all routes"


def check_maximization(count: int = 100, seed: int = 3, n_max: int = 5000, peak_n: int = 200):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, n_max)
        pps = ideal.interval_ideal(n).vertices
        g = MultiplicativeFunction({q: random_rational(rng, 1, 3) for q in pps})
        _, naive = facets_n.maximize_on_interval(n, g, "naive")
        _, facet = facets_n.maximize_on_interval(n, g, "facet")
        if naive != facet:
            return False, f"n = {n}: naive max {naive} != facet max {facet}"
    fm = facets_n.facet_matrix(peak_n)
    table = facets_n.build_spf_table(peak_n)
    for i, w in enumerate(fm.facets):
        h = facets_n.facet_peak_function(fm.face(i).vertices, fm.prime_powers)
        vals = [h.evaluate(m, table) for m in range(1, peak_n + 1)]
        top = max(vals)
        winners = [m for m, v in zip(range(1, peak_n + 1), vals) if v == top]
        if winners != [w]:
            return False, f"peak function for facet {w} peaks at {winners}"
    return True, f"{count} random log-positive g agree; {len(fm.facets)} facets of [{peak_n}] strictly separated"


def check_realization(seed: int = 4, sample_5: int | None = None):
    rng = random.Random(seed)
    checked = 0
    for r in range(0, 6):
        families = list(ideal.iter_complexes(r))
        if r == 5 and sample_5 is not None:
            families = rng.sample(families, sample_5)
        for faces in families:
            K = ideal.SimplicialComplex(r, faces)
            back = ideal.complex_of(ideal.realize(K))
            if back != K:
                return False, f"round trip failed for {sorted(faces)} on {r} vertices"
            checked += 1
    return True, f"{checked} complexes on <= 5 vertices round-trip"


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    limit: float
    run: Callable[[], tuple[bool, str]]


CHECKS = [
    Check(1, "facets of Delta([30])", 1, check_facets_30),
    Check(2, "facet density of [30]", 1, check_density_30),
    Check(3, "gamma constant", 1, check_gamma),
    Check(4, "empirical density at 10^6", 60, check_density_million),
    Check(5, "linear extensions of Y(4)", 1, check_linear_extensions),
    Check(6, "realizable orders on 2-subsets", 30, check_realizable_orders),
    Check(7, "impossible order", 1, check_impossible),
    Check(8, "linear-extension bound", 30, check_nord_bound),
    Check(9, "Psi oracle equivalence", 60, check_psi_oracle),
    Check(10, "summation routes", 60, check_summation_routes),
    Check(11, "maximization via facets", 120, check_maximization),
    Check(12, "realization round trip", 60, check_realization),
]


@dataclass(frozen=True)
class Outcome:
    check: Check
    passed: bool
    in_time: bool
    seconds: float
    detail: str

    @property
    def ok(self) -> bool:
        return self.passed and self.in_time


def run_check(check: Check) -> Outcome:
    t0 = time.perf_counter()
    try:
        passed, detail = check.run()
    except Exception as exc:  # report, don't abort the table
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    return Outcome(check, passed, dt < check.limit, dt, detail)


def format_outcome(o: Outcome) -> str:
    status = "PASS" if o.ok else "FAIL"
    late = "" if o.in_time else f" (over {o.check.limit:g}s limit)"
    return f"[{status}] {o.check.number:2d}. {o.check.name}: {o.detail} [{o.seconds:.2f}s]{late}"


def run_all(numbers=None) -> list[Outcome]:
    return [run_check(c) for c in CHECKS if numbers is None or c.number in numbers]
