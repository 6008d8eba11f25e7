"""End-to-end acceptance run: the ten numbered checks with timings.

`quick=True` shrinks the random counts and skips the largest discriminants;
the full run is what the `acceptance` command executes by default.
"""

import logging
import time
from itertools import product
from typing import NamedTuple

from autos import (aut_group_shape, formal_automorphism, isomorphic, scalar_violations,
                   transport_params, verify_homomorphism, z_image_check)
from center import check_center_scan, center_ring, verify_specz
from cyclotomic import CycElem
from discriminant import (discriminant, eta_alternate, eta_value, theorem_71_rhs,
                          theorem_b_rhs, verify_discriminant)
from generator.helpers import (get_rng, random_center_poly, random_element, random_params)
from params import is_free_over_center, make_params
from poisson import (antisymmetric, canonical_lift, jacobi, leibniz, lift_independent,
                     poisson_normal, q_deform, verify_prop33)
from polyring import is_associate
from weyl_core import algebra_for, check_structure_identities

logger = logging.getLogger(__name__)


class CriterionResult(NamedTuple):
    number: int
    name: str
    passed: bool
    elapsed_ms: int
    details: tuple

    def to_json(self):
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "elapsed_ms": self.elapsed_ms, "details": list(self.details)}


def _instances():
    """The desk-scale parameter sets shared by several criteria."""

    return {
        "n1_d2": make_params([(1, 2)]),
        "n1_d3": make_params([(1, 3)]),
        "n1_d4": make_params([(1, 4)]),
        "n2_d22": make_params([(1, 2), (1, 2)]),
        "n2_d22_beta": make_params([(1, 2), (1, 2)], [(1, 2, 1, 2)]),
        "n2_d24": make_params([(1, 2), (1, 4)], [(1, 2, 1, 2)]),
        "n2_d23": make_params([(1, 2), (1, 3)]),
        "n2_nonfree": make_params([(1, 2), (1, 2)], [(1, 2, 1, 4)]),
    }


def cyclotomic_identities(seed, quick):
    """prod_{i<d} (1 - e^i) = d for d = 2..12."""

    details = []
    for d in range(2, 13):
        value = CycElem.one(d)
        for i in range(1, d):
            value = value * (CycElem.one(d) - CycElem.root(d, i))
        if value != d:
            details.append(f"d={d}: product is {value}")
    return details


def rewriting_engine(seed, quick):
    """Associativity on random triples and the normality identities."""

    rng = get_rng(seed)
    details = []
    triples = 50 if quick else 1000
    for _ in range(triples):
        P = random_params(rng, max_d=4)
        algebra = algebra_for(P)
        u, v, w = (random_element(algebra, rng, terms=2, max_degree=5) for _ in range(3))
        if (u * v) * w != u * (v * w):
            details.append(f"associativity fails for {P!r}")
    for P in list(_instances().values()) + [random_params(rng, n=3) for _ in range(3)]:
        failed = check_structure_identities(P)
        if failed:
            details.append(f"{P!r}: {', '.join(failed)}")
    return details


def center_scan(seed, quick):
    details = []
    bound = 4 if quick else 8
    for name, P in _instances().items():
        if P.n == 2 and quick and name not in ("n2_d23", "n2_nonfree"):
            continue
        report = check_center_scan(P, bound)
        if not report.agrees:
            details.append(f"{name}: scan disagrees {report.to_json()}")
    return details


def z_recursion(seed, quick):
    details = []
    for name, P in _instances().items():
        if not is_free_over_center(P):
            continue
        for j in range(P.n + 1):
            if not verify_specz(P, j):
                details.append(f"{name}: z_{j}^d fails")
    return details


def _discriminant_checks(cases, which):
    details = []
    for name, P, L in cases:
        report = verify_discriminant(P, L, which)
        if not (report.passed and report.certified):
            details.append(f"{name} {which}: {report.to_json()}")
    return details


def closed_form(seed, quick):
    instances = _instances()
    cases = [("n1_d2", instances["n1_d2"], None), ("n1_d3", instances["n1_d3"], None)]
    if not quick:
        cases += [("n2_d22", instances["n2_d22"], None),
                  ("n2_d22_beta", instances["n2_d22_beta"], None)]
    return _discriminant_checks(cases, "theorem-b")


def closed_form_over_c(seed, quick):
    instances = _instances()
    cases = [("n1_d2 L=2", instances["n1_d2"], (2,))]
    if not quick:
        cases += [("n1_d2 L=4", instances["n1_d2"], (4,)),
                  ("n2_d22 L=(2,2)", instances["n2_d22"], (2, 2))]
    return _discriminant_checks(cases, "theorem-71")


def poisson_checks(seed, quick):
    rng = get_rng(seed)
    instances = _instances()
    details = []
    for name in ("n1_d2", "n1_d3", "n2_d22_beta", "n2_d24"):
        P = instances[name]
        if not verify_prop33(P).passed:
            details.append(f"{name}: bracket table mismatch")
        for j in range(1, P.n + 1):
            if not poisson_normal(P, j):
                details.append(f"{name}: Z_{j} is not Poisson normal")
    P = instances["n2_d22_beta"]
    qalg = algebra_for(q_deform(P))
    for _ in range(5 if quick else 100):
        f, g, h = (random_center_poly(P, rng) for _ in range(3))
        if not (antisymmetric(P, f, g) and leibniz(P, f, g, h) and jacobi(P, f, g, h)):
            details.append(f"bracket axioms fail on {f}, {g}, {h}")
    for _ in range(5 if quick else 50):
        f, g = random_center_poly(P, rng), random_center_poly(P, rng)
        w = random_element(qalg, rng, terms=2, max_degree=2)
        if not lift_independent(P, f, g, w):
            details.append(f"bracket depends on the lift of {f}")
    canonical_lift(P, random_center_poly(P, rng))
    return details


def automorphisms(seed, quick):
    instances = _instances()
    details = []
    for name, P in instances.items():
        if P.n > 2 or not is_free_over_center(P):
            continue
        for tau in product((1, -1), repeat=P.n):
            target = transport_params(P, tau)
            spec = formal_automorphism(P, target, tau)
            if not verify_homomorphism(spec):
                details.append(f"{name} tau={tau}: relations fail")
            for j in range(P.n + 1):
                if not z_image_check(spec, j):
                    details.append(f"{name} tau={tau}: image of z_{j}")
        single_swaps = [k for k in range(1, P.n + 1)
                        if not scalar_violations(P, P, tuple(-1 if i == k else 1
                                                             for i in range(1, P.n + 1)))]
        shape = aut_group_shape(P)
        if (shape.kind == "SemidirectZ2") != bool(single_swaps):
            details.append(f"{name}: shape {shape.kind} but swaps at {single_swaps}")
    omega, omega2 = make_params([(1, 3)]), make_params([(2, 3)])
    if isomorphic(omega, omega2) != (-1,):
        details.append("e_3 and e_3^2 should be isomorphic with tau=(-1)")
    if isomorphic(omega, make_params([(1, 4)])) is not None:
        details.append("orders 3 and 4 should not be isomorphic")
    return details


def cross_checks(seed, quick):
    instances = _instances()
    details = []
    names = ["n1_d2", "n1_d3"] + ([] if quick else ["n2_d22", "n2_d22_beta"])
    for name in names:
        P = instances[name]
        unit_ring = center_ring(P)
        recursive = theorem_71_rhs(P.with_mode(c_formal=True)).poly.substitute(
            {"c": 1}, ring=unit_ring, order=P.D)
        if is_associate(recursive, theorem_b_rhs(P).poly) is None:
            details.append(f"{name}: closed forms disagree at c = 1")
    for d in range(2, 7):
        for m in range(1, d):
            P = make_params([(m, d)]) if _coprime(m, d) else None
            if P is not None and eta_value(P) != eta_alternate(P):
                details.append(f"eta disagrees for {m}/{d}")
    return details


def _coprime(m, d):
    while d:
        m, d = d, m % d
    return m == 1


def basis_independence(seed, quick):
    instances = _instances()
    details = []
    for name in ("n1_d2", "n1_d3"):
        P = instances[name]
        first = discriminant(P, convention="y-first").poly
        second = discriminant(P, convention="x-first").poly
        if is_associate(first, second) is None:
            details.append(f"{name}: basis conventions disagree")
    return details


CRITERIA = (
    (1, "cyclotomic identities", cyclotomic_identities),
    (2, "rewriting engine", rewriting_engine),
    (3, "center scan", center_scan),
    (4, "z recursion", z_recursion),
    (5, "discriminant closed form", closed_form),
    (6, "discriminant over T[c, x^L, y^L]", closed_form_over_c),
    (7, "Poisson brackets", poisson_checks),
    (8, "automorphisms", automorphisms),
    (9, "cross checks", cross_checks),
    (10, "basis independence", basis_independence),
)


def run_acceptance(seed=0, quick=False, only=None):
    """Run the selected criteria in order; returns a list of CriterionResult."""

    results = []
    for number, name, check in CRITERIA:
        if only and number not in only:
            continue
        started = time.perf_counter()
        details = tuple(check(seed, quick))
        elapsed = int((time.perf_counter() - started) * 1000)
        results.append(CriterionResult(number, name, not details, elapsed, details))
        logger.info("criterion %d (%s): %s in %d ms", number, name,
                    "pass" if not details else "FAIL", elapsed)
    return results
